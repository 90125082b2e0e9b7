#include "msglab/geodesics.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace msglab {

namespace {

// One unit of progress along a cycle c: the assignments c[i] -> image.
struct Piece {
  std::size_t cycle = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> assign;
  bool odd = false;
};

struct Step {
  std::vector<Piece> pieces;
  std::size_t cost() const {
    std::size_t c = 0;
    for (const auto& p : pieces) c += p.assign.size();
    return c;
  }
  bool odd() const {
    bool o = false;
    for (const auto& p : pieces) o ^= p.odd;
    return o;
  }
  std::set<std::uint32_t> moved() const {
    std::set<std::uint32_t> s;
    for (const auto& p : pieces)
      for (const auto& a : p.assign) s.insert(a.first);
    return s;
  }
  bool shares_cycle(const Step& o) const {
    for (const auto& a : pieces)
      for (const auto& b : o.pieces)
        if (a.cycle == b.cycle) return true;
    return false;
  }
};

std::size_t largest_with_parity(std::size_t cap, bool odd) { return (cap % 2 == 1) == odd ? cap : cap - 1; }

// Partial cycle (c[0] .. c[to-1]) extended from (c[0] .. c[from-1]).
Piece segment(std::size_t id, const std::vector<std::uint32_t>& c, std::size_t from, std::size_t to) {
  Piece p;
  p.cycle = id;
  const std::size_t start = from == 0 ? 0 : from - 1;
  for (std::size_t i = start; i + 1 < to; ++i) p.assign.emplace_back(c[i], c[i + 1]);
  p.assign.emplace_back(c[to - 1], c[0]);
  p.odd = from == 0 ? (to - 1) % 2 == 1 : (to - from) % 2 == 1;
  return p;
}

enum class Shape { OddCycle, TailOdd, HeadOdd, Free };

void cut(std::size_t id, const std::vector<std::uint32_t>& c, Shape shape, std::size_t cap, std::vector<Piece>& out) {
  const std::size_t len = c.size();
  if (len <= cap) {
    out.push_back(segment(id, c, 0, len));
    return;
  }
  if (shape == Shape::Free) {
    out.push_back(segment(id, c, 0, cap));
    for (std::size_t pos = cap; pos < len;) {
      const std::size_t t = std::min(cap - 1, len - pos);
      out.push_back(segment(id, c, pos, pos + t));
      pos += t;
    }
    return;
  }
  const std::size_t t_max = largest_with_parity(cap - 1, false);
  std::size_t pos = largest_with_parity(cap, shape != Shape::HeadOdd);
  out.push_back(segment(id, c, 0, pos));
  while (pos < len) {
    const std::size_t rest = len - pos;
    std::size_t t;
    if (shape == Shape::TailOdd)
      t = rest <= cap - 1 ? rest : t_max;
    else
      t = std::min(t_max, rest);
    out.push_back(segment(id, c, pos, pos + t));
    pos += t;
  }
}

Rational ratio(std::size_t a, std::size_t n) { return Rational(std::int64_t(a), std::int64_t(n)); }

}  // namespace

std::string ChainPath::element_string(std::size_t i) const {
  if (kind == MetricKind::Hamming) return format_permutation(perms.at(i));
  return format_classical(matrices.at(i));
}

ChainPath hamming_chain(const Permutation& sigma, const Rational& max_step, bool alternating) {
  const std::size_t n = sigma.degree();
  if (n == 0) throw std::invalid_argument("empty permutation");
  if (alternating && !sigma.is_even()) throw std::invalid_argument("hamming_chain in A_n needs an even permutation");
  if (max_step > Rational(1)) throw std::invalid_argument("max_step must be at most 1");
  if (max_step < ratio(1, n)) throw std::invalid_argument("max_step below 1/n");
  if (alternating && max_step < ratio(2, n))
    throw std::invalid_argument("max_step below 2/n: distinct even permutations differ in at least 3 points");

  const std::size_t C = std::size_t(boost::rational_cast<long double>(max_step * Rational(std::int64_t(n))) + 1e-9L);
  const std::size_t hard = C + 2;
  const std::size_t cap = std::max<std::size_t>(C, alternating ? 3 : 2);

  std::vector<std::vector<std::uint32_t>> odd_cycles, even_cycles;
  for (auto& c : sigma.cycles()) {
    if (c.size() == 1) continue;
    (c.size() % 2 == 1 || !alternating ? odd_cycles : even_cycles).push_back(std::move(c));
  }

  std::vector<Piece> pieces;
  std::size_t id = 0;
  for (const auto& c : odd_cycles) cut(id++, c, alternating ? Shape::OddCycle : Shape::Free, cap, pieces);
  for (std::size_t i = 0; i < even_cycles.size(); ++i)
    cut(id++, even_cycles[i], i % 2 == 0 ? Shape::TailOdd : Shape::HeadOdd, cap, pieces);

  ChainPath chain;
  chain.kind = MetricKind::Hamming;
  chain.alternating = alternating;
  chain.target_perm = sigma;
  chain.splits = pieces.size() - odd_cycles.size() - even_cycles.size();

  std::vector<Step> steps;
  for (auto& p : pieces) {
    if (!steps.empty()) {
      Step& cur = steps.back();
      const bool same = std::any_of(cur.pieces.begin(), cur.pieces.end(), [&](const Piece& q) { return q.cycle == p.cycle; });
      if (!same && cur.cost() + p.assign.size() <= cap) {
        cur.pieces.push_back(std::move(p));
        continue;
      }
    }
    steps.push_back(Step{{std::move(p)}});
  }

  // Two adjacent odd steps that fit in the hard bound are cheaper together
  // than with a twist.
  for (std::size_t i = 0; alternating && i + 1 < steps.size();) {
    if (steps[i].odd() && steps[i + 1].odd() && steps[i].cost() + steps[i + 1].cost() <= hard &&
        !steps[i].shares_cycle(steps[i + 1])) {
      for (auto& p : steps[i + 1].pieces) steps[i].pieces.push_back(std::move(p));
      steps.erase(steps.begin() + std::ptrdiff_t(i) + 1);
    } else {
      ++i;
    }
  }

  // Odd stretches [i, j]: twist with (a b), a and b outside both end steps.
  std::vector<std::optional<std::pair<std::uint32_t, std::uint32_t>>> twist(steps.size());
  for (std::size_t i = 0; alternating && i < steps.size();) {
    if (!steps[i].odd()) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (!steps[j].odd()) ++j;
    std::set<std::uint32_t> avoid = steps[i].moved();
    for (auto x : steps[j].moved()) avoid.insert(x);
    std::vector<std::uint32_t> free_points;
    for (std::uint32_t x = 0; x < n && free_points.size() < 2; ++x)
      if (!avoid.count(x)) free_points.push_back(x);
    if (free_points.size() == 2) {
      for (std::size_t k = i; k < j; ++k) twist[k] = std::make_pair(free_points[0], free_points[1]);
      chain.parity_repairs += 2;
      i = j + 1;
    } else {
      for (std::size_t k = i + 1; k <= j; ++k)
        for (auto& p : steps[k].pieces) steps[i].pieces.push_back(std::move(p));
      steps.erase(steps.begin() + std::ptrdiff_t(i) + 1, steps.begin() + std::ptrdiff_t(j) + 1);
      twist.erase(twist.begin() + std::ptrdiff_t(i) + 1, twist.begin() + std::ptrdiff_t(j) + 1);
      ++chain.merged_repairs;
      ++i;
    }
  }

  std::vector<std::uint32_t> h(n);
  for (std::uint32_t x = 0; x < n; ++x) h[x] = x;
  chain.perms.push_back(Permutation::identity(n));
  for (std::size_t s = 0; s < steps.size(); ++s) {
    for (const auto& p : steps[s].pieces)
      for (const auto& [pt, img] : p.assign) h[pt] = img;
    Permutation g(h);
    if (twist[s]) g = g * Permutation::from_cycles(n, {{twist[s]->first, twist[s]->second}});
    chain.step_lengths.push_back(hamming_distance(chain.perms.back(), g));
    chain.total += chain.step_lengths.back();
    chain.perms.push_back(std::move(g));
  }
  if (chain.perms.back() != sigma) throw std::logic_error("Hamming chain does not end at the target");
  chain.target_length = hamming_distance(sigma, Permutation::identity(n));
  chain.overshoot = chain.total - chain.target_length;
  if (chain.merged_repairs == 0 && chain.overshoot != ratio(chain.splits + 2 * chain.parity_repairs, n))
    throw std::logic_error("Hamming chain overshoot does not match its splits and repairs");
  return chain;
}

ChainPath rank_metric_chain(const ClassicalElement& g, const Rational& max_step, std::uint32_t budget) {
  const auto& F = g.field();
  const Field& f = *F;
  const std::size_t n = g.n();
  if (max_step < ratio(1, n)) throw std::invalid_argument("max_step below 1/n");
  const Matrix id = Matrix::identity(F, n);
  const RankShift shift = min_rank_shift(g.matrix(), id, budget);
  const Elem alpha = *std::min_element(shift.argmins.begin(), shift.argmins.end(),
                                       [](Elem a, Elem b) { return a.code < b.code; });

  ChainPath chain;
  chain.kind = MetricKind::ProjectiveRank;
  chain.target_matrix = g;
  chain.rank_target = shift.rank;

  const Matrix target = g.matrix().scaled(f.inv(alpha));
  Matrix M = target - id;
  Matrix prod = id;
  chain.matrices.emplace_back(prod, GroupTag::PSL_REP);

  // det(prod) is a product of the factor determinants 1 + w^T u.
  const std::uint64_t nth_power_exp = (f.q() - 1) / std::gcd<std::uint64_t>(n, f.q() - 1);
  Elem det_prod = f.one();
  auto nonzero = [](const Vec& v) { return std::any_of(v.begin(), v.end(), [](Elem e) { return !e.is_zero(); }); };
  auto mat_vec = [&](const Matrix& m, const Vec& v) { return m.apply(v); };

  while (nonzero(M.entries())) {
    // a with M a != 0 and M (I + M) a != 0; such a exists since V is not a
    // union of two proper subspaces.
    Vec a(n, Elem{}), v, w2;
    bool found = false;
    std::optional<std::size_t> first_live;
    for (std::size_t j = 0; j < n && !found; ++j) {
      Vec col = M.column(j);
      if (!nonzero(col)) continue;
      if (!first_live) first_live = j;
      Vec mv = mat_vec(M, col);
      Vec sum(n);
      for (std::size_t i = 0; i < n; ++i) sum[i] = f.add(col[i], mv[i]);
      if (nonzero(sum)) {
        a[j] = f.one();
        v = std::move(col);
        w2 = std::move(sum);
        found = true;
      }
    }
    if (!found) {
      const Matrix MG = M + M * M;
      for (std::size_t j = 0; j < n; ++j) {
        if (nonzero(MG.column(j))) {
          a[*first_live] = f.one();
          a[j] = f.one();
          break;
        }
      }
      v = mat_vec(M, a);
      w2 = mat_vec(MG, a);
      if (!nonzero(v) || !nonzero(w2)) throw std::logic_error("rank-one peel: no admissible direction");
    }
    // b with b.v != 0 and b.w2 != 0.
    Vec b(n, Elem{});
    std::optional<std::size_t> iv, iw;
    for (std::size_t i = 0; i < n; ++i) {
      if (!v[i].is_zero() && !w2[i].is_zero()) {
        iv = iw = i;
        break;
      }
      if (!iv && !v[i].is_zero()) iv = i;
      if (!iw && !w2[i].is_zero()) iw = i;
    }
    b[*iv] = f.one();
    b[*iw] = f.one();
    Elem beta{};
    for (std::size_t i = 0; i < n; ++i) beta = f.add(beta, f.mul(b[i], v[i]));
    Vec w(n, Elem{});
    for (std::size_t i = 0; i < n; ++i)
      if (!b[i].is_zero())
        for (std::size_t k = 0; k < n; ++k) w[k] = f.add(w[k], f.mul(b[i], M(i, k)));
    const Elem beta_inv = f.inv(beta);
    for (auto& e : w) e = f.mul(e, beta_inv);
    const Vec& u = v;

    // M <- (I + u w^T)^-1 (M - u w^T)
    Elem gamma = f.one();
    for (std::size_t i = 0; i < n; ++i) gamma = f.add(gamma, f.mul(w[i], u[i]));
    if (gamma.is_zero()) throw std::logic_error("rank-one peel produced a singular factor");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) M.at(i, k) = f.sub(M(i, k), f.mul(u[i], w[k]));
    Vec wn(n, Elem{});
    for (std::size_t i = 0; i < n; ++i)
      if (!w[i].is_zero())
        for (std::size_t k = 0; k < n; ++k) wn[k] = f.add(wn[k], f.mul(w[i], M(i, k)));
    const Elem gamma_inv = f.inv(gamma);
    for (std::size_t i = 0; i < n; ++i) {
      const Elem c = f.mul(u[i], gamma_inv);
      if (c.is_zero()) continue;
      for (std::size_t k = 0; k < n; ++k) M.at(i, k) = f.sub(M(i, k), f.mul(c, wn[k]));
    }

    // prod <- prod (I + u w^T)
    const Vec pu = prod.apply(u);
    for (std::size_t i = 0; i < n; ++i) {
      if (pu[i].is_zero()) continue;
      for (std::size_t k = 0; k < n; ++k) prod.at(i, k) = f.add(prod(i, k), f.mul(pu[i], w[k]));
    }
    det_prod = f.mul(det_prod, gamma);
    if (f.pow(det_prod, nth_power_exp) != f.one()) ++chain.outside_psl;
    chain.matrices.emplace_back(prod, GroupTag::PSL_REP);
    chain.step_lengths.push_back(ratio(1, n));
    chain.total += chain.step_lengths.back();
    ++chain.factors;
    if (chain.factors > shift.rank) throw std::logic_error("rank-one peel did not lower the rank");
  }
  if (!(prod == target)) throw std::logic_error("rank chain does not end at the target");
  chain.target_length = ratio(shift.rank, n);
  chain.overshoot = chain.total - chain.target_length;
  return chain;
}

ChainReport verify_chain(const ChainPath& chain) {
  ChainReport rep;
  auto issue = [&](std::string s) { rep.issues.push_back(std::move(s)); };
  if (chain.step_lengths.size() + 1 != chain.size()) issue("step count does not match element count");

  if (chain.kind == MetricKind::Hamming) {
    if (chain.perms.empty()) {
      issue("empty chain");
    } else {
      const std::size_t n = chain.target_perm.degree();
      if (!chain.perms.front().is_identity()) issue("chain does not start at the identity");
      if (chain.perms.back() != chain.target_perm) issue("chain does not end at the target");
      for (std::size_t i = 1; i < chain.perms.size(); ++i) {
        const Rational d = hamming_distance(chain.perms[i - 1], chain.perms[i]);
        rep.recomputed_total += d;
        rep.max_step = std::max(rep.max_step, d);
        if (i - 1 < chain.step_lengths.size() && chain.step_lengths[i - 1] != d)
          issue("step " + std::to_string(i) + " annotated " + format_rational(chain.step_lengths[i - 1]) +
                ", recomputed " + format_rational(d));
        if (chain.alternating && !chain.perms[i].is_even()) issue("element " + std::to_string(i) + " is odd");
      }
      const Rational ell = hamming_distance(chain.target_perm, Permutation::identity(n));
      if (ell != chain.target_length) issue("target length mismatch");
      if (chain.total - ell != chain.overshoot) issue("overshoot mismatch");
    }
  } else {
    if (chain.matrices.empty() || !chain.target_matrix) {
      issue("empty chain");
    } else {
      const auto& F = chain.target_matrix->field();
      const std::size_t n = chain.target_matrix->n();
      if (!projectively_equal(chain.matrices.front().matrix(), Matrix::identity(F, n)))
        issue("chain does not start at the identity");
      if (!projectively_equal(chain.matrices.back().matrix(), chain.target_matrix->matrix()))
        issue("chain does not end at the target");
      for (std::size_t i = 1; i < chain.matrices.size(); ++i) {
        const Rational d = projective_rank_distance(chain.matrices[i - 1].matrix(), chain.matrices[i].matrix());
        rep.recomputed_total += d;
        rep.max_step = std::max(rep.max_step, d);
        if (i - 1 < chain.step_lengths.size() && chain.step_lengths[i - 1] != d)
          issue("step " + std::to_string(i) + " annotated " + format_rational(chain.step_lengths[i - 1]) +
                ", recomputed " + format_rational(d));
      }
      const Rational ell = projective_rank_distance(chain.target_matrix->matrix(), Matrix::identity(F, n));
      if (ell != chain.target_length) issue("target length mismatch");
      if (chain.total - ell != chain.overshoot) issue("overshoot mismatch");
    }
  }
  if (rep.recomputed_total != chain.total) issue("total mismatch");
  if (chain.overshoot < Rational(0)) issue("negative overshoot");
  rep.valid = rep.issues.empty();
  return rep;
}

std::string format_chain(const ChainPath& chain) {
  std::ostringstream os;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    os << i << ' ' << chain.element_string(i);
    if (i > 0) os << " step=" << format_rational(chain.step_lengths[i - 1]);
    os << '\n';
  }
  os << "total " << format_rational(chain.total) << '\n';
  os << "length " << format_rational(chain.target_length) << '\n';
  os << "overshoot " << format_rational(chain.overshoot) << '\n';
  if (chain.kind == MetricKind::Hamming) {
    os << "splits " << chain.splits << '\n';
    os << "parity_repairs " << chain.parity_repairs << '\n';
    if (chain.merged_repairs) os << "merged_repairs " << chain.merged_repairs << '\n';
  } else {
    os << "rank " << chain.rank_target << '\n';
    os << "factors " << chain.factors << '\n';
    os << "outside_psl " << chain.outside_psl << '\n';
  }
  return os.str();
}

}  // namespace msglab
