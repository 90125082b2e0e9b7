#include "msglab/metrics.hpp"

#include <cmath>
#include <iomanip>
#include <map>
#include <numeric>
#include <sstream>

namespace msglab {

std::string format_rational(const Rational& r) {
  std::ostringstream os;
  os << r.numerator() << '/' << r.denominator();
  return os.str();
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(text));
    return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
  } catch (const std::exception&) {
    throw std::invalid_argument("bad rational '" + text + "'");
  }
}

long double log_big(const BigInt& v) {
  if (v <= 0) throw std::domain_error("logarithm of non-positive integer");
  const std::size_t bits = msb(v) + 1;
  if (bits <= 64) return std::log(static_cast<long double>(static_cast<std::uint64_t>(v)));
  const std::size_t shift = bits - 64;
  const auto top = static_cast<std::uint64_t>(BigInt(v >> shift));
  return std::log(static_cast<long double>(top)) + static_cast<long double>(shift) * std::log(2.0L);
}

std::string format_real(long double v) {
  std::ostringstream os;
  os << std::setprecision(12) << static_cast<double>(v);
  return os.str();
}

long double MetricValue::value() const {
  if (is_exact()) {
    const auto& r = rational();
    return static_cast<long double>(r.numerator()) / static_cast<long double>(r.denominator());
  }
  return std::get<long double>(v_);
}

std::string MetricValue::to_string() const { return is_exact() ? format_rational(rational()) : format_real(value()); }

MetricKind parse_metric_kind(const std::string& s) {
  if (s == "hamming") return MetricKind::Hamming;
  if (s == "prank") return MetricKind::ProjectiveRank;
  if (s == "conj") return MetricKind::Conjugacy;
  throw std::invalid_argument("unknown metric kind '" + s + "'");
}

std::string to_string(MetricKind k) {
  switch (k) {
    case MetricKind::Hamming: return "hamming";
    case MetricKind::ProjectiveRank: return "prank";
    case MetricKind::Conjugacy: return "conj";
  }
  return "?";
}

std::string GroupDescriptor::to_string() const {
  static const char* names[] = {"S", "A", "GL", "SL", "PSL", "Sp"};
  std::string s = std::string(names[int(kind)]) + ":" + std::to_string(n);
  if (field) s += ":" + field->to_string();
  return s;
}

GroupDescriptor parse_group(const std::string& text) {
  const auto c1 = text.find(':');
  if (c1 == std::string::npos) throw std::invalid_argument("group descriptor needs 'kind:n'");
  const std::string kind = text.substr(0, c1);
  const auto c2 = text.find(':', c1 + 1);
  GroupDescriptor g;
  g.n = std::stoul(text.substr(c1 + 1, c2 == std::string::npos ? std::string::npos : c2 - c1 - 1));
  if (kind == "S" || kind == "A") {
    g.kind = kind == "S" ? GroupDescriptor::Kind::Symmetric : GroupDescriptor::Kind::Alternating;
    if (c2 != std::string::npos) throw std::invalid_argument("permutation groups take no field");
    return g;
  }
  if (kind == "GL") g.kind = GroupDescriptor::Kind::GL;
  else if (kind == "SL") g.kind = GroupDescriptor::Kind::SL;
  else if (kind == "PSL") g.kind = GroupDescriptor::Kind::PSL;
  else if (kind == "Sp") g.kind = GroupDescriptor::Kind::Sp;
  else throw std::invalid_argument("unknown group kind '" + kind + "'");
  if (c2 == std::string::npos) throw std::invalid_argument("matrix groups need a field");
  g.field = parse_field(text.substr(c2 + 1));
  return g;
}

BigInt factorial(std::size_t n) {
  BigInt r = 1;
  for (std::size_t i = 2; i <= n; ++i) r *= i;
  return r;
}

BigInt gl_order(std::size_t n, std::uint64_t q) {
  BigInt qn = boost::multiprecision::pow(BigInt(q), unsigned(n));
  BigInt r = 1, qi = 1;
  for (std::size_t i = 0; i < n; ++i) {
    r *= qn - qi;
    qi *= q;
  }
  return r;
}

BigInt sl_order(std::size_t n, std::uint64_t q) { return gl_order(n, q) / (q - 1); }

std::uint64_t sl_centre_order(std::size_t n, std::uint64_t q) { return std::gcd(std::uint64_t(n), q - 1); }

BigInt psl_order(std::size_t n, std::uint64_t q) { return sl_order(n, q) / sl_centre_order(n, q); }

BigInt group_order(const GroupDescriptor& g) {
  using K = GroupDescriptor::Kind;
  switch (g.kind) {
    case K::Symmetric: return factorial(g.n);
    case K::Alternating: return g.n < 2 ? BigInt(1) : factorial(g.n) / 2;
    case K::GL: return gl_order(g.n, g.field->q());
    case K::SL: return sl_order(g.n, g.field->q());
    case K::PSL: return psl_order(g.n, g.field->q());
    case K::Sp: {
      if (g.n % 2) throw std::invalid_argument("Sp needs even degree");
      const std::size_t m = g.n / 2;
      const BigInt q = g.field->q();
      BigInt r = boost::multiprecision::pow(q, unsigned(m * m));
      for (std::size_t i = 1; i <= m; ++i) r *= boost::multiprecision::pow(q, unsigned(2 * i)) - 1;
      return r;
    }
  }
  return 0;
}

Rational hamming_distance(const Permutation& sigma, const Permutation& tau) {
  if (sigma.degree() != tau.degree()) throw std::invalid_argument("degree mismatch");
  if (sigma.degree() == 0) return Rational(0);
  std::int64_t moved = 0;
  for (std::size_t i = 0; i < sigma.degree(); ++i)
    if (sigma[i] != tau[i]) ++moved;
  return Rational(moved, std::int64_t(sigma.degree()));
}

Rational projective_rank_distance(const Matrix& g, const Matrix& h, std::uint32_t budget) {
  if (!is_invertible(h)) throw std::invalid_argument("second argument must be invertible");
  return Rational(std::int64_t(min_rank_shift(g, h, budget).rank), std::int64_t(g.rows()));
}

Rational projective_rank_distance(const ClassicalElement& g, const ClassicalElement& h, std::uint32_t budget) {
  return projective_rank_distance(g.matrix(), h.matrix(), budget);
}

BigInt class_size_perm(const std::vector<std::size_t>& ct, std::size_t n, bool in_alternating) {
  std::size_t total = 0;
  std::map<std::size_t, std::size_t> mult;
  std::size_t even_cycles = 0;
  for (auto len : ct) {
    if (len == 0) throw std::invalid_argument("cycle length must be positive");
    total += len;
    ++mult[len];
    if (len % 2 == 0) ++even_cycles;
  }
  if (total != n) throw std::invalid_argument("cycle type does not sum to n");
  if (in_alternating && even_cycles % 2 != 0) throw std::invalid_argument("odd cycle type in alternating group");
  BigInt denom = 1;
  bool splits = true;
  for (const auto& [len, m] : mult) {
    denom *= boost::multiprecision::pow(BigInt(len), unsigned(m)) * factorial(m);
    if (len % 2 == 0 || m > 1) splits = false;
  }
  BigInt size = factorial(n) / denom;
  if (in_alternating && splits && n > 1) size /= 2;
  return size;
}

namespace {

std::uint64_t count_det_one(const std::vector<Matrix>& basis, const Matrix& zero, std::uint64_t budget) {
  std::uint64_t count = 0;
  const Elem one = zero.F().one();
  for_each_in_span(basis, zero, budget, [&](const Matrix& m) {
    if (det(m) == one) ++count;
    return true;
  });
  return count;
}

// Scalar beta with det(beta x) = 1, if any.
std::optional<Elem> sl_normalizer(const Matrix& x) {
  const Field& f = x.F();
  const Elem d = det(x);
  for (auto beta : f.enumerate_nonzero())
    if (f.mul(f.pow(beta, x.rows()), d) == f.one()) return beta;
  return std::nullopt;
}

}  // namespace

BigInt class_size_matrix(const ClassicalElement& x, std::uint64_t budget) {
  const Matrix& m = x.matrix();
  const Field& f = m.F();
  const std::size_t n = m.rows();
  const std::uint64_t q = f.q();
  const Matrix zero(m.field(), n, n);
  switch (x.tag()) {
    case GroupTag::GL: {
      std::uint64_t count = 0;
      for_each_in_span(commutant_basis(m), zero, budget, [&](const Matrix& c) {
        if (!det(c).is_zero()) ++count;
        return true;
      });
      return gl_order(n, q) / count;
    }
    case GroupTag::SL: return sl_order(n, q) / count_det_one(commutant_basis(m), zero, budget);
    case GroupTag::PSL_REP: {
      const auto beta = sl_normalizer(m);
      if (!beta) throw std::invalid_argument("element has no scalar multiple in SL");
      const Matrix xs = m.scaled(*beta);
      // |C_PSL(xZ)| * |Z| = #{g in SL : g x g^-1 = lambda x, lambda in Z}.
      std::uint64_t lifted = 0;
      for (auto lambda : f.enumerate_nonzero()) {
        if (f.pow(lambda, n) != f.one()) continue;
        lifted += count_det_one(intertwiner_basis(xs.scaled(lambda), xs), zero, budget);
      }
      const std::uint64_t z = sl_centre_order(n, q);
      return psl_order(n, q) * z / lifted;
    }
    case GroupTag::Sp: throw std::invalid_argument("class_size_matrix does not support Sp");
  }
  return 0;
}

long double conjugacy_distance(const Permutation& g, const Permutation& h, const GroupDescriptor& group) {
  if (!group.is_permutation_group()) throw std::invalid_argument("permutation distance needs A_n or S_n");
  if (g.degree() != group.n || h.degree() != group.n) throw std::invalid_argument("degree mismatch");
  const bool alt = group.kind == GroupDescriptor::Kind::Alternating;
  if (alt && (group.n < 5 || !g.is_even() || !h.is_even()))
    throw std::invalid_argument("conjugacy metric needs even permutations in A_n, n >= 5");
  if (!alt && group.n < 3) throw std::invalid_argument("conjugacy metric needs trivial centre");
  const Permutation d = g * perm_inverse(h);
  if (d.is_identity()) return 0.0L;
  return log_big(class_size_perm(cycle_type(d), group.n, alt)) / log_big(group_order(group));
}

long double conjugacy_distance(const Matrix& g, const Matrix& h, const GroupDescriptor& group, std::uint64_t budget) {
  if (group.kind != GroupDescriptor::Kind::PSL)
    throw std::invalid_argument("matrix conjugacy metric is defined on PSL (trivial centre)");
  if (g.rows() != group.n) throw std::invalid_argument("degree mismatch");
  require_same_field(g.F(), *group.field);
  const Matrix d = g * invert(h);
  if (projectively_equal(d, Matrix::identity(g.field(), g.rows()))) return 0.0L;
  const BigInt size = class_size_matrix(ClassicalElement(d, GroupTag::PSL_REP), budget);
  return log_big(size) / log_big(group_order(group));
}

MetricValue length(const Permutation& g, MetricKind kind) {
  switch (kind) {
    case MetricKind::Hamming: return MetricValue::exact(hamming_distance(g, Permutation::identity(g.degree())));
    case MetricKind::Conjugacy: {
      GroupDescriptor grp;
      grp.kind = GroupDescriptor::Kind::Alternating;
      grp.n = g.degree();
      return MetricValue::real(conjugacy_distance(g, Permutation::identity(g.degree()), grp));
    }
    case MetricKind::ProjectiveRank: break;
  }
  throw std::invalid_argument("projective rank length needs a matrix");
}

MetricValue length(const ClassicalElement& g, MetricKind kind, std::uint64_t budget) {
  const Matrix id = Matrix::identity(g.field(), g.n());
  switch (kind) {
    case MetricKind::ProjectiveRank: return MetricValue::exact(projective_rank_distance(g.matrix(), id));
    case MetricKind::Conjugacy: {
      GroupDescriptor grp;
      grp.kind = GroupDescriptor::Kind::PSL;
      grp.n = g.n();
      grp.field = g.field();
      return MetricValue::real(conjugacy_distance(g.matrix(), id, grp, budget));
    }
    case MetricKind::Hamming: break;
  }
  throw std::invalid_argument("Hamming length needs a permutation");
}

}  // namespace msglab
