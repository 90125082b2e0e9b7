#include "msglab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>

namespace msglab {

namespace {

std::vector<std::string> split_list(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, sep)) {
    const auto b = part.find_first_not_of(" \t");
    const auto e = part.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(part.substr(b, e - b + 1));
  }
  return out;
}

template <class T>
std::vector<T> parse_numbers(const std::string& text) {
  std::vector<T> out;
  for (const auto& s : split_list(text, ',')) out.push_back(T(std::stoull(s)));
  return out;
}

std::string str(const Rational& r) { return format_rational(r); }
std::string str(long double v) { return format_real(v); }
std::string str(const BigInt& v) { return v.str(); }

long double median(std::vector<long double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2;
}

const std::vector<std::pair<std::uint32_t, std::uint32_t>>& suite_fields() {
  static const std::vector<std::pair<std::uint32_t, std::uint32_t>> fields{{2, 1}, {3, 1}, {5, 1}, {7, 1}, {2, 2}, {3, 2}};
  return fields;
}

std::uint64_t random_coprime_k(Rng& rng, std::uint32_t p, std::uint64_t max_k) {
  std::uint64_t k;
  do k = 1 + uniform_below(rng, max_k);
  while (k % p == 0);
  return k;
}

Elem random_nonzero(const Field& f, Rng& rng) { return Elem{std::uint32_t(1 + uniform_below(rng, f.q() - 1))}; }

Matrix block_diagonal(FieldPtr f, const std::vector<Matrix>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.rows();
  Matrix m(f, n, n);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) m.at(off + i, off + j) = b(i, j);
    off += b.rows();
  }
  return m;
}

// Conjugate of a block-diagonal k-th root of alpha (identity padding where
// no factor fits), perturbed by a random matrix of rank <= 2 when `perturb`.
Matrix planted_near_root(FieldPtr f, std::size_t n, std::uint64_t k, Elem alpha, bool perturb, Rng& rng) {
  const auto factors = factor_squarefree(Poly::binomial(f, k, alpha));
  std::vector<Matrix> blocks;
  std::size_t used = 0;
  while (used < n) {
    std::vector<const Poly*> fit;
    for (const auto& g : factors)
      if (std::size_t(g.degree()) <= n - used) fit.push_back(&g);
    if (fit.empty()) {
      blocks.push_back(Matrix::identity(f, n - used));
      break;
    }
    blocks.push_back(companion_matrix(*fit[uniform_below(rng, fit.size())]));
    used += blocks.back().rows();
  }
  const Matrix p = random_invertible(f, n, rng);
  Matrix y = p * block_diagonal(f, blocks) * invert(p);
  if (!perturb) return y;
  for (int attempt = 0; attempt < 20; ++attempt) {
    const std::size_t r = 1 + uniform_below(rng, 2);
    const Matrix z = y + random_matrix(f, n, r, rng) * random_matrix(f, r, n, rng);
    if (is_invertible(z)) return z;
  }
  return y;
}

std::string near_root_reproducer(const Field& f, const Matrix& y, std::uint64_t k, Elem alpha) {
  std::ostringstream os;
  os << "field=" << f.to_string() << " k=" << k << " alpha=" << f.format(alpha) << " y=" << format_matrix(y);
  return os.str();
}

void fail(SuiteResult& r, const std::string& why, const std::string& reproducer = {}) {
  if (r.passed) {
    r.detail = why;
    if (!reproducer.empty()) r.reproducer = reproducer;
  }
  r.passed = false;
}

}  // namespace

void FamilyDescriptor::validate() const {
  if (sizes.empty()) throw std::invalid_argument("empty size schedule");
  for (std::size_t i = 1; i < sizes.size(); ++i)
    if (sizes[i] <= sizes[i - 1]) throw std::invalid_argument("size schedule must be strictly increasing");
  if (kind == Kind::Alternating) {
    if (!fields.empty()) throw std::invalid_argument("alternating family takes no field schedule");
    if (sizes.front() < 5) throw std::invalid_argument("alternating family needs n >= 5");
    return;
  }
  if (fields.size() != sizes.size()) throw std::invalid_argument("field schedule must match the size schedule");
  std::vector<std::uint64_t> chars;
  for (auto q : fields) {
    std::uint64_t p = 2;
    while (q % p != 0) ++p;
    std::uint64_t r = q;
    while (r % p == 0) r /= p;
    if (r != 1) throw std::invalid_argument("field size " + std::to_string(q) + " is not a prime power");
    chars.push_back(p);
  }
  if (declared_characteristic == 0) {
    for (std::size_t i = 1; i < chars.size(); ++i)
      if (chars[i] <= chars[i - 1])
        throw std::invalid_argument("infinite characteristic needs strictly increasing characteristics");
  } else if (chars.back() != declared_characteristic) {
    throw std::invalid_argument("declared characteristic differs from the tail of the field schedule");
  }
}

FamilyDescriptor parse_family(const std::string& text) {
  const auto parts = split_list(text, ':');
  if (parts.empty()) throw std::invalid_argument("empty family");
  FamilyDescriptor f;
  if (parts[0] == "A") {
    if (parts.size() != 2) throw std::invalid_argument("expected A:<sizes>");
    f.kind = FamilyDescriptor::Kind::Alternating;
    f.sizes = parse_numbers<std::size_t>(parts[1]);
  } else if (parts[0] == "PSL") {
    if (parts.size() != 4) throw std::invalid_argument("expected PSL:<sizes>:<fields>:<characteristic|inf>");
    f.kind = FamilyDescriptor::Kind::PSL;
    f.sizes = parse_numbers<std::size_t>(parts[1]);
    f.fields = parse_numbers<std::uint64_t>(parts[2]);
    f.declared_characteristic = parts[3] == "inf" ? 0 : std::stoull(parts[3]);
  } else {
    throw std::invalid_argument("unknown family kind '" + parts[0] + "'");
  }
  f.validate();
  return f;
}

void ExperimentReport::add(std::size_t family, std::size_t n, std::uint64_t q, std::size_t trial, std::string quantity,
                           std::string value) {
  rows.push_back(ReportRow{family, n, q, trial, std::move(quantity), std::move(value)});
}

std::string ExperimentReport::to_csv() const {
  std::ostringstream os;
  os << "family,n,q,trial,quantity,value\n";
  for (const auto& r : rows) {
    os << r.family << ',' << r.n << ',';
    if (r.q) os << r.q;
    os << ',' << r.trial << ',' << r.quantity << ',';
    // Free-text values may contain commas.
    if (r.value.find_first_of(",\"") != std::string::npos) {
      os << '"';
      for (char c : r.value) os << (c == '"' ? "\"\"" : std::string(1, c));
      os << '"';
    } else {
      os << r.value;
    }
    os << '\n';
  }
  return os.str();
}

std::string ExperimentReport::metadata_text() const {
  std::ostringstream os;
  for (const auto& [k, v] : metadata) os << k << " = " << v << '\n';
  return os.str();
}

ExperimentReport equivalence_experiment(const FamilyDescriptor& family, std::size_t trials, std::uint64_t seed) {
  family.validate();
  ExperimentReport rep;
  rep.metadata["experiment"] = "equivalence";
  rep.metadata["seed"] = std::to_string(seed);
  rep.metadata["trials"] = std::to_string(trials);
  rep.metadata["rng"] = "mt19937_64 seeded by seed_seq(seed, row index)";
  for (std::size_t fi = 0; fi < family.sizes.size(); ++fi) {
    const std::size_t n = family.sizes[fi];
    const std::uint64_t q = family.kind == FamilyDescriptor::Kind::PSL ? family.fields[fi] : 0;
    std::vector<long double> diffs;
    for (std::size_t t = 0; t < trials; ++t) {
      Rng rng = derive_rng(seed, fi * trials + t);
      try {
        Rational ell;
        long double dc;
        if (family.kind == FamilyDescriptor::Kind::Alternating) {
          const Permutation s = random_even_perm(n, rng);
          ell = length(s, MetricKind::Hamming).rational();
          dc = length(s, MetricKind::Conjugacy).value();
          rep.add(fi, n, q, t, "hamming_length", str(ell));
        } else {
          const FieldPtr f = parse_field(std::to_string(q));
          const ClassicalElement g(random_sl(n, f, rng).matrix(), GroupTag::PSL_REP);
          ell = length(g, MetricKind::ProjectiveRank).rational();
          dc = length(g, MetricKind::Conjugacy).value();
          rep.add(fi, n, q, t, "prank_length", str(ell));
        }
        rep.add(fi, n, q, t, "conjugacy_length", str(dc));
        if (ell == Rational(0)) continue;
        const long double l = boost::rational_cast<long double>(ell);
        rep.add(fi, n, q, t, "ratio", str(dc / l));
        rep.add(fi, n, q, t, "abs_diff", str(std::fabs(dc - l)));
        diffs.push_back(std::fabs(dc - l));
      } catch (const BudgetError& e) {
        rep.add(fi, n, q, t, "error", e.what());
      }
    }
    rep.add(fi, n, q, trials, "median_abs_diff", str(median(diffs)));
  }
  return rep;
}

ExperimentReport fingerprint_experiment(const FamilyDescriptor& family, const std::vector<std::uint64_t>& primes,
                                        std::uint64_t seed) {
  family.validate();
  if (family.kind != FamilyDescriptor::Kind::PSL) throw std::invalid_argument("fingerprints need a PSL family");
  ExperimentReport rep;
  rep.metadata["experiment"] = "fingerprint";
  rep.metadata["seed"] = std::to_string(seed);
  for (std::size_t fi = 0; fi < family.sizes.size(); ++fi) {
    const std::size_t n = family.sizes[fi];
    const std::uint64_t q = family.fields[fi];
    const FieldPtr f = parse_field(std::to_string(q));
    for (std::size_t pi = 0; pi < primes.size(); ++pi) {
      const std::uint64_t p = primes[pi];
      try {
        if (p == f->p()) {
          const auto cert = build_niceblock(n, f, NiceblockGroup::SL, seed);
          const auto fp = characteristic_fingerprint(cert.x.matrix());
          rep.add(fi, n, q, pi, "p", std::to_string(p));
          rep.add(fi, n, q, pi, "case", "niceblock");
          rep.add(fi, n, q, pi, "p_core_order", str(fp.p_core_order));
          rep.add(fi, n, q, pi, "x_length", str(projective_rank_distance(cert.x.matrix(), Matrix::identity(f, 2 * n))));
        } else {
          const Matrix x = semisimple_prime_order_element(f, 2 * n, p);
          const auto fp = characteristic_fingerprint(x);
          rep.add(fi, n, q, pi, "p", std::to_string(p));
          rep.add(fi, n, q, pi, "case", "semisimple");
          rep.add(fi, n, q, pi, "p_core_order", str(fp.p_core_order));
          rep.add(fi, n, q, pi, "gl_blocks", std::to_string(fp.reductive_part.factors.size()));
          rep.add(fi, n, q, pi, "centralizer_order", str(fp.reductive_part.total_order));
        }
      } catch (const std::exception& e) {
        rep.add(fi, n, q, pi, "p", std::to_string(p));
        rep.add(fi, n, q, pi, "error", e.what());
      }
    }
  }
  return rep;
}

SuiteResult near_root_suite(const SuiteParams& params) {
  SuiteResult r;
  r.name = "near_root";
  const std::size_t per_field = params.trials ? params.trials : 500;
  const auto start = std::chrono::steady_clock::now();
  std::size_t checked = 0, failures = 0;
  for (std::size_t fi = 0; fi < suite_fields().size(); ++fi) {
    const auto [p, e] = suite_fields()[fi];
    const FieldPtr f = Field::make(p, e);
    for (std::size_t t = 0; t < per_field; ++t) {
      Rng rng = derive_rng(params.seed, fi * per_field + t);
      const std::size_t n = 1 + uniform_below(rng, 12);
      const std::uint64_t k = random_coprime_k(rng, p, 6);
      const Elem alpha = random_nonzero(*f, rng);
      const Matrix y = t % 2 ? random_invertible(f, n, rng) : planted_near_root(f, n, k, alpha, true, rng);
      const NearRoot nr = prepare_near_root(y, k, alpha);
      const std::size_t defect = rank(matpow(y, std::int64_t(k)) - Matrix::scalar(f, n, alpha));
      const std::size_t dist = rank(nr.x - y);
      const bool ok = satisfies_split_condition(nr.x, nr.dec) && nr.dec.dim_S() <= defect && dist <= defect;
      ++checked;
      if (!ok) {
        ++failures;
        fail(r, "near-root bound or split condition violated", near_root_reproducer(*f, y, k, alpha));
      }
      r.report.add(fi, n, f->q(), t, "defect_rank", std::to_string(defect));
      r.report.add(fi, n, f->q(), t, "dim_S", std::to_string(nr.dec.dim_S()));
      r.report.add(fi, n, f->q(), t, "distance_rank", std::to_string(dist));
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.summary["instances"] = std::to_string(checked);
  r.summary["failures"] = std::to_string(failures);
  if (params.trials == 0 && secs > 60) fail(r, "runtime above 60 s");
  if (r.passed) r.detail = std::to_string(checked) + " instances, 0 failures, " + str((long double)secs) + " s";
  return r;
}

SuiteResult centralize_suite(const SuiteParams& params) {
  SuiteResult r;
  r.name = "centralize";
  const std::size_t total = params.trials ? params.trials : 500;
  std::size_t failures = 0, max_slack_used = 0;
  for (std::size_t t = 0; t < total; ++t) {
    const std::size_t fi = t % suite_fields().size();
    const auto [p, e] = suite_fields()[fi];
    const FieldPtr f = Field::make(p, e);
    Rng rng = derive_rng(params.seed, t);
    const std::size_t n = 2 + uniform_below(rng, 9);
    const std::uint64_t k = random_coprime_k(rng, p, 6);
    const Elem alpha = random_nonzero(*f, rng);
    const Matrix y = planted_near_root(f, n, k, alpha, t % 3 != 0, rng);
    const NearRoot nr = prepare_near_root(y, k, alpha);
    // Half the inputs nearly commute with x: a commuting matrix plus a rank-one change.
    Matrix phi = random_invertible(f, n, rng);
    if (t % 2 == 0) {
      const Matrix c = matpow(nr.x, std::int64_t(uniform_below(rng, 5))) +
                       random_matrix(f, n, 1, rng) * random_matrix(f, 1, n, rng);
      if (is_invertible(c)) phi = c;
    }
    std::ostringstream repro;
    repro << near_root_reproducer(*f, y, k, alpha) << " phi=" << format_matrix(phi) << " seed=" << t;
    try {
      const auto res = approx_centralize(nr.x, nr.dec, phi, t);
      const std::size_t comm = rank(nr.x * phi - phi * nr.x);
      const std::size_t dist = rank(phi - res.psi);
      const std::size_t bound = 2 * k * k * comm + 3 * nr.dec.dim_S();
      const bool ok = res.psi * nr.x == nr.x * res.psi && is_invertible(res.psi) && dist <= bound;
      if (!ok) {
        ++failures;
        fail(r, "centralizing approximation failed", repro.str());
      }
      if (bound > 0) max_slack_used = std::max(max_slack_used, dist * 100 / bound);
      r.report.add(fi, n, f->q(), t, "commutator_rank", std::to_string(comm));
      r.report.add(fi, n, f->q(), t, "distance_rank", std::to_string(dist));
      r.report.add(fi, n, f->q(), t, "bound", std::to_string(bound));
    } catch (const BoundViolation& ex) {
      ++failures;
      fail(r, ex.what(), ex.reproducer());
    }
  }
  r.summary["instances"] = std::to_string(total);
  r.summary["failures"] = std::to_string(failures);
  r.summary["max_percent_of_bound"] = std::to_string(max_slack_used);
  if (r.passed) r.detail = std::to_string(total) + " instances, 0 failures";
  return r;
}

SuiteResult factorization_suite(const SuiteParams& params) {
  SuiteResult r;
  r.name = "factorization";
  const std::size_t total = params.trials ? params.trials : 300;
  std::size_t compared = 0, failures = 0;
  for (std::size_t t = 0; t < total; ++t) {
    const std::size_t fi = t % suite_fields().size();
    const auto [p, e] = suite_fields()[fi];
    const FieldPtr f = Field::make(p, e);
    Rng rng = derive_rng(params.seed, t);
    const std::size_t n = 1 + uniform_below(rng, 6);
    const std::uint64_t k = random_coprime_k(rng, p, 6);
    const Elem alpha = random_nonzero(*f, rng);
    const Matrix y = planted_near_root(f, n, k, alpha, t % 2 == 1, rng);
    const NearRoot nr = prepare_near_root(y, k, alpha);
    const auto d = centralizer_factorization(nr.x, nr.dec);
    r.report.add(fi, n, f->q(), t, "factors", std::to_string(d.factors.size()));
    r.report.add(fi, n, f->q(), t, "predicted_order", str(d.total_order));
    if (d.factors.size() > k + 1) {
      ++failures;
      fail(r, "more than k + 1 factors", near_root_reproducer(*f, y, k, alpha));
    }
    const std::size_t dim = commutant_basis(nr.x).size();
    if (std::pow(double(f->q()), double(dim)) <= 1e6) {
      const BigInt brute = brute_force_centralizer_order(nr.x, 1000000);
      r.report.add(fi, n, f->q(), t, "brute_force_order", str(brute));
      ++compared;
      if (brute != d.total_order) {
        ++failures;
        fail(r, "predicted order " + str(d.total_order) + " != enumerated " + str(brute),
             near_root_reproducer(*f, y, k, alpha));
      }
    }
  }
  r.summary["instances"] = std::to_string(total);
  r.summary["compared"] = std::to_string(compared);
  r.summary["failures"] = std::to_string(failures);
  if (r.passed) r.detail = std::to_string(total) + " instances, " + std::to_string(compared) + " compared by enumeration";
  return r;
}

SuiteResult niceblock_suite(const SuiteParams& params) {
  SuiteResult r;
  r.name = "niceblock";
  std::size_t checked = 0, searched = 0;
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const FieldPtr f = Field::make(p);
    for (std::size_t n = 2; n <= 6; ++n) {
      for (auto grp : {NiceblockGroup::SL, NiceblockGroup::Sp}) {
        const std::string tag = "p=" + std::to_string(p) + " n=" + std::to_string(n) + " " + to_string(grp);
        const auto cert = build_niceblock(n, f, grp, params.seed);
        ++checked;
        searched += cert.used_search;
        for (const auto& issue : verify_niceblock(cert)) fail(r, tag + ": " + issue);
        const Matrix id = Matrix::identity(f, 2 * n);
        const Rational xl = projective_rank_distance(cert.x.matrix(), id);
        const Rational ul = projective_rank_distance(cert.witness_u, id);
        const Rational cl = projective_rank_distance(cert.commutator, id);
        const Rational target = (Rational(1) - Rational(2, std::int64_t(n))) / Rational(3);
        if (xl != Rational(1, 2)) fail(r, tag + ": length of x is " + str(xl));
        if (ul < Rational(1, 2)) fail(r, tag + ": witness u shorter than 1/2");
        if (cl < target) fail(r, tag + ": commutator length " + str(cl) + " below " + str(target));
        if (n == 2) {
          const std::size_t expected = grp == NiceblockGroup::SL ? p * p * p * p : p * p * p;
          const std::size_t got = generate_group(cert.A_generators).size();
          if (got != expected) fail(r, tag + ": A-group has " + std::to_string(got) + " elements");
          r.report.add(grp == NiceblockGroup::SL ? 0 : 1, n, p, 0, "a_group_enumerated", std::to_string(got));
        }
        const std::size_t fam = grp == NiceblockGroup::SL ? 0 : 1;
        r.report.add(fam, n, p, 0, "x_length", str(xl));
        r.report.add(fam, n, p, 0, "witness_u_length", str(ul));
        r.report.add(fam, n, p, 0, "commutator_length", str(cl));
        r.report.add(fam, n, p, 0, "commutator_target", str(target));
        r.report.add(fam, n, p, 0, "p_core_order", str(cert.p_core_order));
      }
    }
  }
  r.summary["certificates"] = std::to_string(checked);
  r.summary["searched_witnesses"] = std::to_string(searched);
  if (r.passed) r.detail = std::to_string(checked) + " certificates verified";
  return r;
}

SuiteResult geodesic_suite(const SuiteParams& params) {
  SuiteResult r;
  r.name = "geodesics";
  const std::size_t trials = params.trials ? params.trials : 200;
  std::size_t hamming = 0, zero_targets = 0, merged = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = derive_rng(params.seed, t);
    const std::size_t n = 6 + uniform_below(rng, 60);
    const Rational max_step(std::int64_t(2 + uniform_below(rng, n - 1)), std::int64_t(n));
    const Permutation s = random_even_perm(n, rng);
    const auto c = hamming_chain(s, max_step);
    const auto rep = verify_chain(c);
    ++hamming;
    if (!rep.valid) fail(r, "invalid Hamming chain: " + rep.issues.front(), format_permutation(s));
    if (c.merged_repairs) {
      ++merged;
    } else {
      const Rational predicted(std::int64_t(c.splits + 2 * c.parity_repairs), std::int64_t(n));
      if (c.overshoot != predicted) fail(r, "Hamming overshoot differs from splits and repairs", format_permutation(s));
      if (rep.max_step > max_step + Rational(2, std::int64_t(n))) fail(r, "Hamming step above max_step + 2/n");
    }
    r.report.add(0, n, 0, t, "overshoot", str(c.overshoot));
    r.report.add(0, n, 0, t, "max_step", str(rep.max_step));

    // Whole-cycle decomposable: odd cycles no longer than the step size.
    const std::size_t cap = std::max<std::size_t>(3, std::size_t(boost::rational_cast<double>(max_step * Rational(std::int64_t(n))) + 1e-9));
    std::vector<std::uint32_t> pts(n);
    for (std::uint32_t i = 0; i < n; ++i) pts[i] = i;
    std::shuffle(pts.begin(), pts.end(), rng);
    std::vector<std::vector<std::uint32_t>> cycles;
    for (std::size_t pos = 0; pos + 3 <= n;) {
      std::size_t len = 3 + 2 * uniform_below(rng, (cap - 1) / 2);
      if (pos + len > n) break;
      cycles.emplace_back(pts.begin() + std::ptrdiff_t(pos), pts.begin() + std::ptrdiff_t(pos + len));
      pos += len;
    }
    const Permutation whole = Permutation::from_cycles(n, cycles);
    const auto wc = hamming_chain(whole, max_step);
    ++zero_targets;
    if (wc.overshoot != Rational(0) || !verify_chain(wc).valid)
      fail(r, "whole-cycle target has nonzero overshoot", format_permutation(whole));
  }

  std::size_t rank_chains = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = derive_rng(params.seed ^ 0x9e3779b97f4a7c15ULL, t);
    const auto [p, e] = suite_fields()[t % suite_fields().size()];
    const FieldPtr f = Field::make(p, e);
    const std::size_t n = 2 + uniform_below(rng, 9);
    const auto g = random_sl(n, f, rng);
    const auto c = rank_metric_chain(g, Rational(1, std::int64_t(n)));
    const auto rep = verify_chain(c);
    ++rank_chains;
    if (!rep.valid) fail(r, "invalid rank chain: " + rep.issues.front(), format_classical(g));
    if (rep.max_step != Rational(1, std::int64_t(n)) && c.factors > 0) fail(r, "rank chain step is not 1/n");
    // Diagonalizable with eigenvalue 1 of high multiplicity: alpha = 1.
    std::vector<Elem> diag(n, f->one());
    Elem prod = f->one();
    const std::size_t moved = uniform_below(rng, n / 2 + 1);
    for (std::size_t i = 0; i + 1 < moved; ++i) {
      diag[i] = random_nonzero(*f, rng);
      prod = f->mul(prod, diag[i]);
    }
    if (moved > 0) diag[moved - 1] = f->inv(prod);
    const Matrix pm = random_invertible(f, n, rng);
    const ClassicalElement dg(pm * Matrix::diagonal(f, diag) * invert(pm), GroupTag::SL);
    const auto dc = rank_metric_chain(dg, Rational(1, std::int64_t(n)));
    if (dc.overshoot != Rational(0) || !verify_chain(dc).valid) fail(r, "diagonalizable target has overshoot");
    r.report.add(1, n, f->q(), t, "rank", std::to_string(c.rank_target));
    r.report.add(1, n, f->q(), t, "factors", std::to_string(c.factors));
    r.report.add(1, n, f->q(), t, "outside_psl", std::to_string(c.outside_psl));
  }

  // n = 200: rank chains step by 1/200; Hamming chains at max_step 1/100.
  Rational worst_rank(0), worst_hamming(0), worst_symmetric(0);
  const std::size_t big = 200;
  for (std::size_t t = 0; t < 3; ++t) {
    Rng rng = derive_rng(params.seed + 200, t);
    const auto g = random_sl(big, Field::make(2), rng);
    const auto c = rank_metric_chain(g, Rational(1, 100));
    const auto rep = verify_chain(c);
    if (!rep.valid) fail(r, "invalid rank chain at n = 200");
    worst_rank = std::max(worst_rank, rep.max_step);
    const auto h = hamming_chain(random_even_perm(big, rng), Rational(1, 100));
    const auto hrep = verify_chain(h);
    if (!hrep.valid) fail(r, "invalid Hamming chain at n = 200");
    worst_hamming = std::max(worst_hamming, hrep.max_step);
    const auto sh = hamming_chain(random_perm(big, rng), Rational(1, 100), false);
    const auto srep = verify_chain(sh);
    if (!srep.valid) fail(r, "invalid S_n Hamming chain at n = 200");
    worst_symmetric = std::max(worst_symmetric, srep.max_step);
    r.report.add(2, big, 0, t, "symmetric_max_step", str(srep.max_step));
    r.report.add(2, big, 2, t, "rank_max_step", str(rep.max_step));
    r.report.add(2, big, 0, t, "hamming_max_step", str(hrep.max_step));
  }
  if (worst_rank > Rational(1, 100)) fail(r, "n = 200 rank chain step above 1/100");
  if (worst_hamming > Rational(1, 100) + Rational(2, 200)) fail(r, "n = 200 Hamming chain step above 1/100 + 2/n");
  if (worst_symmetric > Rational(1, 100)) fail(r, "n = 200 S_n Hamming chain step above 1/100");

  // Step bound along a family at max_step = 3/n.
  Rational prev(1);
  for (std::size_t n : {25u, 50u, 100u, 200u, 400u}) {
    Rng rng = derive_rng(params.seed + 400, n);
    const auto c = hamming_chain(random_even_perm(n, rng), Rational(3, std::int64_t(n)));
    const Rational m = verify_chain(c).max_step;
    r.report.add(3, n, 0, 0, "trend_max_step", str(m));
    if (m >= prev) fail(r, "max step does not decrease along the family");
    prev = m;
  }

  r.summary["hamming_chains"] = std::to_string(hamming);
  r.summary["merged_repairs"] = std::to_string(merged);
  r.summary["rank_chains"] = std::to_string(rank_chains);
  r.summary["n200_rank_max_step"] = str(worst_rank);
  r.summary["n200_hamming_max_step"] = str(worst_hamming);
  r.summary["n200_symmetric_max_step"] = str(worst_symmetric);
  if (r.passed)
    r.detail = std::to_string(hamming) + " Hamming + " + std::to_string(zero_targets) + " whole-cycle + " +
               std::to_string(rank_chains) + " rank chains; n=200 rank step " + str(worst_rank) + ", A_n step " +
               str(worst_hamming) + ", S_n step " + str(worst_symmetric);
  return r;
}

SuiteResult equivalence_suite(const SuiteParams& params) {
  SuiteResult r;
  r.name = "equivalence";
  const auto start = std::chrono::steady_clock::now();
  FamilyDescriptor fam;
  fam.kind = FamilyDescriptor::Kind::Alternating;
  fam.sizes = {50, 100, 500, 1000};
  r.report = equivalence_experiment(fam, params.trials ? params.trials : 200, params.seed);
  std::vector<long double> medians;
  for (const auto& row : r.report.rows)
    if (row.quantity == "median_abs_diff") medians.push_back(std::stold(row.value));
  std::ostringstream os;
  for (std::size_t i = 0; i < medians.size(); ++i) {
    os << (i ? " " : "") << "n=" << fam.sizes[i] << ":" << format_real(medians[i]);
    r.summary["median_n" + std::to_string(fam.sizes[i])] = format_real(medians[i]);
    if (i > 0 && !(medians[i] < medians[i - 1])) fail(r, "median |d_c - l_H| not decreasing: " + os.str());
  }
  if (medians.empty() || !(medians.back() < 0.1L)) fail(r, "median at n = 1000 not below 0.1");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (params.trials == 0 && secs > 120) fail(r, "runtime above 120 s");
  if (r.passed) r.detail = "medians " + os.str() + ", " + format_real((long double)secs) + " s";
  return r;
}

std::vector<std::string> suite_names() {
  return {"near_root", "centralize", "factorization", "niceblock", "geodesics", "equivalence", "fingerprint"};
}

SuiteResult run_named_suite(const std::string& name, const SuiteParams& params) {
  if (name == "near_root") return near_root_suite(params);
  if (name == "centralize") return centralize_suite(params);
  if (name == "factorization") return factorization_suite(params);
  if (name == "niceblock") return niceblock_suite(params);
  if (name == "geodesics") return geodesic_suite(params);
  if (name == "equivalence") return equivalence_suite(params);
  if (name == "fingerprint") {
    SuiteResult r;
  r.name = "fingerprint";
    FamilyDescriptor fam;
    fam.kind = FamilyDescriptor::Kind::PSL;
    fam.sizes = {2, 3, 4};
    fam.fields = {9, 9, 9};
    fam.declared_characteristic = 3;
    r.report = fingerprint_experiment(fam, {2, 3, 5}, params.seed);
    std::size_t rows = 0;
    for (const auto& row : r.report.rows) {
      if (row.quantity == "p_core_order") ++rows;
      if (row.quantity == "error") fail(r, "fingerprint row failed: " + row.value);
    }
    r.summary["rows"] = std::to_string(rows);
    if (r.passed) r.detail = std::to_string(rows) + " fingerprint rows";
    return r;
  }
  throw std::invalid_argument("unknown suite '" + name + "'");
}

std::map<std::string, std::string> parse_config(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("config line " + std::to_string(lineno) + ": missing '='");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

int run_suite(const std::map<std::string, std::string>& config, std::ostream& log) {
  auto get = [&](const std::string& key) -> std::optional<std::string> {
    auto it = config.find(key);
    if (it == config.end()) return std::nullopt;
    return it->second;
  };
  SuiteParams params;
  if (auto s = get("seed")) params.seed = std::stoull(*s);
  if (auto s = get("trials")) params.trials = std::stoull(*s);
  const auto out_dir = get("out_dir");
  if (out_dir) std::filesystem::create_directories(*out_dir);

  std::map<std::string, std::string> summary;
  bool ok = true;
  for (const auto& name : split_list(get("suites").value_or(""), ',')) {
    const SuiteResult res = run_named_suite(name, params);
    log << (res.passed ? "PASS " : "FAIL ") << name << ": " << res.detail << '\n';
    if (res.reproducer) log << "  reproducer: " << *res.reproducer << '\n';
    ok &= res.passed;
    summary[name + ".passed"] = res.passed ? "true" : "false";
    for (const auto& [k, v] : res.summary) summary[name + "." + k] = v;
    if (out_dir) {
      std::ofstream(std::filesystem::path(*out_dir) / (name + ".csv")) << res.report.to_csv();
    }
  }
  if (auto expected_path = get("expected")) {
    std::ifstream in(*expected_path);
    if (!in) throw std::runtime_error("cannot open expected-value file '" + *expected_path + "'");
    for (const auto& [key, value] : parse_config(in)) {
      auto it = summary.find(key);
      if (it == summary.end() || it->second != value) {
        log << "MISMATCH " << key << ": expected " << value << ", got "
            << (it == summary.end() ? std::string("<missing>") : it->second) << '\n';
        ok = false;
      }
    }
  }
  return ok ? 0 : 1;
}

}  // namespace msglab
