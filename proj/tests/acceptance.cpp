// One PASS/FAIL line per acceptance criterion. With --expect-fail the exit
// status is 0 iff the failing criteria are exactly the listed ones.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "msglab/harness.hpp"
#include "oracles.hpp"

using namespace msglab;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;

  void fail(const std::string& why) {
    if (passed) detail = why;
    passed = false;
  }
};

constexpr long double kRealTolerance = 1e-9L;

Outcome from_suite(const SuiteResult& r) {
  Outcome o{r.passed, r.detail};
  if (r.reproducer) o.detail += " reproducer: " + *r.reproducer;
  return o;
}

std::vector<std::vector<std::size_t>> partitions(std::size_t n, std::size_t max_part) {
  if (n == 0) return {{}};
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t k = std::min(n, max_part); k >= 1; --k)
    for (auto rest : partitions(n - k, k)) {
      rest.insert(rest.begin(), k);
      out.push_back(std::move(rest));
    }
  return out;
}

Permutation with_cycle_type(std::size_t n, const std::vector<std::size_t>& type) {
  std::vector<std::vector<std::uint32_t>> cycles;
  std::uint32_t next = 0;
  for (std::size_t len : type) {
    std::vector<std::uint32_t> c;
    for (std::size_t i = 0; i < len; ++i) c.push_back(next++);
    if (len > 1) cycles.push_back(std::move(c));
  }
  return Permutation::from_cycles(n, cycles);
}

Outcome sl_projection_and_commutators() {
  Outcome o;
  Rng rng(derive_rng(11, 0));
  std::size_t worst = 0;
  for (std::size_t t = 0; t < 1000; ++t) {
    const FieldPtr f = Field::make(t % 3 == 0 ? 2 : t % 3 == 1 ? 3 : 7);
    const std::size_t n = 2 + uniform_below(rng, 7);
    const Matrix g = random_invertible(f, n, rng);
    const auto pr = project_to_sl(g);
    worst = std::max(worst, rank(pr.projected - g));
    if (det(pr.projected) != f->one()) o.fail("projection not in SL");
    if (rank(pr.projected - g) > 1) o.fail("projection differs in rank > 1");
    if (projective_rank_distance(pr.projected, g) > Rational(1, std::int64_t(n))) o.fail("d_pr above 1/n");
  }

  auto matmul = [](const Matrix& a, const Matrix& b) { return a * b; };
  auto matinv = [](const Matrix& a) { return invert(a); };
  const auto sl23 = enumerate_sl(Field::make(3), 2);
  std::size_t sl_comm = 0;
  for (const auto& g : sl23)
    sl_comm += commutator_witness(g, sl23, matmul, matinv, std::equal_to<Matrix>(), sl23.size()).has_value();
  const auto psl27 = enumerate_psl(Field::make(7), 2);
  std::size_t psl_comm = 0;
  for (const auto& g : psl27)
    psl_comm += commutator_witness(g, psl27, matmul, matinv, projectively_equal, psl27.size()).has_value();

  std::ostringstream os;
  os << "projection max rank difference " << worst << " over 1000; SL_2(3) commutators " << sl_comm << "/"
     << sl23.size() << "; PSL_2(7) commutators " << psl_comm << "/" << psl27.size();
  if (psl_comm != psl27.size()) o.fail(os.str());
  if (sl_comm != sl23.size())
    o.fail(os.str() + " (the commutator subgroup of SL_2(3) is Q8, so the Ore check cannot hold there)");
  if (o.passed) o.detail = os.str();
  return o;
}

Outcome metric_axioms() {
  Outcome o;
  const std::size_t triples = 1000;
  Rng rng(derive_rng(12, 0));
  auto check_exact = [&](const std::string& name, const Rational& xy, const Rational& yx, const Rational& xz,
                         const Rational& zy, const Rational& gxgy, const Rational& xgyg, bool same) {
    if (xy != yx) o.fail(name + ": not symmetric");
    if (xy > xz + zy) o.fail(name + ": triangle inequality fails");
    if (xy != gxgy || xy != xgyg) o.fail(name + ": not bi-invariant");
    if (xy < Rational(0) || xy > Rational(1)) o.fail(name + ": outside [0, 1]");
    if ((xy == Rational(0)) != same) o.fail(name + ": zero distance iff equal fails");
  };

  for (std::size_t t = 0; t < triples; ++t) {
    const std::size_t n = 5 + uniform_below(rng, 20);
    const auto x = random_even_perm(n, rng), y = t % 10 ? random_even_perm(n, rng) : x;
    const auto z = random_even_perm(n, rng), g = random_even_perm(n, rng);
    check_exact("hamming", hamming_distance(x, y), hamming_distance(y, x), hamming_distance(x, z),
                hamming_distance(z, y), hamming_distance(g * x, g * y), hamming_distance(x * g, y * g), x == y);
    if (hamming_distance(x, x) != Rational(0)) o.fail("hamming: d(x, x) != 0");
  }

  const std::vector<std::pair<std::uint32_t, std::uint32_t>> fields{{2, 1}, {3, 1}, {5, 1}, {2, 2}, {3, 2}};
  for (std::size_t t = 0; t < triples; ++t) {
    const auto [p, e] = fields[t % fields.size()];
    const FieldPtr f = Field::make(p, e);
    const std::size_t n = 2 + uniform_below(rng, 5);
    const Matrix x = random_sl(n, f, rng).matrix();
    const Matrix y = t % 10 ? random_sl(n, f, rng).matrix() : x.scaled(f->one());
    const Matrix z = random_sl(n, f, rng).matrix(), g = random_sl(n, f, rng).matrix();
    check_exact("prank", projective_rank_distance(x, y), projective_rank_distance(y, x),
                projective_rank_distance(x, z), projective_rank_distance(z, y),
                projective_rank_distance(g * x, g * y), projective_rank_distance(x * g, y * g),
                projectively_equal(x, y));
  }

  auto check_real = [&](const std::string& name, long double xy, long double yx, long double xz, long double zy,
                        long double gxgy, long double xgyg, bool same) {
    if (std::fabs(xy - yx) > kRealTolerance) o.fail(name + ": not symmetric");
    if (xy > xz + zy + kRealTolerance) o.fail(name + ": triangle inequality fails");
    if (std::fabs(xy - gxgy) > kRealTolerance || std::fabs(xy - xgyg) > kRealTolerance)
      o.fail(name + ": not bi-invariant");
    if (xy < -kRealTolerance || xy > 1 + kRealTolerance) o.fail(name + ": outside [0, 1]");
    if ((std::fabs(xy) <= kRealTolerance) != same) o.fail(name + ": zero distance iff equal fails");
  };
  for (std::size_t t = 0; t < triples; ++t) {
    const std::size_t n = 5 + uniform_below(rng, 40);
    const GroupDescriptor grp{GroupDescriptor::Kind::Alternating, n, nullptr};
    const auto x = random_even_perm(n, rng), y = t % 10 ? random_even_perm(n, rng) : x;
    const auto z = random_even_perm(n, rng), g = random_even_perm(n, rng);
    auto d = [&](const Permutation& a, const Permutation& b) { return conjugacy_distance(a, b, grp); };
    check_real("conj(A_n)", d(x, y), d(y, x), d(x, z), d(z, y), d(g * x, g * y), d(x * g, y * g), x == y);
  }
  const std::vector<std::uint32_t> psl_fields{5, 7, 8, 9};
  for (std::size_t t = 0; t < triples; ++t) {
    const std::uint32_t q = psl_fields[t % psl_fields.size()];
    const GroupDescriptor grp = parse_group("PSL:2:" + std::to_string(q));
    const FieldPtr f = grp.field;
    const Matrix x = random_sl(2, f, rng).matrix();
    const Matrix y = t % 10 ? random_sl(2, f, rng).matrix() : x;
    const Matrix z = random_sl(2, f, rng).matrix(), g = random_sl(2, f, rng).matrix();
    auto d = [&](const Matrix& a, const Matrix& b) { return conjugacy_distance(a, b, grp); };
    check_real("conj(PSL_2)", d(x, y), d(y, x), d(x, z), d(z, y), d(g * x, g * y), d(x * g, y * g),
               projectively_equal(x, y));
  }
  if (o.passed) o.detail = "4 x 1000 triples: hamming and prank exact, conjugacy within 1e-9";
  return o;
}

Outcome class_sizes() {
  Outcome o;
  std::size_t types = 0;
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto sym = enumerate_symmetric(n);
    const auto alt = enumerate_alternating(n);
    for (const auto& type : partitions(n, n)) {
      const Permutation s = with_cycle_type(n, type);
      const std::vector<std::size_t> ct = cycle_type(s);
      ++types;
      const std::string tag = "n=" + std::to_string(n) + " " + format_permutation(s);
      if (class_size_perm(ct, n, false) != oracle::class_size_bruteforce(s, sym)) o.fail(tag + ": S_n class size");
      if (class_size_perm(ct, n, false) * perm_centralizer_order(s) != factorial(n)) o.fail(tag + ": orbit-stabilizer");
      if (oracle::class_size_bruteforce(s, sym) * oracle::centralizer_bruteforce(s, sym) != sym.size())
        o.fail(tag + ": brute-force orbit-stabilizer");
      if (s.is_even() && class_size_perm(ct, n, true) != oracle::class_size_bruteforce(s, alt))
        o.fail(tag + ": A_n class size");
    }
  }
  const Permutation five = parse_permutation("5:(0 1 2 3 4)");
  const auto a5 = enumerate_alternating(5);
  if (class_size_perm(cycle_type(five), 5, true) != 12 || oracle::class_size_bruteforce(five, a5) != 12)
    o.fail("A_5 5-cycle class is not 12");
  if (o.passed) o.detail = std::to_string(types) + " cycle types, n <= 8, S_n and A_n; A_5 5-cycles 12";
  return o;
}

Outcome centralizer_structure() {
  Outcome o;
  std::size_t types = 0;
  for (std::size_t n = 1; n <= 9; ++n) {
    const auto sym = enumerate_symmetric(n);
    for (const auto& type : partitions(n, n)) {
      const Permutation s = with_cycle_type(n, type);
      ++types;
      if (perm_centralizer_structure(s).total_order != oracle::centralizer_bruteforce(s, sym))
        o.fail("n=" + std::to_string(n) + " " + format_permutation(s) + ": centralizer order");
    }
  }

  std::size_t rows = 0, unsupported = 0, enumerated = 0;
  for (std::uint32_t ch : {2u, 3u, 5u}) {
    const FieldPtr f = Field::make(ch);
    for (std::uint32_t p : {2u, 3u, 5u}) {
      for (std::size_t n = 1; n <= 4; ++n) {
        const std::string tag = "char " + std::to_string(ch) + " p " + std::to_string(p) + " n " + std::to_string(n);
        Matrix x = Matrix::identity(f, 2 * n);
        try {
          x = p == ch ? build_niceblock(n, f, NiceblockGroup::SL).x.matrix() : semisimple_prime_order_element(f, 2 * n, p);
        } catch (const std::exception&) {
          ++unsupported;
          continue;
        }
        if (matpow(x, p) != Matrix::identity(f, 2 * n) || x == Matrix::identity(f, 2 * n))
          o.fail(tag + ": element does not have order p");
        const Fingerprint fp = characteristic_fingerprint(x);
        ++rows;
        const bool trivial_core = fp.p_core_order == 1;
        if (trivial_core != (p != ch)) o.fail(tag + ": p-core dichotomy");
        if (fp.has_large_p_core != (p == ch)) o.fail(tag + ": large p-core flag");
        if (p == ch && fp.p_core_order != boost::multiprecision::pow(BigInt(ch), unsigned(n * n)))
          o.fail(tag + ": p-core order is not q^(n^2)");
        if (p != ch) {
          const double cells = double(4 * n * n);
          if (std::pow(double(ch), cells) <= 2e6) {
            ++enumerated;
            if (fp.reductive_part.total_order != oracle::centralizer_order_bruteforce(x))
              o.fail(tag + ": reductive centralizer order");
          } else if (std::pow(double(ch), double(commutant_basis(x).size())) <= 1e6) {
            if (fp.reductive_part.total_order != brute_force_centralizer_order(x))
              o.fail(tag + ": reductive centralizer order (commutant count)");
          }
        }
      }
    }
  }
  if (o.passed)
    o.detail = std::to_string(types) + " cycle types n <= 9; " + std::to_string(rows) + " fingerprints (" +
               std::to_string(unsupported) + " unsupported shapes skipped, " + std::to_string(enumerated) +
               " centralizers enumerated over all matrices)";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<std::string> expect_fail;
  std::uint64_t seed = 1;
  app.add_option("--expect-fail", expect_fail, "criteria known to fail");
  app.add_option("--seed", seed);
  CLI11_PARSE(app, argc, argv);

  const SuiteParams params{seed, 0};
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"near_root", [&] { return from_suite(near_root_suite(params)); }},
      {"centralize", [&] { return from_suite(centralize_suite(params)); }},
      {"factorization", [&] { return from_suite(factorization_suite(params)); }},
      {"niceblock", [&] { return from_suite(niceblock_suite(params)); }},
      {"commutators", sl_projection_and_commutators},
      {"metric_axioms", metric_axioms},
      {"class_sizes", class_sizes},
      {"centralizer_structure", centralizer_structure},
      {"geodesics", [&] { return from_suite(geodesic_suite(params)); }},
      {"equivalence", [&] { return from_suite(equivalence_suite(params)); }},
  };

  std::set<std::string> failed;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.passed ? "PASS " : "FAIL ") << name << " (" << format_real((long double)secs) << " s): " << o.detail
              << std::endl;
    if (!o.passed) failed.insert(name);
  }
  const std::set<std::string> expected(expect_fail.begin(), expect_fail.end());
  if (failed != expected) {
    std::cout << "failing criteria differ from the expected set\n";
    return 1;
  }
  return 0;
}
