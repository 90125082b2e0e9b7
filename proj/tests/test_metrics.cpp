#include <doctest.h>

#include <cmath>

#include "oracles.hpp"

using namespace msglab;

TEST_CASE("Hamming distance") {
  const auto id5 = Permutation::identity(5);
  CHECK(hamming_distance(parse_permutation("5:(0 1 2)"), id5) == Rational(3, 5));
  CHECK(hamming_distance(parse_permutation("8:(0 1)(2 3)"), Permutation::identity(8)) == Rational(1, 2));
  CHECK(hamming_distance(id5, id5) == Rational(0));
  CHECK(length(parse_permutation("4:(0 1 2 3)"), MetricKind::Hamming).rational() == Rational(1));
}

TEST_CASE("projective rank distance") {
  auto f = Field::make(5);
  const Matrix i3 = Matrix::identity(f, 3);
  CHECK(projective_rank_distance(i3.scaled(f->from_int(2)), i3) == Rational(0));
  const Matrix d = Matrix::diagonal(f, {f->from_int(2), f->one(), f->one()});
  CHECK(projective_rank_distance(d, i3) == Rational(1, 3));
  CHECK(projective_rank_distance(d, i3) == Rational(std::int64_t(oracle::min_rank_shift_bruteforce(d, i3)), 3));
}

TEST_CASE("A_n class sizes including the A_5 split") {
  CHECK(class_size_perm({3, 1, 1}, 5, true) == 20);
  CHECK(class_size_perm({5}, 5, true) == 12);
  CHECK(class_size_perm({2, 2, 1}, 5, true) == 15);
  CHECK(class_size_perm({1, 1, 1, 1, 1}, 5, true) == 1);
  CHECK(class_size_perm({5}, 5, false) == 24);
}

TEST_CASE("class sizes against brute force for every cycle type, n <= 7") {
  for (std::size_t n = 1; n <= 7; ++n) {
    const auto sym = enumerate_symmetric(n);
    const auto alt = enumerate_alternating(n);
    std::set<std::vector<std::size_t>> types;
    for (const auto& s : sym) {
      if (!types.insert(cycle_type(s)).second) continue;
      CHECK(class_size_perm(cycle_type(s), n, false) == oracle::class_size_bruteforce(s, sym));
      if (s.is_even()) CHECK(class_size_perm(cycle_type(s), n, true) == oracle::class_size_bruteforce(s, alt));
    }
  }
}

TEST_CASE("conjugacy distance in A_5") {
  GroupDescriptor a5 = parse_group("A:5");
  const auto id = Permutation::identity(5);
  CHECK(conjugacy_distance(id, id, a5) == 0.0L);
  CHECK(std::fabs(double(conjugacy_distance(parse_permutation("5:(0 1 2)"), id, a5)) - std::log(20.0) / std::log(60.0)) < 1e-12);
  CHECK(std::fabs(double(conjugacy_distance(parse_permutation("5:(0 1)(2 3)"), id, a5)) - std::log(15.0) / std::log(60.0)) < 1e-12);
  CHECK_THROWS(conjugacy_distance(parse_permutation("5:(0 1)"), id, a5));
}

TEST_CASE("matrix class sizes") {
  auto f5 = Field::make(5);
  CHECK(class_size_matrix(ClassicalElement(Matrix::diagonal(f5, {f5->one(), f5->from_int(2)}), GroupTag::GL)) == 30);
  auto f3 = Field::make(3);
  CHECK(class_size_matrix(parse_classical(f3, "SL:1,1;0,1")) == 4);
  CHECK(class_size_matrix(ClassicalElement(Matrix::identity(f3, 2), GroupTag::SL)) == 1);
  CHECK_THROWS(class_size_matrix(random_sp(4, f3, 1)));
}

TEST_CASE("PSL class sizes against brute force") {
  for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{7, 1}, {5, 1}, {2, 2}, {3, 1}}) {
    auto f = Field::make(p, e);
    const auto sl = enumerate_sl(f, 2);
    const auto psl = enumerate_psl(f, 2);
    std::size_t total = 0;
    std::set<std::vector<Elem>> done;
    for (const auto& g : psl) {
      const Matrix nf = projective_normal_form(g);
      if (done.count(nf.entries())) continue;
      const std::size_t size = oracle::class_size_bruteforce(g, sl, true);
      CHECK(class_size_matrix(ClassicalElement(g, GroupTag::PSL_REP)) == size);
      // Mark the class as seen.
      for (const auto& t : sl) done.insert(projective_normal_form(t * g * invert(t)).entries());
      total += size;
    }
    CHECK(total == psl.size());
  }
}

TEST_CASE("GL and SL class sizes against brute force") {
  auto f = Field::make(3);
  const auto gl = enumerate_gl(f, 2);
  const auto sl = enumerate_sl(f, 2);
  for (std::size_t i = 0; i < gl.size(); i += 3) {
    CHECK(class_size_matrix(ClassicalElement(gl[i], GroupTag::GL)) == oracle::class_size_bruteforce(gl[i], gl, false));
  }
  for (const auto& g : sl) CHECK(class_size_matrix(ClassicalElement(g, GroupTag::SL)) == oracle::class_size_bruteforce(g, sl, false));
}

TEST_CASE("metric axioms on random triples") {
  Rng rng(77);
  for (int t = 0; t < 200; ++t) {
    const auto a = random_even_perm(9, rng), b = random_even_perm(9, rng), c = random_even_perm(9, rng), g = random_even_perm(9, rng);
    CHECK(hamming_distance(a, b) == hamming_distance(b, a));
    CHECK(hamming_distance(a, c) <= hamming_distance(a, b) + hamming_distance(b, c));
    CHECK(hamming_distance(g * a, g * b) == hamming_distance(a, b));
    CHECK(hamming_distance(a * g, b * g) == hamming_distance(a, b));
  }
  auto f = Field::make(3);
  for (int t = 0; t < 100; ++t) {
    const Matrix a = random_sl(3, f, rng).matrix(), b = random_sl(3, f, rng).matrix(), c = random_sl(3, f, rng).matrix();
    const Matrix g = random_sl(3, f, rng).matrix();
    CHECK(projective_rank_distance(a, b) == projective_rank_distance(b, a));
    CHECK(projective_rank_distance(a, c) <= projective_rank_distance(a, b) + projective_rank_distance(b, c));
    CHECK(projective_rank_distance(g * a, g * b) == projective_rank_distance(a, b));
    CHECK(projective_rank_distance(a * g, b * g) == projective_rank_distance(a, b));
  }
}

TEST_CASE("group descriptors and orders") {
  CHECK(group_order(parse_group("A:5")) == 60);
  CHECK(group_order(parse_group("PSL:2:7")) == 168);
  CHECK(group_order(parse_group("SL:2:3")) == 24);
  CHECK(group_order(parse_group("GL:3:2")) == 168);
  CHECK(group_order(parse_group("Sp:4:2")) == 720);
  CHECK(sl_centre_order(2, 7) == 2);
  CHECK_THROWS(parse_group("Q:5"));
}

TEST_CASE("rational formatting") {
  CHECK(format_rational(Rational(1, 2)) == "1/2");
  CHECK(format_rational(Rational(3)) == "3/1");
  CHECK(parse_rational("2/4") == Rational(1, 2));
  CHECK(format_real(0.5L) == "0.5");
}
