#include <doctest.h>

#include "msglab/gf.hpp"
#include "msglab/poly.hpp"

using namespace msglab;

namespace {

// Irreducible iff no monic factor of degree <= e/2 divides it.
bool irreducible_by_trial_division(std::uint32_t p, const std::vector<std::uint32_t>& poly) {
  auto f = Field::make(p);
  std::vector<Elem> c;
  for (auto x : poly) c.push_back(f->from_int(x));
  const Poly target(f, c);
  const int e = target.degree();
  for (int d = 1; d <= e / 2; ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      std::vector<Elem> dc(std::size_t(d) + 1);
      std::uint64_t x = code;
      for (int i = 0; i < d; ++i) {
        dc[std::size_t(i)] = f->from_int(std::int64_t(x % p));
        x /= p;
      }
      dc[std::size_t(d)] = f->one();
      if (mod(target, Poly(f, dc)).is_zero()) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("prime field arithmetic") {
  auto f = Field::make(7);
  CHECK(f->q() == 7);
  CHECK(f->mul(f->from_int(3), f->from_int(5)) == f->from_int(1));
  CHECK(f->inv(f->from_int(3)) == f->from_int(5));
  CHECK(f->from_int(-1) == f->from_int(6));
  CHECK_THROWS_AS(f->inv(f->zero()), std::domain_error);
}

TEST_CASE("GF(4): t * t = t + 1") {
  auto f = Field::make(2, 2);
  CHECK(f->modulus() == std::vector<std::uint32_t>{1, 1, 1});
  const Elem t = f->from_coeffs(std::vector<std::uint32_t>{0, 1});
  const Elem t_plus_1 = f->from_coeffs(std::vector<std::uint32_t>{1, 1});
  CHECK(f->mul(t, t) == t_plus_1);
  CHECK(f->mul(t, t_plus_1) == f->one());
}

TEST_CASE("smallest irreducible modulus") {
  CHECK(find_irreducible(3, 2) == std::vector<std::uint32_t>{1, 0, 1});
  CHECK(find_irreducible(2, 3) == std::vector<std::uint32_t>{1, 1, 0, 1});
  for (std::uint32_t p : {2u, 3u, 5u})
    for (std::uint32_t e = 1; e <= 4; ++e) CHECK(irreducible_by_trial_division(p, find_irreducible(p, e)));
}

TEST_CASE("Rabin test agrees with trial division") {
  for (std::uint32_t p : {2u, 3u}) {
    for (std::uint32_t e = 2; e <= 5; ++e) {
      std::uint64_t count = 1;
      for (std::uint32_t i = 0; i < e; ++i) count *= p;
      for (std::uint64_t code = 0; code < count; ++code) {
        std::vector<std::uint32_t> poly(e + 1, 0);
        poly[e] = 1;
        std::uint64_t x = code;
        for (std::uint32_t i = 0; i < e; ++i) {
          poly[i] = std::uint32_t(x % p);
          x /= p;
        }
        CHECK(is_irreducible_mod_p(p, poly) == irreducible_by_trial_division(p, poly));
      }
    }
  }
}

TEST_CASE("field axioms exhaustively for small fields") {
  for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {3, 1}, {2, 2}, {3, 2}, {2, 3}, {5, 2}}) {
    auto f = Field::make(p, e);
    const auto all = f->enumerate_all();
    REQUIRE(all.size() == f->q());
    for (auto a : all) {
      CHECK(f->add(a, f->neg(a)) == f->zero());
      if (!a.is_zero()) CHECK(f->mul(a, f->inv(a)) == f->one());
      for (auto b : all) {
        CHECK(f->add(a, b) == f->add(b, a));
        CHECK(f->mul(a, b) == f->mul(b, a));
        for (auto c : {all[1], all.back()}) CHECK(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
      }
    }
    const Elem g = f->primitive_element();
    CHECK(f->multiplicative_order(g) == f->q() - 1);
  }
}

TEST_CASE("large field uses polynomial arithmetic consistently") {
  auto f = Field::make(2, 21);
  const Elem a = f->from_int(1);
  const Elem t = f->from_coeffs(std::vector<std::uint32_t>{0, 1});
  CHECK(f->pow(t, f->q() - 1) == a);
  CHECK(f->mul(t, f->inv(t)) == a);
}

TEST_CASE("field and element parsing") {
  auto f = parse_field("9");
  CHECK(f->p() == 3);
  CHECK(f->e() == 2);
  CHECK(parse_field("3^2")->modulus() == f->modulus());
  CHECK(parse_field("3^2:2,2,1")->modulus() == std::vector<std::uint32_t>{2, 2, 1});
  CHECK_THROWS(parse_field("6"));
  CHECK_THROWS(parse_field("3^2:1,1,1"));
  CHECK(f->format(parse_elem(*f, "(1,2)")) == "1,2");
  CHECK(parse_elem(*Field::make(5), "-1") == Field::make(5)->from_int(4));
}

TEST_CASE("polynomial factoring") {
  auto f = Field::make(7);
  // T^6 - 1 splits into linear factors over GF(7).
  auto factors = factor_squarefree(Poly::binomial(f, 6, f->one()));
  CHECK(factors.size() == 6);
  for (const auto& g : factors) CHECK(g.degree() == 1);
  // T^3 - 1 over GF(2) = (T + 1)(T^2 + T + 1).
  auto f2 = Field::make(2);
  factors = factor_squarefree(Poly::binomial(f2, 3, f2->one()));
  REQUIRE(factors.size() == 2);
  CHECK(factors[0].degree() == 1);
  CHECK(factors[1].degree() == 2);
  // Product of the factors recovers the input.
  for (std::uint32_t p : {2u, 3u, 5u}) {
    auto fp = Field::make(p, p == 2 ? 2 : 1);
    for (std::size_t k = 1; k <= 12; ++k) {
      if (k % p == 0) continue;
      for (auto alpha : fp->enumerate_nonzero()) {
        const Poly target = Poly::binomial(fp, k, alpha);
        Poly prod = Poly::constant(fp, fp->one());
        for (const auto& g : factor_squarefree(target)) {
          CHECK(is_irreducible(g));
          prod = prod * g;
        }
        CHECK(prod == target);
      }
    }
  }
}
