#pragma once

// Univariate polynomials over a Field. Coefficients are stored constant term
// first with no trailing zeros; the zero polynomial is the empty vector.

#include <cstdint>
#include <vector>

#include "msglab/gf.hpp"

namespace msglab {

class Poly {
public:
  Poly() = default;
  Poly(FieldPtr f, std::vector<Elem> c);

  static Poly constant(FieldPtr f, Elem c);
  static Poly monomial(FieldPtr f, std::size_t degree, Elem c);
  /// T^k - alpha
  static Poly binomial(FieldPtr f, std::size_t k, Elem alpha);

  const FieldPtr& field() const { return f_; }
  const std::vector<Elem>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return int(c_.size()) - 1; }
  Elem lead() const { return c_.empty() ? Elem{} : c_.back(); }
  Elem operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Elem{}; }

  Poly monic() const;
  Poly derivative() const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(Elem s) const;

  bool operator==(const Poly& o) const { return c_ == o.c_; }

private:
  void trim();

  FieldPtr f_;
  std::vector<Elem> c_;
};

struct PolyDivision {
  Poly quotient;
  Poly remainder;
};

PolyDivision divmod(const Poly& a, const Poly& b);
Poly mod(const Poly& a, const Poly& m);
Poly gcd(const Poly& a, const Poly& b);
Poly mulmod(const Poly& a, const Poly& b, const Poly& m);
Poly powmod(const Poly& base, std::uint64_t k, const Poly& m);

/// Monic irreducible factors of a squarefree polynomial, sorted by
/// (degree, coefficients). Distinct-degree factorization followed by
/// equal-degree splitting with a fixed, deterministic sequence of trial
/// polynomials.
std::vector<Poly> factor_squarefree(const Poly& f);

/// Irreducibility via Rabin's test: f | T^{q^e} - T and
/// gcd(f, T^{q^{e/r}} - T) = 1 for each prime r | e.
bool is_irreducible(const Poly& f);

}  // namespace msglab
