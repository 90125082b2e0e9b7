#pragma once

// Exact arithmetic in GF(p) and GF(p^e).
//
// Elements are stored as a canonical integer code: the coefficient vector
// (c0, ..., c_{e-1}) of the reduced polynomial representative is read as a
// base-p number, c0 least significant. Two elements are equal iff their
// codes are equal.

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace msglab {

struct Elem {
  std::uint32_t code = 0;

  friend constexpr auto operator<=>(Elem, Elem) = default;
  constexpr bool is_zero() const { return code == 0; }
};

class BudgetError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

bool is_prime(std::uint64_t n);

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// A finite field GF(p^e) defined by a monic irreducible modulus over GF(p).
///
/// Multiplication uses discrete log tables when q is small enough; larger
/// fields fall back to polynomial arithmetic.
class Field {
public:
  /// Field with the lexicographically smallest irreducible modulus of degree e.
  static FieldPtr make(std::uint32_t p, std::uint32_t e = 1);
  /// Field with an explicit modulus, constant term first, leading 1 included.
  static FieldPtr make(std::uint32_t p, std::vector<std::uint32_t> modulus);

  std::uint32_t p() const { return p_; }
  std::uint32_t e() const { return e_; }
  std::uint32_t q() const { return q_; }
  std::uint32_t characteristic() const { return p_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  Elem zero() const { return Elem{0}; }
  Elem one() const { return Elem{1}; }
  /// Image of an integer under Z -> GF(p) -> GF(q).
  Elem from_int(std::int64_t v) const;
  Elem from_coeffs(std::span<const std::uint32_t> c) const;
  std::vector<std::uint32_t> coeffs(Elem a) const;
  bool valid(Elem a) const { return a.code < q_; }

  Elem add(Elem a, Elem b) const {
    if (e_ == 1) {
      std::uint32_t s = a.code + b.code;
      return Elem{s >= p_ ? s - p_ : s};
    }
    if (!add_table_.empty()) return Elem{add_table_[std::size_t(a.code) * q_ + b.code]};
    return add_digits(a, b);
  }
  Elem neg(Elem a) const {
    if (e_ == 1) return Elem{a.code == 0 ? 0 : p_ - a.code};
    return neg_digits(a);
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (a.code == 0 || b.code == 0) return zero();
    if (e_ == 1) return Elem{std::uint32_t(std::uint64_t(a.code) * b.code % p_)};
    if (!log_.empty()) {
      std::uint32_t s = log_[a.code] + log_[b.code];
      if (s >= q_ - 1) s -= q_ - 1;
      return Elem{exp_[s]};
    }
    return mul_poly(a, b);
  }
  /// Throws std::domain_error on zero.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t k) const;
  /// Exponent with sign; negative powers need a nonzero base.
  Elem pow_signed(Elem a, std::int64_t k) const;

  std::vector<Elem> enumerate_all() const;
  std::vector<Elem> enumerate_nonzero() const;
  /// A generator of the cyclic group GF(q)^x.
  Elem primitive_element() const;
  std::uint64_t multiplicative_order(Elem a) const;

  bool operator==(const Field& other) const {
    return p_ == other.p_ && modulus_ == other.modulus_;
  }

  std::string to_string() const;
  std::string format(Elem a) const;

private:
  Field(std::uint32_t p, std::vector<std::uint32_t> modulus);

  Elem add_digits(Elem a, Elem b) const;
  Elem neg_digits(Elem a) const;
  Elem mul_poly(Elem a, Elem b) const;
  void build_tables();

  std::uint32_t p_;
  std::uint32_t e_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> add_table_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> exp_;
  Elem primitive_{0};
};

/// Lexicographically smallest monic irreducible polynomial of degree e over
/// GF(p), constant term first. The order compares coefficient vectors from
/// the t^{e-1} coefficient down to the constant term.
std::vector<std::uint32_t> find_irreducible(std::uint32_t p, std::uint32_t e);

/// Irreducibility over GF(p) of a monic polynomial (constant term first).
bool is_irreducible_mod_p(std::uint32_t p, const std::vector<std::uint32_t>& poly);

/// Parses "p^e:c0,...,ce" or "p^e" or "p" (smallest modulus).
FieldPtr parse_field(const std::string& text);
/// Comma-separated coefficients, constant term first; a bare integer is
/// accepted as an element of the prime field.
Elem parse_elem(const Field& f, const std::string& text);

inline void require_same_field(const Field& a, const Field& b) {
  if (!(a == b)) throw std::invalid_argument("field mismatch");
}

}  // namespace msglab
