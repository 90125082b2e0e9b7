#include "msglab/poly.hpp"

#include <algorithm>

namespace msglab {

Poly::Poly(FieldPtr f, std::vector<Elem> c) : f_(std::move(f)), c_(std::move(c)) { trim(); }

Poly Poly::constant(FieldPtr f, Elem c) { return Poly(std::move(f), {c}); }

Poly Poly::monomial(FieldPtr f, std::size_t degree, Elem c) {
  std::vector<Elem> v(degree + 1);
  v[degree] = c;
  return Poly(std::move(f), std::move(v));
}

Poly Poly::binomial(FieldPtr f, std::size_t k, Elem alpha) {
  std::vector<Elem> v(k + 1);
  v[k] = f->one();
  v[0] = f->sub(v[0], alpha);
  return Poly(std::move(f), std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(f_->inv(lead()));
}

Poly Poly::scaled(Elem s) const {
  std::vector<Elem> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = f_->mul(c_[i], s);
  return Poly(f_, std::move(v));
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly(f_, {});
  std::vector<Elem> v(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = f_->mul(c_[i], f_->from_int(std::int64_t(i)));
  return Poly(f_, std::move(v));
}

Poly operator+(const Poly& a, const Poly& b) {
  const auto& f = a.f_ ? a.f_ : b.f_;
  std::vector<Elem> v(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f->add(a[i], b[i]);
  return Poly(f, std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) {
  const auto& f = a.f_ ? a.f_ : b.f_;
  std::vector<Elem> v(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f->sub(a[i], b[i]);
  return Poly(f, std::move(v));
}

Poly operator*(const Poly& a, const Poly& b) {
  const auto& f = a.f_ ? a.f_ : b.f_;
  if (a.is_zero() || b.is_zero()) return Poly(f, {});
  std::vector<Elem> v(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = f->add(v[i + j], f->mul(a.c_[i], b.c_[j]));
  }
  return Poly(f, std::move(v));
}

PolyDivision divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  const auto& f = b.field();
  std::vector<Elem> r = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {Poly(f, {}), a};
  std::vector<Elem> qc(std::size_t(a.degree() - db + 1));
  const Elem inv_lead = f->inv(b.lead());
  for (int d = a.degree(); d >= db; --d) {
    const Elem c = f->mul(r[std::size_t(d)], inv_lead);
    qc[std::size_t(d - db)] = c;
    if (c.is_zero()) continue;
    for (int i = 0; i <= db; ++i) {
      auto& slot = r[std::size_t(d - db + i)];
      slot = f->sub(slot, f->mul(c, b.coeffs()[std::size_t(i)]));
    }
  }
  r.resize(std::size_t(db));
  return {Poly(f, std::move(qc)), Poly(f, std::move(r))};
}

Poly mod(const Poly& a, const Poly& m) { return divmod(a, m).remainder; }

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = mod(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return mod(a * b, m); }

Poly powmod(const Poly& base, std::uint64_t k, const Poly& m) {
  Poly result = mod(Poly::constant(m.field(), m.field()->one()), m);
  Poly b = mod(base, m);
  while (k > 0) {
    if (k & 1) result = mulmod(result, b, m);
    b = mulmod(b, b, m);
    k >>= 1;
  }
  return result;
}

namespace {

std::vector<std::uint32_t> prime_divisors(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// T^(q^i) mod f for i = 0..count.
std::vector<Poly> frobenius_powers(const Poly& f, std::size_t count) {
  const auto& F = f.field();
  std::vector<Poly> out;
  Poly t = mod(Poly::monomial(F, 1, F->one()), f);
  out.push_back(t);
  for (std::size_t i = 0; i < count; ++i) {
    t = powmod(t, F->q(), f);
    out.push_back(t);
  }
  return out;
}

// Deterministic trial polynomial number j of degree < bound.
Poly trial_poly(const FieldPtr& F, std::uint64_t j, int bound) {
  std::vector<Elem> c;
  while (j > 0 && int(c.size()) < bound) {
    c.push_back(Elem{std::uint32_t(j % F->q())});
    j /= F->q();
  }
  return Poly(F, std::move(c));
}

// Splits a product of distinct irreducibles all of degree d.
void equal_degree_split(const Poly& g, int d, std::vector<Poly>& out) {
  if (g.degree() == d) {
    out.push_back(g.monic());
    return;
  }
  const auto& F = g.field();
  const Poly one = Poly::constant(F, F->one());
  for (std::uint64_t j = F->q(); j < F->q() + 200000; ++j) {
    const Poly a = trial_poly(F, j, g.degree());
    if (a.degree() < 1) continue;
    Poly b;
    if (F->p() == 2) {
      // Absolute trace down to GF(2).
      Poly term = a;
      b = a;
      for (std::uint32_t i = 1; i < F->e() * std::uint32_t(d); ++i) {
        term = mulmod(term, term, g);
        b = b + term;
      }
    } else {
      // a^((q^d - 1)/2) = (a * a^q * ... * a^(q^(d-1)))^((q-1)/2)
      Poly norm = one;
      Poly conj = a;
      for (int i = 0; i < d; ++i) {
        norm = mulmod(norm, conj, g);
        if (i + 1 < d) conj = powmod(conj, F->q(), g);
      }
      b = powmod(norm, (F->q() - 1) / 2, g) - one;
    }
    const Poly h = gcd(g, b);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      equal_degree_split(h, d, out);
      equal_degree_split(divmod(g, h).quotient, d, out);
      return;
    }
  }
  throw std::logic_error("equal-degree splitting did not terminate");
}

}  // namespace

bool is_irreducible(const Poly& f) {
  const int n = f.degree();
  if (n < 1) return false;
  if (n == 1) return true;
  const Poly fm = f.monic();
  const auto powers = frobenius_powers(fm, std::size_t(n));
  const Poly& t = powers[0];
  if (!(powers[std::size_t(n)] == t)) return false;
  for (auto r : prime_divisors(std::uint32_t(n))) {
    const Poly g = gcd(fm, powers[std::size_t(n) / r] - t);
    if (g.degree() != 0) return false;
  }
  return true;
}

std::vector<Poly> factor_squarefree(const Poly& f) {
  if (f.degree() < 1) return {};
  const auto& F = f.field();
  std::vector<Poly> out;
  Poly rest = f.monic();
  const Poly t = Poly::monomial(F, 1, F->one());
  Poly h = mod(t, rest);
  for (int d = 1; 2 * d <= rest.degree(); ++d) {
    h = powmod(h, F->q(), rest);
    const Poly g = gcd(rest, h - t);
    if (g.degree() > 0) {
      equal_degree_split(g, d, out);
      rest = divmod(rest, g).quotient;
      h = mod(h, rest);
    }
  }
  if (rest.degree() > 0) out.push_back(rest.monic());
  std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return std::lexicographical_compare(a.coeffs().begin(), a.coeffs().end(), b.coeffs().begin(),
                                        b.coeffs().end());
  });
  return out;
}

}  // namespace msglab
