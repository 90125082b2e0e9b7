#include "msglab/gf.hpp"

#include <algorithm>
#include <sstream>

#include "msglab/poly.hpp"

namespace msglab {

namespace {

constexpr std::uint32_t kTableLimit = 1u << 20;
constexpr std::uint32_t kAddTableLimit = 256;

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t checked_power(std::uint64_t p, std::uint32_t e) {
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    q *= p;
    if (q > (1ull << 31)) throw std::invalid_argument("field order exceeds 2^31");
  }
  return q;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::uint32_t parse_uint(const std::string& s) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("expected integer, got '" + s + "'");
  }
  if (pos != s.size() || v < 0 || v > (1ll << 32) - 1)
    throw std::invalid_argument("expected non-negative integer, got '" + s + "'");
  return std::uint32_t(v);
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

FieldPtr Field::make(std::uint32_t p, std::uint32_t e) {
  if (!is_prime(p)) throw std::invalid_argument("characteristic is not prime");
  if (e == 0) throw std::invalid_argument("extension degree must be >= 1");
  return make(p, find_irreducible(p, e));
}

FieldPtr Field::make(std::uint32_t p, std::vector<std::uint32_t> modulus) {
  if (!is_prime(p)) throw std::invalid_argument("characteristic is not prime");
  if (modulus.size() < 2 || modulus.back() != 1)
    throw std::invalid_argument("modulus must be monic of degree >= 1");
  for (auto c : modulus)
    if (c >= p) throw std::invalid_argument("modulus coefficient out of range");
  if (!is_irreducible_mod_p(p, modulus)) throw std::invalid_argument("modulus is reducible");
  return FieldPtr(new Field(p, std::move(modulus)));
}

Field::Field(std::uint32_t p, std::vector<std::uint32_t> modulus)
    : p_(p), e_(std::uint32_t(modulus.size() - 1)), modulus_(std::move(modulus)) {
  q_ = std::uint32_t(checked_power(p_, e_));
  build_tables();
}

void Field::build_tables() {
  if (e_ > 1 && q_ <= kAddTableLimit) {
    add_table_.resize(std::size_t(q_) * q_);
    for (std::uint32_t a = 0; a < q_; ++a)
      for (std::uint32_t b = 0; b < q_; ++b)
        add_table_[std::size_t(a) * q_ + b] = add_digits(Elem{a}, Elem{b}).code;
  }

  // Primitive element by order test against the prime divisors of q - 1.
  const auto factors = prime_factors(q_ - 1);
  auto is_generator = [&](Elem g) {
    for (auto r : factors)
      if (pow(g, (q_ - 1) / r) == one()) return false;
    return true;
  };
  for (std::uint32_t c = 1; c < q_; ++c) {
    if (is_generator(Elem{c})) {
      primitive_ = Elem{c};
      break;
    }
  }

  if (q_ <= kTableLimit) {
    log_.assign(q_, 0);
    exp_.assign(q_ - 1, 0);
    Elem x = one();
    for (std::uint32_t i = 0; i + 1 < q_; ++i) {
      exp_[i] = x.code;
      log_[x.code] = i;
      x = e_ == 1 ? Elem{std::uint32_t(std::uint64_t(x.code) * primitive_.code % p_)}
                  : mul_poly(x, primitive_);
    }
  }
}

Elem Field::from_int(std::int64_t v) const {
  std::int64_t r = v % std::int64_t(p_);
  if (r < 0) r += p_;
  return Elem{std::uint32_t(r)};
}

Elem Field::from_coeffs(std::span<const std::uint32_t> c) const {
  if (c.size() > e_) throw std::invalid_argument("too many coefficients for field element");
  std::uint32_t code = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] >= p_) throw std::invalid_argument("coefficient out of range");
    code = code * p_ + c[i];
  }
  return Elem{code};
}

std::vector<std::uint32_t> Field::coeffs(Elem a) const {
  std::vector<std::uint32_t> out(e_);
  std::uint32_t c = a.code;
  for (std::uint32_t i = 0; i < e_; ++i) {
    out[i] = c % p_;
    c /= p_;
  }
  return out;
}

Elem Field::add_digits(Elem a, Elem b) const {
  std::uint32_t x = a.code, y = b.code, out = 0, scale = 1;
  for (std::uint32_t i = 0; i < e_; ++i) {
    std::uint32_t d = (x % p_ + y % p_) % p_;
    out += d * scale;
    scale *= p_;
    x /= p_;
    y /= p_;
  }
  return Elem{out};
}

Elem Field::neg_digits(Elem a) const {
  std::uint32_t x = a.code, out = 0, scale = 1;
  for (std::uint32_t i = 0; i < e_; ++i) {
    std::uint32_t d = x % p_;
    out += (d == 0 ? 0 : p_ - d) * scale;
    scale *= p_;
    x /= p_;
  }
  return Elem{out};
}

Elem Field::mul_poly(Elem a, Elem b) const {
  const auto ca = coeffs(a), cb = coeffs(b);
  std::vector<std::uint64_t> prod(2 * e_ - 1, 0);
  for (std::uint32_t i = 0; i < e_; ++i)
    for (std::uint32_t j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + std::uint64_t(ca[i]) * cb[j]) % p_;
  // Reduce by the monic modulus from the top down.
  for (std::size_t d = prod.size(); d-- > e_;) {
    const std::uint64_t c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    for (std::uint32_t i = 0; i < e_; ++i) {
      const std::uint64_t sub = c * modulus_[i] % p_;
      auto& slot = prod[d - e_ + i];
      slot = (slot + p_ - sub) % p_;
    }
  }
  std::uint32_t code = 0;
  for (std::size_t i = e_; i-- > 0;) code = code * p_ + std::uint32_t(prod[i]);
  return Elem{code};
}

Elem Field::inv(Elem a) const {
  if (a.is_zero()) throw std::domain_error("inverse of zero");
  if (!log_.empty()) {
    const std::uint32_t l = log_[a.code];
    return Elem{exp_[l == 0 ? 0 : q_ - 1 - l]};
  }
  return pow(a, q_ - 2);
}

Elem Field::pow(Elem a, std::uint64_t k) const {
  Elem result = one();
  Elem base = a;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

Elem Field::pow_signed(Elem a, std::int64_t k) const {
  if (k >= 0) return pow(a, std::uint64_t(k));
  return pow(inv(a), std::uint64_t(-k));
}

std::vector<Elem> Field::enumerate_all() const {
  std::vector<Elem> out(q_);
  for (std::uint32_t i = 0; i < q_; ++i) out[i] = Elem{i};
  return out;
}

std::vector<Elem> Field::enumerate_nonzero() const {
  std::vector<Elem> out(q_ - 1);
  for (std::uint32_t i = 1; i < q_; ++i) out[i - 1] = Elem{i};
  return out;
}

Elem Field::primitive_element() const { return primitive_; }

std::uint64_t Field::multiplicative_order(Elem a) const {
  if (a.is_zero()) throw std::domain_error("order of zero");
  std::uint64_t order = q_ - 1;
  for (auto r : prime_factors(q_ - 1))
    while (order % r == 0 && pow(a, order / r) == one()) order /= r;
  return order;
}

std::string Field::to_string() const {
  std::ostringstream os;
  os << p_ << '^' << e_ << ':';
  for (std::size_t i = 0; i < modulus_.size(); ++i) os << (i ? "," : "") << modulus_[i];
  return os.str();
}

std::string Field::format(Elem a) const {
  if (e_ == 1) return std::to_string(a.code);
  std::ostringstream os;
  const auto c = coeffs(a);
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  return os.str();
}

std::vector<std::uint32_t> find_irreducible(std::uint32_t p, std::uint32_t e) {
  if (!is_prime(p)) throw std::invalid_argument("characteristic is not prime");
  if (e == 0) throw std::invalid_argument("degree must be >= 1");
  const std::uint64_t count = checked_power(p, e);
  std::vector<std::uint32_t> poly(e + 1, 0);
  poly[e] = 1;
  for (std::uint64_t code = 0; code < count; ++code) {
    std::uint64_t c = code;
    for (std::uint32_t i = 0; i < e; ++i) {
      poly[i] = std::uint32_t(c % p);
      c /= p;
    }
    if (is_irreducible_mod_p(p, poly)) return poly;
  }
  throw std::logic_error("no irreducible polynomial found");
}

bool is_irreducible_mod_p(std::uint32_t p, const std::vector<std::uint32_t>& poly) {
  const std::size_t e = poly.size() - 1;
  if (e == 1) return true;
  // Small degrees: reducible iff there is a root.
  auto eval = [&](std::uint64_t x) {
    std::uint64_t acc = 0;
    for (std::size_t i = poly.size(); i-- > 0;) acc = (acc * x + poly[i]) % p;
    return acc;
  };
  if (e <= 3) {
    for (std::uint64_t x = 0; x < p; ++x)
      if (eval(x) == 0) return false;
    return true;
  }
  if (poly[0] == 0) return false;
  auto prime_field = Field::make(p, std::vector<std::uint32_t>{0, 1});
  std::vector<Elem> c;
  c.reserve(poly.size());
  for (auto v : poly) c.push_back(Elem{v});
  return is_irreducible(Poly(prime_field, std::move(c)));
}

FieldPtr parse_field(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const auto caret = head.find('^');
  const std::uint32_t p = parse_uint(head.substr(0, caret));
  std::uint32_t e = 1;
  if (caret != std::string::npos) {
    e = parse_uint(head.substr(caret + 1));
  } else if (!is_prime(p) && colon == std::string::npos) {
    // Bare prime power such as "9".
    for (std::uint32_t r = 2; r <= p; ++r) {
      if (p % r == 0) {
        std::uint32_t v = p;
        e = 0;
        while (v % r == 0) {
          v /= r;
          ++e;
        }
        if (v != 1) throw std::invalid_argument("not a prime power: " + head);
        return Field::make(r, e);
      }
    }
  }
  if (colon == std::string::npos) return Field::make(p, e);
  std::vector<std::uint32_t> modulus;
  for (const auto& part : split(text.substr(colon + 1), ',')) modulus.push_back(parse_uint(part));
  if (modulus.size() != e + 1) throw std::invalid_argument("modulus length does not match degree");
  return Field::make(p, std::move(modulus));
}

Elem parse_elem(const Field& f, const std::string& text) {
  std::string body = text;
  if (!body.empty() && body.front() == '(' && body.back() == ')') body = body.substr(1, body.size() - 2);
  std::vector<std::uint32_t> c;
  for (const auto& part : split(body, ',')) {
    // Negative integers are read as their residue in the prime field.
    if (!part.empty() && part.front() == '-') {
      if (f.e() != 1 && body.find(',') != std::string::npos)
        throw std::invalid_argument("negative coefficient in '" + text + "'");
      return f.neg(f.from_int(parse_uint(part.substr(1))));
    }
    c.push_back(parse_uint(part));
  }
  if (c.size() == 1 && f.e() == 1) return f.from_int(c[0]);
  return f.from_coeffs(c);
}

}  // namespace msglab
