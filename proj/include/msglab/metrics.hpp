#pragma once

// Normalized bi-invariant metrics on permutation and matrix groups, plus the
// conjugacy-class sizes the conjugacy metric is built from.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include "msglab/groups.hpp"

namespace msglab {

using Rational = boost::rational<std::int64_t>;
using BigInt = boost::multiprecision::cpp_int;

std::string format_rational(const Rational& r);
Rational parse_rational(const std::string& text);
/// Natural logarithm of a positive big integer.
long double log_big(const BigInt& v);
/// Decimal with 12 significant digits.
std::string format_real(long double v);

/// A distance value in [0, 1]: exact for the Hamming and projective rank
/// metrics, a long double for the conjugacy metric.
class MetricValue {
public:
  static MetricValue exact(Rational r) { return MetricValue(r); }
  static MetricValue real(long double v) { return MetricValue(v); }

  bool is_exact() const { return std::holds_alternative<Rational>(v_); }
  const Rational& rational() const { return std::get<Rational>(v_); }
  long double value() const;
  std::string to_string() const;

private:
  explicit MetricValue(Rational r) : v_(r) {}
  explicit MetricValue(long double v) : v_(v) {}
  std::variant<Rational, long double> v_;
};

enum class MetricKind { Hamming, ProjectiveRank, Conjugacy };
MetricKind parse_metric_kind(const std::string& s);
std::string to_string(MetricKind k);

/// A finite group named by family, degree and field.
struct GroupDescriptor {
  enum class Kind { Symmetric, Alternating, GL, SL, PSL, Sp } kind = Kind::Alternating;
  std::size_t n = 0;
  FieldPtr field;  // null for permutation groups

  bool is_permutation_group() const { return kind == Kind::Symmetric || kind == Kind::Alternating; }
  std::string to_string() const;
};

/// "A:5", "S:6", "GL:2:5", "SL:3:9", "PSL:2:7", "Sp:4:3^1:0,1".
GroupDescriptor parse_group(const std::string& text);
BigInt group_order(const GroupDescriptor& g);

BigInt factorial(std::size_t n);
BigInt gl_order(std::size_t n, std::uint64_t q);
BigInt sl_order(std::size_t n, std::uint64_t q);
BigInt psl_order(std::size_t n, std::uint64_t q);
/// Number of scalar matrices in SL_n(q): gcd(n, q - 1).
std::uint64_t sl_centre_order(std::size_t n, std::uint64_t q);

/// |{i : sigma(i) != tau(i)}| / n.
Rational hamming_distance(const Permutation& sigma, const Permutation& tau);
/// min over alpha of rank(g - alpha h), divided by n.
Rational projective_rank_distance(const Matrix& g, const Matrix& h, std::uint32_t budget = kDefaultShiftBudget);
Rational projective_rank_distance(const ClassicalElement& g, const ClassicalElement& h,
                                  std::uint32_t budget = kDefaultShiftBudget);

/// Size of the conjugacy class with the given cycle type in S_n, or in A_n
/// when `in_alternating` is set (the S_n class splits into two A_n classes
/// iff all cycle lengths are odd and pairwise distinct).
BigInt class_size_perm(const std::vector<std::size_t>& cycle_type, std::size_t n, bool in_alternating);

inline constexpr std::uint64_t kDefaultClassBudget = 1000000;

/// |ccl_G(x)| for G = GL_n(q), SL_n(q) or PSL_n(q) by enumerating the
/// commutant of x (and, for PSL, the scalar-twisted commutants).
BigInt class_size_matrix(const ClassicalElement& x, std::uint64_t budget = kDefaultClassBudget);

/// log |ccl(g h^-1)| / log |G| in A_n or S_n.
long double conjugacy_distance(const Permutation& g, const Permutation& h, const GroupDescriptor& group);
/// log |ccl(g h^-1)| / log |G| in PSL_n(q).
long double conjugacy_distance(const Matrix& g, const Matrix& h, const GroupDescriptor& group,
                               std::uint64_t budget = kDefaultClassBudget);

/// Distance to the identity.
MetricValue length(const Permutation& g, MetricKind kind);
MetricValue length(const ClassicalElement& g, MetricKind kind, std::uint64_t budget = kDefaultClassBudget);

}  // namespace msglab
