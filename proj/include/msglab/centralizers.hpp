#pragma once

// Structure of centralizers: general-linear block factorization for
// semisimple matrices of finite order, wreath-product structure in S_n, and
// the p-core fingerprint that separates p = char from p != char.

#include <string>
#include <variant>
#include <vector>

#include "msglab/constructions.hpp"
#include "msglab/poly.hpp"

namespace msglab {

struct CentralizerFactor {
  enum class Kind { GLBlock, WreathBlock, SymmetricBlock, AbelianPCore } kind = Kind::GLBlock;
  std::size_t dim = 0;
  /// Matrix case: extension degree of the block's field. Permutation case:
  /// the cycle length k of the C_k wr S_m block (1 for plain S_m).
  std::size_t ext_degree = 1;
  /// Number of cycles m (wreath blocks); unused for GL blocks.
  std::size_t multiplicity = 0;
  BigInt order = 1;
};

std::string to_string(CentralizerFactor::Kind k);

struct CentralizerDescriptor {
  std::vector<CentralizerFactor> factors;
  BigInt total_order = 1;
  BigInt p_core_order = 1;

  std::size_t count(CentralizerFactor::Kind k) const;
  /// One factor per line: "kind dim ext_degree order".
  std::string format() const;
};

/// Centralizer of x in GL_n(q) where x satisfies the split condition for
/// dec. x is semisimple with minimal polynomial dividing (T^k - alpha)(T - 1);
/// every irreducible factor f of that product with nonzero kernel
/// ker f(x) of dimension d deg f contributes GL_d(q^deg f).
CentralizerDescriptor centralizer_factorization(const Matrix& x, const SplitDecomposition& dec);

/// Number of invertible matrices commuting with x, by enumerating the
/// commutant (q^dim of them).
BigInt brute_force_centralizer_order(const Matrix& x, std::uint64_t budget = 1000000);

/// Centralizer order in S_n: prod_k k^{m_k} m_k!.
BigInt perm_centralizer_order(const Permutation& sigma);

/// prod_k (C_k wr S_{m_k}); when sigma has prime order p the factors are
/// ordered as the wreath block C_p wr S_{m_p} (M = C_p^{m_p} the abelian
/// p-core, T1 = S_{m_p}) followed by the symmetric group T2 on the fixed
/// points.
CentralizerDescriptor perm_centralizer_structure(const Permutation& sigma);

struct PrimeOrderShape {
  std::uint64_t p = 0;
  BigInt m_order;   ///< p^{m_p}
  BigInt t1_order;  ///< m_p!
  BigInt t2_order;  ///< f! on the f fixed points; 1 when no point is fixed
  bool t2_trivial = false;
};
/// Throws unless sigma has prime order.
PrimeOrderShape prime_order_shape(const Permutation& sigma);

struct Fingerprint {
  bool has_large_p_core = false;
  std::uint64_t p = 0;
  BigInt p_core_order = 1;
  CentralizerDescriptor reductive_part;
  std::string family;
};

class UnsupportedCase : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Fingerprint of an order-p matrix. Supported families: x = [[I, I], [0, I]]
/// with p = char (SL, or Sp when `sp_form` is set) and semisimple x with
/// x^p = 1, p != char. Anything else throws UnsupportedCase.
Fingerprint characteristic_fingerprint(const Matrix& x, bool sp_form = false,
                                       std::uint64_t enumerate_budget = 100000);
Fingerprint characteristic_fingerprint(const Permutation& sigma);

/// Block-diagonal order-p element of GL_n(q), p != char: the companion
/// matrix of an irreducible factor of the p-th cyclotomic polynomial padded
/// with the identity. Throws when no such element fits in dimension n.
Matrix semisimple_prime_order_element(FieldPtr f, std::size_t n, std::uint64_t p);

Matrix companion_matrix(const Poly& f);

}  // namespace msglab
