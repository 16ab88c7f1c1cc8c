#ifndef UNITARY_MATRICES_HPP
#define UNITARY_MATRICES_HPP

#include <cstdint>
#include <vector>

#include "unitary/fields.hpp"
#include "unitary/numeric.hpp"
#include "unitary/polynomials.hpp"

namespace unitary {

/// Square matrix over a Field, row-major codes.
struct Matrix {
  const Field* F = nullptr;
  unsigned n = 0;
  std::vector<uint32_t> a;

  uint32_t at(unsigned i, unsigned j) const { return a[(size_t)i * n + j]; }
  uint32_t& at(unsigned i, unsigned j) { return a[(size_t)i * n + j]; }
  bool operator==(const Matrix& o) const { return F == o.F && n == o.n && a == o.a; }
  bool operator!=(const Matrix& o) const { return !(*this == o); }
};

Matrix mat_zero(const Field& F, unsigned n);
Matrix mat_identity(const Field& F, unsigned n);
Matrix mat_mul(const Matrix& A, const Matrix& B);
std::vector<uint32_t> mat_apply(const Matrix& A, const std::vector<uint32_t>& v);
bool is_identity(const Matrix& A);

/// Entrywise q-power Frobenius of the transpose.
Matrix conj_transpose(const Matrix& A);

/// A A^* = I for the standard Hermitian form <u,v> = sum u_k v_k^q.
bool is_unitary(const Matrix& A);

/// det(xI - A), monic. Similarity reduction to Hessenberg form, then the
/// leading-minor recurrence; field divisions only.
Poly char_poly(const Matrix& A);

/// Cofactor-expansion oracle on the polynomial matrix xI - A. O(n!).
Poly char_poly_naive(const Matrix& A);

/// Least-degree monic annihilator: lcm of the annihilators of e_0, e_1, ...
/// skipping start vectors already inside the Krylov span seen so far.
Poly min_poly(const Matrix& A);

/// Multiplicative order of an invertible matrix: for each irreducible factor
/// phi^e of the minimal polynomial the block order is tau(phi) * p^ceil(log_p e),
/// and the order is their lcm.
Int element_order(const Matrix& A);

/// Repeated-multiplication oracle (guarded iteration count).
Int element_order_naive(const Matrix& A);

}  // namespace unitary

#endif
