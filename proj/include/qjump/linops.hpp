#pragma once

// Dense complex linear-algebra kernel for the Liouville-space formalism:
// Kronecker products, column-stacking vectorization, matrix exponentials,
// SVD null vectors and partial traces. Everything operates on small dense
// matrices (16x16 at most for the two-qubit model).

#include "qjump/types.hpp"

namespace qjump {

/// Kronecker product, dimensions (rA*rB) x (cA*cB).
Matrix kron(const Matrix& a, const Matrix& b);

/// Column-stacking vectorization: an n x m matrix becomes an nm-vector.
/// Satisfies vec(A rho B) = kron(B^T, A) * vec(rho).
Vector vec(const Matrix& m);

/// Inverse of vec. Throws DimensionError if sizes do not match.
Matrix unvec(const Vector& v, Index rows, Index cols);

/// Matrix exponential exp(m) by scaling-and-squaring with diagonal Pade
/// approximants and 1-norm based order/scale selection. Valid for general
/// (non-Hermitian, non-diagonalizable) square input. Throws NumericalError
/// if the result overflows or the required scaling is out of range.
Matrix expm(const Matrix& m);

/// exp(m * t).
Matrix expm(const Matrix& m, double t);

struct NullVectorResult {
    Vector vector;      // right singular vector of the smallest singular value
    double sigma_min;   // smallest singular value
    double gap;         // sigma_next / max(sigma_min, tiny); large <=> unique
};

/// Null vector by full SVD. Throws NumericalError if sigma_min > tol.
NullVectorResult null_vector(const Matrix& m, double tol = 1e-9);

/// Trace over the first (X) tensor factor of a (dimX*dimY)-dimensional
/// operator, tensor order fixed as X (x) Y. Returns the dimY x dimY
/// reduced operator; preserves the trace.
Matrix partial_trace_x(const Matrix& rho, Index dim_x, Index dim_y);

} // namespace qjump
