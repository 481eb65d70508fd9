#pragma once

#include <vector>

#include "lyapdecay/cmatrix.hpp"

namespace lyapdecay {

struct HermitianSpectrum {
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    double ratio() const { return lambda_max / lambda_min; }
};

struct HermitianEigen {
    std::vector<double> values;  ///< ascending
    CMatrix vectors;             ///< column j belongs to values[j]
};

struct SingularValues {
    std::vector<double> sigma;  ///< descending
    CMatrix left;               ///< columns: left singular vectors (zero column where sigma = 0)
    CMatrix right;              ///< columns: right singular vectors
};

struct NullspaceResult {
    std::size_t rank = 0;
    std::vector<CVector> basis;  ///< orthonormal
};

/// e^{A t}, scaling and squaring with a truncated Taylor series.
CMatrix expm(const CMatrix& a, double t = 1.0);

/// One-sided Jacobi SVD.
SingularValues svd(const CMatrix& a);
double spectral_norm(const CMatrix& a);

/// Cyclic Jacobi for Hermitian matrices.
HermitianEigen hermitian_eigen(const CMatrix& p);
HermitianSpectrum hermitian_extremes(const CMatrix& p);

/// All eigenvalues with multiplicity. Closed form for d <= 2, shifted QR otherwise.
CVector eigenvalues(const CMatrix& a);

/// Singular values at or below tol * max(sigma_max, scale) count as zero.
NullspaceResult nullspace_rank(const CMatrix& a, double tol = 1e-8, double scale = 0.0);

/// LU with partial pivoting.
CVector solve(const CMatrix& a, const CVector& b);
CMatrix inverse(const CMatrix& a);
cplx determinant(const CMatrix& a);

}  // namespace lyapdecay
