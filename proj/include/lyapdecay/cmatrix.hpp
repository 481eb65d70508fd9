#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace lyapdecay {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

/// Raised for malformed input (shape, NaN, out-of-range parameters).
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when an iterative method fails to converge.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// Dense square complex matrix, row-major.
class CMatrix {
public:
    CMatrix() = default;
    explicit CMatrix(std::size_t dim);
    CMatrix(std::size_t dim, std::vector<cplx> entries);
    CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static CMatrix identity(std::size_t dim);
    static CMatrix diagonal(const CVector& diag);
    /// Matrix whose columns are the given vectors.
    static CMatrix from_columns(const std::vector<CVector>& cols);
    static CMatrix outer(const CVector& x, const CVector& y);  // x y^H

    std::size_t dim() const { return dim_; }
    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
    const cplx* data() const { return data_.data(); }
    cplx* data() { return data_.data(); }
    const std::vector<cplx>& entries() const { return data_; }

    CVector column(std::size_t j) const;
    void set_column(std::size_t j, const CVector& v);

    CMatrix adjoint() const;
    CMatrix transpose() const;

    CMatrix& operator+=(const CMatrix& o);
    CMatrix& operator-=(const CMatrix& o);
    CMatrix& operator*=(cplx s);

    double norm_one() const;
    double norm_fro() const;
    double max_abs() const;
    bool all_finite() const;
    /// Max |A - A^H| entry.
    double hermitian_defect() const;

private:
    std::size_t dim_ = 0;
    std::vector<cplx> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(cplx s, CMatrix a);
CVector operator*(const CMatrix& a, const CVector& x);

CVector operator+(const CVector& x, const CVector& y);
CVector operator-(const CVector& x, const CVector& y);
CVector operator*(cplx s, const CVector& x);

/// x^H y
cplx dot(const CVector& x, const CVector& y);
double norm2(const CVector& x);
/// x^H P x (real part; P assumed Hermitian)
double hermitian_form(const CMatrix& p, const CVector& x);

}  // namespace lyapdecay
