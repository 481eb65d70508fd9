#include "lyapdecay/cmatrix.hpp"

#include <algorithm>
#include <cmath>

#include "lyapdecay/kernels.hpp"

namespace lyapdecay {

CMatrix::CMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, cplx(0.0, 0.0)) {}

CMatrix::CMatrix(std::size_t dim, std::vector<cplx> entries) : dim_(dim), data_(std::move(entries)) {
    if (data_.size() != dim * dim) throw InvalidInput("CMatrix: entry count does not match dim*dim");
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) : dim_(rows.size()) {
    data_.reserve(dim_ * dim_);
    for (const auto& row : rows) {
        if (row.size() != dim_) throw InvalidInput("CMatrix: rows must form a square matrix");
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

CMatrix CMatrix::identity(std::size_t dim) {
    CMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::diagonal(const CVector& diag) {
    CMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

CMatrix CMatrix::from_columns(const std::vector<CVector>& cols) {
    CMatrix m(cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != cols.size()) throw InvalidInput("from_columns: need d vectors of length d");
        m.set_column(j, cols[j]);
    }
    return m;
}

CMatrix CMatrix::outer(const CVector& x, const CVector& y) {
    if (x.size() != y.size()) throw InvalidInput("outer: length mismatch");
    CMatrix m(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) m(i, j) = x[i] * std::conj(y[j]);
    return m;
}

CVector CMatrix::column(std::size_t j) const {
    CVector v(dim_);
    for (std::size_t i = 0; i < dim_; ++i) v[i] = (*this)(i, j);
    return v;
}

void CMatrix::set_column(std::size_t j, const CVector& v) {
    if (v.size() != dim_) throw InvalidInput("set_column: length mismatch");
    for (std::size_t i = 0; i < dim_; ++i) (*this)(i, j) = v[i];
}

CMatrix CMatrix::adjoint() const {
    CMatrix m(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

CMatrix CMatrix::transpose() const {
    CMatrix m(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
    if (o.dim_ != dim_) throw InvalidInput("matrix add: dim mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
    if (o.dim_ != dim_) throw InvalidInput("matrix sub: dim mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
    for (auto& x : data_) x *= s;
    return *this;
}

double CMatrix::norm_one() const {
    double best = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) s += std::abs((*this)(i, j));
        best = std::max(best, s);
    }
    return best;
}

double CMatrix::norm_fro() const {
    double s = 0.0;
    for (const auto& x : data_) s += std::norm(x);
    return std::sqrt(s);
}

double CMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& x : data_) m = std::max(m, std::abs(x));
    return m;
}

bool CMatrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const cplx& x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); });
}

double CMatrix::hermitian_defect() const {
    double m = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i; j < dim_; ++j)
            m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.dim() != b.dim()) throw InvalidInput("matrix product: dim mismatch");
    CMatrix c(a.dim());
    kernels::matmul(a.data(), b.data(), c.data(), a.dim());
    return c;
}

CMatrix operator*(cplx s, CMatrix a) { return a *= s; }

CVector operator*(const CMatrix& a, const CVector& x) {
    if (a.dim() != x.size()) throw InvalidInput("matvec: dim mismatch");
    CVector y(x.size());
    kernels::matvec(a.data(), x.data(), y.data(), a.dim());
    return y;
}

CVector operator+(const CVector& x, const CVector& y) {
    if (x.size() != y.size()) throw InvalidInput("vector add: length mismatch");
    CVector r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
    return r;
}

CVector operator-(const CVector& x, const CVector& y) {
    if (x.size() != y.size()) throw InvalidInput("vector sub: length mismatch");
    CVector r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
    return r;
}

CVector operator*(cplx s, const CVector& x) {
    CVector r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = s * x[i];
    return r;
}

cplx dot(const CVector& x, const CVector& y) {
    if (x.size() != y.size()) throw InvalidInput("dot: length mismatch");
    cplx s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
    return s;
}

double norm2(const CVector& x) {
    double s = 0.0;
    for (const auto& v : x) s += std::norm(v);
    return std::sqrt(s);
}

double hermitian_form(const CMatrix& p, const CVector& x) {
    const CVector px = p * x;
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i].real() * px[i].real() + x[i].imag() * px[i].imag();
    return s;
}

}  // namespace lyapdecay
