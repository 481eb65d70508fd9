#include "lyapdecay/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace lyapdecay {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_finite(const CMatrix& a, const char* who) {
    if (!a.all_finite()) throw InvalidInput(std::string(who) + ": non-finite entries");
}

// Real Jacobi rotation parameters for the 2x2 problem [[a, g], [g, b]] with g > 0.
void jacobi_cs(double a, double b, double g, double& c, double& s) {
    const double zeta = (b - a) / (2.0 * g);
    const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
    c = 1.0 / std::sqrt(1.0 + t * t);
    s = c * t;
}

}  // namespace

CMatrix expm(const CMatrix& a, double t) {
    require_finite(a, "expm");
    if (!std::isfinite(t)) throw InvalidInput("expm: non-finite time");
    const std::size_t n = a.dim();
    CMatrix b = cplx(t) * a;
    const double nrm = b.norm_one();
    int squarings = 0;
    if (nrm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));
    b *= std::ldexp(1.0, -squarings);

    CMatrix result = CMatrix::identity(n);
    CMatrix term = CMatrix::identity(n);
    for (int k = 1; k <= 60; ++k) {
        term = term * b;
        term *= 1.0 / k;
        result += term;
        if (term.norm_one() <= 1e-18 * result.norm_one()) break;
    }
    for (int i = 0; i < squarings; ++i) result = result * result;
    return result;
}

SingularValues svd(const CMatrix& a) {
    require_finite(a, "svd");
    const std::size_t n = a.dim();
    CMatrix u = a;
    CMatrix v = CMatrix::identity(n);
    for (int sweep = 0; sweep < 80; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double alpha = 0.0, beta = 0.0;
                cplx gamma = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    alpha += std::norm(u(i, p));
                    beta += std::norm(u(i, q));
                    gamma += std::conj(u(i, p)) * u(i, q);
                }
                const double g = std::abs(gamma);
                if (g == 0.0 || g <= kEps * std::sqrt(alpha * beta)) continue;
                rotated = true;
                const cplx phase_conj = std::conj(gamma / g);
                double c, s;
                jacobi_cs(alpha, beta, g, c, s);
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx up = u(i, p), uq = u(i, q) * phase_conj;
                    u(i, p) = c * up - s * uq;
                    u(i, q) = s * up + c * uq;
                    const cplx vp = v(i, p), vq = v(i, q) * phase_conj;
                    v(i, p) = c * vp - s * vq;
                    v(i, q) = s * vp + c * vq;
                }
            }
        }
        if (!rotated) break;
        if (sweep == 79) throw ConvergenceError("svd: Jacobi sweeps did not converge");
    }

    std::vector<double> sigma(n);
    for (std::size_t j = 0; j < n; ++j) sigma[j] = norm2(u.column(j));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

    SingularValues out{std::vector<double>(n), CMatrix(n), CMatrix(n)};
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t j = order[k];
        out.sigma[k] = sigma[j];
        for (std::size_t i = 0; i < n; ++i) {
            out.left(i, k) = sigma[j] > 0.0 ? u(i, j) / sigma[j] : cplx(0.0);
            out.right(i, k) = v(i, j);
        }
    }
    return out;
}

double spectral_norm(const CMatrix& a) {
    if (a.dim() == 0) return 0.0;
    return svd(a).sigma.front();
}

HermitianEigen hermitian_eigen(const CMatrix& p) {
    require_finite(p, "hermitian_eigen");
    const std::size_t n = p.dim();
    const double scale = std::max(p.max_abs(), std::numeric_limits<double>::min());
    if (p.hermitian_defect() > 1e-12 * scale * std::max<std::size_t>(n, 1))
        throw InvalidInput("hermitian_eigen: matrix is not Hermitian");

    CMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (p(i, j) + std::conj(p(j, i)));
    CMatrix v = CMatrix::identity(n);

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += std::norm(a(i, j));
        if (std::sqrt(off) <= 1e-17 * a.norm_fro() || off == 0.0) break;
        if (sweep == 99) throw ConvergenceError("hermitian_eigen: Jacobi sweeps did not converge");

        for (std::size_t pp = 0; pp + 1 < n; ++pp) {
            for (std::size_t q = pp + 1; q < n; ++q) {
                const cplx g = a(pp, q);
                const double ga = std::abs(g);
                if (ga == 0.0) continue;
                double c, s;
                jacobi_cs(a(pp, pp).real(), a(q, q).real(), ga, c, s);
                const cplx ph = std::conj(g / ga);
                const cplx u00 = c, u01 = s, u10 = -s * ph, u11 = c * ph;
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx x = a(k, pp), y = a(k, q);
                    a(k, pp) = x * u00 + y * u10;
                    a(k, q) = x * u01 + y * u11;
                    const cplx vx = v(k, pp), vy = v(k, q);
                    v(k, pp) = vx * u00 + vy * u10;
                    v(k, q) = vx * u01 + vy * u11;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx x = a(pp, k), y = a(q, k);
                    a(pp, k) = std::conj(u00) * x + std::conj(u10) * y;
                    a(q, k) = std::conj(u01) * x + std::conj(u11) * y;
                }
                a(pp, q) = 0.0;
                a(q, pp) = 0.0;
                a(pp, pp) = a(pp, pp).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
    HermitianEigen out{std::vector<double>(n), CMatrix(n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

HermitianSpectrum hermitian_extremes(const CMatrix& p) {
    if (p.dim() == 0) throw InvalidInput("hermitian_extremes: empty matrix");
    if (p.dim() == 1) return {p(0, 0).real(), p(0, 0).real()};
    const auto eig = hermitian_eigen(p);
    return {eig.values.front(), eig.values.back()};
}

namespace {

// Reduce to upper Hessenberg form by Householder reflections (in place).
void hessenberg(CMatrix& h) {
    const std::size_t n = h.dim();
    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t m = n - k - 1;
        CVector v(m);
        for (std::size_t i = 0; i < m; ++i) v[i] = h(k + 1 + i, k);
        const double xnorm = norm2(v);
        if (xnorm == 0.0) continue;
        const double a0 = std::abs(v[0]);
        const cplx phase = a0 > 0.0 ? v[0] / a0 : cplx(1.0);
        v[0] += phase * xnorm;
        const double vnorm = norm2(v);
        if (vnorm == 0.0) continue;
        for (auto& x : v) x /= vnorm;
        for (std::size_t j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (std::size_t i = 0; i < m; ++i) s += std::conj(v[i]) * h(k + 1 + i, j);
            for (std::size_t i = 0; i < m; ++i) h(k + 1 + i, j) -= 2.0 * v[i] * s;
        }
        for (std::size_t i = 0; i < n; ++i) {
            cplx s = 0.0;
            for (std::size_t j = 0; j < m; ++j) s += h(i, k + 1 + j) * v[j];
            for (std::size_t j = 0; j < m; ++j) h(i, k + 1 + j) -= 2.0 * s * std::conj(v[j]);
        }
        for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
    }
}

cplx wilkinson_shift(cplx a, cplx b, cplx c, cplx d) {
    const cplx half = 0.5 * (a - d);
    const cplx disc = std::sqrt(half * half + b * c);
    const cplx mid = 0.5 * (a + d);
    const cplx l1 = mid + disc, l2 = mid - disc;
    return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

}  // namespace

CVector eigenvalues(const CMatrix& a) {
    require_finite(a, "eigenvalues");
    const std::size_t n = a.dim();
    if (n == 0) return {};
    if (n == 1) return {a(0, 0)};
    if (n == 2) {
        const cplx half = 0.5 * (a(0, 0) - a(1, 1));
        const cplx disc = std::sqrt(half * half + a(0, 1) * a(1, 0));
        const cplx mid = 0.5 * (a(0, 0) + a(1, 1));
        return {mid + disc, mid - disc};
    }

    CMatrix h = a;
    hessenberg(h);
    const double anorm = std::max(h.norm_fro(), std::numeric_limits<double>::min());
    std::size_t hi = n - 1;
    int iter = 0;
    int total = 0;
    while (hi > 0) {
        std::size_t l = hi;
        while (l > 0) {
            double scale = std::abs(h(l, l)) + std::abs(h(l - 1, l - 1));
            if (scale == 0.0) scale = anorm;
            if (std::abs(h(l, l - 1)) <= kEps * scale) {
                h(l, l - 1) = 0.0;
                break;
            }
            --l;
        }
        if (l == hi) {
            --hi;
            iter = 0;
            continue;
        }
        if (++total > 200 * static_cast<int>(n)) throw ConvergenceError("eigenvalues: QR iteration did not converge");
        ++iter;
        cplx mu;
        if (iter % 11 == 0) {
            mu = h(hi, hi) + std::abs(h(hi, hi - 1)) * cplx(0.75, 0.4375);
        } else {
            mu = wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
        }
        for (std::size_t k = l; k <= hi; ++k) h(k, k) -= mu;
        std::vector<double> cs(hi - l);
        std::vector<cplx> sn(hi - l);
        for (std::size_t k = l; k < hi; ++k) {
            const cplx x = h(k, k), y = h(k + 1, k);
            const double r = std::hypot(std::abs(x), std::abs(y));
            double c;
            cplx s;
            if (r == 0.0) {
                c = 1.0;
                s = 0.0;
            } else if (std::abs(x) == 0.0) {
                c = 0.0;
                s = std::conj(y) / std::abs(y);
            } else {
                c = std::abs(x) / r;
                s = (x / std::abs(x)) * std::conj(y) / r;
            }
            cs[k - l] = c;
            sn[k - l] = s;
            for (std::size_t j = k; j <= hi; ++j) {
                const cplx p = h(k, j), q = h(k + 1, j);
                h(k, j) = c * p + s * q;
                h(k + 1, j) = -std::conj(s) * p + c * q;
            }
        }
        for (std::size_t k = l; k < hi; ++k) {
            const double c = cs[k - l];
            const cplx s = sn[k - l];
            const std::size_t last = std::min(k + 2, hi);
            for (std::size_t i = l; i <= last; ++i) {
                const cplx p = h(i, k), q = h(i, k + 1);
                h(i, k) = p * c + q * std::conj(s);
                h(i, k + 1) = -p * s + q * c;
            }
        }
        for (std::size_t k = l; k <= hi; ++k) h(k, k) += mu;
    }
    CVector out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = h(i, i);
    return out;
}

NullspaceResult nullspace_rank(const CMatrix& a, double tol, double scale) {
    if (!(tol > 0.0)) throw InvalidInput("nullspace_rank: tol must be positive");
    const auto s = svd(a);
    const std::size_t n = a.dim();
    NullspaceResult out;
    const double smax = std::max(n > 0 ? s.sigma.front() : 0.0, scale);
    if (smax > 0.0)
        for (double sv : s.sigma)
            if (sv > tol * smax) ++out.rank;
    for (std::size_t j = out.rank; j < n; ++j) out.basis.push_back(s.right.column(j));
    return out;
}

namespace {

struct LU {
    CMatrix lu;
    std::vector<std::size_t> perm;
    int sign = 1;
};

LU lu_factor(const CMatrix& a) {
    require_finite(a, "lu");
    const std::size_t n = a.dim();
    LU f{a, std::vector<std::size_t>(n), 1};
    std::iota(f.perm.begin(), f.perm.end(), 0);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(f.lu(i, k)) > std::abs(f.lu(piv, k))) piv = i;
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(piv, j));
            std::swap(f.perm[k], f.perm[piv]);
            f.sign = -f.sign;
        }
        if (f.lu(k, k) == 0.0) continue;
        for (std::size_t i = k + 1; i < n; ++i) {
            f.lu(i, k) /= f.lu(k, k);
            for (std::size_t j = k + 1; j < n; ++j) f.lu(i, j) -= f.lu(i, k) * f.lu(k, j);
        }
    }
    return f;
}

CVector lu_solve(const LU& f, const CVector& b) {
    const std::size_t n = f.lu.dim();
    CVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t j = ii + 1; j < n; ++j) x[ii] -= f.lu(ii, j) * x[j];
        if (f.lu(ii, ii) == 0.0) throw InvalidInput("solve: singular matrix");
        x[ii] /= f.lu(ii, ii);
    }
    return x;
}

}  // namespace

CVector solve(const CMatrix& a, const CVector& b) {
    if (b.size() != a.dim()) throw InvalidInput("solve: size mismatch");
    return lu_solve(lu_factor(a), b);
}

CMatrix inverse(const CMatrix& a) {
    const auto f = lu_factor(a);
    const std::size_t n = a.dim();
    CMatrix inv(n);
    for (std::size_t j = 0; j < n; ++j) {
        CVector e(n, 0.0);
        e[j] = 1.0;
        inv.set_column(j, lu_solve(f, e));
    }
    return inv;
}

cplx determinant(const CMatrix& a) {
    const auto f = lu_factor(a);
    cplx d = static_cast<double>(f.sign);
    for (std::size_t i = 0; i < a.dim(); ++i) d *= f.lu(i, i);
    return d;
}

}  // namespace lyapdecay
