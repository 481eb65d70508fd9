#include "lyapdecay/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lyapdecay/linalg.hpp"

namespace lyapdecay {

namespace {

double min_real_eigenvalue(const CMatrix& c) {
    double s = std::numeric_limits<double>::infinity();
    for (const auto& e : eigenvalues(c)) s = std::min(s, e.real());
    return s;
}

// log |e^{-C t}|^2 = -2 s t + 2 log |e^{-(C - s I) t}|.
double log_prop_shifted(const CMatrix& shifted, double s, double t) {
    const double n = spectral_norm(expm(shifted, -t));
    return -2.0 * s * t + 2.0 * std::log(n);
}

bool same_rate(cplx a, cplx b) { return std::abs(a - b) <= 1e-13 * (std::abs(a) + std::abs(b)); }

void add_term(ExpPoly& p, cplx rate, std::size_t power, cplx coeff) {
    for (auto& term : p.terms) {
        if (same_rate(term.rate, rate)) {
            if (term.coeffs.size() <= power) term.coeffs.resize(power + 1, 0.0);
            term.coeffs[power] += coeff;
            return;
        }
    }
    ExpPoly::Term t{rate, std::vector<cplx>(power + 1, 0.0)};
    t.coeffs[power] = coeff;
    p.terms.push_back(std::move(t));
}

}  // namespace

double log_propagator_sq(const CMatrix& c, double t) {
    if (t < 0.0) throw InvalidInput("log_propagator_sq: t must be nonnegative");
    const double s = min_real_eigenvalue(c);
    return log_prop_shifted(c - cplx(s) * CMatrix::identity(c.dim()), s, t);
}

std::vector<double> propagator_curve(const CMatrix& c, const std::vector<double>& times) {
    const double s = min_real_eigenvalue(c);
    const CMatrix shifted = c - cplx(s) * CMatrix::identity(c.dim());
    std::vector<double> out;
    out.reserve(times.size());
    for (double t : times) {
        if (t < 0.0) throw InvalidInput("propagator_curve: times must be nonnegative");
        out.push_back(std::exp(log_prop_shifted(shifted, s, t)));
    }
    return out;
}

EnvelopeReport dominance_report(const CMatrix& c, const std::vector<double>& times,
                                const std::vector<double>& log_bound) {
    if (log_bound.size() != times.size()) throw InvalidInput("dominance_report: size mismatch");
    const double s = min_real_eigenvalue(c);
    const CMatrix shifted = c - cplx(s) * CMatrix::identity(c.dim());
    EnvelopeReport r;
    r.times = times;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double lp = log_prop_shifted(shifted, s, times[i]);
        const double ratio = std::exp(lp - log_bound[i]);
        r.propagator_sq.push_back(std::exp(lp));
        r.bound.push_back(std::exp(log_bound[i]));
        r.ratio.push_back(ratio);
        r.max_ratio = std::max(r.max_ratio, ratio);
    }
    r.dominated = r.max_ratio <= 1.0 + kDominanceTol;
    return r;
}

EnvelopeReport check_dominance(const CMatrix& c, const DecayEnvelope& env, const std::vector<double>& times) {
    std::vector<double> lb;
    lb.reserve(times.size());
    for (double t : times) lb.push_back(envelope_log(env, t));
    return dominance_report(c, times, lb);
}

double sharpness_order(const CMatrix& c, double mu) {
    const double s = min_real_eigenvalue(c);
    if (!(s > 0.0)) throw NotPositiveStable("sharpness_order: matrix is not positive stable");
    const CMatrix shifted = c - cplx(s) * CMatrix::identity(c.dim());
    constexpr int kPoints = 41;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < kPoints; ++i) {
        const double t = 20.0 + 40.0 * i / (kPoints - 1);
        const double x = std::log(t);
        const double y = 0.5 * log_prop_shifted(shifted, s, t) + mu * t;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = kPoints;
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

cplx ExpPoly::eval(double t) const {
    cplx total = 0.0;
    for (const auto& term : terms) {
        cplx p = 0.0;
        for (std::size_t i = term.coeffs.size(); i-- > 0;) p = p * t + term.coeffs[i];
        total += p * std::exp(-term.rate * t);
    }
    return total;
}

std::vector<ExpPoly> duhamel_components(const CMatrix& c, const CVector& y0) {
    const std::size_t n = c.dim();
    if (y0.size() != n) throw InvalidInput("duhamel_solve: size mismatch");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (c(i, j) != 0.0) throw InvalidInput("duhamel_solve: matrix is not lower triangular");

    std::vector<ExpPoly> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        const cplx a = c(i, i);
        add_term(y[i], a, 0, y0[i]);
        for (std::size_t j = 0; j < i; ++j) {
            const cplx cij = c(i, j);
            if (cij == 0.0) continue;
            for (const auto& term : y[j].terms) {
                const cplx b = term.rate;
                for (std::size_t p = 0; p < term.coeffs.size(); ++p) {
                    const cplx amp = -cij * term.coeffs[p];
                    if (amp == 0.0) continue;
                    if (same_rate(a, b)) {
                        add_term(y[i], a, p + 1, amp / static_cast<double>(p + 1));
                        continue;
                    }
                    // int_0^t e^{-a(t-s)} s^p e^{-b s} ds
                    const cplx delta = a - b;
                    double fall = 1.0;  // p! / (p-k)!
                    cplx dpow = delta;  // delta^{k+1}
                    for (std::size_t k = 0; k <= p; ++k) {
                        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
                        add_term(y[i], b, p - k, amp * sign * fall / dpow);
                        fall *= static_cast<double>(p - k);
                        dpow *= delta;
                    }
                    double pf = 1.0;
                    for (std::size_t k = 2; k <= p; ++k) pf *= static_cast<double>(k);
                    const double sign = (p % 2 == 0) ? 1.0 : -1.0;
                    cplx dp = 1.0;
                    for (std::size_t k = 0; k <= p; ++k) dp *= delta;
                    add_term(y[i], a, 0, -amp * sign * pf / dp);
                }
            }
        }
    }
    return y;
}

CVector duhamel_solve(const CMatrix& c, const CVector& y0, double t) {
    const auto comps = duhamel_components(c, y0);
    CVector out(comps.size());
    for (std::size_t i = 0; i < comps.size(); ++i) out[i] = comps[i].eval(t);
    return out;
}

CVector cd_mode_duhamel(cplx lambda, cplx dlambda, double k, cplx u0, cplx v0, double t) {
    const double k2 = k * k;
    const cplx e = std::exp(-k2 * lambda * t);
    return {e * u0, e * v0 - k2 * dlambda * t * e * u0};
}

double duhamel_mode_bound(int k) {
    if (k == 0) throw InvalidInput("duhamel_mode_bound: k must be nonzero");
    return 4.0 / 3.0;
}

double duhamel_mode_envelope(int k, double b, double dlambda_abs, double t) {
    const double k2 = static_cast<double>(k) * k;
    const double x = k2 * dlambda_abs * t;
    return duhamel_mode_bound(k) * (1.0 + x * x) * std::exp(-2.0 * k2 * b * t);
}

std::vector<double> log_time_grid(double tmax, std::size_t n) {
    if (n < 2 || !(tmax > 0.0)) throw InvalidInput("log_time_grid: need n >= 2 and tmax > 0");
    std::vector<double> g{0.0};
    const double lo = std::log(1e-3), hi = std::log(tmax);
    for (std::size_t i = 0; i + 1 < n; ++i) g.push_back(std::exp(lo + (hi - lo) * i / (n - 2 == 0 ? 1 : n - 2)));
    g.back() = tmax;
    return g;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
    if (n == 0) return {};
    if (n == 1) return {lo};
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return g;
}

}  // namespace lyapdecay
