#pragma once

#include <vector>

#include "lyapdecay/cmatrix.hpp"
#include "lyapdecay/lyapunov.hpp"

namespace lyapdecay {

struct EnvelopeReport {
    std::vector<double> times;
    std::vector<double> propagator_sq;
    std::vector<double> bound;
    std::vector<double> ratio;
    double max_ratio = 0.0;
    bool dominated = true;
};

constexpr double kDominanceTol = 1e-9;

/// log |e^{-C t}|_2^2 via a scalar shift, finite for large t.
double log_propagator_sq(const CMatrix& c, double t);
std::vector<double> propagator_curve(const CMatrix& c, const std::vector<double>& times);

/// Compare |e^{-Ct}|^2 with an arbitrary bound given as log values.
EnvelopeReport dominance_report(const CMatrix& c, const std::vector<double>& times,
                                const std::vector<double>& log_bound);
EnvelopeReport check_dominance(const CMatrix& c, const DecayEnvelope& env, const std::vector<double>& times);

/// Least-squares slope of log(|e^{-Ct}|_2 e^{mu t}) against log t on [20, 60].
double sharpness_order(const CMatrix& c, double mu);

/// Sum of terms p(t) e^{-rate t}.
struct ExpPoly {
    struct Term {
        cplx rate;
        std::vector<cplx> coeffs;  ///< ascending powers of t
    };
    std::vector<Term> terms;
    cplx eval(double t) const;
};

/// Closed-form solution of y' = -C y for lower-triangular C by iterated Duhamel integrals.
std::vector<ExpPoly> duhamel_components(const CMatrix& c, const CVector& y0);
CVector duhamel_solve(const CMatrix& c, const CVector& y0, double t);

/// The displayed first-order mode formula: v(t) = e^{-k^2 lam t} v0 - k^2 dlam t e^{-k^2 lam t} u0.
CVector cd_mode_duhamel(cplx lambda, cplx dlambda, double k, cplx u0, cplx v0, double t);

double duhamel_mode_bound(int k);
/// (4/3)(1 + k^4 |dlam|^2 t^2) e^{-2 k^2 b t}; the constant does not depend on |dlam|.
double duhamel_mode_envelope(int k, double b, double dlambda_abs, double t);

/// Log-spaced grid on [0, tmax] (first point 0).
std::vector<double> log_time_grid(double tmax, std::size_t n);
std::vector<double> linear_grid(double lo, double hi, std::size_t n);

}  // namespace lyapdecay
