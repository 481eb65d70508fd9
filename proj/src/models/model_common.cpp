#include "lyapdecay/model_common.hpp"

#include <algorithm>
#include <cmath>

#include "lyapdecay/lyapunov.hpp"

namespace lyapdecay {

double ModeEnvelope::operator()(double t) const { return std::exp(log_value(t)); }

double ModeEnvelope::log_value(double t) const {
    if (t < 0.0) throw InvalidInput("ModeEnvelope: t must be nonnegative");
    const double alg = power == 0 ? 0.0 : std::log1p(std::pow(scale * t, static_cast<double>(power)));
    return std::log(C_const) + alg - rate * t;
}

void finalize_report(TheoremReport& r) {
    r.max_ratio = 0.0;
    for (const auto& row : r.norm_sq)
        for (std::size_t j = 0; j < row.size(); ++j) r.max_ratio = std::max(r.max_ratio, row[j] / r.bound[j]);
    r.holds = r.max_ratio <= 1.0 + 1e-9;
}

namespace {

// max over t >= 0 of log((1 + k^{2q} t^q)/(1 + t^q)) - 2 (k^2 - 1) b0 t
double fold_for_k(double q, double b0, double k) {
    const double k2 = k * k;
    auto h = [&](double t) {
        return std::log1p(std::pow(k2 * t, q)) - std::log1p(std::pow(t, q)) - 2.0 * (k2 - 1.0) * b0 * t;
    };
    // Beyond t = q / ((k^2 - 1) b0) the log-ratio grows slower than the exponential decays.
    const double tmax = q / ((k2 - 1.0) * b0);
    constexpr int kGrid = 2000;
    double best_t = 0.0, best = h(0.0);
    for (int i = 1; i <= kGrid; ++i) {
        const double t = tmax * i / kGrid;
        const double v = h(t);
        if (v > best) {
            best = v;
            best_t = t;
        }
    }
    double lo = std::max(0.0, best_t - tmax / kGrid), hi = best_t + tmax / kGrid;
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 100; ++it) {
        const double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
        if (h(a) < h(b)) lo = a;
        else hi = b;
    }
    return std::exp(std::max(best, h(0.5 * (lo + hi))));
}

}  // namespace

double mode_folding_constant(double q, double b0) {
    if (!(q > 0.0) || !(b0 > 0.0)) throw InvalidInput("mode_folding_constant: q and b0 must be positive");
    // k = 1 contributes 1; large k approaches the k -> infinity profile (1 + s^q) e^{-2 b0 s}.
    double c = std::max(1.0, folding_constant(q, 2.0 * b0));
    for (int k = 2; k <= 256; ++k) c = std::max(c, fold_for_k(q, b0, k));
    return c;
}

}  // namespace lyapdecay
