#pragma once

#include <map>
#include <string>
#include <vector>

#include "lyapdecay/cmatrix.hpp"

namespace lyapdecay {

/// C (1 + (scale t)^power) e^{-rate t}; power = 0 means the pure exponential C e^{-rate t}.
struct ModeEnvelope {
    double C_const = 1.0;
    double rate = 0.0;
    double scale = 1.0;
    int power = 0;

    double operator()(double t) const;
    double log_value(double t) const;
};

/// Outcome of a global (Parseval-level) bound check over a z-grid and t-grid.
struct TheoremReport {
    std::vector<double> z;
    std::vector<double> t;
    std::vector<std::vector<double>> norm_sq;  ///< [z][t]
    std::vector<double> bound;                 ///< [t], already multiplied by initial_sup
    double initial_sup = 0.0;
    double C_const = 0.0;
    double max_ratio = 0.0;
    bool holds = true;
    std::map<std::string, double> constants;
    std::vector<std::string> notes;
};

/// Fills bound-dependent fields (max_ratio, holds) from norm_sq and bound.
void finalize_report(TheoremReport& r);

/// sup over k >= 1, t >= 0 of (1 + k^{2q} t^q) e^{-2(k^2-1) b0 t} / (1 + t^q), at least max_t (1+t^q) e^{-2 b0 t}.
/// Folds per-mode envelopes (1 + k^{2q} t^q) e^{-2 k^2 b0 t} into c (1 + t^q) e^{-2 b0 t}.
double mode_folding_constant(double q, double b0);

}  // namespace lyapdecay
