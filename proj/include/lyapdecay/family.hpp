#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lyapdecay/cmatrix.hpp"

namespace lyapdecay {

/// Two-by-two family C(z) = [[mu(z), mu'(z)], [0, mu(z)]].
struct ParamFamily {
    std::string name;
    std::function<double(double)> mu;
    std::function<double(double)> dmu;
    double mu_min = 0.0;
    std::vector<double> z_grid;

    static ParamFamily quadratic(double mu_min, double alpha, std::vector<double> z_grid);
    static ParamFamily exponential(double mu0, double alpha, double beta, std::vector<double> z_grid);
    static ParamFamily constant(double mu, std::vector<double> z_grid);
    /// Piecewise-linear interpolation of tabulated (z, mu, mu').
    static ParamFamily tabulated(std::vector<double> z, std::vector<double> mu, std::vector<double> dmu);
};

/// Checks mu >= mu_min > 0 on the grid and mu' against central differences (1e-5 relative).
void validate_family(const ParamFamily& fam, bool check_derivative = true);

CMatrix family_matrix(const ParamFamily& fam, double z);

/// sup_z (1 + 4 alpha^2 z^2 t^2) e^{-2 alpha z^2 t}.
double sup_f1(double alpha, double t);
double f1(double alpha, double z, double t);

double uniform_envelope_quadratic(double alpha, double mu_min, double t);
double uniform_envelope_exponential(double alpha, double beta, double mu0, double t);

/// Pointwise max over the family grid of |e^{-C(z) t}|^2. Not a certified supremum.
std::vector<double> grid_sup_envelope(const ParamFamily& fam, const std::vector<double>& t_grid);

}  // namespace lyapdecay
