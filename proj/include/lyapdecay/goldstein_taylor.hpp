#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lyapdecay/cmatrix.hpp"
#include "lyapdecay/jordan.hpp"
#include "lyapdecay/lyapunov.hpp"
#include "lyapdecay/model_common.hpp"

namespace lyapdecay::gt {

/// Relaxation coefficient sigma(z) of the two-velocity model, 0 < sigma0 <= sigma <= sigma1 < 2.
struct RelaxationField {
    std::string name;
    std::function<double(double)> sigma, dsigma;
    double sigma0 = 0.0, sigma1 = 0.0;
    double L = 0.0;  ///< sup |d sigma / dz|

    static RelaxationField constant(double s);
    /// base + amp tanh z
    static RelaxationField tanh_profile(double base = 1.0, double amp = 0.5);
    static RelaxationField tabulated(std::vector<double> z, std::vector<double> s, std::vector<double> ds);
};

/// Throws on sigma0 <= 0, sigma1 >= 2, or samples outside [sigma0, sigma1] / beyond L.
void validate_field(const RelaxationField& f, const std::vector<double>& z_grid);

/// Block lower-triangular D_k acting on (f+ + f-, f+ - f-, g+ + g-, g+ - g-)_k.
CMatrix gt_mode_matrix(double sigma, double sigma_z, int k);
CMatrix gt_mode_matrix(const RelaxationField& f, int k, double z);

/// (lambda_+, lambda_-) = sigma/2 +- i sqrt(k^2 - sigma^2/4); (sigma, 0) for k = 0.
std::pair<cplx, cplx> gt_eigenvalues(double sigma, int k);

/// Chains of D_k^H. sigma_z != 0: two length-2 chains; sigma_z = 0: four eigenvectors.
/// Block order: +, - (and for sigma_z = 0: 1+, 1-, 2+, 2-).
JordanStructure gt_chains(double sigma, double sigma_z, int k);

/// Weights 1 and sigma_z^2 / 4 (defective) or all 1 (non-defective).
LyapunovForm gt_form(double sigma, double sigma_z, int k);
CMatrix gt_p_matrix(double sigma, double sigma_z, int k);

struct UniformConstant {
    double lambda_min = 0.0, lambda_max = 0.0;
    double C_nondefective = 0.0;  ///< lambda_max / lambda_min
    double C_defective = 0.0;     ///< 12 (lambda_max / lambda_min) max{2, 1 + L^2/4}; 0 when L = 0
    double C0 = 1.0;              ///< 12 max{2, 1 + L^2}; 1 when L = 0
    double C_global = 0.0;        ///< max{2 C_nondefective, C_defective, C0}
    double margin = 1.1;          ///< tail factor for k > k_max (heuristic)
    int k_max = 64;
    double flatness = 0.0;        ///< max over the box of |P~_{k_max} - 2I|_2
};

/// Extremes of P~_k(sigma, sigma_z, 0) over 1 <= |k| <= k_max and an n x n box grid.
UniformConstant gt_uniform_constant(const RelaxationField& f, int k_max = 64, int n_grid = 9);
UniformConstant gt_uniform_constant(double sigma0, double sigma1, double L, int k_max = 64, int n_grid = 9);

/// k = 0: C0(z)(1+t^2)e^{-2 sigma t} on the complement of the conserved components.
/// k != 0: C_k(z)(1+t^2)e^{-sigma t} (defective) or 2 C_k(z) e^{-sigma t}.
ModeEnvelope gt_mode_envelope(const RelaxationField& f, int k, double z);
/// D_0 restricted to components (2, 4).
CMatrix gt_k0_complement(double sigma, double sigma_z);

struct GTState {
    int K = 32;
    double z = 0.0;
    std::vector<CVector> modes;  ///< 4-vectors, index k + K

    CVector& mode(int k) { return modes[static_cast<std::size_t>(k + K)]; }
    const CVector& mode(int k) const { return modes[static_cast<std::size_t>(k + K)]; }
};

/// Gaussian bumps in f+ and f- with z-dependent centres plus a z-dependent mass split 0.1 tanh z.
GTState gt_initial(int K, double z);
GTState gt_evolve(const RelaxationField& f, const GTState& s, double t);
/// (1/4 pi) sum_k |y_k - y_k^inf|^2 with y_0^inf = (1, 0, 0, 0).
double gt_distance_sq(const GTState& s);
/// Phi = (f+, f-, g+, g-) from y; the steady state maps to (1/2, 1/2, 0, 0).
CVector phi_from_y(const CVector& y);

using GTInitial = std::function<GTState(double z)>;

TheoremReport gt_theorem_check(const RelaxationField& f, const std::vector<double>& z_grid,
                               const std::vector<double>& t_grid, int K = 32, const GTInitial& initial = {},
                               int k_max = 64);

}  // namespace lyapdecay::gt
