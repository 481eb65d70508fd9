#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "lyapdecay/cmatrix.hpp"
#include "lyapdecay/lyapunov.hpp"
#include "lyapdecay/model_common.hpp"

namespace lyapdecay::fp {

/// Drift a(z) of f_t = (f_x + a x f)_x.
struct DriftField {
    std::string name;
    std::function<double(double)> a, da;
    double a0 = 0.0;
    double sup_da = 0.0;

    double alpha(double z) const { return da(z) / a(z); }

    static DriftField constant(double a);
    /// base + amp sin z
    static DriftField sine(double base = 1.0, double amp = 0.3);
    static DriftField tabulated(std::vector<double> z, std::vector<double> a, std::vector<double> da);
};

/// Diffusion d(z) of u_t = (d u_x + x u)_x.
struct DiffusionField {
    std::string name;
    std::function<double(double)> d, dd;
    double d0 = 0.0;
    double sup_ratio = 0.0;  ///< sup |d_z / d|

    static DiffusionField constant(double d);
    static DiffusionField sine(double base = 1.0, double amp = 0.3);
};

void validate_field(const DriftField& f, const std::vector<double>& z_grid);
void validate_field(const DiffusionField& f, const std::vector<double>& z_grid);

/// Nodes and weights for the weight e^{-y^2/2} (total mass sqrt(2 pi)).
struct GaussHermite {
    std::vector<double> nodes, weights;
};
GaussHermite gauss_hermite(std::size_t n);

/// psi_k(y) = He_k(y) / sqrt(k!) for k = 0..K.
std::vector<double> normalized_hermite(int K, double y);

/// h_k(x) = sqrt(s) h~_k(x sqrt(s)), h~_k = He_k e^{-x^2/2} / sqrt(2 pi k!).
/// s = a for the drift model, s = 1/d for the diffusion model.
class HermiteBasis {
public:
    HermiteBasis(int K, double scale);

    int K() const { return K_; }
    double scale() const { return s_; }
    const GaussHermite& rule() const { return rule_; }

    double eval(int k, double x) const;
    std::vector<double> eval_all(int kmax, double x) const;
    /// d/dx h_k = -sqrt(k+1) sqrt(s) h_{k+1}
    double deriv(int k, double x) const;
    /// Coefficients <phi, h_k> in L^2(1/h_0), k = 0..K, by Gauss-Hermite with 2K + 8 nodes.
    std::vector<double> project(const std::function<double(double)>& phi) const;
    /// <phi, psi> in L^2(1/h_0)
    double inner(const std::function<double(double)>& phi, const std::function<double(double)>& psi) const;

private:
    int K_;
    double s_;
    GaussHermite rule_;
};

double fp_gamma(int k);

/// Normalized mode matrix C_k(alpha): 2x2 for k = 1, 2 and 3x3 on (f_{k-2}, f_k, g_k) for k >= 3.
CMatrix fp_mode_matrix(double alpha, int k);
/// k a(z) C_k(alpha(z))
CMatrix fp_mode_system(const DriftField& f, int k, double z);

/// alpha = 0: e^{-2kat}; else 12 max{2, 1 + alpha^2} (1 + k^2 a^2 t^2) e^{-2kat}.
ModeEnvelope fp_envelope_k12(const DriftField& f, int k, double z);

/// k = 3 form with the defective block at 1 treated as time dependent; weights (1, alpha^-2, 1).
LyapunovForm fp_k3_form(double alpha);
CMatrix fp_p3_tilde(double alpha);
/// 1 + (3/4) alpha^2
double fp_delta(double alpha);
/// alpha = 0: e^{-2at}; else C~_3 e^{-2at}, C~_3 = cond(P~_3(0)) 12 max{2, 1 + alpha^2}.
ModeEnvelope fp_envelope_k3(const DriftField& f, double z);

struct K4Check {
    CMatrix A;
    std::array<double, 3> minors{};
    double det = 0.0;
    bool positive_definite = false;
};
/// diag(1, 1, min{1, alpha^-4} / 2)
CMatrix fp_k4_ptilde(double alpha);
/// A_k = C_k^H P~ + P~ C_k - P~/2 for k >= 4.
K4Check fp_k4_check(int k, double alpha);
/// Determinant sign functions for |alpha| >= 1 (f) and |alpha| <= 1 (g).
double fp_k4_f(double k, double alpha2, double gamma);
double fp_k4_g(double k, double alpha2, double gamma);
/// 2 max{1, alpha^4} e^{-2at}
ModeEnvelope fp_envelope_k4(const DriftField& f, int k, double z);

struct FPConstants {
    double r = 0.0;  ///< sup|a_z| / a0
    double C12 = 0.0, C3 = 0.0, C4 = 0.0;
    double C_global = 0.0;
};
FPConstants fp_constants(double a0, double sup_da);

/// Coefficients f_k, g_k for k = 0..K in the z-dependent basis; f_0 = 1, g_0 = 0.
struct FPState {
    int K = 40;
    double z = 0.0;
    std::vector<double> f, g;
};

/// f^0 = steady state shifted by shift + drift z; g^0 = d/dz f^0, both projected.
FPState fp_initial(const DriftField& f, int K, double z, double shift = 0.5, double drift = 0.2);
FPState fp_evolve(const DriftField& f, const FPState& s, double t);
/// sum_k f_k^2 + sum_k (g_k - g_k^inf)^2, g^inf = -(alpha / sqrt 2) h_2.
double fp_distance_sq(const DriftField& f, const FPState& s);

using FPInitial = std::function<FPState(double z)>;
TheoremReport fp_theorem_check(const DriftField& f, const std::vector<double>& z_grid,
                               const std::vector<double>& t_grid, int K = 40, const FPInitial& initial = {});

/// (u_{k-2}, v_k) system for k >= 2; off-diagonal -(d_z/d) sqrt((k-1) k).
CMatrix fp_diffusion_matrix(double ratio, int k);
/// Per-mode non-defective envelope C_k e^{-2(k-2)t} from the eigenvector construction.
ModeEnvelope fp_diffusion_envelope(const DiffusionField& f, int k, double z);
/// 1 + 2 max{1, 6 r^2 / 5}, r = sup|d_z/d|: bound C e^{-t} uniform in k.
double fp_diffusion_constant(double sup_ratio);

FPState fp_diffusion_initial(const DiffusionField& f, int K, double z, double shift = 0.5, double drift = 0.2);
FPState fp_diffusion_evolve(const DiffusionField& f, const FPState& s, double t);
/// v^inf = (d_z / (sqrt 2 d)) h^_2
double fp_diffusion_distance_sq(const DiffusionField& f, const FPState& s);
TheoremReport fp_diffusion_check(const DiffusionField& f, const std::vector<double>& z_grid,
                                 const std::vector<double>& t_grid, int K = 40);

}  // namespace lyapdecay::fp
