#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "lyapdecay/cmatrix.hpp"
#include "lyapdecay/lyapunov.hpp"
#include "lyapdecay/model_common.hpp"

namespace lyapdecay::cd {

/// Coefficients of u_t = -a(z) u_x + b(z) u_xx on the torus, with z-derivatives.
struct CoefficientField {
    std::string name;
    std::function<double(double)> a, b, da, db, d2a, d2b;
    double b0 = 0.0;
    double sup_da = 0.0, sup_db = 0.0, sup_d2a = 0.0, sup_d2b = 0.0;

    /// a(z) = z, b(z) = 2 + tanh z.
    static CoefficientField linear_tanh();
    /// a(z) = z^2/2, b(z) = 2 - sech(z)/2 on |z| <= z_max; dlambda vanishes at z = 0 while d2lambda does not.
    static CoefficientField quadratic_sech(double z_max = 2.0);
    static CoefficientField constant(double a, double b);
    /// Piecewise-linear tables; b0 and sup norms are taken over the table.
    static CoefficientField tabulated(std::vector<double> z, std::vector<double> a, std::vector<double> b,
                                      std::vector<double> da, std::vector<double> db, std::vector<double> d2a,
                                      std::vector<double> d2b);
};

/// Throws unless b >= b0 > 0 on the grid and the sup norms dominate the sampled derivatives.
void validate_field(const CoefficientField& f, const std::vector<double>& z_grid);

struct LambdaData {
    cplx lambda, dlambda, d2lambda;
};

/// lambda_k = b + i a / k and its z-derivatives.
LambdaData lambda_k(const CoefficientField& f, int k, double z);

enum class DefectCase { Case1, Case2, Case3 };
const char* defect_case_name(DefectCase c);

/// Case 3 iff |dlambda| > 1e-10 (1 + |lambda|); otherwise Case 2 iff d2lambda is nonzero by the same test.
DefectCase classify_second_order(const LambdaData& l);
bool first_order_defective(const LambdaData& l);

/// k^2 [[lambda, 0], [dlambda, lambda]]
CMatrix first_order_system(const CoefficientField& f, int k, double z);
/// k^2 [[lambda, 0, 0], [dlambda, lambda, 0], [d2lambda, 2 dlambda, lambda]]
CMatrix second_order_system(const CoefficientField& f, int k, double z);

/// Analytic chains and unit-P(0) form of the rescaled (k^2 = 1) first-order system.
LyapunovForm first_order_form(const LambdaData& l);
/// Second-order forms: Case 2 plain, Case 3 with the shifted level-3 chain and weights (1, |dl|^2, 4|dl|^4).
LyapunovForm second_order_form(const LambdaData& l);

ModeEnvelope first_order_envelope(const CoefficientField& f, int k, double z);
ModeEnvelope second_order_envelope(const CoefficientField& f, int k, double z);

/// 1 + (12 + 585 (1 + |d2l|^2)) max{1, |dl|^4}
double case3_constant(double dl_abs, double d2l_abs);

/// w~3 = w3 + (conj d2l / (2 conj dl^2)) w2 in rescaled time tau = k^2 t.
CVector tilde_w3_vector(const LambdaData& l, double tau);
/// Same in physical time t (tau = k^2 t).
CVector tilde_w3_vector(const CoefficientField& f, int k, double z, double t);

/// Fourier coefficients k = -K..K (index k + K); each entry has order + 1 components (u, v[, w]).
struct SpectralState {
    int K = 32;
    int order = 1;
    double z = 0.0;
    std::vector<CVector> modes;

    CVector& mode(int k) { return modes[static_cast<std::size_t>(k + K)]; }
    const CVector& mode(int k) const { return modes[static_cast<std::size_t>(k + K)]; }
};

/// Periodized Gaussian bump centred at x0(z) = x0 + drift z, plus the constant 1 (mass 1).
SpectralState gaussian_initial(int K, int order, double z, double amplitude = 0.5, double width = 0.5,
                               double x0 = 1.0, double drift = 0.3);

/// Direct-quadrature Fourier coefficients of samples on the uniform 2 pi-periodic grid.
CVector fourier_coefficients(const std::vector<double>& samples, int K);
/// Sum_k c_k e^{ikx}
cplx synthesize(const CVector& coeffs, int K, double x);

SpectralState evolve_spectrum(const CoefficientField& f, const SpectralState& s, double t);

/// (1/2 pi) sum_k |y_k - y_k^inf|^2, y^inf = (1, 0, 0) in mode 0.
double distance_sq(const SpectralState& s);

/// Uniform constant of the global bound; entries of the returned map document the pieces.
double theorem_constant(const CoefficientField& f, int order, std::map<std::string, double>* pieces = nullptr);

using InitialData = std::function<SpectralState(double z)>;

/// Defaults to gaussian_initial(K, order, z).
TheoremReport theorem_bound_check(const CoefficientField& f, const std::vector<double>& z_grid,
                                  const std::vector<double>& t_grid, int order, int K = 32,
                                  const InitialData& initial = {});

}  // namespace lyapdecay::cd
