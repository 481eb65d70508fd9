#include "lyapdecay/convection_diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lyapdecay/jordan.hpp"
#include "lyapdecay/linalg.hpp"
#include "lyapdecay/parallel.hpp"

namespace lyapdecay::cd {

namespace {

constexpr double kPi = std::numbers::pi;

std::function<double(double)> interp(const std::vector<double>& z, const std::vector<double>& y) {
    return [z, y](double x) {
        if (x <= z.front()) return y.front();
        if (x >= z.back()) return y.back();
        const auto it = std::upper_bound(z.begin(), z.end(), x);
        const std::size_t i = static_cast<std::size_t>(it - z.begin());
        const double w = (x - z[i - 1]) / (z[i] - z[i - 1]);
        return (1.0 - w) * y[i - 1] + w * y[i];
    };
}

double sup_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

bool negligible(cplx x, cplx lambda) { return std::abs(x) <= 1e-10 * (1.0 + std::abs(lambda)); }

CVector unit(std::size_t n, std::size_t i) {
    CVector v(n, 0.0);
    v[i] = 1.0;
    return v;
}

LyapunovForm diagonal_form(cplx lambda, std::size_t n) {
    std::vector<JordanBlock> blocks;
    for (std::size_t i = 0; i < n; ++i) blocks.push_back({lambda, {unit(n, i)}, 1.0});
    return build_form(make_structure(std::move(blocks)));
}

}  // namespace

CoefficientField CoefficientField::linear_tanh() {
    CoefficientField f;
    f.name = "linear_tanh";
    f.a = [](double z) { return z; };
    f.b = [](double z) { return 2.0 + std::tanh(z); };
    f.da = [](double) { return 1.0; };
    f.db = [](double z) { return 1.0 / std::pow(std::cosh(z), 2); };
    f.d2a = [](double) { return 0.0; };
    f.d2b = [](double z) { return -2.0 * std::tanh(z) / std::pow(std::cosh(z), 2); };
    f.b0 = 1.0;
    f.sup_da = 1.0;
    f.sup_db = 1.0;
    f.sup_d2a = 0.0;
    f.sup_d2b = 4.0 / (3.0 * std::sqrt(3.0));  // at tanh^2 z = 1/3
    return f;
}

CoefficientField CoefficientField::quadratic_sech(double z_max) {
    if (!(z_max > 0.0)) throw InvalidInput("quadratic_sech: z_max must be positive");
    CoefficientField f;
    f.name = "quadratic_sech";
    f.a = [](double z) { return 0.5 * z * z; };
    f.b = [](double z) { return 2.0 - 0.5 / std::cosh(z); };
    f.da = [](double z) { return z; };
    f.db = [](double z) { return 0.5 * std::tanh(z) / std::cosh(z); };
    f.d2a = [](double) { return 1.0; };
    f.d2b = [](double z) {
        const double s = 1.0 / std::cosh(z), th = std::tanh(z);
        return 0.5 * s * (s * s - th * th);
    };
    f.b0 = 1.5;
    f.sup_da = z_max;
    f.sup_db = 0.25;  // sech tanh <= 1/2
    f.sup_d2a = 1.0;
    f.sup_d2b = 0.5;
    return f;
}

CoefficientField CoefficientField::constant(double a, double b) {
    if (!(b > 0.0)) throw InvalidInput("constant field: b must be positive");
    CoefficientField f;
    f.name = "constant";
    f.a = [a](double) { return a; };
    f.b = [b](double) { return b; };
    f.da = f.db = f.d2a = f.d2b = [](double) { return 0.0; };
    f.b0 = b;
    return f;
}

CoefficientField CoefficientField::tabulated(std::vector<double> z, std::vector<double> a, std::vector<double> b,
                                             std::vector<double> da, std::vector<double> db,
                                             std::vector<double> d2a, std::vector<double> d2b) {
    const std::size_t n = z.size();
    if (n == 0 || a.size() != n || b.size() != n || da.size() != n || db.size() != n)
        throw InvalidInput("tabulated field: z, a, b, da, db must be nonempty and of equal length");
    if (d2a.empty()) d2a.assign(n, 0.0);
    if (d2b.empty()) d2b.assign(n, 0.0);
    if (d2a.size() != n || d2b.size() != n) throw InvalidInput("tabulated field: d2a, d2b length mismatch");
    for (std::size_t i = 1; i < n; ++i)
        if (!(z[i] > z[i - 1])) throw InvalidInput("tabulated field: z must be strictly increasing");
    CoefficientField f;
    f.name = "tabulated";
    f.b0 = *std::min_element(b.begin(), b.end());
    f.sup_da = sup_abs(da);
    f.sup_db = sup_abs(db);
    f.sup_d2a = sup_abs(d2a);
    f.sup_d2b = sup_abs(d2b);
    f.a = interp(z, a);
    f.b = interp(z, b);
    f.da = interp(z, da);
    f.db = interp(z, db);
    f.d2a = interp(z, d2a);
    f.d2b = interp(z, d2b);
    return f;
}

void validate_field(const CoefficientField& f, const std::vector<double>& z_grid) {
    if (z_grid.empty()) throw InvalidInput("cd: empty z grid");
    for (std::size_t i = 1; i < z_grid.size(); ++i)
        if (!(z_grid[i] > z_grid[i - 1])) throw InvalidInput("cd: z grid must be strictly increasing");
    if (!(f.b0 > 0.0)) throw InvalidInput("cd: b0 must be positive");
    for (double z : z_grid) {
        if (!(f.b(z) >= f.b0 * (1.0 - 1e-12))) throw InvalidInput("cd: b(z) below b0");
        const double slack = 1.0 + 1e-12;
        if (std::abs(f.da(z)) > f.sup_da * slack || std::abs(f.db(z)) > f.sup_db * slack ||
            std::abs(f.d2a(z)) > f.sup_d2a * slack || std::abs(f.d2b(z)) > f.sup_d2b * slack)
            throw InvalidInput("cd: sup norms do not dominate sampled derivatives");
    }
}

LambdaData lambda_k(const CoefficientField& f, int k, double z) {
    if (k == 0) throw InvalidInput("lambda_k: k must be nonzero");
    const double ik = 1.0 / static_cast<double>(k);
    return {cplx(f.b(z), f.a(z) * ik), cplx(f.db(z), f.da(z) * ik), cplx(f.d2b(z), f.d2a(z) * ik)};
}

const char* defect_case_name(DefectCase c) {
    switch (c) {
    case DefectCase::Case1: return "case1";
    case DefectCase::Case2: return "case2";
    case DefectCase::Case3: return "case3";
    }
    return "unknown";
}

bool first_order_defective(const LambdaData& l) { return !negligible(l.dlambda, l.lambda); }

DefectCase classify_second_order(const LambdaData& l) {
    if (!negligible(l.dlambda, l.lambda)) return DefectCase::Case3;
    if (!negligible(l.d2lambda, l.lambda)) return DefectCase::Case2;
    return DefectCase::Case1;
}

CMatrix first_order_system(const CoefficientField& f, int k, double z) {
    const auto l = lambda_k(f, k, z);
    const double k2 = static_cast<double>(k) * k;
    return k2 * CMatrix{{l.lambda, 0.0}, {l.dlambda, l.lambda}};
}

CMatrix second_order_system(const CoefficientField& f, int k, double z) {
    if (!f.d2a || !f.d2b) throw InvalidInput("second_order_system: second derivatives missing");
    const auto l = lambda_k(f, k, z);
    const double k2 = static_cast<double>(k) * k;
    return k2 * CMatrix{{l.lambda, 0.0, 0.0}, {l.dlambda, l.lambda, 0.0}, {l.d2lambda, 2.0 * l.dlambda, l.lambda}};
}

LyapunovForm first_order_form(const LambdaData& l) {
    if (!first_order_defective(l)) return diagonal_form(l.lambda, 2);
    const JordanBlock b{l.lambda, {{1.0, 0.0}, {0.0, 1.0 / std::conj(l.dlambda)}}, 1.0};
    WeightSpec w;
    w.level_weights[0] = {1.0, std::norm(l.dlambda)};
    return build_form(make_structure({b}), w);
}

LyapunovForm second_order_form(const LambdaData& l) {
    switch (classify_second_order(l)) {
    case DefectCase::Case1:
        return diagonal_form(l.lambda, 3);
    case DefectCase::Case2: {
        const JordanBlock b{l.lambda, {{1.0, 0.0, 0.0}, {0.0, 0.0, 1.0 / std::conj(l.d2lambda)}}, 1.0};
        const JordanBlock e{l.lambda, {{0.0, 1.0, 0.0}}, 1.0};
        WeightSpec w;
        w.level_weights[0] = {1.0, std::norm(l.d2lambda)};
        return build_form(make_structure({b, e}), w);
    }
    case DefectCase::Case3:
        break;
    }
    const cplx dl = std::conj(l.dlambda), d2l = std::conj(l.d2lambda);
    const std::vector<CVector> chain{
        {1.0, 0.0, 0.0}, {0.0, 1.0 / dl, 0.0}, {0.0, -d2l / (2.0 * dl * dl * dl), 1.0 / (2.0 * dl * dl)}};
    const cplx c = d2l / (2.0 * dl * dl);
    std::vector<CVector> shifted = chain;
    for (std::size_t i = 0; i < 3; ++i) {
        shifted[1][i] = chain[1][i] + c * chain[0][i];
        shifted[2][i] = chain[2][i] + c * chain[1][i];
    }
    WeightSpec w;
    const double m2 = std::norm(l.dlambda);
    w.level_weights[0] = {1.0, m2, 4.0 * m2 * m2};
    LyapunovForm form = build_form(make_structure({{l.lambda, chain, 1.0}}), w);
    form.blocks[0].level_chains = {chain, chain, shifted};
    return form;
}

double case3_constant(double dl_abs, double d2l_abs) {
    return 1.0 + (12.0 + 585.0 * (1.0 + d2l_abs * d2l_abs)) * std::max(1.0, std::pow(dl_abs, 4));
}

ModeEnvelope first_order_envelope(const CoefficientField& f, int k, double z) {
    const auto l = lambda_k(f, k, z);
    const double k2 = static_cast<double>(k) * k;
    const double rate = 2.0 * k2 * l.lambda.real();
    if (!first_order_defective(l)) return {1.0, rate, k2, 0};
    return {decay_constant(first_order_form(l)).C_const, rate, k2, 2};
}

ModeEnvelope second_order_envelope(const CoefficientField& f, int k, double z) {
    const auto l = lambda_k(f, k, z);
    const double k2 = static_cast<double>(k) * k;
    const double rate = 2.0 * k2 * l.lambda.real();
    switch (classify_second_order(l)) {
    case DefectCase::Case1: return {1.0, rate, k2, 0};
    case DefectCase::Case2: return {decay_constant(second_order_form(l)).C_const, rate, k2, 2};
    case DefectCase::Case3: break;
    }
    return {case3_constant(std::abs(l.dlambda), std::abs(l.d2lambda)), rate, k2, 4};
}

CVector tilde_w3_vector(const LambdaData& l, double tau) {
    if (!first_order_defective(l)) throw InvalidInput("tilde_w3_vector: dlambda must be nonzero");
    const auto form = second_order_form(l);
    return w_vector(form.blocks[0].level_chains[2], 1.0, 3, tau);
}

CVector tilde_w3_vector(const CoefficientField& f, int k, double z, double t) {
    return tilde_w3_vector(lambda_k(f, k, z), static_cast<double>(k) * k * t);
}

SpectralState gaussian_initial(int K, int order, double z, double amplitude, double width, double x0, double drift) {
    if (K < 1 || order < 1 || order > 2) throw InvalidInput("gaussian_initial: need K >= 1, order in {1,2}");
    SpectralState s;
    s.K = K;
    s.order = order;
    s.z = z;
    s.modes.assign(static_cast<std::size_t>(2 * K + 1), CVector(static_cast<std::size_t>(order + 1), 0.0));
    s.mode(0)[0] = 1.0;
    const double center = x0 + drift * z;
    for (int k = -K; k <= K; ++k) {
        if (k == 0) continue;
        const double kk = k;
        const cplx u = amplitude * width / std::sqrt(2.0 * kPi) * std::exp(-0.5 * kk * kk * width * width) *
                       std::exp(cplx(0.0, -kk * center));
        const cplx dz = cplx(0.0, -kk * drift);  // d/dz of e^{-ik x0(z)}
        auto& m = s.mode(k);
        m[0] = u;
        m[1] = dz * u;
        if (order == 2) m[2] = dz * dz * u;
    }
    return s;
}

CVector fourier_coefficients(const std::vector<double>& samples, int K) {
    const std::size_t n = samples.size();
    if (n == 0 || K < 0) throw InvalidInput("fourier_coefficients: empty samples");
    CVector c(static_cast<std::size_t>(2 * K + 1), 0.0);
    for (int k = -K; k <= K; ++k) {
        cplx acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double x = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
            acc += samples[j] * std::exp(cplx(0.0, -static_cast<double>(k) * x));
        }
        c[static_cast<std::size_t>(k + K)] = acc / static_cast<double>(n);
    }
    return c;
}

cplx synthesize(const CVector& coeffs, int K, double x) {
    cplx acc = 0.0;
    for (int k = -K; k <= K; ++k) acc += coeffs[static_cast<std::size_t>(k + K)] * std::exp(cplx(0.0, k * x));
    return acc;
}

SpectralState evolve_spectrum(const CoefficientField& f, const SpectralState& s, double t) {
    if (t < 0.0) throw InvalidInput("evolve_spectrum: t must be nonnegative");
    const auto& m0 = s.mode(0);
    if (m0[0] != 1.0) throw InvalidInput("evolve_spectrum: state is not normalized (u_0 != 1)");
    for (std::size_t i = 1; i < m0.size(); ++i)
        if (m0[i] != 0.0) throw InvalidInput("evolve_spectrum: sensitivity modes must carry zero mass");
    SpectralState out = s;
    for (int k = -s.K; k <= s.K; ++k) {
        if (k == 0) continue;
        const CMatrix c = s.order == 1 ? first_order_system(f, k, s.z) : second_order_system(f, k, s.z);
        out.mode(k) = expm(c, -t) * s.mode(k);
    }
    return out;
}

double distance_sq(const SpectralState& s) {
    double acc = 0.0;
    for (int k = -s.K; k <= s.K; ++k) {
        const auto& m = s.mode(k);
        for (std::size_t i = 0; i < m.size(); ++i) {
            const cplx d = (k == 0 && i == 0) ? m[i] - 1.0 : m[i];
            acc += std::norm(d);
        }
    }
    return acc / (2.0 * kPi);
}

double theorem_constant(const CoefficientField& f, int order, std::map<std::string, double>* pieces) {
    if (!(f.b0 > 0.0)) throw InvalidInput("theorem_constant: b0 must be positive");
    const double s1sq = f.sup_da * f.sup_da + f.sup_db * f.sup_db;
    if (order == 1) {
        const double mode = 12.0 * std::max(2.0, 1.0 + s1sq);
        const double c = mode_folding_constant(2.0, f.b0);
        if (pieces) {
            (*pieces)["mode_constant"] = mode;
            (*pieces)["folding_c"] = c;
            (*pieces)["folding_c_single_profile"] = folding_constant(2.0, 2.0 * f.b0);
        }
        return mode * c;
    }
    if (order != 2) throw InvalidInput("theorem_constant: order must be 1 or 2");
    const double s2sq = f.sup_d2a * f.sup_d2a + f.sup_d2b * f.sup_d2b;
    const double case3 = case3_constant(std::sqrt(s1sq), std::sqrt(s2sq));
    // Case 2 modes: 12 max{2, 1+|d2l|^2}(1 + x^2) <= 24 max{2, 1+|d2l|^2}(1 + x^4).
    const double case2 = 24.0 * std::max(2.0, 1.0 + s2sq);
    const double mode = std::max(case3, case2);
    const double c4 = mode_folding_constant(4.0, f.b0);
    if (pieces) {
        (*pieces)["case3_constant"] = case3;
        (*pieces)["case2_constant_t4"] = case2;
        (*pieces)["mode_constant"] = mode;
        (*pieces)["folding_c4"] = c4;
    }
    return mode * c4;
}

TheoremReport theorem_bound_check(const CoefficientField& f, const std::vector<double>& z_grid,
                                  const std::vector<double>& t_grid, int order, int K, const InitialData& initial) {
    validate_field(f, z_grid);
    if (t_grid.empty()) throw InvalidInput("theorem_bound_check: empty t grid");
    TheoremReport r;
    r.z = z_grid;
    r.t = t_grid;
    r.C_const = theorem_constant(f, order, &r.constants);
    r.constants["b0"] = f.b0;
    r.constants["K"] = K;
    r.norm_sq.assign(z_grid.size(), std::vector<double>(t_grid.size(), 0.0));
    std::vector<double> init(z_grid.size(), 0.0);
    parallel_for(z_grid.size(), [&](std::size_t i) {
        const double z = z_grid[i];
        const SpectralState s0 = initial ? initial(z) : gaussian_initial(K, order, z);
        if (s0.order != order || s0.K != K) throw InvalidInput("theorem_bound_check: initial data shape mismatch");
        init[i] = distance_sq(s0);
        for (std::size_t j = 0; j < t_grid.size(); ++j) r.norm_sq[i][j] = distance_sq(evolve_spectrum(f, s0, t_grid[j]));
    });
    r.initial_sup = *std::max_element(init.begin(), init.end());
    const double q = order == 1 ? 2.0 : 4.0;
    for (double t : t_grid) r.bound.push_back(r.C_const * (1.0 + std::pow(t, q)) * std::exp(-2.0 * f.b0 * t) * r.initial_sup);
    finalize_report(r);
    return r;
}

}  // namespace lyapdecay::cd
