#include "lyapdecay/goldstein_taylor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lyapdecay/linalg.hpp"
#include "lyapdecay/oracle.hpp"
#include "lyapdecay/parallel.hpp"

namespace lyapdecay::gt {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

void check_box(double sigma0, double sigma1, double L) {
    if (!(sigma0 > 0.0)) throw InvalidInput("gt: sigma0 must be positive");
    if (!(sigma1 < 2.0)) throw InvalidInput("gt: sigma1 must be below 2");
    if (!(sigma1 >= sigma0)) throw InvalidInput("gt: sigma1 < sigma0");
    if (!(L >= 0.0) || !std::isfinite(L)) throw InvalidInput("gt: L must be finite and nonnegative");
}

void check_k(int k) {
    if (k == 0) throw InvalidInput("gt: k must be nonzero");
}

// v^(0) for the chain whose D^H-eigenvalue is conj(lm).
CVector head(cplx lm, double k, std::size_t offset) {
    CVector v(4, 0.0);
    v[offset] = -kI * lm / k;
    v[offset + 1] = 1.0;
    return v;
}

// (sigma_z / 2) v^(1), continuous in sigma_z.
CVector scaled_tail(cplx lm, double k, double sigma_z) {
    const cplx q = 1.0 - lm * lm / (k * k);
    const double h = 0.5 * sigma_z;
    return {h * kI * lm * lm / (2.0 * k * k * k), h * lm / (2.0 * k * k), -0.5 * kI * lm / k * q, 0.5 * q};
}

// P~_k with beta^2 = sigma_z^2/4, including the sigma_z -> 0 limit.
CMatrix p_defective(double sigma, double sigma_z, int k) {
    const auto [lp, lm] = gt_eigenvalues(sigma, k);
    CMatrix p(4);
    for (cplx l : {lm, lp}) {
        p += CMatrix::outer(head(l, k, 0), head(l, k, 0));
        const CVector u = scaled_tail(l, k, sigma_z);
        p += CMatrix::outer(u, u);
    }
    return p;
}

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

}  // namespace

RelaxationField RelaxationField::constant(double s) {
    check_box(s, s, 0.0);
    RelaxationField f;
    f.name = "constant";
    f.sigma = [s](double) { return s; };
    f.dsigma = [](double) { return 0.0; };
    f.sigma0 = f.sigma1 = s;
    return f;
}

RelaxationField RelaxationField::tanh_profile(double base, double amp) {
    const double a = std::abs(amp);
    check_box(base - a, base + a, a);
    RelaxationField f;
    f.name = "tanh";
    f.sigma = [=](double z) { return base + amp * std::tanh(z); };
    f.dsigma = [=](double z) { return amp / std::pow(std::cosh(z), 2); };
    f.sigma0 = base - a;
    f.sigma1 = base + a;
    f.L = a;
    return f;
}

RelaxationField RelaxationField::tabulated(std::vector<double> z, std::vector<double> s, std::vector<double> ds) {
    if (z.empty() || s.size() != z.size() || ds.size() != z.size())
        throw InvalidInput("gt tabulated: z, sigma, dsigma must be nonempty and of equal length");
    for (std::size_t i = 1; i < z.size(); ++i)
        if (!(z[i] > z[i - 1])) throw InvalidInput("gt tabulated: z must be strictly increasing");
    RelaxationField f;
    f.name = "tabulated";
    f.sigma0 = *std::min_element(s.begin(), s.end());
    f.sigma1 = *std::max_element(s.begin(), s.end());
    for (double d : ds) f.L = std::max(f.L, std::abs(d));
    check_box(f.sigma0, f.sigma1, f.L);
    f.sigma = interp(z, s);
    f.dsigma = interp(z, ds);
    return f;
}

void validate_field(const RelaxationField& f, const std::vector<double>& z_grid) {
    check_box(f.sigma0, f.sigma1, f.L);
    if (z_grid.empty()) throw InvalidInput("gt: empty z grid");
    for (std::size_t i = 1; i < z_grid.size(); ++i)
        if (!(z_grid[i] > z_grid[i - 1])) throw InvalidInput("gt: z grid must be strictly increasing");
    const double slack = 1e-12;
    for (double z : z_grid) {
        const double s = f.sigma(z);
        if (s < f.sigma0 - slack || s > f.sigma1 + slack) throw InvalidInput("gt: sigma(z) outside [sigma0, sigma1]");
        if (std::abs(f.dsigma(z)) > f.L * (1.0 + slack)) throw InvalidInput("gt: |dsigma| exceeds L");
    }
}

CMatrix gt_mode_matrix(double sigma, double sigma_z, int k) {
    const cplx ik = kI * static_cast<double>(k);
    return CMatrix{{0.0, ik, 0.0, 0.0}, {ik, sigma, 0.0, 0.0}, {0.0, 0.0, 0.0, ik}, {0.0, sigma_z, ik, sigma}};
}

CMatrix gt_mode_matrix(const RelaxationField& f, int k, double z) { return gt_mode_matrix(f.sigma(z), f.dsigma(z), k); }

std::pair<cplx, cplx> gt_eigenvalues(double sigma, int k) {
    if (k == 0) return {sigma, 0.0};
    const double k2 = static_cast<double>(k) * k;
    const double disc = k2 - 0.25 * sigma * sigma;
    if (!(disc > 0.0)) throw InvalidInput("gt: sigma must satisfy sigma < 2|k|");
    const double w = std::sqrt(disc);
    return {cplx(0.5 * sigma, w), cplx(0.5 * sigma, -w)};
}

JordanStructure gt_chains(double sigma, double sigma_z, int k) {
    check_k(k);
    const auto [lp, lm] = gt_eigenvalues(sigma, k);
    const double kk = k;
    std::vector<JordanBlock> blocks;
    if (sigma_z == 0.0) {
        for (std::size_t off : {0u, 2u})
            for (cplx l : {lm, lp}) blocks.push_back({l, {head(l, kk, off)}, 1.0});
        return make_structure(std::move(blocks));
    }
    for (cplx l : {lm, lp}) {
        const cplx q = 1.0 - l * l / (kk * kk);
        const CVector v1{kI * l * l / (2.0 * kk * kk * kk), l / (2.0 * kk * kk), -kI * l / (sigma_z * kk) * q, q / sigma_z};
        blocks.push_back({l, {head(l, kk, 0), v1}, 1.0});
    }
    return make_structure(std::move(blocks));
}

LyapunovForm gt_form(double sigma, double sigma_z, int k) {
    const auto s = gt_chains(sigma, sigma_z, k);
    if (sigma_z == 0.0) return build_form(s);
    WeightSpec w;
    const double b2 = 0.25 * sigma_z * sigma_z;
    w.level_weights[0] = {1.0, b2};
    w.level_weights[1] = {1.0, b2};
    return build_form(s, w);
}

CMatrix gt_p_matrix(double sigma, double sigma_z, int k) {
    check_k(k);
    if (sigma_z == 0.0) return build_p(gt_form(sigma, 0.0, k), 0.0);
    return p_defective(sigma, sigma_z, k);
}

UniformConstant gt_uniform_constant(double sigma0, double sigma1, double L, int k_max, int n_grid) {
    check_box(sigma0, sigma1, L);
    if (k_max < 1 || n_grid < 1) throw InvalidInput("gt_uniform_constant: need k_max >= 1 and n_grid >= 1");
    const auto sig = n_grid == 1 || sigma0 == sigma1 ? std::vector<double>{sigma0, sigma1}
                                                     : linear_grid(sigma0, sigma1, static_cast<std::size_t>(n_grid));
    const auto sz = L == 0.0 || n_grid == 1 ? std::vector<double>{-L, 0.0, L}
                                            : linear_grid(-L, L, static_cast<std::size_t>(2 * (n_grid / 2) + 1));

    struct Slot {
        double min1 = 1e300, max1 = 0.0, min2 = 1e300, max2 = 0.0, flat = 0.0;
    };
    const std::size_t nk = static_cast<std::size_t>(2 * k_max);
    std::vector<Slot> slots(nk);
    parallel_for(nk, [&](std::size_t i) {
        const int k = i < static_cast<std::size_t>(k_max) ? static_cast<int>(i) + 1 : -static_cast<int>(i) + k_max - 1;
        Slot& sl = slots[i];
        const bool edge = std::abs(k) == k_max;
        for (double s : sig) {
            const CMatrix p1 = gt_p_matrix(s, 0.0, k);
            const auto e1 = hermitian_extremes(p1);
            sl.min1 = std::min(sl.min1, e1.lambda_min);
            sl.max1 = std::max(sl.max1, e1.lambda_max);
            if (edge) sl.flat = std::max(sl.flat, spectral_norm(p1 - 2.0 * CMatrix::identity(4)));
            if (L == 0.0) continue;
            for (double d : sz) {
                const CMatrix p2 = p_defective(s, d, k);
                const auto e2 = hermitian_extremes(p2);
                sl.min2 = std::min(sl.min2, e2.lambda_min);
                sl.max2 = std::max(sl.max2, e2.lambda_max);
                if (edge) sl.flat = std::max(sl.flat, spectral_norm(p2 - 2.0 * CMatrix::identity(4)));
            }
        }
        if (edge) {  // tail |k| > k_max: widen the last band by the margin
            sl.min1 /= 1.1, sl.max1 *= 1.1;
            sl.min2 /= 1.1, sl.max2 *= 1.1;
        }
    });
    Slot all;
    for (const auto& s : slots) {
        all.min1 = std::min(all.min1, s.min1), all.max1 = std::max(all.max1, s.max1);
        all.min2 = std::min(all.min2, s.min2), all.max2 = std::max(all.max2, s.max2);
        all.flat = std::max(all.flat, s.flat);
    }
    UniformConstant u;
    u.k_max = k_max;
    u.flatness = all.flat;
    u.C_nondefective = all.max1 / all.min1;
    u.lambda_min = all.min1;
    u.lambda_max = all.max1;
    if (L > 0.0) {
        u.C_defective = 12.0 * (all.max2 / all.min2) * std::max(2.0, 1.0 + 0.25 * L * L);
        u.C0 = 12.0 * std::max(2.0, 1.0 + L * L);
        u.lambda_min = std::min(u.lambda_min, all.min2);
        u.lambda_max = std::max(u.lambda_max, all.max2);
    }
    u.C_global = std::max({2.0 * u.C_nondefective, u.C_defective, u.C0});
    return u;
}

UniformConstant gt_uniform_constant(const RelaxationField& f, int k_max, int n_grid) {
    return gt_uniform_constant(f.sigma0, f.sigma1, f.L, k_max, n_grid);
}

CMatrix gt_k0_complement(double sigma, double sigma_z) { return CMatrix{{sigma, 0.0}, {sigma_z, sigma}}; }

ModeEnvelope gt_mode_envelope(const RelaxationField& f, int k, double z) {
    const double s = f.sigma(z), sz = f.dsigma(z);
    if (k == 0) {
        if (sz == 0.0) return {1.0, 2.0 * s, 1.0, 0};
        return {12.0 * std::max(2.0, 1.0 + sz * sz), 2.0 * s, 1.0, 2};
    }
    const auto env = decay_constant(gt_form(s, sz, k));
    if (sz == 0.0) return {2.0 * env.C_const, s, 1.0, 0};
    return {env.C_const, s, 1.0, 2};
}

GTState gt_initial(int K, double z) {
    if (K < 1) throw InvalidInput("gt_initial: K must be positive");
    GTState st;
    st.K = K;
    st.z = z;
    st.modes.assign(static_cast<std::size_t>(2 * K + 1), CVector(4, 0.0));
    const double th = std::tanh(z), sech2 = 1.0 / std::pow(std::cosh(z), 2);
    st.mode(0) = {1.0, 0.2 * th, 0.0, 0.2 * sech2};
    struct Bump {
        double amp, width, centre, drift;
    };
    const Bump plus{0.5, 0.5, 1.0 + 0.3 * z, 0.3}, minus{0.3, 0.4, 3.0 - 0.2 * z, -0.2};
    auto coeff = [](const Bump& b, int k) {
        const double kk = k;
        const cplx c = b.amp * b.width / std::sqrt(2.0 * kPi) * std::exp(-0.5 * kk * kk * b.width * b.width) *
                       std::exp(cplx(0.0, -kk * b.centre));
        return std::pair<cplx, cplx>{c, cplx(0.0, -kk * b.drift) * c};
    };
    for (int k = -K; k <= K; ++k) {
        if (k == 0) continue;
        const auto [fp, gp] = coeff(plus, k);
        const auto [fm, gm] = coeff(minus, k);
        st.mode(k) = {fp + fm, fp - fm, gp + gm, gp - gm};
    }
    return st;
}

GTState gt_evolve(const RelaxationField& f, const GTState& s, double t) {
    if (t < 0.0) throw InvalidInput("gt_evolve: t must be nonnegative");
    const auto& m0 = s.mode(0);
    if (m0[0] != 1.0 || m0[2] != 0.0) throw InvalidInput("gt_evolve: state is not normalized");
    GTState out = s;
    const double sig = f.sigma(s.z), sz = f.dsigma(s.z);
    for (int k = -s.K; k <= s.K; ++k) out.mode(k) = expm(gt_mode_matrix(sig, sz, k), -t) * s.mode(k);
    // conserved masses are carried over, never propagated
    out.mode(0)[0] = 1.0;
    out.mode(0)[2] = 0.0;
    return out;
}

double gt_distance_sq(const GTState& s) {
    double acc = 0.0;
    for (int k = -s.K; k <= s.K; ++k) {
        const auto& m = s.mode(k);
        for (std::size_t i = 0; i < 4; ++i) acc += std::norm((k == 0 && i == 0) ? m[i] - 1.0 : m[i]);
    }
    return acc / (4.0 * kPi);
}

CVector phi_from_y(const CVector& y) {
    if (y.size() != 4) throw InvalidInput("phi_from_y: need a 4-vector");
    return {0.5 * (y[0] + y[1]), 0.5 * (y[0] - y[1]), 0.5 * (y[2] + y[3]), 0.5 * (y[2] - y[3])};
}

TheoremReport gt_theorem_check(const RelaxationField& f, const std::vector<double>& z_grid,
                               const std::vector<double>& t_grid, int K, const GTInitial& initial, int k_max) {
    validate_field(f, z_grid);
    if (t_grid.empty()) throw InvalidInput("gt_theorem_check: empty t grid");
    const auto u = gt_uniform_constant(f, k_max);
    TheoremReport r;
    r.z = z_grid;
    r.t = t_grid;
    r.C_const = u.C_global;
    r.constants = {{"lambda_min", u.lambda_min}, {"lambda_max", u.lambda_max},
                   {"C_nondefective", u.C_nondefective}, {"C_defective", u.C_defective},
                   {"C0", u.C0}, {"margin", u.margin}, {"k_max", u.k_max}, {"flatness", u.flatness},
                   {"sigma0", f.sigma0}};
    r.notes.push_back("lambda_min/lambda_max are grid witnesses with heuristic tail factor 1.1 beyond k_max");
    r.norm_sq.assign(z_grid.size(), std::vector<double>(t_grid.size(), 0.0));
    std::vector<double> init(z_grid.size(), 0.0);
    parallel_for(z_grid.size(), [&](std::size_t i) {
        const GTState s0 = initial ? initial(z_grid[i]) : gt_initial(K, z_grid[i]);
        if (s0.K != K) throw InvalidInput("gt_theorem_check: initial data shape mismatch");
        init[i] = gt_distance_sq(s0);
        for (std::size_t j = 0; j < t_grid.size(); ++j) r.norm_sq[i][j] = gt_distance_sq(gt_evolve(f, s0, t_grid[j]));
    });
    r.initial_sup = *std::max_element(init.begin(), init.end());
    for (double t : t_grid) r.bound.push_back(r.C_const * (1.0 + t * t) * std::exp(-f.sigma0 * t) * r.initial_sup);
    finalize_report(r);
    return r;
}

}  // namespace lyapdecay::gt
