#include "lyapdecay/fokker_planck.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "lyapdecay/jordan.hpp"
#include "lyapdecay/linalg.hpp"
#include "lyapdecay/parallel.hpp"

namespace lyapdecay::fp {

namespace {

const double kSqrt2Pi = std::sqrt(2.0 * std::numbers::pi);

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

void check_grid(const std::vector<double>& z_grid) {
    if (z_grid.empty()) throw InvalidInput("fp: empty z grid");
    for (std::size_t i = 1; i < z_grid.size(); ++i)
        if (!(z_grid[i] > z_grid[i - 1])) throw InvalidInput("fp: z grid must be strictly increasing");
}

void check_K(int K) {
    if (K < 3) throw InvalidInput("fp: need K >= 3");
}

// psi_n and psi_{n-1} at y
std::pair<double, double> psi_pair(int n, double y) {
    double prev = 0.0, cur = 1.0;
    for (int k = 0; k < n; ++k) {
        const double next = (y * cur - std::sqrt(static_cast<double>(k)) * prev) / std::sqrt(k + 1.0);
        prev = cur;
        cur = next;
    }
    return {cur, prev};
}

GaussHermite compute_rule(std::size_t n) {
    CMatrix j(n);
    for (std::size_t k = 1; k < n; ++k) j(k - 1, k) = j(k, k - 1) = std::sqrt(static_cast<double>(k));
    const auto eig = hermitian_eigen(j);
    GaussHermite g;
    const int ni = static_cast<int>(n);
    for (std::size_t i = 0; i < n; ++i) {
        double y = eig.values[i];
        for (int it = 0; it < 3; ++it) {
            const auto [p, q] = psi_pair(ni, y);
            y -= p / (std::sqrt(static_cast<double>(n)) * q);
        }
        const double q = psi_pair(ni, y).second;
        g.nodes.push_back(y);
        g.weights.push_back(kSqrt2Pi / (static_cast<double>(n) * q * q));
    }
    return g;
}

const GaussHermite& cached_rule(std::size_t n) {
    static std::mutex m;
    static std::map<std::size_t, GaussHermite> cache;
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
    return it->second;
}

}  // namespace

DriftField DriftField::constant(double a) {
    if (!(a > 0.0)) throw InvalidInput("fp: drift must be positive");
    return {"constant", [=](double) { return a; }, [](double) { return 0.0; }, a, 0.0};
}

DriftField DriftField::sine(double base, double amp) {
    if (!(base > std::abs(amp))) throw InvalidInput("fp: need base > |amp|");
    return {"sine", [=](double z) { return base + amp * std::sin(z); }, [=](double z) { return amp * std::cos(z); },
            base - std::abs(amp), std::abs(amp)};
}

DriftField DriftField::tabulated(std::vector<double> z, std::vector<double> a, std::vector<double> da) {
    if (z.empty() || z.size() != a.size() || z.size() != da.size())
        throw InvalidInput("fp: tabulated z, a, da must be nonempty and of equal length");
    check_grid(z);
    const double a0 = *std::min_element(a.begin(), a.end());
    if (!(a0 > 0.0)) throw InvalidInput("fp: drift must be positive");
    double s = 0.0;
    for (double v : da) s = std::max(s, std::abs(v));
    return {"tabulated", interp(z, a), interp(z, da), a0, s};
}

DiffusionField DiffusionField::constant(double d) {
    if (!(d > 0.0)) throw InvalidInput("fp: diffusion must be positive");
    return {"constant", [=](double) { return d; }, [](double) { return 0.0; }, d, 0.0};
}

DiffusionField DiffusionField::sine(double base, double amp) {
    if (!(base > std::abs(amp))) throw InvalidInput("fp: need base > |amp|");
    const double d0 = base - std::abs(amp);
    return {"sine", [=](double z) { return base + amp * std::sin(z); }, [=](double z) { return amp * std::cos(z); },
            d0, std::abs(amp) / d0};
}

void validate_field(const DriftField& f, const std::vector<double>& z_grid) {
    check_grid(z_grid);
    if (!(f.a0 > 0.0)) throw InvalidInput("fp: a0 must be positive");
    for (double z : z_grid) {
        const double a = f.a(z), da = f.da(z);
        if (!std::isfinite(a) || !std::isfinite(da)) throw InvalidInput("fp: non-finite drift");
        if (a < f.a0 * (1.0 - 1e-12)) throw InvalidInput("fp: a(z) below a0");
        if (std::abs(da) > f.sup_da * (1.0 + 1e-12) + 1e-15) throw InvalidInput("fp: |a_z| exceeds sup_da");
    }
}

void validate_field(const DiffusionField& f, const std::vector<double>& z_grid) {
    check_grid(z_grid);
    if (!(f.d0 > 0.0)) throw InvalidInput("fp: d0 must be positive");
    for (double z : z_grid) {
        const double d = f.d(z), dd = f.dd(z);
        if (!std::isfinite(d) || !std::isfinite(dd)) throw InvalidInput("fp: non-finite diffusion");
        if (d < f.d0 * (1.0 - 1e-12)) throw InvalidInput("fp: d(z) below d0");
        if (std::abs(dd / d) > f.sup_ratio * (1.0 + 1e-12) + 1e-15) throw InvalidInput("fp: |d_z/d| exceeds sup_ratio");
    }
}

GaussHermite gauss_hermite(std::size_t n) {
    if (n < 1) throw InvalidInput("gauss_hermite: need n >= 1");
    return cached_rule(n);
}

std::vector<double> normalized_hermite(int K, double y) {
    if (K < 0) throw InvalidInput("normalized_hermite: K must be nonnegative");
    std::vector<double> p(static_cast<std::size_t>(K) + 1);
    p[0] = 1.0;
    if (K >= 1) p[1] = y;
    for (int k = 1; k < K; ++k)
        p[k + 1] = (y * p[k] - std::sqrt(static_cast<double>(k)) * p[k - 1]) / std::sqrt(k + 1.0);
    return p;
}

HermiteBasis::HermiteBasis(int K, double scale) : K_(K), s_(scale) {
    if (K < 0) throw InvalidInput("HermiteBasis: K must be nonnegative");
    if (!(scale > 0.0) || !std::isfinite(scale)) throw InvalidInput("HermiteBasis: scale must be positive");
    rule_ = cached_rule(2 * static_cast<std::size_t>(K) + 8);
}

double HermiteBasis::eval(int k, double x) const {
    if (k < 0) return 0.0;
    const double y = x * std::sqrt(s_);
    return std::sqrt(s_) * normalized_hermite(k, y).back() * std::exp(-0.5 * y * y) / kSqrt2Pi;
}

std::vector<double> HermiteBasis::eval_all(int kmax, double x) const {
    const double y = x * std::sqrt(s_);
    auto p = normalized_hermite(kmax, y);
    const double g = std::sqrt(s_) * std::exp(-0.5 * y * y) / kSqrt2Pi;
    for (double& v : p) v *= g;
    return p;
}

double HermiteBasis::deriv(int k, double x) const { return -std::sqrt(k + 1.0) * std::sqrt(s_) * eval(k + 1, x); }

std::vector<double> HermiteBasis::project(const std::function<double(double)>& phi) const {
    std::vector<double> c(static_cast<std::size_t>(K_) + 1, 0.0);
    const double rs = std::sqrt(s_);
    for (std::size_t i = 0; i < rule_.nodes.size(); ++i) {
        const double y = rule_.nodes[i];
        const double w = rule_.weights[i] * std::exp(0.5 * y * y) * phi(y / rs) / rs;
        const auto p = normalized_hermite(K_, y);
        for (int k = 0; k <= K_; ++k) c[k] += w * p[k];
    }
    return c;
}

double HermiteBasis::inner(const std::function<double(double)>& phi, const std::function<double(double)>& psi) const {
    const double rs = std::sqrt(s_);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule_.nodes.size(); ++i) {
        const double y = rule_.nodes[i];
        acc += rule_.weights[i] * std::exp(y * y) * phi(y / rs) * psi(y / rs);
    }
    return acc * kSqrt2Pi / s_;
}

double fp_gamma(int k) {
    if (k < 1) throw InvalidInput("fp_gamma: k must be positive");
    return std::sqrt((k - 1.0) / k);
}

CMatrix fp_mode_matrix(double alpha, int k) {
    if (k < 1) throw InvalidInput("fp_mode_matrix: k must be positive");
    if (k <= 2) return CMatrix{{1.0, 0.0}, {alpha, 1.0}};
    const double kk = k;
    return CMatrix{{(kk - 2.0) / kk, 0.0, 0.0}, {0.0, 1.0, 0.0}, {fp_gamma(k) * alpha, alpha, 1.0}};
}

CMatrix fp_mode_system(const DriftField& f, int k, double z) {
    return cplx(k * f.a(z)) * fp_mode_matrix(f.alpha(z), k);
}

ModeEnvelope fp_envelope_k12(const DriftField& f, int k, double z) {
    if (k != 1 && k != 2) throw InvalidInput("fp_envelope_k12: k must be 1 or 2");
    const double a = f.a(z), al = f.alpha(z);
    if (al == 0.0) return {1.0, 2.0 * k * a, 1.0, 0};
    return {12.0 * std::max(2.0, 1.0 + al * al), 2.0 * k * a, k * a, 2};
}

LyapunovForm fp_k3_form(double alpha) {
    if (alpha == 0.0) throw InvalidInput("fp_k3_form: alpha = 0 is non-defective");
    const JordanBlock slow{1.0 / 3.0, {{1.0, 0.0, 0.0}}, 1.0};
    const JordanBlock fast{1.0, {{0.0, alpha, 0.0}, {std::sqrt(1.5) * alpha, 0.0, 1.0}}, 1.0};
    WeightSpec w;
    w.level_weights[1] = {1.0 / (alpha * alpha), 1.0};
    w.tilde_blocks.insert(1);
    return build_form(make_structure({slow, fast}), w);
}

CMatrix fp_p3_tilde(double alpha) {
    const double s = std::sqrt(1.5) * alpha;
    return CMatrix{{1.0 + s * s, 0.0, s}, {0.0, 1.0, 0.0}, {s, 0.0, 1.0}};
}

double fp_delta(double alpha) { return 1.0 + 0.75 * alpha * alpha; }

ModeEnvelope fp_envelope_k3(const DriftField& f, double z) {
    const double a = f.a(z), al = f.alpha(z);
    if (al == 0.0) return {1.0, 2.0 * a, 1.0, 0};
    const auto env = tilde_constant(fp_k3_form(al));
    // (1 + tau^2) of the fast block against its surplus decay e^{-2 (1 - 1/3) tau}
    return {env.C_const * folding_constant(2.0, 4.0 / 3.0), 2.0 * a, 1.0, 0};
}

CMatrix fp_k4_ptilde(double alpha) {
    const double a2 = alpha * alpha;
    const double m = a2 <= 1.0 ? 1.0 : 1.0 / (a2 * a2);
    return CMatrix::diagonal({1.0, 1.0, 0.5 * m});
}

K4Check fp_k4_check(int k, double alpha) {
    if (k < 4) throw InvalidInput("fp_k4_check: k must be >= 4");
    const CMatrix c = fp_mode_matrix(alpha, k);
    const CMatrix p = fp_k4_ptilde(alpha);
    K4Check out;
    out.A = c.adjoint() * p + p * c - cplx(0.5) * p;
    const auto& A = out.A;
    auto re = [&](std::size_t i, std::size_t j) { return A(i, j).real(); };
    out.minors[0] = re(0, 0);
    out.minors[1] = re(0, 0) * re(1, 1) - re(0, 1) * re(1, 0);
    out.minors[2] = re(0, 0) * (re(1, 1) * re(2, 2) - re(1, 2) * re(2, 1)) -
                    re(0, 1) * (re(1, 0) * re(2, 2) - re(1, 2) * re(2, 0)) +
                    re(0, 2) * (re(1, 0) * re(2, 1) - re(1, 1) * re(2, 0));
    out.det = out.minors[2];
    out.positive_definite = out.minors[0] > 0.0 && out.minors[1] > 0.0 && out.minors[2] > 0.0;
    return out;
}

double fp_k4_f(double k, double alpha2, double gamma) {
    return (1.5 - 4.0 / k) * (2.25 - 0.5 / alpha2) - 0.75 * gamma * gamma / alpha2;
}

double fp_k4_g(double k, double alpha2, double gamma) {
    return (1.5 - 4.0 / k) * (2.25 - 0.5 * alpha2) - 0.75 * gamma * gamma * alpha2;
}

ModeEnvelope fp_envelope_k4(const DriftField& f, int k, double z) {
    if (k < 4) throw InvalidInput("fp_envelope_k4: k must be >= 4");
    const double a2 = f.alpha(z) * f.alpha(z);
    return {2.0 * std::max(1.0, a2 * a2), 2.0 * f.a(z), 1.0, 0};
}

FPConstants fp_constants(double a0, double sup_da) {
    if (!(a0 > 0.0)) throw InvalidInput("fp_constants: a0 must be positive");
    if (!(sup_da >= 0.0)) throw InvalidInput("fp_constants: sup_da must be nonnegative");
    FPConstants c;
    c.r = sup_da / a0;
    const double r2 = c.r * c.r, r4 = r2 * r2;
    c.C12 = 12.0 * std::max(2.0, 1.0 + r2);
    c.C3 = (6.0 + 5.25 * r4) * c.C12;
    c.C4 = 2.0 * (1.0 + r4);
    c.C_global = 2.0 * std::max(1.0, a0 * a0) * (c.C12 * (7.0 + 5.25 * r4) + c.C4);
    return c;
}

FPState fp_initial(const DriftField& f, int K, double z, double shift, double drift) {
    check_K(K);
    const double a = f.a(z), az = f.da(z);
    const double s = shift + drift * z, sz = drift;
    const HermiteBasis basis(K, a);
    auto f0 = [=](double x) { return std::sqrt(a) / kSqrt2Pi * std::exp(-0.5 * a * (x - s) * (x - s)); };
    FPState st{K, z, basis.project(f0), basis.project([=](double x) {
                   const double d = x - s;
                   return f0(x) * (az * (0.5 / a - 0.5 * d * d) + a * sz * d);
               })};
    st.f[0] = 1.0;
    st.g[0] = 0.0;
    return st;
}

FPState fp_evolve(const DriftField& f, const FPState& s, double t) {
    if (t < 0.0) throw InvalidInput("fp_evolve: t must be nonnegative");
    if (s.f.size() != static_cast<std::size_t>(s.K) + 1 || s.g.size() != s.f.size())
        throw InvalidInput("fp_evolve: state shape mismatch");
    if (s.f[0] != 1.0) throw InvalidInput("fp_evolve: f_0 must be 1");
    const double a = f.a(s.z), al = f.alpha(s.z);
    FPState out = s;
    for (int k = 1; k <= s.K; ++k) out.f[k] = std::exp(-k * a * t) * s.f[k];
    const double ginf2 = -al / std::sqrt(2.0);
    for (int k = 1; k <= s.K; ++k) {
        const CMatrix e = expm(fp_mode_system(f, k, s.z), -t);
        if (k <= 2) {
            const double off = k == 2 ? ginf2 : 0.0;
            const CVector y = e * CVector{s.f[k], s.g[k] - off};
            out.g[k] = y[1].real() + off;
        } else {
            const CVector y = e * CVector{s.f[k - 2], s.f[k], s.g[k]};
            out.g[k] = y[2].real();
        }
    }
    return out;
}

double fp_distance_sq(const DriftField& f, const FPState& s) {
    const double ginf2 = -f.alpha(s.z) / std::sqrt(2.0);
    double acc = 0.0;
    for (int k = 1; k <= s.K; ++k) {
        const double dg = s.g[k] - (k == 2 ? ginf2 : 0.0);
        acc += s.f[k] * s.f[k] + dg * dg;
    }
    return acc;
}

TheoremReport fp_theorem_check(const DriftField& f, const std::vector<double>& z_grid,
                               const std::vector<double>& t_grid, int K, const FPInitial& initial) {
    validate_field(f, z_grid);
    check_K(K);
    if (t_grid.empty()) throw InvalidInput("fp_theorem_check: empty t grid");
    const auto c = fp_constants(f.a0, f.sup_da);
    TheoremReport r;
    r.z = z_grid;
    r.t = t_grid;
    r.C_const = c.C_global;
    r.constants = {{"r", c.r}, {"C12", c.C12}, {"C3", c.C3}, {"C4", c.C4}, {"a0", f.a0}};
    r.norm_sq.assign(z_grid.size(), std::vector<double>(t_grid.size(), 0.0));
    std::vector<double> init(z_grid.size(), 0.0);
    parallel_for(z_grid.size(), [&](std::size_t i) {
        const FPState s0 = initial ? initial(z_grid[i]) : fp_initial(f, K, z_grid[i]);
        if (s0.K != K) throw InvalidInput("fp_theorem_check: initial data shape mismatch");
        init[i] = fp_distance_sq(f, s0);
        for (std::size_t j = 0; j < t_grid.size(); ++j) r.norm_sq[i][j] = fp_distance_sq(f, fp_evolve(f, s0, t_grid[j]));
    });
    r.initial_sup = *std::max_element(init.begin(), init.end());
    for (double t : t_grid) r.bound.push_back(r.C_const * (1.0 + t * t) * std::exp(-2.0 * f.a0 * t) * r.initial_sup);
    finalize_report(r);
    return r;
}

CMatrix fp_diffusion_matrix(double ratio, int k) {
    if (k < 2) throw InvalidInput("fp_diffusion_matrix: k must be >= 2");
    const double kk = k;
    return CMatrix{{kk - 2.0, 0.0}, {-ratio * std::sqrt((kk - 1.0) * kk), kk}};
}

ModeEnvelope fp_diffusion_envelope(const DiffusionField& f, int k, double z) {
    if (k < 3) throw InvalidInput("fp_diffusion_envelope: k must be >= 3");
    const double c = f.dd(z) / f.d(z) * std::sqrt((k - 1.0) * k);
    // eigenvectors of A^H: e1 at k - 2 and (-c/2, 1) at k
    const JordanBlock slow{k - 2.0, {{1.0, 0.0}}, 1.0};
    const JordanBlock fast{static_cast<double>(k), {{-0.5 * c, 1.0}}, 1.0};
    const auto env = decay_constant(build_form(make_structure({slow, fast})));
    return {env.C_const, 2.0 * (k - 2.0), 1.0, 0};
}

double fp_diffusion_constant(double sup_ratio) {
    if (!(sup_ratio >= 0.0)) throw InvalidInput("fp_diffusion_constant: sup_ratio must be nonnegative");
    return 1.0 + 2.0 * std::max(1.0, 1.2 * sup_ratio * sup_ratio);
}

FPState fp_diffusion_initial(const DiffusionField& f, int K, double z, double shift, double drift) {
    check_K(K);
    const double d = f.d(z), dz = f.dd(z);
    const double s = shift + drift * z, sz = drift;
    const HermiteBasis basis(K, 1.0 / d);
    auto u0 = [=](double x) { return std::exp(-0.5 * (x - s) * (x - s) / d) / std::sqrt(2.0 * std::numbers::pi * d); };
    FPState st{K, z, basis.project(u0), basis.project([=](double x) {
                   const double e = x - s;
                   return u0(x) * (dz * (0.5 * e * e / (d * d) - 0.5 / d) + sz * e / d);
               })};
    st.f[0] = 1.0;
    st.g[0] = 0.0;
    return st;
}

FPState fp_diffusion_evolve(const DiffusionField& f, const FPState& s, double t) {
    if (t < 0.0) throw InvalidInput("fp_diffusion_evolve: t must be nonnegative");
    if (s.f.size() != static_cast<std::size_t>(s.K) + 1 || s.g.size() != s.f.size())
        throw InvalidInput("fp_diffusion_evolve: state shape mismatch");
    if (s.f[0] != 1.0) throw InvalidInput("fp_diffusion_evolve: u_0 must be 1");
    const double ratio = f.dd(s.z) / f.d(s.z);
    FPState out = s;
    for (int k = 1; k <= s.K; ++k) out.f[k] = std::exp(-k * t) * s.f[k];
    out.g[0] = s.g[0];
    out.g[1] = std::exp(-t) * s.g[1];
    for (int k = 2; k <= s.K; ++k) {
        const CVector y = expm(fp_diffusion_matrix(ratio, k), -t) * CVector{s.f[k - 2], s.g[k]};
        out.g[k] = y[1].real();
    }
    return out;
}

double fp_diffusion_distance_sq(const DiffusionField& f, const FPState& s) {
    const double vinf2 = f.dd(s.z) / (std::sqrt(2.0) * f.d(s.z));
    double acc = 0.0;
    for (int k = 1; k <= s.K; ++k) {
        const double dv = s.g[k] - (k == 2 ? vinf2 : 0.0);
        acc += s.f[k] * s.f[k] + dv * dv;
    }
    return acc;
}

TheoremReport fp_diffusion_check(const DiffusionField& f, const std::vector<double>& z_grid,
                                 const std::vector<double>& t_grid, int K) {
    validate_field(f, z_grid);
    check_K(K);
    if (t_grid.empty()) throw InvalidInput("fp_diffusion_check: empty t grid");
    TheoremReport r;
    r.z = z_grid;
    r.t = t_grid;
    r.C_const = fp_diffusion_constant(f.sup_ratio);
    r.constants = {{"sup_ratio", f.sup_ratio}, {"d0", f.d0}};
    r.norm_sq.assign(z_grid.size(), std::vector<double>(t_grid.size(), 0.0));
    std::vector<double> init(z_grid.size(), 0.0);
    parallel_for(z_grid.size(), [&](std::size_t i) {
        const FPState s0 = fp_diffusion_initial(f, K, z_grid[i]);
        init[i] = fp_diffusion_distance_sq(f, s0);
        for (std::size_t j = 0; j < t_grid.size(); ++j)
            r.norm_sq[i][j] = fp_diffusion_distance_sq(f, fp_diffusion_evolve(f, s0, t_grid[j]));
    });
    r.initial_sup = *std::max_element(init.begin(), init.end());
    for (double t : t_grid) r.bound.push_back(r.C_const * std::exp(-t) * r.initial_sup);
    finalize_report(r);
    return r;
}

}  // namespace lyapdecay::fp
