// Prints one [PASS]/[FAIL] line per acceptance criterion; exit status 1 if any fails.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "lyapdecay/convection_diffusion.hpp"
#include "lyapdecay/family.hpp"
#include "lyapdecay/fokker_planck.hpp"
#include "lyapdecay/goldstein_taylor.hpp"
#include "lyapdecay/linalg.hpp"
#include "lyapdecay/lyapunov.hpp"
#include "lyapdecay/oracle.hpp"
#include "test_support.hpp"

using namespace lyapdecay;
using testsupport::BlockSpec;

namespace {

int failures = 0;

void report(int n, const char* title, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", n, title, detail.c_str());
    if (!ok) ++failures;
}

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

template <class F>
void guarded(int n, const char* title, F body) {
    try {
        body();
    } catch (const std::exception& e) {
        report(n, title, false, std::string("exception: ") + e.what());
    }
}

const double kR = 1.0 / std::sqrt(2.0);

JordanStructure defective_half_structure() { return make_structure({{0.5, {{kR, kR}, {kR, -kR}}, 1.0}}); }

// x(t) = e^{-t/2} (6 - 6t, 6 + 6t) for x(0) = (6, 6)
CVector defective_half_x(double t) { return {std::exp(-0.5 * t) * (6.0 - 6.0 * t), std::exp(-0.5 * t) * (6.0 + 6.0 * t)}; }

LyapunovForm c_eps_form(double eps) {
    WeightSpec w;
    w.level_weights[0] = eps == 0.0 ? std::vector<double>{1.0, 1.0} : std::vector<double>{1.0, eps * eps};
    return build_form(testsupport::c_eps_structure(eps), w);
}

CMatrix fp3(double alpha) { return fp::fp_mode_matrix(alpha, 3); }

struct Fixture {
    std::string name;
    CMatrix c;
    LyapunovForm form;
    bool all_gap;
    bool tilde;
};

std::vector<Fixture> reference_fixtures() {
    std::vector<Fixture> out;
    out.push_back({"defective_half", testsupport::defective_half(), build_form(defective_half_structure()), true, false});
    for (double eps : {0.0, 0.5, 1.0, 2.0})
        out.push_back({"c_eps", testsupport::c_eps(eps), c_eps_form(eps), true, false});
    out.push_back({"fp3", fp3(0.7), fp::fp_k3_form(0.7), false, true});
    return out;
}

std::vector<Fixture> random_fixtures(std::mt19937_64& rng, int count) {
    const std::vector<std::pair<std::vector<BlockSpec>, bool>> shapes{
        {{{1.0, 2}, {cplx(1.0, 2.0), 1}}, true},
        {{{cplx(0.8, 1.0), 3}}, true},
        {{{1.0, 2}, {cplx(1.0, -1.0), 2}}, true},
        {{{1.0, 2}, {2.5, 2}}, false},
        {{{1.0, 1}, {1.7, 3}}, false},
        {{{cplx(0.5, 0.5), 2}, {1.0, 1}, {2.0, 2}}, false},
        {{{0.3, 4}, {cplx(0.9, 3.0), 1}}, false},
        {{{cplx(0.6, -0.4), 1}, {0.6, 1}, {1.1, 3}}, false},
        {{{0.7, 5}}, true},
        {{{1.2, 1}, {1.2, 2}, {2.0, 1}}, false},
    };
    std::vector<Fixture> out;
    for (int i = 0; i < count; ++i) {
        const auto& [shape, all_gap] = shapes[static_cast<std::size_t>(i) % shapes.size()];
        const auto s = testsupport::random_structure(rng, shape);
        out.push_back({"random" + std::to_string(i), testsupport::from_structure(s), build_form(s), all_gap, false});
    }
    return out;
}

DecayEnvelope envelope_of(const Fixture& f) { return f.tilde ? tilde_constant(f.form) : decay_constant(f.form); }

}  // namespace

int main() {
    guarded(1, "Lyapunov decay identity on the defective 2x2 fixture", [] {
        const auto f = build_form(defective_half_structure());
        double worst = 0.0;
        for (int i = 0; i <= 10; ++i) {
            const double t = 0.5 * i;
            const double v = hermitian_form(build_p(f, t), defective_half_x(t));
            worst = std::max(worst, std::abs(v / (72.0 * std::exp(-t)) - 1.0));
        }
        // the closed form agrees with the propagator
        const double traj = norm2(expm(testsupport::defective_half(), -2.5) * CVector{6.0, 6.0} - defective_half_x(2.5));
        report(1, "Lyapunov decay identity on the defective 2x2 fixture", worst <= 1e-9 && traj < 1e-12,
               "max rel err " + num(worst) + ", trajectory err " + num(traj));
    });

    guarded(2, "Euclidean non-strict decay at t = 1", [] {
        const CVector x = expm(testsupport::defective_half(), -1.0) * CVector{6.0, 6.0};
        const double x1 = std::abs(x[0]);
        const double h = 1e-5;
        auto nsq = [](double t) { return std::pow(norm2(expm(testsupport::defective_half(), -t) * CVector{6.0, 6.0}), 2); };
        const double deriv = (nsq(1.0 + h) - nsq(1.0 - h)) / (2.0 * h);
        report(2, "Euclidean non-strict decay at t = 1", x1 <= 1e-10 && std::abs(deriv) < 1e-6,
               "|x1(1)| = " + num(x1) + ", d/dt|x|^2 = " + num(deriv));
    });

    guarded(3, "propagator closed form for C_eps", [] {
        double worst = 0.0;
        for (double eps : {0.1, 1.0, 10.0})
            for (double t : linear_grid(0.0, 20.0, 40)) {
                const double e2 = eps * eps * t * t;
                const double ref = std::exp(-2.0 * t) * (1.0 + e2 / 2.0 + std::sqrt(e2 + e2 * e2 / 4.0));
                const double got = std::pow(spectral_norm(expm(testsupport::c_eps(eps), -t)), 2);
                worst = std::max(worst, std::abs(got / ref - 1.0));
            }
        report(3, "propagator closed form for C_eps", worst <= 1e-8, "max rel err " + num(worst));
    });

    guarded(4, "constant formulas c_M and C_eps", [] {
        bool ok = c_m_constant(1) == 0.5 && c_m_constant(2) == 6.0 && c_m_constant(3) == 405.0;
        std::string d = "c1,c2,c3 = " + num(c_m_constant(1)) + "," + num(c_m_constant(2)) + "," + num(c_m_constant(3));
        for (double eps : {0.0, 0.5, 1.0, 2.0}) {
            const double c = decay_constant(c_eps_form(eps)).C_const;
            const double ref = 12.0 * std::max(2.0, 1.0 + eps * eps);
            ok = ok && c == ref;
            d += "; eps " + num(eps) + ": " + num(c);
        }
        report(4, "constant formulas c_M and C_eps", ok, d);
    });

    guarded(5, "envelope dominance suite", [] {
        std::mt19937_64 rng(2024);
        auto fx = random_fixtures(rng, 50);
        for (auto& f : reference_fixtures()) fx.push_back(std::move(f));
        const auto times = linear_grid(0.0, 50.0, 501);
        int fails = 0;
        double worst = 0.0;
        for (const auto& f : fx) {
            const auto r = check_dominance(f.c, envelope_of(f), times);
            worst = std::max(worst, r.max_ratio);
            if (!r.dominated) ++fails;
        }
        report(5, "envelope dominance suite", fails == 0,
               std::to_string(fx.size()) + " matrices, failures " + std::to_string(fails) + ", max ratio " + num(worst));
    });

    guarded(6, "sharpness order", [] {
        const double m25 = sharpness_order(testsupport::defective_half(), 0.5);
        const double m3 = sharpness_order(fp3(1.0), 1.0 / 3.0);
        report(6, "sharpness order", m25 >= 0.9 && m25 <= 1.1 && m3 >= -0.1 && m3 <= 0.1,
               "defective 2x2: " + num(m25) + ", FP k=3: " + num(m3));
    });

    guarded(7, "lower-bound lemma property suite", [] {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> ut(0.0, 10.0);
        std::uniform_int_distribution<int> um(1, 4), ud(0, 3), uth(1, 9);
        double worst = 1e300;
        for (int trial = 0; trial < 200; ++trial) {
            const std::size_t m = static_cast<std::size_t>(um(rng));
            const std::size_t d = m + static_cast<std::size_t>(ud(rng));
            std::vector<CVector> v;
            std::vector<Poly> xi;
            for (std::size_t j = 0; j < m; ++j) {
                v.push_back(testsupport::random_vector(rng, d));
                if (j + 1 == m) xi.push_back({cplx(0.1 + ut(rng), 0.0)});
                else xi.push_back(testsupport::random_vector(rng, m - j));
            }
            const CVector x = testsupport::random_vector(rng, d);
            worst = std::min(worst, lower_bound_lemma_gap(v, xi, 0.1 * uth(rng), ut(rng), x));
        }
        report(7, "lower-bound lemma property suite", worst >= -1e-10, "200 instances, min slack " + num(worst));
    });

    guarded(8, "det invariance and angle constancy", [] {
        std::mt19937_64 rng(8);
        auto fx = random_fixtures(rng, 10);
        for (auto& f : reference_fixtures()) fx.push_back(std::move(f));
        double det_dev = 0.0, angle_dev = 0.0;
        for (const auto& f : fx) {
            const cplx d0 = determinant(build_p(f.form, 0.0));
            // t <= 5: cond P(t) grows polynomially in t; past ~1e8 (length 4-5 blocks, t > 5) rounding alone exceeds 1e-9
            for (int i = 1; i <= 10; ++i)
                det_dev = std::max(det_dev, std::abs(determinant(build_p(f.form, 0.5 * i)) / d0 - 1.0));
            if (!f.all_gap) continue;
            const CVector x0 = testsupport::random_vector(rng, f.c.dim());
            const double a0 = p_angle(build_p(f.form, 0.0), f.c, x0);
            for (int i = 1; i <= 10; ++i) {
                const double t = 0.5 * i;
                angle_dev = std::max(angle_dev, std::abs(p_angle(build_p(f.form, t), f.c, expm(f.c, -t) * x0) - a0));
            }
        }
        report(8, "det invariance and angle constancy", det_dev <= 1e-9 && angle_dev <= 1e-8,
               std::to_string(fx.size()) + " fixtures, t <= 5, max |det ratio - 1| " + num(det_dev) +
                   ", max angle drift " + num(angle_dev));
    });

    guarded(9, "parameter-family suprema", [] {
        // dense z-scan with golden refinement as the oracle for sup_z f1
        auto grid_sup = [](double alpha, double t) {
            const double zmax = std::sqrt(4.0 / (alpha * t));
            const int n = 4000;
            double bz = 0.0, bv = f1(alpha, 0.0, t);
            for (int i = 1; i <= n; ++i) {
                const double v = f1(alpha, zmax * i / n, t);
                if (v > bv) {
                    bv = v;
                    bz = zmax * i / n;
                }
            }
            double lo = std::max(0.0, bz - zmax / n), hi = bz + zmax / n;
            const double g = 0.5 * (std::sqrt(5.0) - 1.0);
            for (int it = 0; it < 100; ++it) {
                const double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
                if (f1(alpha, a, t) < f1(alpha, b, t)) lo = a;
                else hi = b;
            }
            return std::max(bv, f1(alpha, 0.5 * (lo + hi), t));
        };
        double worst = 0.0;
        for (double alpha : linear_grid(0.1, 10.0, 25))
            for (double t : linear_grid(0.1, 10.0, 25)) {
                const double s = sup_f1(alpha, t);
                worst = std::max(worst, std::abs(s - grid_sup(alpha, t)) / s);
            }
        const auto fam = ParamFamily::exponential(1.0, 1.0, 1.0, linear_grid(-6.0, 3.0, 91));
        const auto times = linear_grid(0.0, 20.0, 81);
        const auto sup = grid_sup_envelope(fam, times);
        double ratio = 0.0;
        for (std::size_t i = 0; i < times.size(); ++i)
            ratio = std::max(ratio, sup[i] / uniform_envelope_exponential(1.0, 1.0, 1.0, times[i]));
        report(9, "parameter-family suprema", worst <= 1e-6 && ratio <= 1.0 + 1e-9,
               "sup_f1 max rel err " + num(worst) + ", exponential family max ratio " + num(ratio));
    });

    guarded(10, "convection-diffusion theorems", [] {
        const auto f = cd::CoefficientField::linear_tanh();
        const auto r1 = cd::theorem_bound_check(f, linear_grid(-3.0, 3.0, 13), linear_grid(0.0, 10.0, 50), 1, 32);
        const auto g = cd::CoefficientField::quadratic_sech();
        std::vector<double> z = linear_grid(-2.0, 2.0, 13);
        z.insert(std::upper_bound(z.begin(), z.end(), 1e-6), 1e-6);
        const double dl = std::abs(cd::lambda_k(g, 1, 1e-6).dlambda), d2l = std::abs(cd::lambda_k(g, 1, 1e-6).d2lambda);
        const auto r2 = cd::theorem_bound_check(g, z, linear_grid(0.0, 10.0, 50), 2, 32);
        report(10, "convection-diffusion theorems", r1.holds && r2.holds && dl < 1e-5 && d2l > 0.1,
               "first order max ratio " + num(r1.max_ratio) + " (C = " + num(r1.C_const) + "), second order " +
                   num(r2.max_ratio) + " with |dlam| = " + num(dl) + ", |d2lam| = " + num(d2l));
    });

    guarded(11, "two-velocity BGK theorem", [] {
        const auto f = gt::RelaxationField::tanh_profile(1.0, 0.5);
        const auto r = gt::gt_theorem_check(f, linear_grid(-3.0, 3.0, 13), linear_grid(0.0, 10.0, 50), 32);
        const auto u = gt::gt_uniform_constant(f, 64);
        report(11, "two-velocity BGK theorem", r.holds && u.flatness < 0.15,
               "max ratio " + num(r.max_ratio) + ", C = " + num(u.C_global) + ", |P~_64 - 2I| = " + num(u.flatness));
    });

    guarded(12, "Fokker-Planck theorem", [] {
        const auto f = fp::DriftField::sine(1.0, 0.3);
        const auto r = fp::fp_theorem_check(f, linear_grid(-M_PI, M_PI, 17), linear_grid(0.0, 10.0, 50), 40);
        const double c0 = fp::fp_constants(1.0, 0.0).C_global, c1 = fp::fp_constants(0.5, 0.0).C_global;
        const bool bnd = fp::fp_k4_f(4, 1, 1) == 0.125 && fp::fp_k4_g(4, 1, 1) == 0.125;
        double min_det = 1e300;
        for (int k = 4; k <= 64; ++k)
            for (double al : linear_grid(-5.0, 5.0, 101)) min_det = std::min(min_det, fp::fp_k4_check(k, al).det);
        report(12, "Fokker-Planck theorem", r.holds && c0 == 340.0 && c1 == 340.0 && bnd && min_det > 0.0,
               "max ratio " + num(r.max_ratio) + " (C = " + num(r.C_const) + "), degenerate C = " + num(c0) +
                   ", f(4,1,1) = g(4,1,1) = 1/8: " + (bnd ? "yes" : "no") + ", min det A_k " + num(min_det));
    });

    guarded(13, "Duhamel solution matches the exponential", [] {
        std::mt19937_64 rng(13);
        std::uniform_real_distribution<double> u(-1.0, 1.0), pos(0.2, 2.0);
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            CMatrix c;
            const int kind = trial % 3;
            const double k = 1 + trial % 4;
            const cplx lam(pos(rng), u(rng)), dl(u(rng), u(rng)), d2l(u(rng), u(rng));
            if (kind == 0) c = (k * k) * CMatrix{{lam, 0.0}, {dl, lam}};
            else if (kind == 1) c = (k * k) * CMatrix{{lam, 0.0, 0.0}, {dl, lam, 0.0}, {d2l, 2.0 * dl, lam}};
            else c = cplx((1 + trial % 12) * pos(rng)) * fp::fp_mode_matrix(3.0 * u(rng), 1 + trial % 12);
            const CVector y0 = testsupport::random_vector(rng, c.dim());
            for (double t : {0.0, 0.3, 1.0, 4.0})
                worst = std::max(worst, norm2(duhamel_solve(c, y0, t) - expm(c, -t) * y0) / norm2(y0));
        }
        double bound_ratio = 0.0;
        for (int k : {1, 2, 3})
            for (double dl : {0.2, 1.0, 4.0}) {
                const cplx lam(0.8, 0.5);
                const CMatrix c = static_cast<double>(k * k) * CMatrix{{lam, 0.0}, {dl, lam}};
                for (double t : linear_grid(0.0, 10.0, 201))
                    bound_ratio = std::max(bound_ratio, std::exp(log_propagator_sq(c, t)) /
                                                            duhamel_mode_envelope(k, lam.real(), dl, t));
            }
        report(13, "Duhamel solution matches the exponential", worst <= 1e-10 && bound_ratio <= 1.0 + 1e-9,
               "100 instances, max rel err " + num(worst) + ", 4/3-bound max ratio " + num(bound_ratio));
    });

    std::printf("%d of 13 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
