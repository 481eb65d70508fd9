#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lyapdecay/fokker_planck.hpp"
#include "lyapdecay/linalg.hpp"
#include "lyapdecay/oracle.hpp"

using namespace lyapdecay;
using namespace lyapdecay::fp;

namespace {

const double kPi = std::numbers::pi;

// He_k(y)/sqrt(k!) by the unnormalized recurrence, scaled at the end
double psi_ref(int k, double y) {
    double p0 = 1.0, p1 = y;
    if (k == 0) return 1.0;
    for (int j = 1; j < k; ++j) {
        const double p2 = y * p1 - j * p0;
        p0 = p1;
        p1 = p2;
    }
    return p1 / std::sqrt(std::tgamma(k + 1.0));
}

// <phi, h_k> = int phi(x) psi_k(x sqrt a) dx by the trapezoid rule
double trap_coeff(const std::function<double(double)>& phi, int k, double a) {
    const double L = 14.0 / std::sqrt(a);
    const int n = 8000;
    const double h = 2.0 * L / n;
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double x = -L + i * h;
        const double w = (i == 0 || i == n) ? 0.5 : 1.0;
        acc += w * phi(x) * psi_ref(k, x * std::sqrt(a));
    }
    return acc * h;
}

double log_prop(const CMatrix& c, double t) { return log_propagator_sq(c, t); }

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / (n - 1));
    return v;
}

}  // namespace

TEST(FPQuadrature, MomentsExact) {
    // int y^{2m} e^{-y^2/2} dy = sqrt(2 pi) (2m - 1)!!
    const auto g = gauss_hermite(30);
    double dfact = 1.0;
    for (int m = 0; m < 30; ++m) {
        if (m > 0) dfact *= 2 * m - 1;
        double acc = 0.0, odd = 0.0;
        for (std::size_t i = 0; i < g.nodes.size(); ++i) {
            acc += g.weights[i] * std::pow(g.nodes[i], 2 * m);
            odd += g.weights[i] * std::pow(g.nodes[i], 2 * m + 1);
        }
        EXPECT_NEAR(acc / (std::sqrt(2.0 * kPi) * dfact), 1.0, 1e-11) << m;
        EXPECT_NEAR(odd / (std::sqrt(2.0 * kPi) * dfact), 0.0, 1e-10) << m;
    }
}

TEST(FPQuadrature, Orthonormality) {
    for (int K : {5, 20, 40}) {
        const HermiteBasis b(K, 1.0);
        const auto& r = b.rule();
        for (int j = 0; j <= K; ++j)
            for (int k = 0; k <= K; ++k) {
                double acc = 0.0;
                for (std::size_t i = 0; i < r.nodes.size(); ++i) {
                    const auto p = normalized_hermite(K, r.nodes[i]);
                    acc += r.weights[i] * p[j] * p[k];
                }
                EXPECT_NEAR(acc / std::sqrt(2.0 * kPi), j == k ? 1.0 : 0.0, 1e-8) << K << " " << j << " " << k;
            }
    }
}

TEST(FPBasis, NormalizedHermiteMatchesReference) {
    for (double y : {-3.1, -0.4, 0.0, 1.7, 5.0})
        for (int k = 0; k <= 20; ++k)
            EXPECT_NEAR(normalized_hermite(20, y)[k], psi_ref(k, y), 1e-10 * (1.0 + std::abs(psi_ref(k, y))));
}

TEST(FPBasis, SteadyStateAndRecursions) {
    for (double a : {0.5, 1.0, 2.3}) {
        const HermiteBasis b(12, a);
        for (double x : {-2.0, -0.3, 0.0, 0.8, 3.0}) {
            EXPECT_NEAR(b.eval(0, x), std::sqrt(a / (2.0 * kPi)) * std::exp(-0.5 * a * x * x), 1e-15);
            for (int k = 0; k <= 9; ++k) {
                const double h = 1e-5;
                const double fd = (b.eval(k, x + h) - b.eval(k, x - h)) / (2.0 * h);
                EXPECT_NEAR(b.deriv(k, x), fd, 1e-7);
                // x h_k = (sqrt(k+1) h_{k+1} + sqrt(k) h_{k-1}) / sqrt(a)
                const double xh = (std::sqrt(k + 1.0) * b.eval(k + 1, x) + std::sqrt(k * 1.0) * b.eval(k - 1, x)) /
                                  std::sqrt(a);
                EXPECT_NEAR(x * b.eval(k, x), xh, 1e-13);
                // x d/dx h_k = -sqrt(k+1) (sqrt(k+2) h_{k+2} + sqrt(k+1) h_k)
                const double xd =
                    -std::sqrt(k + 1.0) * (std::sqrt(k + 2.0) * b.eval(k + 2, x) + std::sqrt(k + 1.0) * b.eval(k, x));
                EXPECT_NEAR(x * fd, xd, 1e-7);
                // eigenfunction: h_k'' + a (x h_k)' = -k a h_k
                const double d2 = (b.eval(k, x + h) - 2.0 * b.eval(k, x) + b.eval(k, x - h)) / (h * h);
                const double flux = a * ((x + h) * b.eval(k, x + h) - (x - h) * b.eval(k, x - h)) / (2.0 * h);
                EXPECT_NEAR(d2 + flux, -k * a * b.eval(k, x), 2e-4);
            }
        }
    }
}

TEST(FPBasis, ProjectionMatchesShiftedGaussian) {
    for (double a : {0.7, 1.0, 1.6})
        for (double s : {-0.9, 0.0, 0.35, 1.2}) {
            const HermiteBasis b(40, a);
            auto f0 = [=](double x) { return std::sqrt(a / (2.0 * kPi)) * std::exp(-0.5 * a * (x - s) * (x - s)); };
            const auto c = b.project(f0);
            for (int k = 0; k <= 40; ++k) {
                const double exact = std::pow(s * std::sqrt(a), k) / std::sqrt(std::tgamma(k + 1.0));
                EXPECT_NEAR(c[k], exact, 1e-12) << a << " " << s << " " << k;
            }
        }
}

TEST(FPBasis, ProjectionMatchesTrapezoid) {
    const double a = 1.3;
    const HermiteBasis b(10, a);
    auto phi = [](double x) { return std::exp(-0.8 * (x - 0.3) * (x - 0.3)) * (1.0 + 0.2 * x * x * x); };
    const auto c = b.project(phi);
    for (int k = 0; k <= 10; ++k) EXPECT_NEAR(c[k], trap_coeff(phi, k, a), 1e-6) << k;
    auto psi = [&](double x) { return b.eval(3, x); };
    EXPECT_NEAR(b.inner(psi, psi), 1.0, 1e-12);
    EXPECT_NEAR(b.inner(psi, [&](double x) { return b.eval(5, x); }), 0.0, 1e-12);
}

TEST(FPModes, GammaAndEigenvalues) {
    EXPECT_NEAR(fp_gamma(3), std::sqrt(2.0 / 3.0), 1e-15);
    EXPECT_EQ(fp_gamma(1), 0.0);
    for (int k = 1; k <= 12; ++k)
        for (double al : {-2.0, 0.0, 0.7}) {
            const auto c = fp_mode_matrix(al, k);
            EXPECT_EQ(c.dim(), k <= 2 ? 2u : 3u);
            auto ev = eigenvalues(c);
            for (const auto& e : ev) {
                const bool ok = std::abs(e - 1.0) < 1e-6 || (k >= 3 && std::abs(e - (k - 2.0) / k) < 1e-9);
                EXPECT_TRUE(ok) << k << " " << al << " " << e;
            }
        }
}

TEST(FPModes, OdeMatchesPdeProjection) {
    // f_t = (f_x + a x f)_x, g_t = (g_x + a x g)_x + a_z (x f)_x
    const auto field = DriftField::sine(1.0, 0.3);
    const int K = 12;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (double z : {-1.0, 0.4, 2.2}) {
        const double a = field.a(z), az = field.da(z);
        const HermiteBasis b(K + 4, a);
        std::vector<double> fc(K + 1), gc(K + 1);
        for (int k = 0; k <= K; ++k) {
            fc[k] = u(rng) / (1.0 + k * k);
            gc[k] = u(rng) / (1.0 + k * k);
        }
        fc[0] = 1.0;
        gc[0] = 0.0;
        auto synth = [&](const std::vector<double>& c) {
            return [&, c](double x) {
                double acc = 0.0;
                for (std::size_t k = 0; k < c.size(); ++k) acc += c[k] * b.eval(static_cast<int>(k), x);
                return acc;
            };
        };
        const auto F = synth(fc), G = synth(gc);
        const double h = 1e-4;
        auto op = [&](const std::function<double(double)>& w, double x) {
            const double d2 = (w(x + h) - 2.0 * w(x) + w(x - h)) / (h * h);
            const double dx = ((x + h) * w(x + h) - (x - h) * w(x - h)) / (2.0 * h);
            return std::pair{d2, dx};
        };
        auto ft = [&](double x) {
            const auto [d2, dx] = op(F, x);
            return d2 + a * dx;
        };
        auto gt = [&](double x) {
            const auto [d2, dx] = op(G, x);
            const auto [e2, ex] = op(F, x);
            (void)e2;
            return d2 + a * dx + az * ex;
        };
        for (int k = 1; k <= K; ++k) {
            const auto m = fp_mode_system(field, k, z);
            double rf, rg;
            if (k <= 2) {
                const double off = k == 2 ? -field.alpha(z) / std::sqrt(2.0) : 0.0;
                const CVector y = m * CVector{fc[k], gc[k] - off};
                rf = -y[0].real();
                rg = -y[1].real();
            } else {
                const CVector y = m * CVector{fc[k - 2], fc[k], gc[k]};
                rf = -y[1].real();
                rg = -y[2].real();
            }
            EXPECT_NEAR(trap_coeff(ft, k, a), rf, 2e-5) << z << " " << k;
            EXPECT_NEAR(trap_coeff(gt, k, a), rg, 2e-5) << z << " " << k;
        }
    }
}

TEST(FPEnvelope, Constants) {
    const auto one = DriftField::tabulated({-1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0});
    EXPECT_NEAR(fp_envelope_k12(one, 1, 0.0).C_const, 24.0, 1e-14);
    EXPECT_EQ(fp_envelope_k12(DriftField::constant(2.0), 2, 0.0).C_const, 1.0);
    EXPECT_NEAR(fp_constants(1.0, 1.0).C3, 270.0, 1e-12);
    EXPECT_NEAR(fp_constants(1.0, 0.0).C_global, 340.0, 1e-12);
    EXPECT_NEAR(fp_constants(1.0, 0.0).C4, 2.0, 1e-15);
    EXPECT_NEAR(fp_delta(2.0), 4.0, 1e-15);
}

TEST(FPEnvelope, K3TildeMatrix) {
    for (double al : {-3.0, -0.5, 0.1, 1.0, 2.5}) {
        const auto form = fp_k3_form(al);
        EXPECT_NEAR(form.mu, 1.0 / 3.0, 1e-15);
        const CMatrix p = build_p(form, 0.0);
        EXPECT_LT((p - fp_p3_tilde(al)).max_abs(), 1e-13);
        const double ratio = hermitian_extremes(p).ratio();
        const double d = fp_delta(al);
        EXPECT_LE(ratio, 4.0 * d * d - 1.0 + 1e-9);
        EXPECT_LE(ratio, 6.0 + 5.25 * std::pow(al, 4));
        const auto env = tilde_constant(form);
        EXPECT_NEAR(env.C_const, 12.0 * ratio * std::max(2.0, 1.0 + al * al), 1e-9 * env.C_const);
    }
    EXPECT_NEAR(folding_constant(2.0, 4.0 / 3.0), 1.0, 1e-12);
}

TEST(FPEnvelope, K4PositiveDefinite) {
    EXPECT_NEAR(fp_k4_f(4, 1, 1), 0.125, 1e-15);
    EXPECT_NEAR(fp_k4_g(4, 1, 1), 0.125, 1e-15);
    for (int k = 4; k <= 64; ++k) {
        const auto c0 = fp_k4_check(k, 0.0);
        EXPECT_NEAR(c0.A(0, 0).real(), 1.5 - 4.0 / k, 1e-14);
        EXPECT_NEAR(c0.A(1, 1).real(), 1.5, 1e-14);
        EXPECT_NEAR(c0.A(2, 2).real(), 0.75, 1e-14);
        EXPECT_LT(std::abs(c0.A(0, 1)) + std::abs(c0.A(0, 2)) + std::abs(c0.A(1, 2)), 1e-15);
        for (int i = 0; i <= 100; ++i) {
            const double al = -5.0 + 0.1 * i;
            const auto c = fp_k4_check(k, al);
            EXPECT_TRUE(c.positive_definite) << k << " " << al;
            EXPECT_GT(hermitian_extremes(c.A).lambda_min, 0.0);
            const double a2 = al * al, m = std::min(1.0, a2 > 0 ? 1.0 / (a2 * a2) : 1.0), p = 0.5 * m;
            const double g = fp_gamma(k);
            EXPECT_NEAR(c.A(2, 2).real(), 0.75 * m, 1e-14);
            EXPECT_NEAR(c.A(0, 2).real(), 0.5 * g * al * m, 1e-14);
            EXPECT_NEAR(c.A(1, 2).real(), 0.5 * al * m, 1e-14);
            const double fg = a2 >= 1.0 ? fp_k4_f(k, a2, g) : fp_k4_g(k, a2, g);
            if (al != 0.0) {
                EXPECT_NEAR(c.det, p * fg, 1e-12);
            }
            EXPECT_GT(fg, 0.0);
        }
    }
}

TEST(FPEnvelope, DominatesPropagator) {
    const auto field = DriftField::sine(1.0, 0.3);
    const auto steep = DriftField::tabulated({-1.0, 1.0}, {0.6, 0.6}, {2.4, 2.4});
    const auto ts = linspace(0.0, 12.0, 121);
    for (const DriftField* f : {&field, &steep})
        for (double z : {-2.0, 0.0, 0.5, 1.5707963267948966}) {
            for (int k = 1; k <= 24; ++k) {
                const ModeEnvelope env = k <= 2   ? fp_envelope_k12(*f, k, z)
                                         : k == 3 ? fp_envelope_k3(*f, z)
                                                  : fp_envelope_k4(*f, k, z);
                const auto m = fp_mode_system(*f, k, z);
                for (double t : ts) EXPECT_LE(log_prop(m, t), env.log_value(t) + 1e-9) << k << " " << z << " " << t;
            }
        }
}

TEST(FPEnvelope, FoldingInequality) {
    for (double a0 : {0.3, 0.7, 1.0, 2.0})
        for (double a : {a0, 1.3 * a0, 3.0 * a0})
            for (int k : {1, 2})
                for (double t : linspace(0.0, 30.0, 301)) {
                    const double lhs = (1.0 + k * k * a * a * t * t) * std::exp(-2.0 * k * a * t);
                    EXPECT_LE(lhs, std::max(1.0, a0 * a0) * (1.0 + t * t) * std::exp(-2.0 * a0 * t) * (1 + 1e-12));
                }
}

TEST(FPState, InitialAndSteadyState) {
    const auto field = DriftField::sine(1.0, 0.3);
    for (double z : {-1.0, 0.0, 2.0}) {
        const auto s0 = fp_initial(field, 40, z);
        const double a = field.a(z), sh = 0.5 + 0.2 * z;
        EXPECT_NEAR(s0.f[3], std::pow(sh * std::sqrt(a), 3) / std::sqrt(6.0), 1e-12);
        // g^0 = d/dz f^0 against a trapezoid oracle
        const double az = field.da(z);
        auto g0 = [&](double x) {
            const double d = x - sh;
            const double f0 = std::sqrt(a / (2.0 * kPi)) * std::exp(-0.5 * a * d * d);
            return f0 * (az * (0.5 / a - 0.5 * d * d) + a * 0.2 * d);
        };
        for (int k = 1; k <= 6; ++k) EXPECT_NEAR(s0.g[k], trap_coeff(g0, k, a), 1e-8);
        const auto late = fp_evolve(field, s0, 20.0);
        EXPECT_NEAR(late.g[2], -field.alpha(z) / std::sqrt(2.0), 1e-8);
        const auto c = fp_constants(field.a0, field.sup_da);
        EXPECT_LE(fp_distance_sq(field, late), c.C_global * 401.0 * std::exp(-40.0 * a) * fp_distance_sq(field, s0));
        EXPECT_LT(fp_distance_sq(field, late), 1e-12);
        EXPECT_EQ(late.f[0], 1.0);
        // semigroup
        const auto two = fp_evolve(field, fp_evolve(field, s0, 0.7), 0.6);
        const auto one = fp_evolve(field, s0, 1.3);
        for (int k = 0; k <= 40; ++k) {
            EXPECT_NEAR(two.f[k], one.f[k], 1e-12);
            EXPECT_NEAR(two.g[k], one.g[k], 1e-12);
        }
    }
}

TEST(FPTheorem, SineDrift) {
    const auto field = DriftField::sine(1.0, 0.3);
    const auto r = fp_theorem_check(field, linspace(-kPi, kPi, 33), linspace(0.0, 15.0, 61), 40);
    EXPECT_TRUE(r.holds) << r.max_ratio;
    EXPECT_GT(r.initial_sup, 0.0);
}

TEST(FPTheorem, ConstantDrift) {
    const auto field = DriftField::constant(1.0);
    const auto r = fp_theorem_check(field, linspace(-2.0, 2.0, 9), linspace(0.0, 10.0, 41), 24);
    EXPECT_TRUE(r.holds);
    EXPECT_NEAR(r.C_const, 340.0, 1e-12);
}

TEST(FPDiffusion, MatrixAndSteadyState) {
    const auto field = DiffusionField::sine(1.0, 0.3);
    for (int k = 2; k <= 10; ++k) {
        const auto ev = eigenvalues(fp_diffusion_matrix(0.4, k));
        for (const auto& e : ev) EXPECT_LT(std::min(std::abs(e - (k - 2.0)), std::abs(e - 1.0 * k)), 1e-9);
    }
    for (double z : {-1.0, 0.5}) {
        const auto s0 = fp_diffusion_initial(field, 30, z);
        const auto late = fp_diffusion_evolve(field, s0, 40.0);
        EXPECT_NEAR(late.g[2], field.dd(z) / (std::sqrt(2.0) * field.d(z)), 1e-10);
        EXPECT_LT(fp_diffusion_distance_sq(field, late), 1e-15);
        // v^0 = d/dz u^0 against a trapezoid oracle in the 1/d basis
        const double d = field.d(z), dz = field.dd(z), sh = 0.5 + 0.2 * z;
        auto v0 = [&](double x) {
            const double e = x - sh;
            const double u = std::exp(-0.5 * e * e / d) / std::sqrt(2.0 * kPi * d);
            return u * (dz * (0.5 * e * e / (d * d) - 0.5 / d) + 0.2 * e / d);
        };
        for (int k = 1; k <= 5; ++k) EXPECT_NEAR(s0.g[k], trap_coeff(v0, k, 1.0 / d), 1e-8);
    }
}

TEST(FPDiffusion, EnvelopesAndTheorem) {
    const auto field = DiffusionField::sine(1.0, 0.3);
    const auto ts = linspace(0.0, 8.0, 81);
    for (double z : {-1.0, 0.0, 2.0})
        for (int k = 3; k <= 16; ++k) {
            const auto env = fp_diffusion_envelope(field, k, z);
            const auto m = fp_diffusion_matrix(field.dd(z) / field.d(z), k);
            for (double t : ts) EXPECT_LE(log_prop(m, t), env.log_value(t) + 1e-9);
            // uniform bound C e^{-t} for the pair (u_{k-2}, v_k)
            for (double t : ts)
                EXPECT_LE(log_prop(m, t), std::log(fp_diffusion_constant(field.sup_ratio) - 1.0) - t + 1e-9);
        }
    // per-mode constants grow with k: no uniform non-defective bound
    EXPECT_GT(fp_diffusion_envelope(field, 40, 0.0).C_const, 10.0 * fp_diffusion_envelope(field, 4, 0.0).C_const);
    const auto r = fp_diffusion_check(field, linspace(-kPi, kPi, 17), linspace(0.0, 12.0, 49), 30);
    EXPECT_TRUE(r.holds) << r.max_ratio;
}

TEST(FPField, Validation) {
    EXPECT_THROW(DriftField::constant(0.0), InvalidInput);
    EXPECT_THROW(DriftField::sine(0.2, 0.3), InvalidInput);
    EXPECT_THROW(fp_initial(DriftField::constant(1.0), 2, 0.0), InvalidInput);
    EXPECT_THROW(fp_k4_check(3, 1.0), InvalidInput);
    EXPECT_THROW(fp_k3_form(0.0), InvalidInput);
    EXPECT_THROW(fp_theorem_check(DriftField::sine(), {1.0, 0.0}, {0.0}), InvalidInput);
    EXPECT_THROW(HermiteBasis(5, -1.0), InvalidInput);
    EXPECT_THROW(fp_diffusion_envelope(DiffusionField::constant(1.0), 2, 0.0), InvalidInput);
}
