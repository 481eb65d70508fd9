#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lyapdecay/goldstein_taylor.hpp"
#include "lyapdecay/linalg.hpp"
#include "lyapdecay/oracle.hpp"

using namespace lyapdecay;
using namespace lyapdecay::gt;

TEST(GTMatrix, ZeroMode) {
    const auto eigs = eigenvalues(gt_mode_matrix(0.8, 0.3, 0));
    int zeros = 0, sig = 0;
    for (const auto& e : eigs) {
        if (std::abs(e) < 1e-6) ++zeros;
        if (std::abs(e - 0.8) < 1e-6) ++sig;
    }
    EXPECT_EQ(zeros, 2);
    EXPECT_EQ(sig, 2);
}

TEST(GTMatrix, EigenvalueFormula) {
    std::mt19937_64 rng(81);
    std::uniform_real_distribution<double> us(0.05, 1.95);
    for (int trial = 0; trial < 30; ++trial) {
        const double s = us(rng);
        const int k = 1 + trial % 7;
        const auto [lp, lm] = gt_eigenvalues(s, k);
        EXPECT_NEAR(lp.real(), 0.5 * s, 1e-15);
        EXPECT_NEAR(lp.imag(), std::sqrt(k * k - 0.25 * s * s), 1e-14);
        EXPECT_EQ(lm, std::conj(lp));
        const auto eigs = eigenvalues(gt_mode_matrix(s, 0.0, k));
        for (const auto& e : eigs) EXPECT_LT(std::min(std::abs(e - lp), std::abs(e - lm)), 1e-9);
        // defective case: each root is double, so the computed pair splits by O(sqrt eps)
        for (const auto& e : eigenvalues(gt_mode_matrix(s, 0.4, k)))
            EXPECT_LT(std::min(std::abs(e - lp), std::abs(e - lm)), 1e-6);
    }
    const auto [a, b] = gt_eigenvalues(1.0, 1);
    EXPECT_NEAR(std::abs(a - cplx(0.5, std::sqrt(3.0) / 2.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(b - cplx(0.5, -std::sqrt(3.0) / 2.0)), 0.0, 1e-15);
}

TEST(GTMatrix, StructureAndGap) {
    const CMatrix d = gt_mode_matrix(1.2, 0.0, 3);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 2; j < 4; ++j) EXPECT_EQ(d(j, i), cplx(0.0));
    EXPECT_EQ(gt_mode_matrix(1.2, 0.7, 3)(3, 1), cplx(0.7));
    for (int k : {1, 5, 40}) {
        double gap = 1e300;
        for (const auto& e : eigenvalues(gt_mode_matrix(1.2, 0.7, k))) gap = std::min(gap, e.real());
        EXPECT_NEAR(gap, 0.6, 1e-6);
    }
}

TEST(GTChains, ResidualRandom) {
    std::mt19937_64 rng(82);
    std::uniform_real_distribution<double> us(0.1, 1.9), uz(-2.0, 2.0);
    for (int trial = 0; trial < 40; ++trial) {
        const double s = us(rng), sz = uz(rng);
        const int k = (trial % 2 ? 1 : -1) * (1 + trial % 9);
        const CMatrix d = gt_mode_matrix(s, sz, k);
        EXPECT_LT(verify_chain(d, gt_chains(s, sz, k)), 1e-9);
        EXPECT_LT(verify_chain(gt_mode_matrix(s, 0.0, k), gt_chains(s, 0.0, k)), 1e-9);
    }
    EXPECT_EQ(gt_chains(1.0, 0.0, 2).blocks.size(), 4u);
    EXPECT_EQ(gt_chains(1.0, 0.3, 2).blocks.size(), 2u);
    EXPECT_THROW(gt_chains(1.0, 0.3, 0), InvalidInput);
}

TEST(GTPMatrix, LimitFlatness) {
    double prev = 1e300;
    for (int k : {4, 8, 16, 32, 64}) {
        double worst = 0.0;
        for (double s : linear_grid(0.5, 1.5, 9))
            for (double sz : linear_grid(-0.5, 0.5, 9))
                worst = std::max(worst, spectral_norm(gt_p_matrix(s, sz, k) - 2.0 * CMatrix::identity(4)));
        EXPECT_LT(worst, prev);
        prev = worst;
    }
    EXPECT_LT(prev, 0.15);
    // widest admissible box
    for (double s : linear_grid(0.01, 1.99, 11))
        for (double sz : linear_grid(-3.0, 3.0, 11))
            EXPECT_LT(spectral_norm(gt_p_matrix(s, sz, 64) - 2.0 * CMatrix::identity(4)), 0.15);
}

TEST(GTPMatrix, PositiveDefiniteOnBox) {
    for (int k = 1; k <= 64; ++k)
        for (double s : linear_grid(0.5, 1.5, 5))
            for (double sz : linear_grid(-0.5, 0.5, 5)) {
                EXPECT_GT(hermitian_extremes(gt_p_matrix(s, sz, k)).lambda_min, 1e-3) << k;
                EXPECT_GT(hermitian_extremes(gt_p_matrix(s, sz, -k)).lambda_min, 1e-3) << k;
            }
}

TEST(GTPMatrix, WeightChoiceIsContinuousAtZero) {
    for (int k : {1, 3, 10}) {
        const CMatrix a = gt_p_matrix(0.9, 1e-9, k), b = gt_p_matrix(0.9, -1e-9, k);
        EXPECT_LT((a - b).max_abs(), 1e-8);
        // limit: g-block equals sum |q/2|^2 v2 v2^H with q = 1 - lambda^2/k^2
        const CMatrix p1 = gt_p_matrix(0.9, 0.0, k);
        const auto [lp, lm] = gt_eigenvalues(0.9, k);
        for (std::size_t i = 2; i < 4; ++i)
            for (std::size_t j = 2; j < 4; ++j) {
                cplx expect = 0.0;
                for (cplx l : {lp, lm}) {
                    const CVector v{0.0, 0.0, -cplx(0.0, 1.0) * l / static_cast<double>(k), 1.0};
                    expect += 0.25 * std::norm(1.0 - l * l / static_cast<double>(k * k)) * v[i] * std::conj(v[j]);
                }
                EXPECT_NEAR(std::abs(a(i, j) - expect), 0.0, 1e-8);
            }
        // f-block agrees with the non-defective matrix
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(std::abs(a(i, j) - p1(i, j)), 0.0, 1e-8);
    }
}

TEST(GTPMatrix, DecayInPNorm) {
    std::mt19937_64 rng(83);
    std::normal_distribution<double> nd;
    for (double sz : {0.0, 0.3, -1.5})
        for (int k : {1, 2, 7}) {
            const auto form = gt_form(1.1, sz, k);
            const CMatrix d = gt_mode_matrix(1.1, sz, k);
            CVector y0(4);
            for (auto& e : y0) e = cplx(nd(rng), nd(rng));
            const double n0 = hermitian_form(build_p(form, 0.0), y0);
            for (double t : linear_grid(0.0, 20.0, 41)) {
                const CVector y = expm(d, -t) * y0;
                EXPECT_LE(hermitian_form(build_p(form, t), y), std::exp(-1.1 * t) * n0 * (1 + 1e-9));
            }
        }
}

TEST(GTUniform, ConstantSigmaNonDefective) {
    const auto u = gt_uniform_constant(RelaxationField::constant(1.0), 64);
    double lo = 1e300, hi = 0.0;
    for (int k = 1; k <= 64; ++k) {
        const auto e = hermitian_extremes(gt_p_matrix(1.0, 0.0, k));
        double mn = e.lambda_min, mx = e.lambda_max;
        if (k == 64) mn /= 1.1, mx *= 1.1;
        lo = std::min(lo, mn), hi = std::max(hi, mx);
    }
    EXPECT_NEAR(u.C_nondefective, hi / lo, 1e-9);
    EXPECT_EQ(u.C_defective, 0.0);
    EXPECT_EQ(u.C0, 1.0);
    EXPECT_NEAR(u.C_global, 2.0 * hi / lo, 1e-9);
    EXPECT_LT(u.flatness, 0.15);
}

TEST(GTUniform, TanhFiniteAndMonotone) {
    const auto f = RelaxationField::tanh_profile();
    EXPECT_DOUBLE_EQ(f.sigma0, 0.5);
    EXPECT_DOUBLE_EQ(f.sigma1, 1.5);
    EXPECT_DOUBLE_EQ(f.L, 0.5);
    const auto u = gt_uniform_constant(f, 64);
    EXPECT_TRUE(std::isfinite(u.C_global));
    EXPECT_GT(u.lambda_min, 0.0);
    EXPECT_NEAR(u.C0, 24.0, 1e-12);
    EXPECT_NEAR(u.C_defective, 12.0 * (u.lambda_max / u.lambda_min) * 2.0, 1e-6 * u.C_defective);
    const auto wider = gt_uniform_constant(0.3, 1.7, 0.8, 64);
    EXPECT_LE(wider.lambda_min, u.lambda_min);
    EXPECT_GE(wider.lambda_max, u.lambda_max);
    const auto bigger_k = gt_uniform_constant(f, 80);
    EXPECT_LE(bigger_k.lambda_min, u.lambda_min * 1.1);
}

TEST(GTEnvelope, ZeroModeAndDominance) {
    const auto f = RelaxationField::tanh_profile(1.0, 0.9);
    EXPECT_NEAR(gt_mode_envelope(f, 0, 0.0).C_const, 12.0 * std::max(2.0, 1.0 + 0.81), 1e-12);
    RelaxationField one = RelaxationField::tabulated({-1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0});
    EXPECT_NEAR(gt_mode_envelope(one, 0, 0.0).C_const, 24.0, 1e-12);
    const auto times = linear_grid(0.0, 30.0, 121);
    for (double z : {-2.0, 0.0, 1.3})
        for (int k : {0, 1, 2, 5, 17}) {
            const auto env = gt_mode_envelope(f, k, z);
            const CMatrix m = k == 0 ? gt_k0_complement(f.sigma(z), f.dsigma(z)) : gt_mode_matrix(f, k, z);
            std::vector<double> lb;
            for (double t : times) lb.push_back(env.log_value(t));
            EXPECT_TRUE(dominance_report(m, times, lb).dominated) << "z=" << z << " k=" << k;
        }
    const auto flat = RelaxationField::constant(1.3);
    const auto e0 = gt_mode_envelope(flat, 0, 0.0);
    EXPECT_EQ(e0.power, 0);
    EXPECT_EQ(gt_mode_envelope(flat, 3, 0.0).power, 0);
}

TEST(GTState, ConservationAndSteadyState) {
    const auto f = RelaxationField::tanh_profile();
    const auto s0 = gt_initial(16, 0.7);
    for (double t : {0.5, 5.0, 40.0}) {
        const CVector raw = expm(gt_mode_matrix(f, 0, 0.7), -t) * s0.mode(0);
        EXPECT_NEAR(std::abs(raw[0] - 1.0), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(raw[2]), 0.0, 1e-15);
        const auto s = gt_evolve(f, s0, t);
        EXPECT_EQ(s.mode(0)[0], cplx(1.0));
        EXPECT_EQ(s.mode(0)[2], cplx(0.0));
    }
    const CVector phi = phi_from_y({1.0, 0.0, 0.0, 0.0});
    EXPECT_EQ(phi, (CVector{0.5, 0.5, 0.0, 0.0}));
    EXPECT_LT(gt_distance_sq(gt_evolve(f, s0, 200.0)), 1e-30);
    GTState bad = s0;
    bad.mode(0)[0] = 2.0;
    EXPECT_THROW(gt_evolve(f, bad, 1.0), InvalidInput);
}

TEST(GTTheorem, ConstantSigma) {
    const auto r = gt_theorem_check(RelaxationField::constant(1.0), {-1.0, 0.0, 1.0}, log_time_grid(30.0, 40), 16);
    EXPECT_TRUE(r.holds);
    EXPECT_GT(r.constants.at("lambda_min"), 0.0);
}

TEST(GTTheorem, TanhProfile) {
    const auto r =
        gt_theorem_check(RelaxationField::tanh_profile(), linear_grid(-3.0, 3.0, 13), log_time_grid(30.0, 50), 32);
    EXPECT_TRUE(r.holds) << r.max_ratio;
    EXPECT_FALSE(r.notes.empty());
}

TEST(GTField, Validation) {
    EXPECT_THROW(RelaxationField::constant(2.0), InvalidInput);
    EXPECT_THROW(RelaxationField::constant(0.0), InvalidInput);
    EXPECT_THROW(RelaxationField::tanh_profile(1.5, 0.6), InvalidInput);
    EXPECT_THROW(RelaxationField::tabulated({0.0, 1.0}, {1.0, 2.1}, {0.0, 0.0}), InvalidInput);
    RelaxationField f = RelaxationField::tanh_profile();
    f.L = 0.1;
    EXPECT_THROW(validate_field(f, {0.0}), InvalidInput);
    EXPECT_THROW(gt_theorem_check(RelaxationField::tanh_profile(), {}, {0.0}), InvalidInput);
}
