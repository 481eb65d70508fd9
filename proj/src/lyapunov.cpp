#include "lyapdecay/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace lyapdecay {

namespace {

double factorial(std::size_t n) {
    double f = 1.0;
    for (std::size_t i = 2; i <= n; ++i) f *= static_cast<double>(i);
    return f;
}

void add_rank_one(CMatrix& p, double weight, const CVector& w) {
    const std::size_t n = p.dim();
    for (std::size_t i = 0; i < n; ++i) {
        const cplx wi = weight * w[i];
        for (std::size_t j = 0; j < n; ++j) p(i, j) += wi * std::conj(w[j]);
    }
}

// Case-2 contribution with weights b^i on v^{(l-i)}: the largest weight sits on the eigenvector.
void add_case2(CMatrix& p, const JordanBlock& b, double beta, const std::vector<double>& bw) {
    const std::size_t l = b.length();
    if (b.coupling == 0.0) {
        for (const auto& v : b.chain) add_rank_one(p, beta, v);
        return;
    }
    // Rescale to a unit-coupling chain u^{(k)} = v^{(k)} / s^k.
    for (std::size_t i = 1; i <= l; ++i) {
        const std::size_t k = l - i;
        const double sk = std::pow(b.coupling, static_cast<double>(k));
        add_rank_one(p, beta * bw[i - 1] / (sk * sk), b.chain[k]);
    }
}

double inner_weight_term(const std::vector<double>& beta) {
    double sum = 0.0;
    double running_min = std::numeric_limits<double>::infinity();
    for (double b : beta) {
        running_min = std::min(running_min, b);
        sum += b / running_min;
    }
    return sum;
}

CMatrix hermitian_part(const CMatrix& a) { return 0.5 * (a + a.adjoint()); }

}  // namespace

const char* case_name(BlockCase c) {
    switch (c) {
    case BlockCase::Case1: return "case1";
    case BlockCase::Case2: return "case2";
    case BlockCase::Case3: return "case3";
    case BlockCase::Case3Tilde: return "case3_tilde";
    }
    return "unknown";
}

std::vector<double> case2_weights(std::size_t l, double tau) {
    if (l == 0) throw InvalidInput("case2_weights: l must be >= 1");
    if (!(tau > 0.0)) throw InvalidInput("case2_weights: tau must be positive (block misclassified)");
    std::vector<double> b{1.0};
    double c = 1.0;
    for (std::size_t j = 2; j <= l; ++j) {
        c = 1.0 + c * c;
        b.push_back(c * std::pow(tau, 2.0 * (1.0 - static_cast<double>(j))));
    }
    return b;
}

std::vector<double> suggest_weights(const JordanBlock& b) {
    std::vector<double> w;
    const double n0 = norm2(b.chain.front());
    for (const auto& v : b.chain) {
        const double n = norm2(v);
        w.push_back(n > 0.0 ? (n0 * n0) / (n * n) : 1.0);
    }
    return w;
}

LyapunovForm build_form(const JordanStructure& s, const WeightSpec& spec) {
    LyapunovForm form{s.dim, s.mu, {}};
    for (std::size_t n = 0; n < s.blocks.size(); ++n) {
        const auto& blk = s.blocks[n];
        FormBlock fb;
        fb.block = blk;
        if (auto it = spec.beta.find(n); it != spec.beta.end()) fb.beta = it->second;
        const std::size_t l = blk.length();
        const bool tilde = spec.tilde_blocks.count(n) > 0;
        if (l == 1) {
            fb.kind = BlockCase::Case1;
        } else if (on_gap(s, blk) || tilde) {
            fb.kind = on_gap(s, blk) ? BlockCase::Case3 : BlockCase::Case3Tilde;
            if (auto it = spec.level_weights.find(n); it != spec.level_weights.end()) {
                if (it->second.size() != l) throw InvalidInput("build_form: weight count must equal block length");
                fb.weights = it->second;
            } else {
                fb.weights.assign(l, 1.0);
            }
        } else {
            fb.kind = BlockCase::Case2;
            fb.case2_b = case2_weights(l, 2.0 * (blk.eigenvalue.real() - s.mu));
        }
        if (tilde && fb.kind != BlockCase::Case3Tilde)
            throw InvalidInput("build_form: tilde treatment requested for a block that is not Case 2");
        for (double w : fb.weights)
            if (!(w > 0.0)) throw InvalidInput("build_form: weights must be positive");
        if (!(fb.beta > 0.0)) throw InvalidInput("build_form: beta must be positive");
        form.blocks.push_back(std::move(fb));
    }
    return form;
}

CVector w_vector(const std::vector<CVector>& chain, double coupling, std::size_t m, double t) {
    if (m < 1 || m > chain.size()) throw InvalidInput("w_vector: level out of range");
    const double st = coupling * t;
    CVector w(chain.front().size(), 0.0);
    for (std::size_t k = 1; k <= m; ++k) {
        const std::size_t p = m - k;
        const double coef = std::pow(st, static_cast<double>(p)) / factorial(p);
        const auto& v = chain[k - 1];
        for (std::size_t i = 0; i < w.size(); ++i) w[i] += coef * v[i];
    }
    return w;
}

CVector w_vector(const JordanBlock& b, std::size_t m, double t) { return w_vector(b.chain, b.coupling, m, t); }

CMatrix build_p(const LyapunovForm& form, double t) {
    if (t < 0.0) throw InvalidInput("build_p: t must be nonnegative");
    CMatrix p(form.dim);
    for (const auto& fb : form.blocks) {
        switch (fb.kind) {
        case BlockCase::Case1:
            add_rank_one(p, fb.beta, fb.block.chain.front());
            break;
        case BlockCase::Case2:
            add_case2(p, fb.block, fb.beta, fb.case2_b);
            break;
        case BlockCase::Case3:
        case BlockCase::Case3Tilde:
            for (std::size_t m = 1; m <= fb.block.length(); ++m) {
                const auto& chain = fb.level_chains.empty() ? fb.block.chain : fb.level_chains[m - 1];
                if (!(fb.weights[m - 1] > 0.0)) throw InvalidInput("build_p: non-positive weight");
                add_rank_one(p, fb.weights[m - 1], w_vector(chain, fb.block.coupling, m, t));
            }
            break;
        }
    }
    return p;
}

CMatrix build_p_epsilon(const JordanStructure& s, double eps) {
    if (!(eps > 0.0)) throw InvalidInput("build_p_epsilon: eps must be positive");
    if (eps >= s.mu) throw InvalidInput("build_p_epsilon: eps must be smaller than mu");
    CMatrix p(s.dim);
    for (const auto& b : s.blocks) {
        if (b.length() == 1) {
            add_rank_one(p, 1.0, b.chain.front());
            continue;
        }
        const double tau = on_gap(s, b) ? 2.0 * eps : 2.0 * (b.eigenvalue.real() - s.mu);
        add_case2(p, b, 1.0, case2_weights(b.length(), tau));
    }
    return p;
}

double c_m_constant(std::size_t M) {
    if (M == 0) throw InvalidInput("c_m_constant: M must be >= 1");
    if (M == 1) return 0.5;
    double c = std::ldexp(1.0, static_cast<int>(M) - 2);
    for (std::size_t j = 1; j <= M - 1; ++j) c *= 4.0 * static_cast<double>(j * j) - 1.0;
    for (std::size_t j = 2; j <= M; ++j) {
        double s = 0.0;
        for (std::size_t k = 1; k <= j; ++k) {
            const double f = factorial(j - k);
            s += 1.0 / (f * f);
        }
        c *= s;
    }
    return c;
}

DecayEnvelope decay_constant(const LyapunovForm& form) {
    if (!(form.mu > 0.0)) throw NotPositiveStable("decay_constant: structure is not positive stable");
    std::size_t M = 1;
    double inner = 0.0;
    for (const auto& fb : form.blocks) {
        if (fb.kind == BlockCase::Case3Tilde)
            throw InvalidInput("decay_constant: form has tilde blocks, use tilde_constant");
        if (fb.kind == BlockCase::Case3 && fb.block.length() > 1) {
            M = std::max(M, fb.block.length());
            inner = std::max(inner, inner_weight_term(fb.weights));
        }
    }
    const auto ext = hermitian_extremes(build_p(form, 0.0));
    if (!(ext.lambda_min > 0.0)) throw InvalidInput("decay_constant: P(0) is not positive definite");
    const double ratio = ext.lambda_max / ext.lambda_min;
    if (M == 1) return {ratio, form.mu, 1};
    return {2.0 * ratio * c_m_constant(M) * inner, form.mu, M};
}

double envelope_eval(const DecayEnvelope& env, double t) {
    if (t < 0.0) throw InvalidInput("envelope_eval: t must be nonnegative");
    const double alg = env.M <= 1 ? 1.0 : 1.0 + std::pow(t, 2.0 * static_cast<double>(env.M - 1));
    return env.C_const * alg * std::exp(-2.0 * env.mu * t);
}

double envelope_log(const DecayEnvelope& env, double t) {
    if (t < 0.0) throw InvalidInput("envelope_log: t must be nonnegative");
    const double alg = env.M <= 1 ? 0.0 : std::log1p(std::pow(t, 2.0 * static_cast<double>(env.M - 1)));
    return std::log(env.C_const) + alg - 2.0 * env.mu * t;
}

double verify_matrix_inequality(const CMatrix& c, const CMatrix& p, double rate) {
    if (p.hermitian_defect() > 1e-10 * std::max(1.0, p.max_abs()))
        throw InvalidInput("verify_matrix_inequality: P is not Hermitian");
    const CMatrix a = c.adjoint() * p + p * c - (2.0 * rate) * p;
    return hermitian_extremes(hermitian_part(a)).lambda_min;
}

cplx poly_eval(const Poly& p, double t) {
    cplx acc = 0.0;
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * t + p[i];
    return acc;
}

double lemma_d(std::size_t m, double theta) {
    const double mm = static_cast<double>(m) - 1.0;
    return (mm * mm / theta - 1.0) / (1.0 - theta);
}

double lower_bound_lemma_gap(const std::vector<CVector>& v, const std::vector<Poly>& xi, double theta, double t,
                             const CVector& x) {
    if (!(theta > 0.0 && theta < 1.0)) throw InvalidInput("lower_bound_lemma_gap: theta must lie in (0,1)");
    const std::size_t m = v.size();
    if (m == 0 || xi.size() != m) throw InvalidInput("lower_bound_lemma_gap: need m vectors and m polynomials");
    const Poly& top = xi.back();
    for (std::size_t i = 1; i < top.size(); ++i)
        if (top[i] != 0.0) throw InvalidInput("lower_bound_lemma_gap: xi^m must be constant");
    if (top.empty() || !(top[0].real() > 0.0) || top[0].imag() != 0.0)
        throw InvalidInput("lower_bound_lemma_gap: xi^m must be positive");

    cplx proj = 0.0;
    std::vector<double> q(m), xsq(m);
    for (std::size_t j = 0; j < m; ++j) {
        const cplx xj = poly_eval(xi[j], t);
        const cplx vx = dot(v[j], x);
        proj += std::conj(xj) * vx;
        xsq[j] = std::norm(xj);
        q[j] = std::norm(vx);
    }
    const double mm = static_cast<double>(m) - 1.0;
    double lower = (1.0 - theta) * xsq[m - 1] * q[m - 1];
    double tail = 0.0;
    for (std::size_t k = 0; k + 1 < m; ++k) tail += xsq[k] * q[k];
    lower -= (mm * mm / theta - 1.0) * tail;
    return std::norm(proj) - lower;
}

double DefectOneBound::p0_factor(double t) const { return 2.0 * std::exp(-2.0 * mu * t) * (1.0 + ratio * t * t); }

double DefectOneBound::operator()(double t) const { return cond * p0_factor(t); }

DefectOneBound improved_defect1_envelope(const LyapunovForm& form, std::size_t block_index) {
    if (block_index >= form.blocks.size()) throw InvalidInput("improved_defect1_envelope: block index out of range");
    const auto& target = form.blocks[block_index];
    if (target.kind != BlockCase::Case3 || target.block.length() != 2)
        throw InvalidInput("improved_defect1_envelope: block is not a defect-one gap block");
    DefectOneBound out;
    out.mu = form.mu;
    for (const auto& fb : form.blocks) {
        if (fb.kind == BlockCase::Case3Tilde) throw InvalidInput("improved_defect1_envelope: tilde blocks unsupported");
        if (fb.kind != BlockCase::Case3 || fb.block.length() < 2) continue;
        if (fb.block.length() > 2) throw InvalidInput("improved_defect1_envelope: another gap block has defect > 1");
        const double s = fb.block.coupling;
        out.ratio = std::max(out.ratio, s * s * fb.weights[1] / fb.weights[0]);
    }
    out.cond = hermitian_extremes(build_p(form, 0.0)).ratio();
    return out;
}

DecayEnvelope tilde_constant(const LyapunovForm& form) {
    if (!(form.mu > 0.0)) throw NotPositiveStable("tilde_constant: structure is not positive stable");
    double best = 0.0;
    std::size_t power = 1;
    for (const auto& fb : form.blocks) {
        if (fb.kind == BlockCase::Case3 && fb.block.length() > 1)
            throw InvalidInput("tilde_constant: requires a non-defective gap (M = 1)");
        if (fb.kind != BlockCase::Case3Tilde) continue;
        best = std::max(best, c_m_constant(fb.block.length()) * inner_weight_term(fb.weights));
        power = std::max(power, fb.block.length());
    }
    const double ratio = hermitian_extremes(build_p(form, 0.0)).ratio();
    if (power == 1) return {ratio, form.mu, 1};
    return {2.0 * ratio * best, form.mu, power};
}

double folding_constant(double q, double r) {
    if (!(q > 0.0) || !(r > 0.0)) throw InvalidInput("folding_constant: q and r must be positive");
    auto h = [&](double t) { return std::log1p(std::pow(t, q)) - r * t; };
    // h is decreasing beyond q / r.
    const double tmax = q / r;
    constexpr int kGrid = 4000;
    double best_t = 0.0, best_h = h(0.0);
    for (int i = 1; i <= kGrid; ++i) {
        const double t = tmax * i / kGrid;
        const double v = h(t);
        if (v > best_h) {
            best_h = v;
            best_t = t;
        }
    }
    double lo = std::max(0.0, best_t - tmax / kGrid), hi = std::min(tmax, best_t + tmax / kGrid);
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + hi); ++it) {
        const double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
        if (h(a) < h(b)) lo = a;
        else hi = b;
    }
    best_h = std::max(best_h, h(0.5 * (lo + hi)));
    return std::exp(best_h);
}

double p_angle(const CMatrix& p, const CMatrix& c, const CVector& x) {
    const CVector cx = c * x;
    const double num = dot(cx, p * x).real();
    return num / std::sqrt(hermitian_form(p, x) * hermitian_form(p, cx));
}

}  // namespace lyapdecay
