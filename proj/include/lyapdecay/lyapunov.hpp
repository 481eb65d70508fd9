#pragma once

#include <map>
#include <set>
#include <vector>

#include "lyapdecay/cmatrix.hpp"
#include "lyapdecay/jordan.hpp"
#include "lyapdecay/linalg.hpp"

namespace lyapdecay {

enum class BlockCase { Case1, Case2, Case3, Case3Tilde };

const char* case_name(BlockCase c);

/**
 * @brief Contribution of one Jordan block to P(t).
 *
 * Case1: beta * v0 v0^H.
 * Case2: beta * sum_i b^i v^{(l-i)} v^{(l-i)H}, time independent.
 * Case3 / Case3Tilde: sum_m weights[m-1] w^m(t) w^m(t)^H.
 * level_chains optionally replaces the chain used for level m (must itself be a valid chain).
 */
struct FormBlock {
    BlockCase kind = BlockCase::Case1;
    JordanBlock block;
    double beta = 1.0;
    std::vector<double> case2_b;
    std::vector<double> weights;
    std::vector<std::vector<CVector>> level_chains;
};

struct LyapunovForm {
    std::size_t dim = 0;
    double mu = 0.0;
    std::vector<FormBlock> blocks;
};

/// Envelope t -> C (1 + t^{2(M-1)}) e^{-2 mu t}; the algebraic factor is 1 when M = 1.
struct DecayEnvelope {
    double C_const = 1.0;
    double mu = 0.0;
    std::size_t M = 1;
};

/// Weight overrides for build_form. Keys are block indices of the structure.
struct WeightSpec {
    std::map<std::size_t, std::vector<double>> level_weights;
    std::map<std::size_t, double> beta;
    std::set<std::size_t> tilde_blocks;  ///< Case-2 blocks to treat as Case 3 (time dependent)
};

std::vector<double> case2_weights(std::size_t l, double tau);

/// Heuristic beta^m = |v^{(0)}|^2 / |v^{(m-1)}|^2 keeping P(0) well conditioned in collapse limits.
std::vector<double> suggest_weights(const JordanBlock& b);

LyapunovForm build_form(const JordanStructure& s, const WeightSpec& spec = {});

/// w^m(t) = sum_{k=1}^m (s t)^{m-k}/(m-k)! v^{(k-1)}.
CVector w_vector(const JordanBlock& b, std::size_t m, double t);
CVector w_vector(const std::vector<CVector>& chain, double coupling, std::size_t m, double t);

CMatrix build_p(const LyapunovForm& form, double t);
/// Case-2 weights with tau = 2 eps on the gap-defective blocks.
CMatrix build_p_epsilon(const JordanStructure& s, double eps);

double c_m_constant(std::size_t M);

DecayEnvelope decay_constant(const LyapunovForm& form);
double envelope_eval(const DecayEnvelope& env, double t);
/// log of envelope_eval, safe for large t.
double envelope_log(const DecayEnvelope& env, double t);

/// Minimum eigenvalue of C^H P + P C - 2 rate P.
double verify_matrix_inequality(const CMatrix& c, const CMatrix& p, double rate);

/// Polynomial with complex coefficients, ascending powers.
using Poly = std::vector<cplx>;
cplx poly_eval(const Poly& p, double t);

/// Slack of the lower bound for |x|^2_{w w^H}, w = sum_j xi^j(t) v^j; must be >= 0.
double lower_bound_lemma_gap(const std::vector<CVector>& v, const std::vector<Poly>& xi, double theta,
                             double t, const CVector& x);

/// d_m(theta) = ((m-1)^2/theta - 1)/(1 - theta).
double lemma_d(std::size_t m, double theta);

struct DefectOneBound {
    double mu = 0.0;
    double ratio = 0.0;  ///< s^2 beta^2 / beta^1
    double cond = 1.0;   ///< lambda_max / lambda_min of P(0)
    /// Euclidean bound: cond * 2 e^{-2 mu t} (1 + ratio t^2).
    double operator()(double t) const;
    /// Bound for |x(t)|^2_{P(0)} / |x(0)|^2_{P(0)}.
    double p0_factor(double t) const;
};

DefectOneBound improved_defect1_envelope(const LyapunovForm& form, std::size_t block_index);

/// Constant for forms where Case-2 blocks are treated as Case3Tilde and the gap is non-defective.
DecayEnvelope tilde_constant(const LyapunovForm& form);

/// max_{t >= 0} (1 + t^q) e^{-r t}.
double folding_constant(double q, double r);

/// P-angle Re<x, Cx>_P / (|x|_P |Cx|_P).
double p_angle(const CMatrix& p, const CMatrix& c, const CVector& x);

}  // namespace lyapdecay
