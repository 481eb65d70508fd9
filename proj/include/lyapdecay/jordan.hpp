#pragma once

#include <vector>

#include "lyapdecay/cmatrix.hpp"

namespace lyapdecay {

/// Spectrum has an eigenvalue with Re <= 0.
class NotPositiveStable : public InvalidInput {
public:
    explicit NotPositiveStable(const std::string& what) : InvalidInput(what) {}
};

/// Rank profile of (C^H - conj(lambda) I)^j disagrees with the cluster multiplicity.
class RankProfileError : public std::runtime_error {
public:
    explicit RankProfileError(const std::string& what) : std::runtime_error(what) {}
};

/**
 * @brief One Jordan block of C^H.
 *
 * chain[k] satisfies C^H v^{(k)} = conj(eigenvalue) v^{(k)} + coupling * v^{(k-1)}.
 * The numerical path always produces coupling = 1; analytic callers may use
 * |coupling| <= 1 to represent collapsing links (coupling = 0 is a decoupled pair).
 */
struct JordanBlock {
    cplx eigenvalue{};
    std::vector<CVector> chain;
    double coupling = 1.0;

    std::size_t length() const { return chain.size(); }
};

struct JordanStructure {
    std::size_t dim = 0;
    std::vector<JordanBlock> blocks;
    double mu = 0.0;
    std::size_t max_defect = 1;            ///< M
    std::vector<std::size_t> gap_indices;  ///< I_mu: defective blocks on the gap
    double rel_tol = 1e-8;
};

struct EigenCluster {
    cplx value{};
    std::size_t multiplicity = 0;
};

struct GapData {
    double mu = 0.0;
    std::size_t max_defect = 1;
    std::vector<std::size_t> gap_indices;
};

std::vector<EigenCluster> cluster_eigenvalues(const CVector& eigs, double rel_tol = 1e-8);

/// Numerical chains from rank profiles (fragile near defect ambiguity; see RankProfileError).
JordanStructure jordan_chains(const CMatrix& c, const std::vector<EigenCluster>& clusters,
                              double rel_tol = 1e-8);

/// eigenvalues -> clusters -> chains.
JordanStructure analyze_jordan(const CMatrix& c, double rel_tol = 1e-8);

/// Analytic mode: caller supplies blocks, gap data is filled in.
JordanStructure make_structure(std::vector<JordanBlock> blocks, double rel_tol = 1e-8);

GapData spectral_gap_data(const JordanStructure& s);

/// Max over blocks and links of |C^H v^{(k)} - conj(lambda) v^{(k)} - s v^{(k-1)}|.
double verify_chain(const CMatrix& c, const JordanStructure& s);

/// Columns = all chain vectors, block by block.
CMatrix chain_matrix(const JordanStructure& s);
/// Block bidiagonal J with C^H V = V J.
CMatrix jordan_matrix(const JordanStructure& s);

bool on_gap(const JordanStructure& s, const JordanBlock& b);

}  // namespace lyapdecay
