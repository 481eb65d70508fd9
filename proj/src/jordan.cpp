#include "lyapdecay/jordan.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lyapdecay/linalg.hpp"

namespace lyapdecay {

namespace {

double gap_tolerance(const JordanStructure& s) { return s.rel_tol * (1.0 + std::abs(s.mu)); }

CVector project_out(CVector v, const std::vector<CVector>& q) {
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& e : q) {
            const cplx c = dot(e, v);
            for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * e[i];
        }
    return v;
}

std::vector<CVector> orthonormalize(const std::vector<CVector>& vecs, double drop_tol) {
    std::vector<CVector> q;
    for (const auto& v : vecs) {
        const double n0 = norm2(v);
        if (n0 == 0.0) continue;
        CVector r = project_out(v, q);
        const double n = norm2(r);
        if (n <= drop_tol * n0) continue;
        q.push_back((1.0 / n) * r);
    }
    return q;
}

// Rotate the chain so the largest entry of its eigenvector is real positive.
void fix_phase(std::vector<CVector>& chain) {
    const CVector& v0 = chain.front();
    std::size_t best = 0;
    for (std::size_t i = 1; i < v0.size(); ++i)
        if (std::abs(v0[i]) > std::abs(v0[best]) * (1.0 + 1e-12)) best = i;
    const double a = std::abs(v0[best]);
    if (a == 0.0) return;
    const cplx ph = std::conj(v0[best]) / a;
    for (auto& v : chain)
        for (auto& x : v) x *= ph;
}

// Unit eigenvector, then each link shifted along lower links to be orthogonal to it.
void normalize_chain(std::vector<CVector>& chain) {
    const double n0 = norm2(chain.front());
    for (auto& v : chain) v = (1.0 / n0) * v;
    const CVector v0 = chain.front();
    for (std::size_t k = 1; k < chain.size(); ++k) {
        const cplx c = -dot(v0, chain[k]);
        for (std::size_t j = k; j < chain.size(); ++j) chain[j] = chain[j] + c * chain[j - k];
    }
    fix_phase(chain);
}

}  // namespace

std::vector<EigenCluster> cluster_eigenvalues(const CVector& eigs, double rel_tol) {
    if (!(rel_tol > 0.0)) throw InvalidInput("cluster_eigenvalues: rel_tol must be positive");
    const std::size_t n = eigs.size();
    double maxabs = 0.0;
    for (const auto& e : eigs) maxabs = std::max(maxabs, std::abs(e));
    const double tol = rel_tol * (1.0 + maxabs);

    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(eigs[i] - eigs[j]) <= tol) parent[find(i)] = find(j);

    std::vector<EigenCluster> out;
    std::vector<std::size_t> roots;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find(i);
        auto it = std::find(roots.begin(), roots.end(), r);
        if (it == roots.end()) {
            roots.push_back(r);
            out.push_back({eigs[i], 1});
        } else {
            auto& c = out[static_cast<std::size_t>(it - roots.begin())];
            c.value += eigs[i];
            ++c.multiplicity;
        }
    }
    for (auto& c : out) c.value /= static_cast<double>(c.multiplicity);
    std::stable_sort(out.begin(), out.end(), [](const EigenCluster& a, const EigenCluster& b) {
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    return out;
}

JordanStructure jordan_chains(const CMatrix& c, const std::vector<EigenCluster>& clusters, double rel_tol) {
    const std::size_t d = c.dim();
    std::size_t total = 0;
    for (const auto& cl : clusters) total += cl.multiplicity;
    if (total != d) throw InvalidInput("jordan_chains: multiplicities do not sum to dim");

    const CMatrix ch = c.adjoint();
    // B^j can be pure rounding noise, so rank decisions use |C|^j as the scale.
    const double cscale = std::max(1.0, spectral_norm(c));
    std::vector<JordanBlock> blocks;
    for (const auto& cl : clusters) {
        const std::size_t m = cl.multiplicity;
        CMatrix b = ch - std::conj(cl.value) * CMatrix::identity(d);

        // nullity[j] = dim ker B^j, kernels[j] an orthonormal basis.
        std::vector<std::size_t> nullity{0};
        std::vector<std::vector<CVector>> kernels{{}};
        CMatrix power = CMatrix::identity(d);
        double pscale = 1.0;
        for (std::size_t j = 1; j <= m; ++j) {
            power = power * b;
            pscale *= cscale;
            auto ns = nullspace_rank(power, rel_tol, pscale);
            nullity.push_back(ns.basis.size());
            kernels.push_back(std::move(ns.basis));
            if (nullity.back() >= m) break;
        }
        const std::size_t lmax = nullity.size() - 1;
        if (nullity.back() != m)
            throw RankProfileError("jordan_chains: generalized eigenspace dimension " +
                                   std::to_string(nullity.back()) + " != multiplicity " + std::to_string(m));
        // g[j] = number of blocks of length >= j
        std::vector<std::size_t> g(lmax + 2, 0);
        for (std::size_t j = 1; j <= lmax; ++j) {
            if (nullity[j] < nullity[j - 1]) throw RankProfileError("jordan_chains: non-monotone rank profile");
            g[j] = nullity[j] - nullity[j - 1];
            if (j > 1 && g[j] > g[j - 1]) throw RankProfileError("jordan_chains: inconsistent rank profile");
        }

        std::vector<std::vector<CVector>> chains;
        for (std::size_t len = lmax; len >= 1; --len) {
            const std::size_t count = g[len] - g[len + 1];
            if (count == 0) continue;
            std::vector<CVector> span = kernels[len - 1];
            for (const auto& ch_prev : chains) span.push_back(ch_prev[len - 1]);
            const auto q = orthonormalize(span, 1e-10);
            std::vector<CVector> cand;
            for (const auto& v : kernels[len]) cand.push_back(project_out(v, q));
            for (std::size_t pick = 0; pick < count; ++pick) {
                std::size_t best = 0;
                double bestn = -1.0;
                for (std::size_t i = 0; i < cand.size(); ++i) {
                    const double nn = norm2(cand[i]);
                    if (nn > bestn * (1.0 + 1e-12)) {
                        bestn = nn;
                        best = i;
                    }
                }
                if (cand.empty() || bestn < 1e-6)
                    throw RankProfileError("jordan_chains: cannot extend chain of length " + std::to_string(len));
                const CVector top = (1.0 / bestn) * cand[best];
                for (auto& x : cand) x = project_out(x, {top});
                std::vector<CVector> chain(len);
                chain[len - 1] = top;
                for (std::size_t k = len - 1; k-- > 0;) chain[k] = b * chain[k + 1];
                normalize_chain(chain);
                chains.push_back(std::move(chain));
            }
        }
        for (auto& chn : chains) blocks.push_back({cl.value, std::move(chn), 1.0});
    }

    JordanStructure s = make_structure(std::move(blocks), rel_tol);
    const double residual = verify_chain(c, s);
    const double tol = 10.0 * rel_tol * std::max(1.0, spectral_norm(c));
    if (residual > tol)
        throw RankProfileError("jordan_chains: chain residual " + std::to_string(residual) + " exceeds tolerance");
    return s;
}

JordanStructure analyze_jordan(const CMatrix& c, double rel_tol) {
    return jordan_chains(c, cluster_eigenvalues(eigenvalues(c), rel_tol), rel_tol);
}

JordanStructure make_structure(std::vector<JordanBlock> blocks, double rel_tol) {
    if (blocks.empty()) throw InvalidInput("make_structure: no blocks");
    JordanStructure s;
    s.rel_tol = rel_tol;
    s.dim = blocks.front().chain.empty() ? 0 : blocks.front().chain.front().size();
    std::size_t total = 0;
    for (const auto& b : blocks) {
        if (b.chain.empty()) throw InvalidInput("make_structure: empty chain");
        if (std::abs(b.coupling) > 1.0) throw InvalidInput("make_structure: |coupling| must be <= 1");
        for (const auto& v : b.chain)
            if (v.size() != s.dim) throw InvalidInput("make_structure: chain vector length mismatch");
        total += b.length();
    }
    if (total != s.dim) throw InvalidInput("make_structure: chains do not span the space");
    s.blocks = std::move(blocks);
    s.mu = s.blocks.front().eigenvalue.real();
    for (const auto& b : s.blocks) s.mu = std::min(s.mu, b.eigenvalue.real());
    s.max_defect = 1;
    for (std::size_t n = 0; n < s.blocks.size(); ++n) {
        const auto& b = s.blocks[n];
        if (b.length() > 1 && on_gap(s, b)) {
            s.gap_indices.push_back(n);
            s.max_defect = std::max(s.max_defect, b.length());
        }
    }
    return s;
}

bool on_gap(const JordanStructure& s, const JordanBlock& b) {
    return std::abs(b.eigenvalue.real() - s.mu) <= gap_tolerance(s);
}

GapData spectral_gap_data(const JordanStructure& s) {
    if (!(s.mu > 0.0)) throw NotPositiveStable("spectral gap mu = " + std::to_string(s.mu) + " is not positive");
    return {s.mu, s.max_defect, s.gap_indices};
}

double verify_chain(const CMatrix& c, const JordanStructure& s) {
    const CMatrix ch = c.adjoint();
    double worst = 0.0;
    for (const auto& b : s.blocks) {
        const cplx lb = std::conj(b.eigenvalue);
        for (std::size_t k = 0; k < b.length(); ++k) {
            CVector r = ch * b.chain[k] - lb * b.chain[k];
            if (k > 0) r = r - b.coupling * b.chain[k - 1];
            worst = std::max(worst, norm2(r));
        }
    }
    return worst;
}

CMatrix chain_matrix(const JordanStructure& s) {
    std::vector<CVector> cols;
    for (const auto& b : s.blocks)
        for (const auto& v : b.chain) cols.push_back(v);
    return CMatrix::from_columns(cols);
}

CMatrix jordan_matrix(const JordanStructure& s) {
    CMatrix j(s.dim);
    std::size_t off = 0;
    for (const auto& b : s.blocks) {
        for (std::size_t k = 0; k < b.length(); ++k) {
            j(off + k, off + k) = std::conj(b.eigenvalue);
            if (k > 0) j(off + k - 1, off + k) = b.coupling;
        }
        off += b.length();
    }
    return j;
}

}  // namespace lyapdecay
