#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "gaussmp/errors.hpp"

namespace gaussmp {

// How the 2N quadratures of an N-mode system are laid out along the rows
// and columns of a matrix. Every covariance matrix and symplectic form
// carries exactly one of these tags; mixing tags is rejected.
//
//   Interleaved     (q1, p1, q2, p2, ..., qN, pN)       -- canonical storage
//   BlockQP         (q1..qN, p1..pN)
//   PaperBipartite  (qA1..qAn, qB1..qBn, pA1..pAn, pB1..pBn), |A| == |B|
enum class QuadratureOrdering { Interleaved, BlockQP, PaperBipartite };

inline const char* to_string(QuadratureOrdering o) {
    switch (o) {
        case QuadratureOrdering::Interleaved: return "interleaved";
        case QuadratureOrdering::BlockQP: return "block_qp";
        case QuadratureOrdering::PaperBipartite: return "paper_bipartite";
    }
    return "?";
}

inline std::optional<QuadratureOrdering> ordering_from_string(std::string_view s) {
    if (s == "interleaved") return QuadratureOrdering::Interleaved;
    if (s == "block_qp") return QuadratureOrdering::BlockQP;
    if (s == "paper_bipartite") return QuadratureOrdering::PaperBipartite;
    return std::nullopt;
}

// Bipartition A|B of the modes, stored as the set of party-B mode indices
// (0-based). Must be a non-empty proper subset of 0..N-1.
struct PartitionSpec {
    std::set<int> party_b_modes;

    bool valid_for(int n_modes) const {
        if (party_b_modes.empty() || static_cast<int>(party_b_modes.size()) >= n_modes)
            return false;
        for (int m : party_b_modes)
            if (m < 0 || m >= n_modes) return false;
        return true;
    }

    std::vector<int> party_a(int n_modes) const {
        std::vector<int> a;
        for (int m = 0; m < n_modes; ++m)
            if (!party_b_modes.count(m)) a.push_back(m);
        return a;
    }

    std::vector<int> party_b() const {
        return std::vector<int>(party_b_modes.begin(), party_b_modes.end());
    }

    // Last n_b modes form party B; the default layout produced by
    // separable_product and two_mode_squeezed.
    static PartitionSpec last_modes(int n_modes, int n_b) {
        PartitionSpec p;
        for (int m = n_modes - n_b; m < n_modes; ++m) p.party_b_modes.insert(m);
        return p;
    }
};

namespace detail {

// slot_of[2*mode + 1{p}] = row/column index of that quadrature under `o`.
inline std::vector<int> slot_table(QuadratureOrdering o, int n_modes,
                                   const PartitionSpec* partition) {
    const int dim = 2 * n_modes;
    std::vector<int> slot(dim, -1);
    switch (o) {
        case QuadratureOrdering::Interleaved:
            for (int m = 0; m < n_modes; ++m) {
                slot[2 * m] = 2 * m;
                slot[2 * m + 1] = 2 * m + 1;
            }
            break;
        case QuadratureOrdering::BlockQP:
            for (int m = 0; m < n_modes; ++m) {
                slot[2 * m] = m;
                slot[2 * m + 1] = n_modes + m;
            }
            break;
        case QuadratureOrdering::PaperBipartite: {
            if (!partition)
                throw Error("paper_bipartite ordering requires a bipartition");
            if (!partition->valid_for(n_modes))
                throw Error("invalid bipartition for " + std::to_string(n_modes) + " modes");
            const auto a = partition->party_a(n_modes);
            const auto b = partition->party_b();
            if (a.size() != b.size())
                throw Error("paper_bipartite ordering requires equal A/B mode counts");
            // q half: A modes ascending, then B modes ascending; p half mirrors it.
            int pos = 0;
            for (int m : a) slot[2 * m] = pos++;
            for (int m : b) slot[2 * m] = pos++;
            for (int m : a) slot[2 * m + 1] = pos++;
            for (int m : b) slot[2 * m + 1] = pos++;
            break;
        }
    }
    return slot;
}

}  // namespace detail

// Permutation taking ordering `from` to ordering `to`:
// perm[i] = index in `from` of the quadrature sitting at slot i of `to`.
inline std::vector<int> reorder_permutation(
    int n_modes, QuadratureOrdering from, QuadratureOrdering to,
    const std::optional<PartitionSpec>& partition = std::nullopt) {
    const PartitionSpec* part = partition ? &*partition : nullptr;
    const auto slot_from = detail::slot_table(from, n_modes, part);
    const auto slot_to = detail::slot_table(to, n_modes, part);
    std::vector<int> perm(2 * n_modes, -1);
    for (int k = 0; k < 2 * n_modes; ++k) perm[slot_to[k]] = slot_from[k];
    return perm;
}

// P M P^T for the permutation P mapping index conventions. Implemented as an
// index gather, so round-trips are bit-exact.
inline Eigen::MatrixXd reorder(const Eigen::MatrixXd& M, QuadratureOrdering from,
                               QuadratureOrdering to,
                               const std::optional<PartitionSpec>& partition = std::nullopt) {
    if (M.rows() != M.cols() || M.rows() % 2 != 0)
        throw DimensionError("reorder expects a square 2Nx2N matrix");
    const int n_modes = static_cast<int>(M.rows()) / 2;
    const auto perm = reorder_permutation(n_modes, from, to, partition);
    Eigen::MatrixXd out(M.rows(), M.cols());
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j) out(i, j) = M(perm[i], perm[j]);
    return out;
}

inline Eigen::VectorXd reorder_vector(
    const Eigen::VectorXd& v, QuadratureOrdering from, QuadratureOrdering to,
    const std::optional<PartitionSpec>& partition = std::nullopt) {
    if (v.size() % 2 != 0) throw DimensionError("reorder_vector expects length 2N");
    const int n_modes = static_cast<int>(v.size()) / 2;
    const auto perm = reorder_permutation(n_modes, from, to, partition);
    Eigen::VectorXd out(v.size());
    for (int i = 0; i < v.size(); ++i) out(i) = v(perm[i]);
    return out;
}

}  // namespace gaussmp
