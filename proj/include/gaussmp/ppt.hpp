#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gaussmp/errors.hpp"
#include "gaussmp/ordering.hpp"
#include "gaussmp/symplectic.hpp"

namespace gaussmp {

// Partial transposition of party B acts on covariance matrices as the mirror
// congruence V -> L V L, where L is diagonal with -1 exactly at the p
// quadrature of each party-B mode and +1 elsewhere.
struct MirrorMap {
    Eigen::VectorXd diagonal;
    QuadratureOrdering ordering = QuadratureOrdering::Interleaved;
};

inline MirrorMap mirror_matrix(int n_modes, const PartitionSpec& partition,
                               QuadratureOrdering ordering = QuadratureOrdering::Interleaved) {
    if (n_modes < 1) throw DimensionError("mirror_matrix: n_modes must be >= 1");
    if (partition.party_b_modes.empty())
        throw DimensionError("mirror_matrix: party B is empty, nothing to transpose");
    if (static_cast<int>(partition.party_b_modes.size()) >= n_modes)
        throw DimensionError("mirror_matrix: party B is everything; transpose of the full "
                             "state is not a partial transpose");
    if (!partition.valid_for(n_modes))
        throw DimensionError("mirror_matrix: partition references modes outside [0, n_modes)");
    const auto slots = detail::slot_table(ordering, n_modes, &partition);
    Eigen::VectorXd d = Eigen::VectorXd::Ones(2 * n_modes);
    for (int mode : partition.party_b_modes) d(slots[2 * mode + 1]) = -1.0;
    return MirrorMap{std::move(d), ordering};
}

// Exact elementwise congruence: out_ij = d_i d_j V_ij with d_i in {-1, +1}.
// Applying the same map twice restores every entry bit for bit.
inline CovarianceMatrix partial_transpose(const CovarianceMatrix& cov,
                                          const PartitionSpec& partition) {
    const auto mirror = mirror_matrix(cov.n_modes, partition, cov.ordering);
    const int dim = 2 * cov.n_modes;
    if (cov.matrix.rows() != dim || cov.matrix.cols() != dim)
        throw DimensionError("partial_transpose: covariance dimension mismatch");
    Eigen::MatrixXd out(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            out(i, j) = mirror.diagonal(i) * mirror.diagonal(j) * cov.matrix(i, j);
    return CovarianceMatrix{cov.n_modes, std::move(out), cov.ordering};
}

// Transpose each 2x2 block of an even-dimensioned matrix in place:
// out.block(2i, 2j) = M.block(2i, 2j)^T. This is a positional shuffle of
// entries, not a congruence, and is kept for cross-checks against the mirror
// route.
inline Eigen::MatrixXd block_transpose(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols() || m.rows() % 2 != 0)
        throw DimensionError("block_transpose: matrix must be square with even dimension");
    const int nb = static_cast<int>(m.rows()) / 2;
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (int bi = 0; bi < nb; ++bi)
        for (int bj = 0; bj < nb; ++bj)
            out.block<2, 2>(2 * bi, 2 * bj) = m.block<2, 2>(2 * bi, 2 * bj).transpose();
    return out;
}

enum class Verdict { Separable, Entangled };

inline const char* to_string(Verdict v) {
    return v == Verdict::Separable ? "separable" : "entangled";
}

struct SimonReport {
    Verdict verdict = Verdict::Separable;
    double min_eigenvalue = 0.0;  // of PT(V) + (i/2) Omega
    std::string regime;           // "exact" for 1xn splits, else "necessary-only"
    double tol = 0.0;
    bool boundary = false;  // |min_eigenvalue| <= tol
};

// PPT test on the partially transposed covariance: separable verdict iff
// PT(V) + (i/2) Omega >= -tol. Conclusive in both directions only when one
// party has a single mode; otherwise a pass is necessary, not sufficient,
// and the report says so via `regime`.
inline SimonReport simon_check(const CovarianceMatrix& cov, const PartitionSpec& partition,
                               double tol = -1.0) {
    const auto physical = uncertainty_check(cov);
    if (!physical.passes)
        throw UnphysicalStateError("simon_check: input violates the uncertainty relation "
                                   "(min eigenvalue " +
                                   std::to_string(physical.min_eigenvalue) + ")");
    if (tol < 0.0) tol = default_uncertainty_tol(cov.matrix);
    const auto pt = partial_transpose(cov, partition);
    const auto omega = build_omega(cov.n_modes, cov.ordering);
    const double min_eig = detail::min_eig_uncertainty(pt.matrix, omega.matrix);
    const int nb = static_cast<int>(partition.party_b_modes.size());
    const int na = cov.n_modes - nb;
    SimonReport report;
    report.min_eigenvalue = min_eig;
    report.tol = tol;
    report.verdict = min_eig >= -tol ? Verdict::Separable : Verdict::Entangled;
    report.regime = std::min(na, nb) == 1 ? "exact" : "necessary-only";
    report.boundary = std::abs(min_eig) <= tol;
    return report;
}

}  // namespace gaussmp
