#pragma once

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "gaussmp/errors.hpp"
#include "gaussmp/ordering.hpp"

// Phase-space conventions used throughout this library:
//
//   hbar = 1, and covariances are symmetrized second moments with the 1/2,
//   V_ab = <{Dxi_a, Dxi_b}>/2, so the vacuum has V = I/2 and the
//   uncertainty relation reads V + (i/2) Omega >= 0.
//
// Canonical internal storage is the Interleaved ordering; BlockQP and
// PaperBipartite are views obtained through reorder().

namespace gaussmp {

// Antisymmetric matrix Omega encoding [xi_a, xi_b] = i Omega_ab.
// Entries are exactly 0 or +-1, so Omega^T = -Omega and Omega^2 = -I hold
// with zero floating-point error.
struct SymplecticForm {
    int n_modes = 0;
    Eigen::MatrixXd matrix;
    QuadratureOrdering ordering = QuadratureOrdering::Interleaved;
};

inline SymplecticForm build_omega(int n_modes, QuadratureOrdering ordering) {
    if (n_modes < 1) throw Error("build_omega: n_modes must be >= 1");
    const int dim = 2 * n_modes;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    switch (ordering) {
        case QuadratureOrdering::Interleaved:
            // block-diagonal with N copies of J = [[0,1],[-1,0]]
            for (int k = 0; k < n_modes; ++k) {
                m(2 * k, 2 * k + 1) = 1.0;
                m(2 * k + 1, 2 * k) = -1.0;
            }
            break;
        case QuadratureOrdering::BlockQP:
        case QuadratureOrdering::PaperBipartite:
            // [[0, I], [-I, 0]]; PaperBipartite lists modes in the same order
            // in its q and p halves, so the matrix is partition-independent.
            for (int k = 0; k < n_modes; ++k) {
                m(k, n_modes + k) = 1.0;
                m(n_modes + k, k) = -1.0;
            }
            break;
    }
    return SymplecticForm{n_modes, std::move(m), ordering};
}

struct CovarianceMatrix {
    int n_modes = 0;
    Eigen::MatrixXd matrix;  // real symmetric 2N x 2N, natural units
    QuadratureOrdering ordering = QuadratureOrdering::Interleaved;

    // Symmetrizes (M + M^T)/2. Rejects matrices whose asymmetry exceeds
    // 1e-8 * max|M| and matrices with non-finite entries. The symmetrized
    // copy is what gets stored, so |V_ab - V_ba| = 0 afterwards.
    static CovarianceMatrix from_matrix(const Eigen::MatrixXd& M, QuadratureOrdering ordering,
                                        double* max_asymmetry_out = nullptr) {
        if (M.rows() != M.cols() || M.rows() < 2 || M.rows() % 2 != 0)
            throw DimensionError("covariance matrix must be square 2Nx2N");
        if (!M.allFinite()) throw Error("covariance matrix has non-finite entries");
        const double scale = M.cwiseAbs().maxCoeff();
        const double asym = (M - M.transpose()).cwiseAbs().maxCoeff();
        if (max_asymmetry_out) *max_asymmetry_out = asym;
        if (asym > 1e-8 * std::max(scale, 1e-300))
            throw Error("matrix asymmetry " + std::to_string(asym) +
                        " exceeds tolerance; refusing to symmetrize");
        Eigen::MatrixXd sym = 0.5 * (M + M.transpose());
        return CovarianceMatrix{static_cast<int>(M.rows()) / 2, std::move(sym), ordering};
    }
};

// Real 2N x 2N matrix expected to satisfy S^T Omega S = Omega.
struct SymplecticMatrix {
    Eigen::MatrixXd matrix;
    QuadratureOrdering ordering = QuadratureOrdering::Interleaved;
};

inline bool is_symplectic(const SymplecticMatrix& s, double tol) {
    const auto& S = s.matrix;
    if (S.rows() != S.cols() || S.rows() % 2 != 0)
        throw DimensionError("is_symplectic: dimension must be even");
    const auto omega = build_omega(static_cast<int>(S.rows()) / 2, s.ordering);
    const double defect = (S.transpose() * omega.matrix * S - omega.matrix).cwiseAbs().maxCoeff();
    return defect <= tol;
}

struct UncertaintyReport {
    double min_eigenvalue = 0.0;
    bool passes = false;
    double tol = 0.0;
};

// Scale-aware default pass threshold for the uncertainty relation.
inline double default_uncertainty_tol(const Eigen::MatrixXd& V) {
    return 1e-9 * std::max(1.0, V.cwiseAbs().maxCoeff());
}

namespace detail {

// Smallest eigenvalue of the Hermitian matrix V + (i/2) Omega, computed via
// the real-symmetric embedding [[V, -Omega/2], [Omega/2, V]]. The embedding's
// spectrum is the spectrum of V + (i/2) Omega doubled, so the minimum over it
// is the desired minimum and only a real symmetric solver is needed.
inline double min_eig_uncertainty(const Eigen::MatrixXd& V, const Eigen::MatrixXd& omega) {
    const Eigen::Index d = V.rows();
    Eigen::MatrixXd embed(2 * d, 2 * d);
    embed.topLeftCorner(d, d) = V;
    embed.topRightCorner(d, d) = -0.5 * omega;
    embed.bottomLeftCorner(d, d) = 0.5 * omega;
    embed.bottomRightCorner(d, d) = V;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(embed, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

}  // namespace detail

// Uncertainty-relation check V + (i/2) Omega >= 0. `tol` < 0 selects the
// scale-aware default. Throws on NaN entries and on inputs whose asymmetry
// exceeds the storage tolerance.
inline UncertaintyReport uncertainty_check(const CovarianceMatrix& V, double tol = -1.0) {
    const auto& M = V.matrix;
    if (!M.allFinite()) throw Error("uncertainty_check: non-finite entries");
    const double scale = std::max(M.cwiseAbs().maxCoeff(), 1e-300);
    if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale)
        throw Error("uncertainty_check: matrix is not symmetric");
    if (tol < 0.0) tol = default_uncertainty_tol(M);
    const auto omega = build_omega(V.n_modes, V.ordering);
    const double min_eig = detail::min_eig_uncertainty(M, omega.matrix);
    return UncertaintyReport{min_eig, min_eig >= -tol, tol};
}

}  // namespace gaussmp
