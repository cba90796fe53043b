#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gaussmp/errors.hpp"
#include "gaussmp/expm.hpp"
#include "gaussmp/ordering.hpp"
#include "gaussmp/rng.hpp"
#include "gaussmp/symplectic.hpp"

namespace gaussmp {

// Gaussian state at the covariance level: second moments plus a mean vector.
// Constructors in this header always produce states that pass validate() at
// the default tolerance. `kind`/`params`/`seed` record how the state was
// generated and travel with it through serialization.
struct GaussianState {
    CovarianceMatrix cov;
    Eigen::VectorXd mean;
    int n_modes = 0;
    std::string kind;
    std::vector<double> params;
    std::optional<std::uint64_t> seed;
};

inline UncertaintyReport validate(const GaussianState& state, double tol = -1.0) {
    return uncertainty_check(state.cov, tol);
}

namespace detail {

inline GaussianState make_state(Eigen::MatrixXd cov_matrix, std::string kind,
                                std::vector<double> params,
                                std::optional<std::uint64_t> seed = std::nullopt) {
    const int n_modes = static_cast<int>(cov_matrix.rows()) / 2;
    GaussianState s{
        CovarianceMatrix{n_modes, std::move(cov_matrix), QuadratureOrdering::Interleaved},
        Eigen::VectorXd::Zero(2 * n_modes), n_modes, std::move(kind), std::move(params), seed};
    return s;
}

}  // namespace detail

inline GaussianState vacuum(int n_modes) {
    if (n_modes < 1) throw Error("vacuum: n_modes must be >= 1");
    return detail::make_state(0.5 * Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes),
                              "vacuum", {});
}

// Product of thermal modes: per-mode diagonal block (nbar_k + 1/2) I_2.
inline GaussianState thermal(const std::vector<double>& occupations) {
    if (occupations.empty()) throw Error("thermal: at least one occupation required");
    for (double nbar : occupations)
        if (!(nbar >= 0.0)) throw Error("thermal: occupations must be >= 0");
    const int n = static_cast<int>(occupations.size());
    Eigen::MatrixXd V = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int k = 0; k < n; ++k) {
        V(2 * k, 2 * k) = occupations[k] + 0.5;
        V(2 * k + 1, 2 * k + 1) = occupations[k] + 0.5;
    }
    return detail::make_state(std::move(V), "thermal", occupations);
}

// Two-mode squeezed vacuum with squeezing r_sq >= 0, partition A|B =
// mode 0 | mode 1. In the interleaved ordering
//   V = (1/2) [[cosh(2r) I2, sinh(2r) Z], [sinh(2r) Z, cosh(2r) I2]],
// Z = diag(1, -1). Pure, so det(2V) = 1 and the state sits exactly on the
// uncertainty boundary.
inline GaussianState two_mode_squeezed(double r_sq) {
    if (!(r_sq >= 0.0)) throw Error("two_mode_squeezed: r_sq must be >= 0");
    const double c = 0.5 * std::cosh(2.0 * r_sq);
    const double s = 0.5 * std::sinh(2.0 * r_sq);
    Eigen::MatrixXd V = Eigen::MatrixXd::Zero(4, 4);
    V(0, 0) = V(1, 1) = V(2, 2) = V(3, 3) = c;
    V(0, 2) = V(2, 0) = s;
    V(1, 3) = V(3, 1) = -s;
    return detail::make_state(std::move(V), "two_mode_squeezed", {r_sq});
}

// Random symplectic via S = exp(Omega A): A is symmetric with i.i.d. standard
// normal entries (upper triangle filled row-major, then mirrored) scaled by
// 1/sqrt(2N). The scaling keeps squeezing moderate so downstream spectra stay
// comfortably inside double precision.
inline SymplecticMatrix random_symplectic(int n_modes, std::uint64_t seed) {
    if (n_modes < 1) throw Error("random_symplectic: n_modes must be >= 1");
    const int dim = 2 * n_modes;
    NormalSampler rng(seed);
    Eigen::MatrixXd A(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j) {
            const double g = rng.normal();
            A(i, j) = g;
            A(j, i) = g;
        }
    A /= std::sqrt(static_cast<double>(dim));
    const auto omega = build_omega(n_modes, QuadratureOrdering::Interleaved);
    return SymplecticMatrix{matrix_exponential(omega.matrix * A),
                            QuadratureOrdering::Interleaved};
}

// Pure random state: V = (1/2) S S^T, so det(2V) = det(S)^2 = 1.
inline GaussianState random_pure(int n_modes, std::uint64_t seed) {
    const auto S = random_symplectic(n_modes, seed);
    Eigen::MatrixXd V = 0.5 * (S.matrix * S.matrix.transpose());
    V = 0.5 * (V + V.transpose());
    return detail::make_state(std::move(V), "random_pure",
                              {static_cast<double>(n_modes)}, seed);
}

// Pure random state plus isotropic classical noise nu >= 0. Adding nu*I can
// only raise the spectrum of V + (i/2)Omega, so physicality is preserved for
// every nu.
inline GaussianState random_mixed(int n_modes, std::uint64_t seed, double nu) {
    if (!(nu >= 0.0)) throw Error("random_mixed: nu must be >= 0");
    auto state = random_pure(n_modes, seed);
    state.cov.matrix += nu * Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
    state.kind = "random_mixed";
    state.params = {nu};
    return state;
}

// Direct sum of an independent random_mixed covariance per party, modes
// 0..n-1 forming party A and n..2n-1 party B. Separable across A|B by
// construction; the AB cross blocks are exactly zero.
inline GaussianState separable_product(int n_modes_per_party, std::uint64_t seed,
                                       double nu = 0.25) {
    if (n_modes_per_party < 1) throw Error("separable_product: need >= 1 mode per party");
    const auto a = random_mixed(n_modes_per_party, derive_seed(seed, 0), nu);
    const auto b = random_mixed(n_modes_per_party, derive_seed(seed, 1), nu);
    const int half = 2 * n_modes_per_party;
    Eigen::MatrixXd V = Eigen::MatrixXd::Zero(2 * half, 2 * half);
    V.topLeftCorner(half, half) = a.cov.matrix;
    V.bottomRightCorner(half, half) = b.cov.matrix;
    return detail::make_state(std::move(V), "separable_product", {nu}, seed);
}

enum class EnsembleKind { SeparableProduct, RandomPure, RandomMixed, TwoModeSqueezed };

inline const char* to_string(EnsembleKind k) {
    switch (k) {
        case EnsembleKind::SeparableProduct: return "separable_product";
        case EnsembleKind::RandomPure: return "random_pure";
        case EnsembleKind::RandomMixed: return "random_mixed";
        case EnsembleKind::TwoModeSqueezed: return "two_mode_squeezed";
    }
    return "?";
}

struct EnsembleParams {
    double r_sq_min = 1.0;  // TwoModeSqueezed: squeezing drawn uniformly
    double r_sq_max = 1.0;  //   from [r_sq_min, r_sq_max] per state
    double nu = 0.25;       // RandomMixed / SeparableProduct mixing noise
};

// Deterministic family of bipartite states. State i is generated from
// derive_seed(seed, i), so members are independent of generation order.
struct EnsembleSpec {
    int n_states = 1;
    int n_modes_per_party = 1;
    EnsembleKind kind = EnsembleKind::SeparableProduct;
    std::uint64_t seed = 0;
    EnsembleParams params;

    int total_modes() const { return 2 * n_modes_per_party; }

    PartitionSpec natural_partition() const {
        return PartitionSpec::last_modes(total_modes(), n_modes_per_party);
    }

    GaussianState generate(int index) const {
        if (n_states < 1) throw Error("ensemble: n_states must be >= 1");
        if (n_modes_per_party < 1) throw Error("ensemble: n_modes_per_party must be >= 1");
        if (index < 0 || index >= n_states) throw Error("ensemble: index out of range");
        const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(index));
        switch (kind) {
            case EnsembleKind::SeparableProduct: {
                auto st = separable_product(n_modes_per_party, s, params.nu);
                st.seed = s;
                return st;
            }
            case EnsembleKind::RandomPure: {
                auto st = random_pure(total_modes(), s);
                st.seed = s;
                return st;
            }
            case EnsembleKind::RandomMixed: {
                auto st = random_mixed(total_modes(), s, params.nu);
                st.seed = s;
                return st;
            }
            case EnsembleKind::TwoModeSqueezed: {
                if (n_modes_per_party != 1)
                    throw Error("two_mode_squeezed ensembles need exactly 1 mode per party");
                if (!(params.r_sq_min >= 0.0) || params.r_sq_max < params.r_sq_min)
                    throw Error("ensemble: need 0 <= r_sq_min <= r_sq_max");
                NormalSampler rng(s);
                const double r = params.r_sq_min == params.r_sq_max
                                     ? params.r_sq_min
                                     : rng.uniform(params.r_sq_min, params.r_sq_max);
                auto st = two_mode_squeezed(r);
                st.seed = s;
                return st;
            }
        }
        throw Error("ensemble: unknown kind");
    }
};

}  // namespace gaussmp
