#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include <Eigen/Dense>

#include "gaussmp/ordering.hpp"
#include "gaussmp/ppt.hpp"
#include "gaussmp/states.hpp"
#include "gaussmp/symplectic.hpp"

#include "oracles.hpp"

using namespace gaussmp;

namespace {

std::vector<double> spectrum(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    return {solver.eigenvalues().data(),
            solver.eigenvalues().data() + solver.eigenvalues().size()};
}

}  // namespace

TEST_CASE("mirror map flips exactly the party-B momentum slots", "[ppt]") {
    const auto interleaved =
        mirror_matrix(2, PartitionSpec{{1}}, QuadratureOrdering::Interleaved);
    Eigen::VectorXd expected(4);
    expected << 1, 1, 1, -1;
    REQUIRE(interleaved.diagonal == expected);

    const auto block = mirror_matrix(2, PartitionSpec{{1}}, QuadratureOrdering::BlockQP);
    REQUIRE(block.diagonal == expected);  // (q0, q1, p0, p1): p1 is slot 3 here too

    const auto wide =
        mirror_matrix(4, PartitionSpec{{2, 3}}, QuadratureOrdering::Interleaved);
    Eigen::VectorXd expected8 = Eigen::VectorXd::Ones(8);
    expected8(5) = -1;
    expected8(7) = -1;
    REQUIRE(wide.diagonal == expected8);
}

TEST_CASE("mirror map rejects degenerate partitions", "[ppt]") {
    REQUIRE_THROWS_AS(mirror_matrix(2, PartitionSpec{{}}), DimensionError);
    REQUIRE_THROWS_AS(mirror_matrix(2, PartitionSpec{{0, 1}}), DimensionError);
    REQUIRE_THROWS_AS(mirror_matrix(2, PartitionSpec{{5}}), DimensionError);
}

TEST_CASE("partial transpose is an exact involution", "[ppt]") {
    const PartitionSpec partition{{1}};
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto state = random_mixed(2, derive_seed(404, seed), 0.2);
        const auto once = partial_transpose(state.cov, partition);
        const auto twice = partial_transpose(once, partition);
        REQUIRE(twice.matrix == state.cov.matrix);  // sign flips cancel bitwise
    }
}

TEST_CASE("partial transpose of TMSV flips the qp cross signs", "[ppt]") {
    const double r = 0.9;
    const auto state = two_mode_squeezed(r);
    const auto pt = partial_transpose(state.cov, PartitionSpec{{1}});
    // Exactly the (1,3)/(3,1) entries change sign; everything else is
    // carried over bitwise.
    Eigen::MatrixXd expected = state.cov.matrix;
    expected(1, 3) = -expected(1, 3);
    expected(3, 1) = -expected(3, 1);
    REQUIRE(pt.matrix == expected);
    const double c = 0.5 * std::cosh(2.0 * r);
    const double s = 0.5 * std::sinh(2.0 * r);
    REQUIRE(pt.matrix(0, 0) == Catch::Approx(c).margin(1e-14));
    REQUIRE(pt.matrix(0, 2) == Catch::Approx(s).margin(1e-14));
    REQUIRE(pt.matrix(1, 3) == Catch::Approx(s).margin(1e-14));

    // and the PT spectrum is {cosh +- sinh}/2 = {e^{2r}, e^{-2r}}/2, twice each
    const auto eigs = spectrum(pt.matrix);
    REQUIRE(eigs[0] == Catch::Approx(0.5 * std::exp(-2.0 * r)).epsilon(1e-12));
    REQUIRE(eigs[1] == Catch::Approx(0.5 * std::exp(-2.0 * r)).epsilon(1e-12));
    REQUIRE(eigs[2] == Catch::Approx(0.5 * std::exp(2.0 * r)).epsilon(1e-12));
    REQUIRE(eigs[3] == Catch::Approx(0.5 * std::exp(2.0 * r)).epsilon(1e-12));
}

TEST_CASE("mirror conjugation preserves the eigenvalue multiset", "[ppt]") {
    const PartitionSpec partition{{1}};
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto state = random_mixed(2, derive_seed(505, seed), 0.1);
        const auto pt = partial_transpose(state.cov, partition);
        const auto before = spectrum(state.cov.matrix);
        const auto after = spectrum(pt.matrix);
        for (std::size_t i = 0; i < before.size(); ++i)
            REQUIRE(after[i] == Catch::Approx(before[i]).margin(1e-10));
    }
}

TEST_CASE("block_transpose transposes each 2x2 block in place", "[ppt]") {
    Eigen::MatrixXd m(4, 4);
    int v = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = v++;
    const auto bt = block_transpose(m);
    for (int bi = 0; bi < 2; ++bi)
        for (int bj = 0; bj < 2; ++bj)
            REQUIRE(bt.block<2, 2>(2 * bi, 2 * bj) ==
                    m.block<2, 2>(2 * bi, 2 * bj).transpose().eval());

    REQUIRE(block_transpose(bt) == m);  // involution
    REQUIRE_THROWS_AS(block_transpose(Eigen::MatrixXd::Zero(3, 3)), DimensionError);
}

TEST_CASE("block_transpose keeps symmetric matrices symmetric", "[ppt]") {
    const auto state = random_mixed(2, 606, 0.3);
    const auto bt = block_transpose(state.cov.matrix);
    REQUIRE(bt == bt.transpose().eval());
}

TEST_CASE("simon_check flags TMSV as entangled with the closed-form margin", "[ppt]") {
    const PartitionSpec partition{{1}};
    for (double r : {0.1, 0.5, 1.0, 2.0}) {
        const auto state = two_mode_squeezed(r);
        const auto report = simon_check(state.cov, partition);
        REQUIRE(report.verdict == Verdict::Entangled);
        REQUIRE(report.regime == "exact");
        const double expected = 0.5 * (std::exp(-2.0 * r) - 1.0);
        REQUIRE(report.min_eigenvalue == Catch::Approx(expected).margin(1e-9));

        const auto pt = partial_transpose(state.cov, partition);
        const auto omega = build_omega(2, QuadratureOrdering::Interleaved);
        const double oracle = oracles::min_eig_hermitian(pt.matrix, omega.matrix);
        REQUIRE(report.min_eigenvalue == Catch::Approx(oracle).margin(1e-10));
    }
}

TEST_CASE("simon_check passes product and vacuum states", "[ppt]") {
    const PartitionSpec partition{{1}};
    const auto vac = simon_check(vacuum(2).cov, partition);
    REQUIRE(vac.verdict == Verdict::Separable);
    REQUIRE(vac.boundary);  // vacuum saturates the PT uncertainty bound

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto state = separable_product(1, derive_seed(707, seed));
        const auto report = simon_check(state.cov, partition);
        REQUIRE(report.verdict == Verdict::Separable);
    }

    const auto th = simon_check(thermal({0.5, 2.0}).cov, partition);
    REQUIRE(th.verdict == Verdict::Separable);
}

TEST_CASE("simon_check reports the conclusiveness regime", "[ppt]") {
    const auto one_vs_two = simon_check(vacuum(3).cov, PartitionSpec{{2}});
    REQUIRE(one_vs_two.regime == "exact");
    const auto two_vs_two = simon_check(vacuum(4).cov, PartitionSpec{{2, 3}});
    REQUIRE(two_vs_two.regime == "necessary-only");
}

TEST_CASE("simon_check rejects unphysical input", "[ppt]") {
    const CovarianceMatrix quarter{2, 0.25 * Eigen::MatrixXd::Identity(4, 4),
                                   QuadratureOrdering::Interleaved};
    REQUIRE_THROWS_AS(simon_check(quarter, PartitionSpec{{1}}), UnphysicalStateError);
}

TEST_CASE("simon_check is ordering-covariant", "[ppt]") {
    const PartitionSpec partition{{1}};
    const auto state = two_mode_squeezed(1.0);
    const auto interleaved = simon_check(state.cov, partition);

    const auto reordered = reorder(state.cov.matrix, QuadratureOrdering::Interleaved,
                                   QuadratureOrdering::BlockQP);
    const CovarianceMatrix block{2, reordered, QuadratureOrdering::BlockQP};
    const auto block_report = simon_check(block, partition);

    REQUIRE(block_report.verdict == interleaved.verdict);
    REQUIRE(block_report.min_eigenvalue ==
            Catch::Approx(interleaved.min_eigenvalue).margin(1e-12));
}
