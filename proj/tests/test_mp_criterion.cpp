#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "gaussmp/io.hpp"
#include "gaussmp/mp_criterion.hpp"
#include "gaussmp/ppt.hpp"
#include "gaussmp/states.hpp"

using namespace gaussmp;

namespace {

const PartitionSpec kSplit{{1}};

MPCriterionConfig config_with(BoundSource src, double tol = 0.0,
                              Normalization norm = Normalization::MeanOne) {
    MPCriterionConfig c;
    c.bound_source = src;
    c.support_tol = tol;
    c.normalization = norm;
    return c;
}

}  // namespace

TEST_CASE("support bounds come from the configured source", "[mp_criterion]") {
    const auto formula = support_bounds(config_with(BoundSource::FormulaBounds));
    REQUIRE(formula.first == Catch::Approx(1.5 - std::sqrt(2.0)).margin(1e-15));
    REQUIRE(formula.second == Catch::Approx(1.5 + std::sqrt(2.0)).margin(1e-15));

    const auto paper = support_bounds(config_with(BoundSource::PaperNumericBounds));
    REQUIRE(paper.first == Catch::Approx(3.0 - 2.0 * std::sqrt(2.0)).margin(1e-15));
    REQUIRE(paper.second == Catch::Approx(3.0 + 2.0 * std::sqrt(2.0)).margin(1e-15));
}

TEST_CASE("config validation rejects bad ratio and tolerance", "[mp_criterion]") {
    MPCriterionConfig bad_r;
    bad_r.r = 1.5;
    REQUIRE_THROWS_AS(mp_separability_check(vacuum(2), kSplit, bad_r), Error);

    MPCriterionConfig bad_tol;
    bad_tol.support_tol = -0.1;
    REQUIRE_THROWS_AS(mp_separability_check(vacuum(2), kSplit, bad_tol), Error);
}

TEST_CASE("vacuum normalizes to all-ones and passes", "[mp_criterion]") {
    const auto verdict = mp_separability_check(vacuum(2), kSplit);
    REQUIRE(verdict.verdict == Verdict::Separable);
    REQUIRE(verdict.support_violations.empty());
    REQUIRE(verdict.eigenvalues_raw.size() == 4);
    for (double x : verdict.eigenvalues_raw) REQUIRE(x == Catch::Approx(0.5).margin(1e-12));
    for (double x : verdict.eigenvalues_normalized)
        REQUIRE(x == Catch::Approx(1.0).margin(1e-15));
    REQUIRE(verdict.n_modes == 2);
    REQUIRE(verdict.ks_distance >= 0.0);
    REQUIRE(verdict.ks_distance <= 1.0);
}

TEST_CASE("vacuum also passes without normalization", "[mp_criterion]") {
    // Raw vacuum eigenvalues are 1/2, inside [0.0858, 2.9142] as they stand.
    const auto verdict = mp_separability_check(
        vacuum(2), kSplit, config_with(BoundSource::FormulaBounds, 0.0, Normalization::None));
    REQUIRE(verdict.verdict == Verdict::Separable);
    for (double x : verdict.eigenvalues_normalized)
        REQUIRE(x == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("strong TMSV violates the lower edge under both bound sources", "[mp_criterion]") {
    const auto state = two_mode_squeezed(2.0);
    const double low = std::exp(-4.0) / std::cosh(4.0);   // normalized small eigenvalue
    const double high = std::exp(4.0) / std::cosh(4.0);   // normalized large eigenvalue

    for (auto src : {BoundSource::FormulaBounds, BoundSource::PaperNumericBounds}) {
        const auto verdict = mp_separability_check(state, kSplit, config_with(src));
        REQUIRE(verdict.verdict == Verdict::Entangled);
        REQUIRE(verdict.support_violations.size() == 2);  // the two small eigenvalues
        for (const auto& v : verdict.support_violations) {
            REQUIRE(v.value == Catch::Approx(low).margin(1e-12));
            REQUIRE(v.value < verdict.bound_lo);
            REQUIRE(v.distance == Catch::Approx(verdict.bound_lo - v.value).margin(1e-12));
        }
        REQUIRE(verdict.support_violations[0].index == 0);
        REQUIRE(verdict.support_violations[1].index == 1);
        // the large pair stays inside: no upper-edge violation under either source
        REQUIRE(verdict.eigenvalues_normalized[3] == Catch::Approx(high).margin(1e-12));
        REQUIRE(verdict.eigenvalues_normalized[3] < verdict.bound_hi);
    }
}

TEST_CASE("unnormalized strong TMSV violates both edges", "[mp_criterion]") {
    const auto verdict = mp_separability_check(
        two_mode_squeezed(2.0), kSplit,
        config_with(BoundSource::FormulaBounds, 0.0, Normalization::None));
    REQUIRE(verdict.verdict == Verdict::Entangled);
    // raw spectrum {e^{-4}/2 x2, e^{4}/2 x2} escapes below and above
    REQUIRE(verdict.support_violations.size() == 4);
}

TEST_CASE("enlarging the tolerance never flips separable to entangled", "[mp_criterion]") {
    const auto state = two_mode_squeezed(2.0);
    bool was_separable = false;
    for (double tol : {0.0, 0.01, 0.1}) {
        const auto verdict = mp_separability_check(
            state, kSplit, config_with(BoundSource::FormulaBounds, tol));
        const bool separable = verdict.verdict == Verdict::Separable;
        if (was_separable) REQUIRE(separable);
        was_separable = separable;
    }
}

TEST_CASE("mean-one normalization is idempotent", "[mp_criterion]") {
    const auto first = mp_separability_check(two_mode_squeezed(1.0), kSplit);
    double mean = 0.0;
    for (double x : first.eigenvalues_normalized) mean += x;
    mean /= static_cast<double>(first.eigenvalues_normalized.size());
    REQUIRE(mean == Catch::Approx(1.0).margin(1e-12));

    const auto again =
        detail::mp_support_verdict(first.eigenvalues_normalized, first.config);
    for (std::size_t i = 0; i < again.eigenvalues_normalized.size(); ++i)
        REQUIRE(again.eigenvalues_normalized[i] ==
                Catch::Approx(first.eigenvalues_normalized[i]).margin(1e-12));
    REQUIRE(again.verdict == first.verdict);
}

TEST_CASE("trace-dim normalization is the mean-one map under another name",
          "[mp_criterion]") {
    const auto state = two_mode_squeezed(1.3);
    const auto mean_one = mp_separability_check(
        state, kSplit, config_with(BoundSource::FormulaBounds, 0.0, Normalization::MeanOne));
    const auto trace_dim = mp_separability_check(
        state, kSplit, config_with(BoundSource::FormulaBounds, 0.0, Normalization::TraceDim));
    REQUIRE(mean_one.verdict == trace_dim.verdict);
    REQUIRE(mean_one.eigenvalues_normalized == trace_dim.eigenvalues_normalized);
    REQUIRE(mean_one.ks_distance == trace_dim.ks_distance);
}

TEST_CASE("identical inputs give byte-identical verdicts", "[mp_criterion]") {
    const auto state = two_mode_squeezed(0.7);
    const auto a = mp_separability_check(state, kSplit);
    const auto b = mp_separability_check(state, kSplit);
    REQUIRE(mp_verdict_to_json(a) == mp_verdict_to_json(b));
}

TEST_CASE("the PT spectrum equals the input spectrum, so both give one verdict",
          "[mp_criterion]") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto state = random_mixed(2, derive_seed(888, seed), 0.15);
        const auto pt = partial_transpose(state.cov, kSplit);
        const auto on_v = detail::mp_support_verdict(
            detail::symmetric_spectrum(state.cov.matrix), MPCriterionConfig{});
        const auto on_pt = detail::mp_support_verdict(
            detail::symmetric_spectrum(pt.matrix), MPCriterionConfig{});
        for (std::size_t i = 0; i < on_v.eigenvalues_raw.size(); ++i)
            REQUIRE(on_v.eigenvalues_raw[i] ==
                    Catch::Approx(on_pt.eigenvalues_raw[i]).margin(1e-10));
        REQUIRE(on_v.verdict == on_pt.verdict);
    }
}

TEST_CASE("unphysical covariance matrices are rejected", "[mp_criterion]") {
    const CovarianceMatrix quarter{2, 0.25 * Eigen::MatrixXd::Identity(4, 4),
                                   QuadratureOrdering::Interleaved};
    REQUIRE_THROWS_AS(mp_separability_check(quarter, kSplit), UnphysicalStateError);
}

TEST_CASE("compare_criteria tabulates verdict pairs over an ensemble", "[mp_criterion]") {
    EnsembleSpec sep;
    sep.n_states = 50;
    sep.n_modes_per_party = 1;
    sep.kind = EnsembleKind::SeparableProduct;
    sep.seed = 101;

    const auto report = compare_criteria(sep, sep.natural_partition());
    REQUIRE(report.records.size() == 50);
    REQUIRE(report.n_simon_ent_mp_sep + report.n_simon_ent_mp_ent == 0);
    REQUIRE(report.n_simon_sep_mp_sep + report.n_simon_sep_mp_ent == 50);
    for (const auto& rec : report.records) {
        REQUIRE(rec.simon == Verdict::Separable);
        REQUIRE(rec.kind == "separable_product");
    }
    for (std::size_t i = 1; i < report.records.size(); ++i)
        REQUIRE(report.records[i - 1].seed <= report.records[i].seed);

    const int agree = report.n_simon_sep_mp_sep + report.n_simon_ent_mp_ent;
    REQUIRE(report.agreement_rate ==
            Catch::Approx(agree / 50.0).margin(1e-15));
    REQUIRE(report.disagreeing_seeds.size() ==
            static_cast<std::size_t>(report.n_simon_sep_mp_ent +
                                     report.n_simon_ent_mp_sep));
}

TEST_CASE("compare_criteria sees TMSV ensembles as entangled under Simon",
          "[mp_criterion]") {
    EnsembleSpec tmsv;
    tmsv.n_states = 50;
    tmsv.n_modes_per_party = 1;
    tmsv.kind = EnsembleKind::TwoModeSqueezed;
    tmsv.seed = 202;
    tmsv.params.r_sq_min = 0.5;
    tmsv.params.r_sq_max = 2.0;

    const auto report = compare_criteria(tmsv, tmsv.natural_partition());
    REQUIRE(report.n_simon_sep_mp_sep + report.n_simon_sep_mp_ent == 0);
    for (const auto& rec : report.records) REQUIRE(rec.simon == Verdict::Entangled);
}

TEST_CASE("spectrum_report emits a normalized histogram and a density grid",
          "[mp_criterion]") {
    const auto state = two_mode_squeezed(1.0);
    const auto report = spectrum_report(state.cov, kSplit, MPCriterionConfig{}, 0, 128);
    const auto params = MPParams::from_ratio(0.5);

    REQUIRE(report.grid.size() == 128);
    REQUIRE(report.density.size() == 128);
    REQUIRE(report.grid.front() == 0.0);
    REQUIRE(report.grid.back() == Catch::Approx(params.b + 0.5).margin(1e-12));
    for (std::size_t i = 0; i < report.grid.size(); ++i)
        REQUIRE(report.density[i] == mp_pdf(report.grid[i], params));

    double mass = 0.0;
    for (std::size_t k = 0; k < report.histogram.densities.size(); ++k)
        mass += report.histogram.densities[k] *
                (report.histogram.bin_edges[k + 1] - report.histogram.bin_edges[k]);
    REQUIRE(mass == Catch::Approx(1.0).margin(1e-9));

    const auto direct = mp_separability_check(state, kSplit);
    REQUIRE(report.ks_distance == direct.ks_distance);
}

TEST_CASE("spectrum_report of the vacuum is a single occupied bin", "[mp_criterion]") {
    const auto report = spectrum_report(vacuum(2).cov, kSplit);
    REQUIRE(report.histogram.densities.size() == 1);
    REQUIRE(report.histogram.densities[0] > 0.0);
}
