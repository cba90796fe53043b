// Command-line front end: state generation, separability checks, Wishart
// sampling, criterion comparison, and spectrum reports.
//
// Exit codes: 0 = success (or verdict "separable" for `check`),
//             1 = verdict "entangled" (`check` only),
//             2 = any error.
// stdout carries machine-readable payload only; diagnostics go to stderr.

#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gaussmp/gaussmp.hpp"

namespace {

using namespace gaussmp;

constexpr int kExitSeparable = 0;
constexpr int kExitEntangled = 1;
constexpr int kExitError = 2;

// Tolerance precedence: explicit flag > GAUSSMP_DEFAULT_TOL env var > built-in.
double resolve_tol(bool flag_given, double flag_value, double built_in) {
    if (flag_given) return flag_value;
    if (const char* env = std::getenv("GAUSSMP_DEFAULT_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && *end == '\0') return v;
        std::cerr << "warning: ignoring unparseable GAUSSMP_DEFAULT_TOL='" << env << "'\n";
    }
    return built_in;
}

PartitionSpec parse_partition(const std::string& text, int n_modes) {
    PartitionSpec partition;
    if (text.empty()) {
        // Default split: the last floor(N/2) modes form party B.
        if (n_modes < 2) throw Error("cannot bipartition a single-mode state");
        return PartitionSpec::last_modes(n_modes, n_modes / 2);
    }
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string token =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            std::size_t used = 0;
            const int mode = std::stoi(token, &used);
            if (used != token.size()) throw std::invalid_argument(token);
            partition.party_b_modes.insert(mode);
        } catch (const std::exception&) {
            throw Error("bad --partition entry '" + token + "': expected mode indices");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (!partition.valid_for(n_modes))
        throw Error("--partition must name a non-empty proper subset of modes 0.." +
                    std::to_string(n_modes - 1));
    return partition;
}

Normalization parse_normalization(const std::string& s) {
    if (s == "none") return Normalization::None;
    if (s == "mean-one") return Normalization::MeanOne;
    if (s == "trace-dim") return Normalization::TraceDim;
    throw Error("unknown --normalization '" + s + "'");
}

BoundSource parse_bounds(const std::string& s) {
    if (s == "formula") return BoundSource::FormulaBounds;
    if (s == "paper") return BoundSource::PaperNumericBounds;
    throw Error("unknown --bounds '" + s + "'");
}

void emit(const std::string& payload, const std::string& out_path) {
    if (out_path.empty())
        std::cout << payload << "\n";
    else
        write_text_file(out_path, payload + "\n");
}

struct GenFlags {
    std::string kind;
    int modes = 1;
    double r_sq = 1.0;
    double nbar = 0.0;
    double nu = 0.25;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string out;
};

int run_gen(const GenFlags& f) {
    const bool stochastic =
        f.kind == "random_pure" || f.kind == "random_mixed" || f.kind == "separable_product";
    if (stochastic && !f.seed_given)
        throw Error("--seed is required for stochastic kind '" + f.kind + "'");
    GaussianState state;
    if (f.kind == "vacuum") {
        state = vacuum(f.modes);
    } else if (f.kind == "thermal") {
        state = thermal(std::vector<double>(f.modes, f.nbar));
    } else if (f.kind == "tmsv") {
        state = two_mode_squeezed(f.r_sq);
    } else if (f.kind == "random_pure") {
        state = random_pure(f.modes, f.seed);
    } else if (f.kind == "random_mixed") {
        state = random_mixed(f.modes, f.seed, f.nu);
    } else if (f.kind == "separable_product") {
        state = separable_product(f.modes, f.seed, f.nu);
    } else {
        throw Error("unknown state kind '" + f.kind + "'");
    }
    emit(state_to_json(state), f.out);
    return kExitSeparable;
}

struct CheckFlags {
    std::string state_path;
    std::string criterion = "simon";
    std::string partition;
    double r = 0.5;
    std::string normalization = "mean-one";
    std::string bounds = "formula";
    double tol = 0.0;
    bool tol_given = false;
    std::string out;
};

int run_check(const CheckFlags& f) {
    const auto state = load_state(f.state_path);
    const auto partition = parse_partition(f.partition, state.n_modes);
    if (f.criterion == "simon") {
        const double tol = resolve_tol(f.tol_given, f.tol, -1.0);
        const auto report = simon_check(state.cov, partition, tol);
        const auto payload = simon_report_to_json(report);
        std::cout << payload << "\n";
        if (!f.out.empty()) write_text_file(f.out, payload + "\n");
        return report.verdict == Verdict::Separable ? kExitSeparable : kExitEntangled;
    }
    if (f.criterion == "mp") {
        MPCriterionConfig config;
        config.r = f.r;
        config.normalization = parse_normalization(f.normalization);
        config.bound_source = parse_bounds(f.bounds);
        config.support_tol = resolve_tol(f.tol_given, f.tol, 0.0);
        const auto verdict = mp_separability_check(state.cov, partition, config);
        const auto payload = mp_verdict_to_json(verdict);
        std::cout << payload << "\n";
        if (!f.out.empty()) write_text_file(f.out, payload + "\n");
        return verdict.verdict == Verdict::Separable ? kExitSeparable : kExitEntangled;
    }
    throw Error("unknown --criterion '" + f.criterion + "' (expected simon or mp)");
}

struct WishartFlags {
    int m = 0;
    int n = 0;
    std::uint64_t seed = 0;
    std::string out;
};

int run_wishart(const WishartFlags& f) {
    const auto sample = sample_wishart(f.m, f.n, f.seed);
    write_text_file(f.out, eigenvalue_csv(sample.eigenvalues));
    const auto params = MPParams::from_ratio(static_cast<double>(f.m) / f.n);
    double mean = 0.0;
    for (double x : sample.eigenvalues) mean += x;
    mean /= static_cast<double>(sample.eigenvalues.size());
    std::string summary = "{";
    summary += "\"m\":" + std::to_string(f.m);
    summary += ",\"n\":" + std::to_string(f.n);
    summary += ",\"seed\":" + std::to_string(f.seed);
    summary += ",\"mean\":" + format_double(mean);
    summary += ",\"min\":" + format_double(sample.eigenvalues.front());
    summary += ",\"max\":" + format_double(sample.eigenvalues.back());
    summary += ",\"ks_distance\":" + format_double(ks_distance(sample, params));
    summary += ",\"out\":" + detail::json_string(f.out);
    summary += "}";
    std::cout << summary << "\n";
    return kExitSeparable;
}

struct CompareFlags {
    std::string kind = "separable_product";
    int n_states = 100;
    int modes = 1;
    std::uint64_t seed = 0;
    double r_sq_min = 0.5;
    double r_sq_max = 2.0;
    double nu = 0.25;
    double r = 0.5;
    std::string normalization = "mean-one";
    std::string bounds = "formula";
    double tol = 0.0;
    bool tol_given = false;
    std::string out;
};

int run_compare(const CompareFlags& f) {
    EnsembleSpec spec;
    spec.n_states = f.n_states;
    spec.n_modes_per_party = f.modes;
    spec.seed = f.seed;
    spec.params.r_sq_min = f.r_sq_min;
    spec.params.r_sq_max = f.r_sq_max;
    spec.params.nu = f.nu;
    if (f.kind == "separable_product")
        spec.kind = EnsembleKind::SeparableProduct;
    else if (f.kind == "tmsv")
        spec.kind = EnsembleKind::TwoModeSqueezed;
    else if (f.kind == "random_pure")
        spec.kind = EnsembleKind::RandomPure;
    else if (f.kind == "random_mixed")
        spec.kind = EnsembleKind::RandomMixed;
    else
        throw Error("unknown ensemble kind '" + f.kind + "'");

    MPCriterionConfig config;
    config.r = f.r;
    config.normalization = parse_normalization(f.normalization);
    config.bound_source = parse_bounds(f.bounds);
    config.support_tol = resolve_tol(f.tol_given, f.tol, 0.0);

    const auto report = compare_criteria(spec, spec.natural_partition(), config);
    emit(agreement_report_to_json(report), f.out);

    std::fprintf(stderr, "%-18s %14s %14s\n", "", "mp separable", "mp entangled");
    std::fprintf(stderr, "%-18s %14d %14d\n", "simon separable", report.n_simon_sep_mp_sep,
                 report.n_simon_sep_mp_ent);
    std::fprintf(stderr, "%-18s %14d %14d\n", "simon entangled", report.n_simon_ent_mp_sep,
                 report.n_simon_ent_mp_ent);
    std::fprintf(stderr, "agreement rate: %.4f over %d states\n", report.agreement_rate,
                 static_cast<int>(report.records.size()));
    return kExitSeparable;
}

struct SpectrumFlags {
    std::string state_path;
    std::string partition;
    double r = 0.5;
    std::string normalization = "mean-one";
    std::string bounds = "formula";
    double tol = 0.0;
    bool tol_given = false;
    int bins = 0;
    int grid_points = 256;
    std::string out_prefix;
};

int run_spectrum(const SpectrumFlags& f) {
    const auto state = load_state(f.state_path);
    const auto partition = parse_partition(f.partition, state.n_modes);
    MPCriterionConfig config;
    config.r = f.r;
    config.normalization = parse_normalization(f.normalization);
    config.bound_source = parse_bounds(f.bounds);
    config.support_tol = resolve_tol(f.tol_given, f.tol, 0.0);
    const auto report = spectrum_report(state.cov, partition, config, f.bins, f.grid_points);

    const std::string hist_path = f.out_prefix + "_hist.csv";
    const std::string mp_path = f.out_prefix + "_mp.csv";
    write_text_file(hist_path, histogram_csv(report.histogram));
    write_text_file(mp_path, curve_csv(report.grid, report.density));

    std::string summary = "{";
    summary += "\"ks_distance\":" + format_double(report.ks_distance);
    summary += ",\"bounds\":[" + format_double(report.bound_lo) + "," +
               format_double(report.bound_hi) + "]";
    summary += ",\"histogram_csv\":" + detail::json_string(hist_path);
    summary += ",\"density_csv\":" + detail::json_string(mp_path);
    summary += "}";
    std::cout << summary << "\n";
    return kExitSeparable;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian-state separability and spectral statistics toolkit"};
    app.require_subcommand(1);

    GenFlags gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a state file");
    gen_cmd->add_option("kind", gen.kind,
                        "vacuum|thermal|tmsv|random_pure|random_mixed|separable_product")
        ->required();
    gen_cmd->add_option("--modes", gen.modes,
                        "mode count (per party for separable_product)");
    gen_cmd->add_option("--r", gen.r_sq, "tmsv squeezing parameter");
    gen_cmd->add_option("--nbar", gen.nbar, "thermal occupation per mode");
    gen_cmd->add_option("--nu", gen.nu, "isotropic mixing noise");
    auto* gen_seed = gen_cmd->add_option("--seed", gen.seed, "RNG seed (64-bit)");
    gen_cmd->add_option("--out", gen.out, "output path (default: stdout)");
    std::string gen_format = "json";
    gen_cmd->add_option("--format", gen_format, "output format")
        ->check(CLI::IsMember({"json"}));

    CheckFlags check;
    auto* check_cmd = app.add_subcommand("check", "Run a separability criterion");
    check_cmd->add_option("state", check.state_path, "state JSON file")->required();
    check_cmd->add_option("--criterion", check.criterion, "simon|mp");
    check_cmd->add_option("--partition", check.partition,
                          "comma list of party-B modes (default: last half)");
    check_cmd->add_option("--r", check.r, "spectral-law aspect ratio (mp)");
    check_cmd->add_option("--normalization", check.normalization, "none|mean-one|trace-dim");
    check_cmd->add_option("--bounds", check.bounds, "formula|paper");
    auto* check_tol = check_cmd->add_option(
        "--tol", check.tol, "simon eigenvalue tolerance / mp support tolerance");
    check_cmd->add_option("--out", check.out, "also write the report here");
    std::string check_format = "json";
    check_cmd->add_option("--format", check_format, "report format")
        ->check(CLI::IsMember({"json"}));

    WishartFlags wishart;
    auto* wishart_cmd = app.add_subcommand("wishart", "Sample a Wishart spectrum");
    wishart_cmd->add_option("--m", wishart.m, "matrix dimension")->required();
    wishart_cmd->add_option("--n", wishart.n, "vector count (>= m)")->required();
    wishart_cmd->add_option("--seed", wishart.seed, "RNG seed (64-bit)")->required();
    wishart_cmd->add_option("--out", wishart.out, "eigenvalue CSV path")->required();
    std::string wishart_format = "csv";
    wishart_cmd->add_option("--format", wishart_format, "eigenvalue file format")
        ->check(CLI::IsMember({"csv"}));

    CompareFlags compare;
    auto* compare_cmd =
        app.add_subcommand("compare", "Compare both criteria over an ensemble");
    compare_cmd->add_option("--kind", compare.kind,
                            "separable_product|tmsv|random_pure|random_mixed");
    compare_cmd->add_option("--n-states", compare.n_states, "ensemble size");
    compare_cmd->add_option("--modes", compare.modes, "modes per party");
    compare_cmd->add_option("--seed", compare.seed, "RNG seed (64-bit)")->required();
    compare_cmd->add_option("--r-min", compare.r_sq_min, "tmsv squeezing lower bound");
    compare_cmd->add_option("--r-max", compare.r_sq_max, "tmsv squeezing upper bound");
    compare_cmd->add_option("--nu", compare.nu, "mixing noise");
    compare_cmd->add_option("--r", compare.r, "spectral-law aspect ratio");
    compare_cmd->add_option("--normalization", compare.normalization,
                            "none|mean-one|trace-dim");
    compare_cmd->add_option("--bounds", compare.bounds, "formula|paper");
    auto* compare_tol = compare_cmd->add_option("--tol", compare.tol, "mp support tolerance");
    compare_cmd->add_option("--out", compare.out, "report path (default: stdout)");

    SpectrumFlags spectrum;
    auto* spectrum_cmd =
        app.add_subcommand("spectrum", "Emit plot data for a state's PT spectrum");
    spectrum_cmd->add_option("state", spectrum.state_path, "state JSON file")->required();
    spectrum_cmd->add_option("--partition", spectrum.partition,
                             "comma list of party-B modes (default: last half)");
    spectrum_cmd->add_option("--r", spectrum.r, "spectral-law aspect ratio");
    spectrum_cmd->add_option("--normalization", spectrum.normalization,
                             "none|mean-one|trace-dim");
    spectrum_cmd->add_option("--bounds", spectrum.bounds, "formula|paper");
    auto* spectrum_tol =
        spectrum_cmd->add_option("--tol", spectrum.tol, "mp support tolerance");
    spectrum_cmd->add_option("--bins", spectrum.bins, "histogram bins (0 = automatic)");
    spectrum_cmd->add_option("--grid-points", spectrum.grid_points, "density grid size");
    spectrum_cmd->add_option("--out-prefix", spectrum.out_prefix, "output path prefix")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }

    try {
        if (gen_cmd->parsed()) {
            gen.seed_given = gen_seed->count() > 0;
            return run_gen(gen);
        }
        if (check_cmd->parsed()) {
            check.tol_given = check_tol->count() > 0;
            return run_check(check);
        }
        if (wishart_cmd->parsed()) return run_wishart(wishart);
        if (compare_cmd->parsed()) {
            compare.tol_given = compare_tol->count() > 0;
            return run_compare(compare);
        }
        if (spectrum_cmd->parsed()) {
            spectrum.tol_given = spectrum_tol->count() > 0;
            return run_spectrum(spectrum);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
