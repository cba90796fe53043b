#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "gaussmp/errors.hpp"
#include "gaussmp/mp_criterion.hpp"
#include "gaussmp/ordering.hpp"
#include "gaussmp/ppt.hpp"
#include "gaussmp/random_matrix.hpp"
#include "gaussmp/states.hpp"
#include "gaussmp/symplectic.hpp"

// Serialization. All floats are emitted at 17 significant digits (enough to
// round-trip a double exactly) through a single formatter, so identical data
// always produces identical bytes. Emission is hand-rolled for that reason;
// parsing goes through nlohmann::json.

namespace gaussmp {

inline std::string format_double(double x) {
    if (!std::isfinite(x)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace detail {

inline std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

inline std::string json_string(const std::string& s) { return "\"" + json_escape(s) + "\""; }

inline std::string json_array(const std::vector<double>& xs) {
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ",";
        out += format_double(xs[i]);
    }
    return out + "]";
}

inline std::string json_matrix(const Eigen::MatrixXd& m) {
    std::string out = "[";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        if (i) out += ",";
        out += "[";
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out += ",";
            out += format_double(m(i, j));
        }
        out += "]";
    }
    return out + "]";
}

}  // namespace detail

inline std::string state_to_json(const GaussianState& state) {
    std::string out = "{";
    out += "\"n_modes\":" + std::to_string(state.n_modes);
    out += ",\"ordering\":" + detail::json_string(to_string(state.cov.ordering));
    out += ",\"matrix\":" + detail::json_matrix(state.cov.matrix);
    std::vector<double> mean(state.mean.data(), state.mean.data() + state.mean.size());
    out += ",\"mean\":" + detail::json_array(mean);
    out += ",\"kind\":" + detail::json_string(state.kind);
    out += ",\"params\":" + detail::json_array(state.params);
    if (state.seed) out += ",\"seed\":" + std::to_string(*state.seed);
    return out + "}";
}

// Accepts the bare matrix schema or a full state record; metadata fields are
// optional. The covariance gate (symmetrize, reject gross asymmetry) runs on
// every load.
inline GaussianState state_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw Error(std::string("state JSON parse failed: ") + e.what());
    }
    if (!j.is_object()) throw Error("state JSON: top level must be an object");
    if (!j.contains("n_modes") || !j["n_modes"].is_number_integer())
        throw Error("state JSON: missing integer field 'n_modes'");
    const int n_modes = j["n_modes"].get<int>();
    if (n_modes < 1) throw Error("state JSON: n_modes must be >= 1");
    if (!j.contains("ordering") || !j["ordering"].is_string())
        throw Error("state JSON: missing string field 'ordering'");
    const auto ordering_name = j["ordering"].get<std::string>();
    const auto parsed_ordering = ordering_from_string(ordering_name);
    if (!parsed_ordering) throw Error("state JSON: unknown ordering '" + ordering_name + "'");
    const auto ordering = *parsed_ordering;
    const int dim = 2 * n_modes;
    if (!j.contains("matrix") || !j["matrix"].is_array() ||
        static_cast<int>(j["matrix"].size()) != dim)
        throw Error("state JSON: 'matrix' must be an array of 2*n_modes rows");
    Eigen::MatrixXd m(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const auto& row = j["matrix"][i];
        if (!row.is_array() || static_cast<int>(row.size()) != dim)
            throw Error("state JSON: matrix row " + std::to_string(i) +
                        " must have 2*n_modes entries");
        for (int k = 0; k < dim; ++k) {
            if (!row[k].is_number())
                throw Error("state JSON: matrix entries must be numbers");
            m(i, k) = row[k].get<double>();
        }
    }
    GaussianState state;
    state.cov = CovarianceMatrix::from_matrix(m, ordering);
    state.n_modes = n_modes;
    state.mean = Eigen::VectorXd::Zero(dim);
    if (j.contains("mean")) {
        const auto& mean = j["mean"];
        if (!mean.is_array() || static_cast<int>(mean.size()) != dim)
            throw Error("state JSON: 'mean' must have 2*n_modes entries");
        for (int i = 0; i < dim; ++i) state.mean(i) = mean[i].get<double>();
    }
    if (j.contains("kind")) state.kind = j["kind"].get<std::string>();
    if (j.contains("params"))
        state.params = j["params"].get<std::vector<double>>();
    if (j.contains("seed") && !j["seed"].is_null())
        state.seed = j["seed"].get<std::uint64_t>();
    return state;
}

inline std::string simon_report_to_json(const SimonReport& report) {
    std::string out = "{";
    out += "\"criterion\":\"simon\"";
    out += ",\"verdict\":" + detail::json_string(to_string(report.verdict));
    out += ",\"min_eigenvalue\":" + format_double(report.min_eigenvalue);
    out += ",\"regime\":" + detail::json_string(report.regime);
    out += ",\"tol\":" + format_double(report.tol);
    out += ",\"boundary\":" + std::string(report.boundary ? "true" : "false");
    return out + "}";
}

inline std::string mp_verdict_to_json(const MPVerdict& verdict) {
    std::string out = "{";
    out += "\"criterion\":\"marchenko-pastur\"";
    out += ",\"r\":" + format_double(verdict.config.r);
    out += ",\"normalization\":" +
           detail::json_string(to_string(verdict.config.normalization));
    out += ",\"bounds\":[" + format_double(verdict.bound_lo) + "," +
           format_double(verdict.bound_hi) + "]";
    out += ",\"bound_source\":" + detail::json_string(to_string(verdict.config.bound_source));
    out += ",\"support_tol\":" + format_double(verdict.config.support_tol);
    out += ",\"verdict\":" + detail::json_string(to_string(verdict.verdict));
    out += ",\"violations\":[";
    for (std::size_t i = 0; i < verdict.support_violations.size(); ++i) {
        const auto& v = verdict.support_violations[i];
        if (i) out += ",";
        out += "{\"index\":" + std::to_string(v.index);
        out += ",\"value\":" + format_double(v.value);
        out += ",\"distance\":" + format_double(v.distance) + "}";
    }
    out += "]";
    out += ",\"ks_distance\":" + format_double(verdict.ks_distance);
    out += ",\"n_modes\":" + std::to_string(verdict.n_modes);
    out += ",\"eigenvalues_raw\":" + detail::json_array(verdict.eigenvalues_raw);
    out += ",\"eigenvalues_normalized\":" +
           detail::json_array(verdict.eigenvalues_normalized);
    return out + "}";
}

inline std::string agreement_report_to_json(const AgreementReport& report) {
    std::string out = "{";
    out += "\"criterion\":\"agreement\"";
    out += ",\"r\":" + format_double(report.config.r);
    out += ",\"normalization\":" + detail::json_string(to_string(report.config.normalization));
    out += ",\"bound_source\":" + detail::json_string(to_string(report.config.bound_source));
    out += ",\"support_tol\":" + format_double(report.config.support_tol);
    out += ",\"confusion\":{";
    out += "\"simon_separable_mp_separable\":" + std::to_string(report.n_simon_sep_mp_sep);
    out += ",\"simon_separable_mp_entangled\":" + std::to_string(report.n_simon_sep_mp_ent);
    out += ",\"simon_entangled_mp_separable\":" + std::to_string(report.n_simon_ent_mp_sep);
    out += ",\"simon_entangled_mp_entangled\":" + std::to_string(report.n_simon_ent_mp_ent);
    out += "}";
    out += ",\"agreement_rate\":" + format_double(report.agreement_rate);
    out += ",\"disagreeing_seeds\":[";
    for (std::size_t i = 0; i < report.disagreeing_seeds.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(report.disagreeing_seeds[i]);
    }
    out += "]";
    out += ",\"records\":[";
    for (std::size_t i = 0; i < report.records.size(); ++i) {
        const auto& r = report.records[i];
        if (i) out += ",";
        out += "{\"index\":" + std::to_string(r.index);
        out += ",\"seed\":" + std::to_string(r.seed);
        out += ",\"kind\":" + detail::json_string(r.kind);
        out += ",\"simon\":" + detail::json_string(to_string(r.simon));
        out += ",\"mp\":" + detail::json_string(to_string(r.mp));
        out += ",\"simon_min_eigenvalue\":" + format_double(r.simon_min_eigenvalue);
        out += ",\"mp_ks_distance\":" + format_double(r.mp_ks_distance) + "}";
    }
    out += "]";
    return out + "}";
}

inline std::string eigenvalue_csv(const std::vector<double>& eigenvalues) {
    std::string out = "eigenvalue\n";
    for (double x : eigenvalues) out += format_double(x) + "\n";
    return out;
}

inline std::string histogram_csv(const Histogram& h) {
    std::string out = "bin_left,bin_right,density\n";
    for (std::size_t k = 0; k < h.densities.size(); ++k)
        out += format_double(h.bin_edges[k]) + "," + format_double(h.bin_edges[k + 1]) +
               "," + format_double(h.densities[k]) + "\n";
    return out;
}

inline std::string curve_csv(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw Error("curve_csv: length mismatch");
    std::string out = "x,density\n";
    for (std::size_t i = 0; i < x.size(); ++i)
        out += format_double(x[i]) + "," + format_double(y[i]) + "\n";
    return out;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open for writing: " + path);
    f << content;
    if (!f) throw Error("write failed: " + path);
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

inline void save_state(const GaussianState& state, const std::string& path) {
    write_text_file(path, state_to_json(state) + "\n");
}

inline GaussianState load_state(const std::string& path) {
    return state_from_json(read_text_file(path));
}

}  // namespace gaussmp
