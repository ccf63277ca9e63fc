#pragma once

// Table writers. CSV: UTF-8, LF, header row, shortest round-trip decimals,
// empty fields for nulls, "ERROR" markers for failed cells (details go to the
// JSON format). JSON: {"spec": resolved configuration echo, "rows": [...]}.

#include <charconv>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rfso/config.hpp"
#include "rfso/sweep.hpp"

namespace rfso {

inline std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace detail {

inline std::vector<Column> expanded_columns(const SweepSpec& s) {
    std::vector<Column> cols;
    for (OutputKind k : s.outputs)
        for (Column c : columns_for(k)) cols.push_back(c);
    return cols;
}

}  // namespace detail

inline void write_rows_csv(std::ostream& os, const SweepSpec& s,
                           const std::vector<OutputRow>& rows) {
    const auto cols = detail::expanded_columns(s);
    const bool labeled = !s.variants.empty();
    if (labeled) os << "curve,";
    os << axis_name(s.axis);
    for (Column c : cols) {
        os << ',' << column_name(c);
        if (column_has_std_error(c)) os << ',' << column_name(c) << "_se";
    }
    os << '\n';
    for (const auto& row : rows) {
        if (labeled) os << row.curve << ',';
        os << format_double(row.axis_value);
        for (Column c : cols) {
            os << ',';
            auto it = row.cells.find(c);
            if (it != row.cells.end()) {
                const OutputCell& cell = it->second;
                if (cell.error)
                    os << "ERROR";
                else if (cell.value)
                    os << format_double(*cell.value);
                if (column_has_std_error(c)) {
                    os << ',';
                    if (cell.std_error) os << format_double(*cell.std_error);
                }
            } else if (column_has_std_error(c)) {
                os << ',';
            }
        }
        os << '\n';
    }
}

// Resolved-parameter echo: the input config plus everything derived from it.
inline nlohmann::json spec_echo_json(const SweepSpec& s) {
    nlohmann::json j = emit_config(s);
    double alpha, beta;
    if (s.sigma_r) {
        auto ab = turbulence_params(*s.sigma_r);
        alpha = ab.first;
        beta = ab.second;
    } else {
        alpha = *s.alpha;
        beta = *s.beta;
    }
    nlohmann::json d;
    d["alpha"] = alpha;
    d["beta"] = beta;
    d["mu1"] = db_to_linear(s.mu1_db);
    d["mu2"] = db_to_linear(s.mu2_db);
    d["gamma_th"] = db_to_linear(s.gamma_th_db);
    ImpairmentParams imp(s.kappa1, s.kappa2);
    d["delta"] = delta(imp);
    Ceiling g = sndr_ceiling(imp);
    if (g.is_unbounded()) {
        d["sndr_ceiling"] = nullptr;
        d["capacity_ceiling"] = nullptr;
    } else {
        d["sndr_ceiling"] = g.value();
        d["capacity_ceiling"] = capacity_ceiling(imp).value();
    }
    j["resolved"] = d;
    return j;
}

inline nlohmann::json rows_json(const SweepSpec& s,
                                const std::vector<OutputRow>& rows) {
    const auto cols = detail::expanded_columns(s);
    nlohmann::json out;
    out["spec"] = spec_echo_json(s);
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json r;
        if (!s.variants.empty()) r["curve"] = row.curve;
        r["axis"] = axis_name(s.axis);
        r["axis_value"] = row.axis_value;
        for (Column c : cols) {
            const std::string name = column_name(c);
            auto it = row.cells.find(c);
            if (it == row.cells.end()) {
                r[name] = nullptr;
                continue;
            }
            const OutputCell& cell = it->second;
            if (cell.error) {
                r[name] = nullptr;
                r[name + "_error"] = *cell.error;
            } else if (cell.value) {
                r[name] = *cell.value;
                if (cell.std_error) r[name + "_se"] = *cell.std_error;
            } else {
                r[name] = nullptr;
            }
        }
        arr.push_back(std::move(r));
    }
    out["rows"] = std::move(arr);
    return out;
}

}  // namespace rfso
