#pragma once

// CSV and JSON encodings of grids, spectra, kernel tallies and verification
// reports. CSV carries decimals with up to 17 significant digits and JSON
// uses shortest-exact formatting, so a write/read round trip reproduces
// every double bit for bit. Field names and column orders are part of the
// output contract and are pinned by golden-file tests.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "chrestenson/counterexample.hpp"
#include "chrestenson/kernels.hpp"
#include "chrestenson/transform.hpp"
#include "chrestenson/walsh.hpp"

namespace chrestenson {

using ordered_json = nlohmann::ordered_json;

inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace detail {

inline std::string csv_bool(bool b) { return b ? "true" : "false"; }

inline std::string csv_optional(double x) {
    return std::isnan(x) ? std::string{} : format_double(x);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (const char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

inline std::string read_csv_line(std::istream& in, const char* what) {
    std::string line;
    if (!std::getline(in, line)) throw size_error(std::string("missing CSV line: ") + what);
    return line;
}

inline double parse_double(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str()) throw argument_error("malformed number in input: '" + s + "'");
    return v;
}

inline std::uint64_t parse_uint(const std::string& s) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (end == s.c_str()) throw argument_error("malformed integer in input: '" + s + "'");
    return v;
}

} // namespace detail

// ---------------------------------------------------------------------------
// step functions

inline std::string to_csv(const StepFunction& f) {
    std::ostringstream out;
    out << "order,resolution\n" << f.order.value() << ',' << f.resolution << '\n';
    out << "index,re,im\n";
    for (std::uint64_t m = 0; m < f.values.size(); ++m)
        out << m << ',' << format_double(f.values[m].real()) << ','
            << format_double(f.values[m].imag()) << '\n';
    return out.str();
}

inline StepFunction step_function_from_csv(std::istream& in) {
    detail::read_csv_line(in, "step function header");
    const auto meta = detail::split_csv_line(detail::read_csv_line(in, "order,resolution"));
    if (meta.size() != 2) throw argument_error("expected 'order,resolution' values");
    StepFunction f{Order(static_cast<int>(detail::parse_uint(meta[0]))),
                   static_cast<int>(detail::parse_uint(meta[1])),
                   {}};
    detail::read_csv_line(in, "value header");
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto row = detail::split_csv_line(line);
        if (row.size() != 3) throw argument_error("expected 'index,re,im' rows");
        f.values.emplace_back(detail::parse_double(row[1]), detail::parse_double(row[2]));
    }
    validate_grid(f);
    return f;
}

inline ordered_json to_json(const StepFunction& f) {
    ordered_json values = ordered_json::array();
    for (std::uint64_t m = 0; m < f.values.size(); ++m)
        values.push_back({{"index", m}, {"re", f.values[m].real()}, {"im", f.values[m].imag()}});
    return {{"order", f.order.value()}, {"resolution", f.resolution}, {"values", std::move(values)}};
}

inline StepFunction step_function_from_json(const ordered_json& j) {
    StepFunction f{Order(j.at("order").get<int>()), j.at("resolution").get<int>(), {}};
    for (const auto& v : j.at("values"))
        f.values.emplace_back(v.at("re").get<double>(), v.at("im").get<double>());
    validate_grid(f);
    return f;
}

// ---------------------------------------------------------------------------
// spectra

inline std::string to_csv(const Spectrum& s) {
    std::ostringstream out;
    out << "order,length\n" << s.order.value() << ',' << s.coefficients.size() << '\n';
    out << "index,re,im\n";
    for (std::uint64_t n = 0; n < s.coefficients.size(); ++n)
        out << n << ',' << format_double(s.coefficients[n].real()) << ','
            << format_double(s.coefficients[n].imag()) << '\n';
    return out.str();
}

inline Spectrum spectrum_from_csv(std::istream& in) {
    detail::read_csv_line(in, "spectrum header");
    const auto meta = detail::split_csv_line(detail::read_csv_line(in, "order,length"));
    if (meta.size() != 2) throw argument_error("expected 'order,length' values");
    Spectrum s{Order(static_cast<int>(detail::parse_uint(meta[0]))), {}};
    const std::uint64_t length = detail::parse_uint(meta[1]);
    detail::read_csv_line(in, "coefficient header");
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto row = detail::split_csv_line(line);
        if (row.size() != 3) throw argument_error("expected 'index,re,im' rows");
        s.coefficients.emplace_back(detail::parse_double(row[1]), detail::parse_double(row[2]));
    }
    if (s.coefficients.size() != length)
        throw size_error("spectrum row count does not match the declared length");
    return s;
}

inline ordered_json to_json(const Spectrum& s) {
    ordered_json coeffs = ordered_json::array();
    for (std::uint64_t n = 0; n < s.coefficients.size(); ++n)
        coeffs.push_back({{"index", n}, {"re", s.coefficients[n].real()}, {"im", s.coefficients[n].imag()}});
    return {{"order", s.order.value()},
            {"length", s.coefficients.size()},
            {"coefficients", std::move(coeffs)}};
}

inline Spectrum spectrum_from_json(const ordered_json& j) {
    Spectrum s{Order(j.at("order").get<int>()), {}};
    for (const auto& v : j.at("coefficients"))
        s.coefficients.emplace_back(v.at("re").get<double>(), v.at("im").get<double>());
    if (j.contains("length") && s.coefficients.size() != j.at("length").get<std::uint64_t>())
        throw size_error("spectrum entry count does not match the declared length");
    return s;
}

// ---------------------------------------------------------------------------
// kernel tallies

inline std::string to_csv(const ExponentTally& t) {
    const int a = t.order.value();
    std::ostringstream out;
    out << "order,resolution,n\n" << a << ',' << t.resolution << ',' << t.n << '\n';
    out << "index,re,im";
    for (int e = 0; e < a; ++e) out << ",c" << e;
    out << '\n';
    const std::uint64_t cells = t.counts.size() / static_cast<std::uint64_t>(a);
    for (std::uint64_t m = 0; m < cells; ++m) {
        const auto v = t.value(m);
        out << m << ',' << format_double(v.real()) << ',' << format_double(v.imag());
        for (int e = 0; e < a; ++e) out << ',' << t.count(m, e);
        out << '\n';
    }
    return out.str();
}

inline ordered_json to_json(const ExponentTally& t) {
    const int a = t.order.value();
    const std::uint64_t cells = t.counts.size() / static_cast<std::uint64_t>(a);
    ordered_json rows = ordered_json::array();
    for (std::uint64_t m = 0; m < cells; ++m) {
        const auto v = t.value(m);
        ordered_json counts = ordered_json::array();
        for (int e = 0; e < a; ++e) counts.push_back(t.count(m, e));
        rows.push_back({{"index", m}, {"re", v.real()}, {"im", v.imag()}, {"counts", std::move(counts)}});
    }
    return {{"order", a}, {"resolution", t.resolution}, {"n", t.n}, {"cells", std::move(rows)}};
}

// ---------------------------------------------------------------------------
// lemma report

inline std::string to_csv(const LemmaReport& r) {
    std::ostringstream out;
    out << "order,k_requested,k_max,bound_scale,all_pass\n"
        << r.order.value() << ',' << r.k_requested << ',' << r.k_max << ','
        << format_double(r.bound_scale) << ',' << detail::csv_bool(r.all_pass) << '\n';
    out << "k,n_k,resolution,lebesgue,bound_growth,bound_log,tail_integral,"
           "ring_integral,ring_bound,sum_err,pass\n";
    for (const auto& row : r.rows)
        out << row.k << ',' << row.n_k << ',' << row.resolution << ','
            << format_double(row.lebesgue) << ',' << format_double(row.bound_growth) << ','
            << format_double(row.bound_log) << ',' << format_double(row.tail_integral) << ','
            << detail::csv_optional(row.ring_integral) << ',' << detail::csv_optional(row.ring_bound)
            << ',' << format_double(row.sum_err) << ',' << detail::csv_bool(row.pass) << '\n';
    return out.str();
}

inline ordered_json to_json(const LemmaReport& r) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : r.rows) {
        ordered_json jrow = {{"k", row.k},
                             {"n_k", row.n_k},
                             {"resolution", row.resolution},
                             {"lebesgue", row.lebesgue},
                             {"bound_growth", row.bound_growth},
                             {"bound_log", row.bound_log},
                             {"tail_integral", row.tail_integral},
                             {"ring_integral", nullptr},
                             {"ring_bound", nullptr},
                             {"sum_err", row.sum_err},
                             {"pass", row.pass}};
        if (!std::isnan(row.ring_integral)) {
            jrow["ring_integral"] = row.ring_integral;
            jrow["ring_bound"] = row.ring_bound;
        }
        rows.push_back(std::move(jrow));
    }
    return {{"order", r.order.value()},  {"k_requested", r.k_requested}, {"k_max", r.k_max},
            {"bound_scale", r.bound_scale}, {"all_pass", r.all_pass},    {"rows", std::move(rows)}};
}

// ---------------------------------------------------------------------------
// gap report

inline std::string to_csv(const GapReport& g) {
    std::ostringstream out;
    out << "order,k,block_start,m_k,resolution,gap,lebesgue_m,j2_bound_log2,j2_bound,"
           "dirichlet_bound,final_bound,sum_err,block_in_range,m_k_in_range,"
           "gap_ge_dirichlet,final_applicable,gap_ge_final,scalar_bound_ok,pass\n";
    out << g.order.value() << ',' << g.k << ',' << g.block_start << ',' << g.m_k << ','
        << g.resolution << ',' << format_double(g.gap) << ',' << format_double(g.lebesgue_m) << ','
        << g.j2_bound_log2 << ',' << format_double(g.j2_bound) << ','
        << format_double(g.dirichlet_bound) << ',' << format_double(g.final_bound) << ','
        << format_double(g.sum_err) << ',' << detail::csv_bool(g.block_in_range) << ','
        << detail::csv_bool(g.m_k_in_range) << ',' << detail::csv_bool(g.gap_ge_dirichlet) << ','
        << detail::csv_bool(g.final_applicable) << ',' << detail::csv_bool(g.gap_ge_final) << ','
        << detail::csv_bool(g.scalar_bound_ok) << ',' << detail::csv_bool(g.pass) << '\n';
    return out.str();
}

inline ordered_json to_json(const GapReport& g) {
    return {{"order", g.order.value()},
            {"k", g.k},
            {"block_start", g.block_start},
            {"m_k", g.m_k},
            {"resolution", g.resolution},
            {"gap", g.gap},
            {"lebesgue_m", g.lebesgue_m},
            {"j2_bound_log2", g.j2_bound_log2},
            {"j2_bound", g.j2_bound},
            {"dirichlet_bound", g.dirichlet_bound},
            {"final_bound", g.final_bound},
            {"sum_err", g.sum_err},
            {"block_in_range", g.block_in_range},
            {"m_k_in_range", g.m_k_in_range},
            {"gap_ge_dirichlet", g.gap_ge_dirichlet},
            {"final_applicable", g.final_applicable},
            {"gap_ge_final", g.gap_ge_final},
            {"scalar_bound_ok", g.scalar_bound_ok},
            {"pass", g.pass}};
}

// ---------------------------------------------------------------------------
// decomposition norms

inline std::string to_csv(const DecompositionNorms& d) {
    std::ostringstream out;
    out << "order,blocks,resolution,g_norm,g_bound,h_norm,h_bound,f_norm,f_bound,pass\n";
    out << d.order.value() << ',' << d.blocks << ',' << d.resolution << ','
        << format_double(d.g_norm) << ',' << format_double(d.g_bound) << ','
        << format_double(d.h_norm) << ',' << format_double(d.h_bound) << ','
        << format_double(d.f_norm) << ',' << format_double(d.f_bound) << ','
        << detail::csv_bool(d.pass) << '\n';
    return out.str();
}

inline ordered_json to_json(const DecompositionNorms& d) {
    return {{"order", d.order.value()},
            {"blocks", d.blocks},
            {"resolution", d.resolution},
            {"g_norm", d.g_norm},
            {"g_bound", d.g_bound},
            {"h_norm", d.h_norm},
            {"h_bound", d.h_bound},
            {"f_norm", d.f_norm},
            {"f_bound", d.f_bound},
            {"pass", d.pass}};
}

} // namespace chrestenson
