// csv.hpp — Curve and grid CSV output (17 significant digits) and a curve reader.

#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dimer/analysis.hpp"

namespace dimer {

class OutputError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct CurvePoint {
    double t;
    double p;
};

inline std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw OutputError("cannot write \"" + path + "\"");
    return out;
}

inline void write_curve(std::ostream& out, const std::vector<CurvePoint>& curve) {
    out << "t_ps,p12\n";
    for (const auto& pt : curve) out << format_double(pt.t) << ',' << format_double(pt.p) << '\n';
}

inline void emit_csv(const std::vector<CurvePoint>& curve, const std::string& path) {
    auto out = open_output(path);
    write_curve(out, curve);
    if (!out) throw OutputError("failed writing \"" + path + "\"");
}

inline std::vector<CurvePoint> read_curve(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw OutputError("cannot read \"" + path + "\"");
    std::string line;
    if (!std::getline(in, line) || line != "t_ps,p12") throw OutputError("not a curve file: " + path);
    std::vector<CurvePoint> out;
    while (std::getline(in, line)) {
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw OutputError("malformed curve row: " + line);
        out.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
    }
    return out;
}

// Two-axis grids: header "param2\param1,<axis1 values>", then one row per
// axis2 value. One-axis grids: header "param1,<metric>", one row per value.
inline void write_grid(std::ostream& out, const SweepGrid& g, const std::string& metric = "p_max") {
    if (g.axis2) {
        out << to_string(g.axis2->parameter) << '\\' << to_string(g.axis1.parameter);
        for (double v : g.axis1.values) out << ',' << format_double(v);
        out << '\n';
        for (std::size_t i2 = 0; i2 < g.n2(); ++i2) {
            out << format_double(g.axis2->values[i2]);
            for (std::size_t i1 = 0; i1 < g.n1(); ++i1) out << ',' << format_double(g.at(i1, i2));
            out << '\n';
        }
    } else {
        out << to_string(g.axis1.parameter) << ',' << metric << '\n';
        for (std::size_t i1 = 0; i1 < g.n1(); ++i1) {
            out << format_double(g.axis1.values[i1]) << ',' << format_double(g.at(i1)) << '\n';
        }
    }
}

inline void write_argmax(std::ostream& out, const SweepGrid& g) {
    out << to_string(g.axis1.parameter) << '=' << format_double(g.axis1.values[g.argmax.i1]) << '\n';
    if (g.axis2) out << to_string(g.axis2->parameter) << '=' << format_double(g.axis2->values[g.argmax.i2]) << '\n';
    out << "t_ps=" << format_double(g.argmax.t) << '\n';
    out << "p12=" << format_double(g.argmax.p) << '\n';
}

// "grid.csv" -> "grid.argmax.txt".
inline std::string argmax_sidecar_path(const std::string& csv_path) {
    const auto slash = csv_path.find_last_of('/');
    const auto dot = csv_path.find_last_of('.');
    const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
    return (has_ext ? csv_path.substr(0, dot) : csv_path) + ".argmax.txt";
}

// Writes the grid and its argmax sidecar; returns both paths.
inline std::vector<std::string> emit_csv(const SweepGrid& g, const std::string& path,
                                         const std::string& metric = "p_max") {
    {
        auto out = open_output(path);
        write_grid(out, g, metric);
        if (!out) throw OutputError("failed writing \"" + path + "\"");
    }
    const auto side = argmax_sidecar_path(path);
    auto out = open_output(side);
    write_argmax(out, g);
    if (!out) throw OutputError("failed writing \"" + side + "\"");
    return {path, side};
}

}  // namespace dimer
