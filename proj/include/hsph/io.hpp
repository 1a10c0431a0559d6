#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>

#include "hsph/fan.hpp"
#include "hsph/radial.hpp"

namespace hsph {

/// Locale-independent shortest round-trip formatting.
inline std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw error("parse_double: bad number '" + s + "'");
    return v;
}

inline long parse_long(const std::string& s) {
    long v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw error("parse_long: bad integer '" + s + "'");
    return v;
}

/// RFC 4180 quoting: fields containing comma, quote, CR or LF are wrapped in
/// double quotes with embedded quotes doubled.
inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(std::move(cur));
    return out;
}

/// Columnar text format for radial functions:
///   line 1: n,r_max,t_max,n_r,n_t,valid_r_margin,valid_t_margin  (names)
///   line 2: the values
///   line 3: i_r,i_t,re,im
///   then one row per grid node. Grids are Gauss-Legendre and rebuilt from
///   the header on read.
inline void write_csv(std::ostream& os, const RadialFunction& f) {
    const auto& g = *f.grid;
    os << "n,r_max,t_max,n_r,n_t,valid_r_margin,valid_t_margin\n";
    os << g.n() << ',' << format_double(g.r_max()) << ',' << format_double(g.t_max()) << ','
       << g.n_r() << ',' << g.n_t() << ',' << f.valid_r_margin << ',' << f.valid_t_margin
       << '\n';
    os << "i_r,i_t,re,im\n";
    for (int i = 0; i < g.n_r(); ++i)
        for (int k = 0; k < g.n_t(); ++k)
            os << i << ',' << k << ',' << format_double(f.at(i, k).real()) << ','
               << format_double(f.at(i, k).imag()) << '\n';
}

inline RadialFunction read_radial_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw error("read_radial_csv: missing header");
    if (!std::getline(is, line)) throw error("read_radial_csv: missing header values");
    auto h = split_csv_line(line);
    if (h.size() != 7) throw error("read_radial_csv: bad header");
    auto grid = RadialGrid::make(static_cast<int>(parse_long(h[0])), parse_double(h[1]),
                                 parse_double(h[2]), static_cast<int>(parse_long(h[3])),
                                 static_cast<int>(parse_long(h[4])));
    RadialFunction f(grid);
    f.valid_r_margin = static_cast<int>(parse_long(h[5]));
    f.valid_t_margin = static_cast<int>(parse_long(h[6]));
    if (!std::getline(is, line)) throw error("read_radial_csv: missing column header");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto c = split_csv_line(line);
        if (c.size() != 4) throw error("read_radial_csv: bad row");
        f.at(static_cast<int>(parse_long(c[0])), static_cast<int>(parse_long(c[1]))) =
            cplx(parse_double(c[2]), parse_double(c[3]));
    }
    return f;
}

/// Columnar text format for fan functions:
///   line 1: n,j_max,lambda_min,lambda_max,n_lambda,valid_j,valid_lambda_margin
///   line 2: the values
///   line 3: sign,j,i_lambda,re,im
///   then one row per node, sign +-1.
inline void write_csv(std::ostream& os, const FanFunction& F) {
    const auto& g = *F.grid;
    os << "n,j_max,lambda_min,lambda_max,n_lambda,valid_j,valid_lambda_margin\n";
    os << g.n() << ',' << g.j_max() << ',' << format_double(g.lambda_min()) << ','
       << format_double(g.lambda_max()) << ',' << g.n_lambda() << ',' << F.valid_j << ','
       << F.valid_lambda_margin << '\n';
    os << "sign,j,i_lambda,re,im\n";
    for (int s = 0; s < 2; ++s)
        for (int j = 0; j <= g.j_max(); ++j)
            for (int i = 0; i < g.n_lambda(); ++i)
                os << (s == 0 ? 1 : -1) << ',' << j << ',' << i << ','
                   << format_double(F.at(s, j, i).real()) << ','
                   << format_double(F.at(s, j, i).imag()) << '\n';
}

inline FanFunction read_fan_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw error("read_fan_csv: missing header");
    if (!std::getline(is, line)) throw error("read_fan_csv: missing header values");
    auto h = split_csv_line(line);
    if (h.size() != 7) throw error("read_fan_csv: bad header");
    auto grid = FanGrid::make(static_cast<int>(parse_long(h[0])), static_cast<int>(parse_long(h[1])),
                              parse_double(h[2]), parse_double(h[3]),
                              static_cast<int>(parse_long(h[4])));
    FanFunction F(grid);
    F.valid_j = static_cast<int>(parse_long(h[5]));
    F.valid_lambda_margin = static_cast<int>(parse_long(h[6]));
    if (!std::getline(is, line)) throw error("read_fan_csv: missing column header");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto c = split_csv_line(line);
        if (c.size() != 5) throw error("read_fan_csv: bad row");
        const long sign = parse_long(c[0]);
        if (sign != 1 && sign != -1) throw error("read_fan_csv: sign must be +-1");
        F.at(sign == 1 ? 0 : 1, static_cast<int>(parse_long(c[1])),
             static_cast<int>(parse_long(c[2]))) = cplx(parse_double(c[3]), parse_double(c[4]));
    }
    return F;
}

inline void write_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw error("cannot open for writing: " + path);
    body(os);
    if (!os) throw error("write failed: " + path);
}

} // namespace hsph
