// Information curves on a disturbance grid and their CSV form.
//
// CSV layout: header row, comma separated, LF line endings, 9 significant digits.
// Table values are stored at that precision so a written file parses back to an
// identical table.

#pragma once

#include "sixstate/infotheory.hpp"
#include "sixstate/optimizer.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sixstate {

struct CurveRow {
    double d = 0.0;
    double i_ab = 0.0;
    double i_ae_two_bit = 0.0;
    double i_ae_one_bit = 0.0;
    double i_ae_bb84 = 0.0;

    bool operator==(const CurveRow&) const = default;
};

struct CurveTable {
    std::vector<CurveRow> rows;

    bool operator==(const CurveTable&) const = default;

    /// D strictly increasing and every information value in [0, 1].
    void validate() const
    {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const CurveRow& r = rows[i];
            if (i > 0 && !(r.d > rows[i - 1].d)) throw std::invalid_argument("CurveTable: D is not strictly increasing");
            for (double v : {r.i_ab, r.i_ae_two_bit, r.i_ae_one_bit, r.i_ae_bb84})
                if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("CurveTable: information outside [0, 1]");
        }
    }
};

inline constexpr const char* kCurveHeader = "D,I_AB,I_AE_2bit,I_AE_1bit,I_AE_bb84_numeric";

inline std::string format_g9(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

/// Rounds to the 9 significant digits used in the CSV.
inline double quantize_g9(double v) { return std::strtod(format_g9(v).c_str(), nullptr); }

/// Numerically optimized four-state information, memoized per disturbance.
class Bb84Curve {
public:
    explicit Bb84Curve(std::uint64_t seed = 1, int restarts = 32) : seed_(seed), restarts_(restarts) {}

    double operator()(double d)
    {
        if (auto it = cache_.find(d); it != cache_.end()) return it->second;
        const ConstraintSet constraints{ConstraintMode::BB84, 1e-10};
        double v = maximize_iae(d, constraints, seed_, restarts_).best_value;
        // Constraints hold to `tolerance`, so smaller values are not resolved.
        if (v < constraints.tolerance) v = 0.0;
        cache_.emplace(d, v);
        return v;
    }

private:
    std::uint64_t seed_;
    int restarts_;
    std::map<double, double> cache_;
};

inline CurveTable build_curve_table(double d_min, double d_max, int steps, Bb84Curve& bb84)
{
    if (!(d_min >= 0.0 && d_min < d_max && d_max <= 0.5))
        throw std::invalid_argument("build_curve_table: need 0 <= d_min < d_max <= 0.5");
    if (steps < 2) throw std::invalid_argument("build_curve_table: need at least 2 steps");
    CurveTable t;
    for (int i = 0; i < steps; ++i) {
        const double d = i + 1 == steps ? d_max : d_min + (d_max - d_min) * i / (steps - 1);
        CurveRow r;
        r.d = quantize_g9(d);
        r.i_ab = quantize_g9(i_ab(r.d));
        r.i_ae_two_bit = quantize_g9(i_ae_two_bit(r.d));
        r.i_ae_one_bit = quantize_g9(i_ae_one_bit(r.d));
        r.i_ae_bb84 = quantize_g9(std::clamp(bb84(r.d), 0.0, 1.0));
        t.rows.push_back(r);
    }
    t.validate();
    return t;
}

inline CurveTable build_curve_table(double d_min, double d_max, int steps, std::uint64_t seed = 1)
{
    Bb84Curve bb84(seed);
    return build_curve_table(d_min, d_max, steps, bb84);
}

inline void write_curve_csv(std::ostream& os, const CurveTable& t)
{
    os << kCurveHeader << '\n';
    for (const CurveRow& r : t.rows)
        os << format_g9(r.d) << ',' << format_g9(r.i_ab) << ',' << format_g9(r.i_ae_two_bit) << ','
           << format_g9(r.i_ae_one_bit) << ',' << format_g9(r.i_ae_bb84) << '\n';
}

inline CurveTable read_curve_csv(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line) || line != kCurveHeader) throw std::runtime_error("read_curve_csv: missing or bad header");
    CurveTable t;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<double> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str() || *end != '\0') throw std::runtime_error("read_curve_csv: bad number '" + cell + "'");
            cells.push_back(v);
        }
        if (cells.size() != 5) throw std::runtime_error("read_curve_csv: expected 5 columns");
        t.rows.push_back({cells[0], cells[1], cells[2], cells[3], cells[4]});
    }
    t.validate();
    return t;
}

} // namespace sixstate
