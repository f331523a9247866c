#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ecd/errors.hpp"

namespace ecd {

/// Point of a classical orbit; 1-d maps use x[0] only.
using Point = std::array<double, 2>;

/// Discrete-time map on a rectangular domain box.  `step` must send the
/// box into itself; orbits that escape raise divergence_error.
struct ClassicalMap {
    std::string name;
    int dim = 1;
    Point lo{}, hi{};  // per-axis closed bounds
    std::function<Point(const Point&)> step;

    bool contains(const Point& p) const {
        for (int k = 0; k < dim; ++k)
            if (p[k] < lo[k] || p[k] > hi[k]) return false;
        return true;
    }
};

/// x -> r x (1 - x) on [0, 1].
inline ClassicalMap logistic_map(double r) {
    if (!(r >= 0.0) || r > 4.0)
        throw config_error("r", "logistic parameter must lie in [0, 4], got " +
                                    std::to_string(r));
    return {.name = "logistic",
            .dim = 1,
            .lo = {0.0, 0.0},
            .hi = {1.0, 0.0},
            .step = [r](const Point& p) -> Point {
                return {r * p[0] * (1.0 - p[0]), 0.0};
            }};
}

/// Area-preserving baker's map on the unit square.
inline ClassicalMap baker2d_map() {
    return {.name = "baker",
            .dim = 2,
            .lo = {0.0, 0.0},
            .hi = {1.0, 1.0},
            .step = [](const Point& p) -> Point {
                if (p[0] < 0.5) return {2.0 * p[0], p[1] / 2.0};
                return {2.0 * p[0] - 1.0, (p[1] + 1.0) / 2.0};
            }};
}

/// Tinkerbell map with coefficients (a, b, c, d); the default box holds
/// the attractor of the standard parameter set.
inline ClassicalMap tinkerbell_map(double a = 0.9, double b = -0.6013, double c = 2.0,
                                   double d = 0.5) {
    return {.name = "tinkerbell",
            .dim = 2,
            .lo = {-1.4, -1.7},
            .hi = {0.6, 0.7},
            .step = [a, b, c, d](const Point& p) -> Point {
                const double x = p[0], y = p[1];
                return {x * x - y * y + a * x + b * y, 2.0 * x * y + c * x + d * y};
            }};
}

/// Iterate from x0, discard `transient` steps, return the next `samples`
/// iterates.  Escape from the domain box reports the absolute step index.
inline std::vector<Point> iterate_orbit(const ClassicalMap& map, const Point& x0,
                                        std::size_t transient, std::size_t samples) {
    if (!map.contains(x0))
        throw config_error("x0", "initial point outside the domain box of " + map.name);
    Point x = x0;
    std::vector<Point> orbit;
    orbit.reserve(samples);
    for (std::size_t i = 0; i < transient + samples; ++i) {
        x = map.step(x);
        if (!map.contains(x))
            throw divergence_error(i + 1, map.name + " orbit left its domain box");
        if (i >= transient) orbit.push_back(x);
    }
    return orbit;
}

/// Equal-width partition statistics of an orbit: per-cell occupancy and
/// the matrix of one-step transition counts (sparse; orbits visit few of
/// the bins^(2 dim) possible pairs).
struct TransitionHistogram {
    int dim = 1;
    int bins = 0;                        // per axis; bins^dim cells
    Point lo{}, hi{};
    std::uint64_t total = 0;             // orbit points counted, sum of occupancy
    std::vector<std::uint64_t> occupancy;
    std::unordered_map<std::uint64_t, std::uint64_t> transitions;  // from*cells+to

    std::uint64_t cells() const {
        std::uint64_t c = 1;
        for (int k = 0; k < dim; ++k) c *= static_cast<std::uint64_t>(bins);
        return c;
    }

    /// Cell index of a point: half-open bins, top edge closed.
    std::uint64_t cell_of(const Point& p) const {
        std::uint64_t idx = 0;
        for (int k = 0; k < dim; ++k) {
            const double w = (hi[k] - lo[k]) / bins;
            auto b = static_cast<std::int64_t>((p[k] - lo[k]) / w);
            b = std::clamp<std::int64_t>(b, 0, bins - 1);
            idx = idx * bins + static_cast<std::uint64_t>(b);
        }
        return idx;
    }
};

inline TransitionHistogram build_histogram(const ClassicalMap& map,
                                           const std::vector<Point>& orbit, int bins) {
    if (bins < 2) throw config_error("bins", "need at least two bins per axis");
    if (orbit.size() < 2)
        throw insufficient_data_error(
            "transition statistics need at least two orbit points");
    TransitionHistogram h;
    h.dim = map.dim;
    h.bins = bins;
    h.lo = map.lo;
    h.hi = map.hi;
    h.occupancy.assign(h.cells(), 0);

    std::uint64_t prev = 0;
    for (std::size_t i = 0; i < orbit.size(); ++i) {
        const std::uint64_t c = h.cell_of(orbit[i]);
        ++h.occupancy[c];
        ++h.total;
        if (i > 0) ++h.transitions[prev * h.cells() + c];
        prev = c;
    }
    return h;
}

inline TransitionHistogram build_histogram(const ClassicalMap& map, const Point& x0,
                                           int bins, std::size_t transient,
                                           std::size_t samples) {
    return build_histogram(map, iterate_orbit(map, x0, transient, samples), bins);
}

///// Classical chaos degree: D = sum_i p_i S(p(.|i)) with p_i the cell
/// occupation frequency and p(.|i) the observed one-step conditional
/// distribution out of cell i (row-normalized, so deterministic orbits
/// that settle on a cycle give exactly zero).  Rows are summed in cell
/// order to keep the result reproducible bit for bit.
inline double classical_chaos_degree(const TransitionHistogram& h) {
    if (h.total == 0) throw insufficient_data_error("empty histogram");
    std::vector<std::uint64_t> keys;
    keys.reserve(h.transitions.size());
    for (const auto& [k, v] : h.transitions) keys.push_back(k);
    std::sort(keys.begin(), keys.end());

    const std::uint64_t cells = h.cells();
    double degree = 0;
    std::size_t row_start = 0;
    while (row_start < keys.size()) {
        const std::uint64_t from = keys[row_start] / cells;
        std::size_t row_end = row_start;
        std::uint64_t row_sum = 0;
        while (row_end < keys.size() && keys[row_end] / cells == from)
            row_sum += h.transitions.at(keys[row_end++]);
        double s = 0;
        for (std::size_t i = row_start; i < row_end; ++i) {
            const double q = static_cast<double>(h.transitions.at(keys[i])) /
                             static_cast<double>(row_sum);
            if (q > 0) s -= q * std::log(q);
        }
        const double p = static_cast<double>(h.occupancy[from]) /
                         static_cast<double>(h.total);
        degree += p * s;
        row_start = row_end;
    }
    return std::max(degree, 0.0);
}

inline double classical_chaos_degree(const ClassicalMap& map, const Point& x0, int bins,
                                     std::size_t transient, std::size_t samples) {
    return classical_chaos_degree(build_histogram(map, x0, bins, transient, samples));
}

} // namespace ecd
