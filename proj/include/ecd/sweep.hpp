#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "ecd/chaos_degree.hpp"
#include "ecd/channels.hpp"
#include "ecd/classical.hpp"
#include "ecd/errors.hpp"
#include "ecd/state.hpp"

namespace ecd {

inline constexpr const char* kVersion = "1.0.0";

/// Settings shared by the sweep runners.  Quantum sweeps use the a-grid,
/// n, m and x0; classical sweeps reuse the a-grid as their parameter grid
/// plus the histogram settings.  Desk-scale defaults; the full-scale run
/// is 740 points, n=2000, m=1000.
struct SweepConfig {
    double a_min = 0.0;
    double a_max = 1.0;
    int a_count = 74;
    std::size_t n = 500;   // channel steps before decomposing
    std::size_t m = 100;   // averaging horizon of the degree
    BlochVector x0{0.3, 0.3, 0.3};

    std::string map_name = "logistic";
    int bins = 100;
    std::size_t transient = 1000;
    std::size_t samples = 100000;
    std::vector<double> classical_x0;  // empty: per-map default start

    unsigned long seed = 12345;        // randomized verification only
    std::string out_csv;
    std::string out_svg;
};

struct SweepRow {
    double a = 0;
    double degree = 0;
    bool degenerate_path = false;  // infimum search used at this point
};

enum class SweepKind { quantum, classical };

struct SweepResult {
    SweepKind kind = SweepKind::quantum;
    std::string label;             // for plot titles
    std::vector<SweepRow> rows;    // ascending a
    Classification classification = Classification::unclassified_single_point;
    SweepConfig config;            // echo
    double wall_seconds = 0;
    std::string version = kVersion;
};

namespace detail {

inline unsigned worker_count(std::size_t items) {
    unsigned t = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("ECD_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) t = static_cast<unsigned>(v);  // 0 keeps auto
    }
    if (t == 0) t = 1;
    return static_cast<unsigned>(
        std::min<std::size_t>(t, std::max<std::size_t>(items, 1)));
}

/// Run body(i) for i in [0, count) across the worker pool.  Work items
/// must be independent; exceptions are rethrown after the join.
template <class F>
inline void parallel_for(std::size_t count, F&& body) {
    const unsigned workers = worker_count(count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i; (i = next.fetch_add(1)) < count;) body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

inline std::vector<double> uniform_grid(double lo, double hi, int count) {
    std::vector<double> g(count);
    for (int i = 0; i < count; ++i)
        g[i] = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
    return g;
}

inline void validate_grid(const SweepConfig& cfg) {
    if (!(cfg.a_min < cfg.a_max))
        throw config_error("a_min", "a_min < a_max violated");
    if (cfg.a_count < 2)
        throw config_error("a_count", "grid needs at least two points");
}

inline std::vector<double> degrees_of(const SweepResult& r) {
    std::vector<double> d;
    d.reserve(r.rows.size());
    for (const auto& row : r.rows) d.push_back(row.degree);
    return d;
}

} // namespace detail

/// Chaos degree of the Baker's-type channel on a uniform a-grid
/// (endpoints included).  Deterministic given the config; grid points are
/// independent and fan out across ECD_THREADS workers.
inline SweepResult run_quantum_sweep(const SweepConfig& cfg) {
    detail::validate_grid(cfg);
    if (cfg.a_min < 0.0) throw config_error("a_min", "Baker parameter range is [0, 1]");
    if (cfg.a_max > 1.0) throw config_error("a_max", "Baker parameter range is [0, 1]");
    if (cfg.n < 1) throw config_error("n", "need at least one evolution step");
    if (cfg.m < 1) throw config_error("m", "need at least one degree step");
    if (cfg.x0.norm() > 1.0 + kNormTol)
        throw config_error("x0", "initial Bloch vector outside the unit ball");

    const auto t0 = std::chrono::steady_clock::now();
    SweepResult res;
    res.kind = SweepKind::quantum;
    res.label = "Baker channel chaos degree";
    res.config = cfg;
    const auto grid = detail::uniform_grid(cfg.a_min, cfg.a_max, cfg.a_count);
    res.rows.resize(grid.size());
    const DensityMatrix rho0 = bloch_to_density(cfg.x0);
    detail::parallel_for(grid.size(), [&](std::size_t i) {
        const Channel ch = baker_channel(grid[i]);
        const ChaosDegreeResult r = chaos_degree_multi_step(ch, rho0, cfg.n, cfg.m);
        res.rows[i] = {grid[i], r.degree, r.degenerate_path};
    });
    res.classification = classify(detail::degrees_of(res));
    res.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

/// Built-in map lookup for the classical sweep: the swept parameter is r
/// for the logistic map and the leading coefficient for the Tinkerbell
/// map.  The baker map has no free parameter and cannot be swept.
inline ClassicalMap classical_map_at(const std::string& name, double param) {
    if (name == "logistic") return logistic_map(param);
    if (name == "tinkerbell") return tinkerbell_map(param);
    if (name == "baker")
        throw config_error("map", "the baker map has no sweep parameter");
    throw config_error("map", "unknown map '" + name +
                                  "' (built-ins: logistic, baker, tinkerbell)");
}

inline Point classical_default_start(const std::string& name) {
    if (name == "logistic") return {0.3, 0.0};
    if (name == "baker") return {0.3, 0.3};
    return {-0.72, -0.64};  // inside the Tinkerbell basin
}

/// Classical chaos degree of a built-in map on a uniform parameter grid.
inline SweepResult run_classical_sweep(const SweepConfig& cfg) {
    detail::validate_grid(cfg);
    classical_map_at(cfg.map_name, cfg.a_min);  // surface name errors up front
    if (cfg.bins < 2) throw config_error("bins", "need at least two bins per axis");
    if (cfg.samples < 2) throw config_error("samples", "need at least two samples");

    Point x0 = classical_default_start(cfg.map_name);
    if (!cfg.classical_x0.empty()) {
        const int dim = classical_map_at(cfg.map_name, cfg.a_min).dim;
        if (static_cast<int>(cfg.classical_x0.size()) != dim)
            throw config_error("x0", "initial point must have " + std::to_string(dim) +
                                         " coordinates for " + cfg.map_name);
        for (int k = 0; k < dim; ++k) x0[k] = cfg.classical_x0[k];
    }

    const auto t0 = std::chrono::steady_clock::now();
    SweepResult res;
    res.kind = SweepKind::classical;
    res.label = cfg.map_name + " map chaos degree";
    res.config = cfg;
    const auto grid = detail::uniform_grid(cfg.a_min, cfg.a_max, cfg.a_count);
    res.rows.resize(grid.size());
    detail::parallel_for(grid.size(), [&](std::size_t i) {
        const ClassicalMap map = classical_map_at(cfg.map_name, grid[i]);
        const double d =
            classical_chaos_degree(map, x0, cfg.bins, cfg.transient, cfg.samples);
        res.rows[i] = {grid[i], d, false};
    });
    res.classification = classify(detail::degrees_of(res));
    res.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

/// Property-based verification of the channel-stability theorem with
/// seeded randomness: unitary and pure-target exponential-mixing channels
/// report degree zero, constant channels report the target entropy, and
/// projective measurements give an n-independent degree that vanishes in
/// the commuting case.
struct PropertyResult {
    std::string name;
    int samples = 0;
    double max_deviation = 0;
    double tolerance = 0;
    bool pass = false;
};

struct TheoremReport {
    unsigned long seed = 0;
    std::vector<PropertyResult> properties;
    bool all_pass = false;
};

inline TheoremReport run_theorem_suite(unsigned long seed, int instances = 100) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> sym(-1.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    const auto random_direction = [&] {
        while (true) {
            const BlochVector v{gauss(rng), gauss(rng), gauss(rng)};
            const double r = v.norm();
            if (r > 1e-6) return (1.0 / r) * v;
        }
    };
    const auto random_state = [&] {
        // Uniform over the ball: random direction, radius ~ cbrt(u).
        return bloch_to_density(std::cbrt(unit(rng)) * random_direction());
    };
    const auto random_unitary = [&] {
        const Mat2 h = cplx{2.0 * sym(rng), 0} * kIdentity +
                       cplx{2.0 * sym(rng), 0} * kSigmaX +
                       cplx{2.0 * sym(rng), 0} * kSigmaY +
                       cplx{2.0 * sym(rng), 0} * kSigmaZ;
        return UnitaryChannel{h, 3.0 * sym(rng)};
    };

    TheoremReport report;
    report.seed = seed;
    constexpr double kTol = 1e-10;

    {
        PropertyResult p{"unitary: degree is zero", instances, 0, kTol, false};
        for (int i = 0; i < instances; ++i) {
            const Channel ch = random_unitary();
            const DensityMatrix rho0 = random_state();
            const auto n = static_cast<std::size_t>(1 + i % 5);
            const auto m = static_cast<std::size_t>(1 + i % 10);
            p.max_deviation = std::max(
                {p.max_deviation, chaos_degree_one_step(ch, rho0, n).degree,
                 chaos_degree_multi_step(ch, rho0, n, m).degree});
        }
        p.pass = p.max_deviation < p.tolerance;
        report.properties.push_back(p);
    }
    {
        PropertyResult p{"constant: degree equals target entropy", instances, 0, kTol,
                         false};
        for (int i = 0; i < instances; ++i) {
            const DensityMatrix target = random_state();
            const Channel ch = ConstantChannel{target};
            const double s = von_neumann_entropy(target);
            const auto n = static_cast<std::size_t>(1 + i % 5);
            const auto m = static_cast<std::size_t>(1 + i % 10);
            const double d = chaos_degree_multi_step(ch, random_state(), n, m).degree;
            p.max_deviation = std::max(p.max_deviation, std::abs(d - s));
        }
        p.pass = p.max_deviation < p.tolerance;
        report.properties.push_back(p);
    }
    {
        PropertyResult p{"exponential mixing to a pure target: degree equals its "
                         "entropy (zero)",
                         instances, 0, kTol, false};
        for (int i = 0; i < instances; ++i) {
            const double rate = 0.05 + 4.95 * unit(rng);
            const DensityMatrix target = bloch_to_density(random_direction());
            const Channel ch = ExponentialMixingChannel{rate, target};
            const auto n = static_cast<std::size_t>(
                std::max(60.0, std::ceil(40.0 / rate)));
            const auto m = static_cast<std::size_t>(1 + i % 10);
            const double d = chaos_degree_multi_step(ch, random_state(), n, m).degree;
            p.max_deviation = std::max(p.max_deviation, d);
        }
        p.pass = p.max_deviation < p.tolerance;
        report.properties.push_back(p);
    }
    {
        PropertyResult p{"measurement: degree constant in n, zero when commuting",
                         instances, 0, kTol, false};
        for (int i = 0; i < instances; ++i) {
            const BlochVector axis = random_direction();
            const Channel ch = measurement_along(axis);
            const DensityMatrix rho0 = random_state();
            double lo = 1e300, hi = -1e300;
            for (std::size_t n = 1; n <= 20; ++n) {
                const double d = chaos_degree_one_step(ch, rho0, n).degree;
                lo = std::min(lo, d);
                hi = std::max(hi, d);
            }
            // Commuting input: diagonal in the measurement eigenbasis.
            const DensityMatrix diag = bloch_to_density(sym(rng) * axis);
            const double dc = chaos_degree_one_step(ch, diag, 1).degree;
            p.max_deviation = std::max({p.max_deviation, hi - lo, dc});
        }
        p.pass = p.max_deviation < p.tolerance;
        report.properties.push_back(p);
    }

    report.all_pass = true;
    for (const auto& p : report.properties) report.all_pass = report.all_pass && p.pass;
    return report;
}

/// CSV with header `a,D`, one row per grid point, 12 significant digits,
/// '\n' line ends, no trailing blank line.
inline void emit_csv(const SweepResult& res, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open " + path + " for writing");
    out << "a,D\n";
    char buf[80];
    for (const auto& row : res.rows) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", row.a, row.degree);
        out << buf;
    }
    out.flush();
    if (!out) throw io_error("write to " + path + " failed");
}

/// Parse a file produced by emit_csv back into (a, D) pairs.
inline std::vector<std::pair<double, double>> parse_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != "a,D")
        throw io_error(path + ": missing a,D header");
    std::vector<std::pair<double, double>> rows;
    while (std::getline(in, line)) {
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw io_error(path + ": malformed row " + line);
        rows.emplace_back(std::stod(line.substr(0, comma)),
                          std::stod(line.substr(comma + 1)));
    }
    return rows;
}

namespace detail {

inline std::string svg_title(const SweepResult& res) {
    char buf[240];
    if (res.kind == SweepKind::quantum)
        std::snprintf(buf, sizeof buf,
                      "%s: %d points on [%g, %g], n=%zu, m=%zu, x0=(%g, %g, %g)",
                      res.label.c_str(), res.config.a_count, res.config.a_min,
                      res.config.a_max, res.config.n, res.config.m, res.config.x0.x1,
                      res.config.x0.x2, res.config.x0.x3);
    else
        std::snprintf(buf, sizeof buf,
                      "%s: %d points on [%g, %g], bins=%d, samples=%zu, transient=%zu",
                      res.label.c_str(), res.config.a_count, res.config.a_min,
                      res.config.a_max, res.config.bins, res.config.samples,
                      res.config.transient);
    return buf;
}

} // namespace detail

/// Scatter-plus-line plot of a sweep, parameter horizontal, degree (nats)
/// vertical; standalone SVG.
inline void emit_svg(const SweepResult& res, const std::string& path) {
    if (res.rows.size() < 2)
        throw insufficient_data_error("plot needs at least two points");
    constexpr int kW = 900, kH = 560, kL = 80, kR = 24, kT = 56, kB = 64;
    const double a_lo = res.rows.front().a, a_hi = res.rows.back().a;
    double d_hi = 0;
    for (const auto& row : res.rows) d_hi = std::max(d_hi, row.degree);
    if (d_hi <= 0) d_hi = 1e-3;  // keep the scale finite for all-zero sweeps
    const auto sx = [&](double a) {
        return kL + (a - a_lo) / (a_hi - a_lo) * (kW - kL - kR);
    };
    const auto sy = [&](double d) { return kH - kB - d / d_hi * (kH - kT - kB); };

    char buf[160];
    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\""
        << kH << "\" viewBox=\"0 0 " << kW << " " << kH << "\">\n"
        << "<rect width=\"" << kW << "\" height=\"" << kH << "\" fill=\"white\"/>\n"
        << "<text x=\"" << kW / 2 << "\" y=\"28\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"15\">"
        << detail::svg_title(res) << "</text>\n";

    svg << "<g stroke=\"black\" stroke-width=\"1\">\n";
    std::snprintf(buf, sizeof buf, "<line x1=\"%d\" y1=\"%d\" x2=\"%d\" y2=\"%d\"/>\n",
                  kL, kH - kB, kW - kR, kH - kB);
    svg << buf;
    std::snprintf(buf, sizeof buf, "<line x1=\"%d\" y1=\"%d\" x2=\"%d\" y2=\"%d\"/>\n",
                  kL, kT, kL, kH - kB);
    svg << buf;
    svg << "</g>\n<g font-family=\"sans-serif\" font-size=\"12\">\n";
    for (int i = 0; i <= 5; ++i) {
        const double av = a_lo + (a_hi - a_lo) * i / 5.0;
        const double dv = d_hi * i / 5.0;
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.1f\" y=\"%d\" text-anchor=\"middle\">%.4g</text>\n",
                      sx(av), kH - kB + 18, av);
        svg << buf;
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%d\" y=\"%.1f\" text-anchor=\"end\">%.4g</text>\n",
                      kL - 8, sy(dv) + 4, dv);
        svg << buf;
    }
    svg << "<text x=\"" << (kL + (kW - kL - kR) / 2)
        << "\" y=\"" << kH - 16 << "\" text-anchor=\"middle\">a</text>\n"
        << "<text x=\"22\" y=\"" << (kT + (kH - kT - kB) / 2)
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 22 "
        << (kT + (kH - kT - kB) / 2) << ")\">D (nats)</text>\n</g>\n";

    svg << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1\" points=\"";
    for (const auto& row : res.rows) {
        std::snprintf(buf, sizeof buf, "%.2f,%.2f ", sx(row.a), sy(row.degree));
        svg << buf;
    }
    svg << "\"/>\n";
    for (const auto& row : res.rows) {
        std::snprintf(buf, sizeof buf,
                      "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"2\" fill=\"#1f77b4\"/>\n",
                      sx(row.a), sy(row.degree));
        svg << buf;
    }
    svg << "</svg>\n";

    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open " + path + " for writing");
    out << svg.str();
    out.flush();
    if (!out) throw io_error("write to " + path + " failed");
}

} // namespace ecd
