// Command-line driver: chaos-degree sweeps, single-point evaluation, and
// the channel-stability verification suite.
//
// Exit codes: 0 success, 2 configuration/usage error, 3 I/O error,
// 4 verification-suite failure, 5 computation error (diverged orbit or
// not enough data), 1 anything unexpected.

#include <algorithm>
#include <cstdio>
#include <exception>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ecd/ecd.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUnexpected = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitTheorem = 4;
constexpr int kExitComputation = 5;

std::vector<double> parse_components(const std::string& text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string tok =
            text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ecd::config_error("x0", "cannot parse coordinate '" + tok + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

ecd::BlochVector parse_bloch(const std::string& text) {
    const auto v = parse_components(text);
    if (v.size() != 3)
        throw ecd::config_error("x0", "expected three comma-separated coordinates");
    return {v[0], v[1], v[2]};
}

const char* classification_name(ecd::Classification c) {
    switch (c) {
        case ecd::Classification::stable: return "stable";
        case ecd::Classification::weak_stable: return "weak-stable";
        case ecd::Classification::chaotic: return "chaotic";
        default: return "unclassified-single-point";
    }
}

std::string strip(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

/// `key = value` per line, `#` starts a comment.  Underscores in keys are
/// accepted as spelling of the dashed flag names.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ecd::config_error("config", "cannot open '" + path + "'");
    std::vector<std::pair<std::string, std::string>> pairs;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string text = strip(line);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        std::string key = eq == std::string::npos ? "" : strip(text.substr(0, eq));
        std::string value = eq == std::string::npos ? "" : strip(text.substr(eq + 1));
        if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') &&
            value.back() == value.front())
            value = value.substr(1, value.size() - 2);
        if (key.empty() || value.empty())
            throw ecd::config_error(
                "config", "line " + std::to_string(lineno) + ": expected key = value");
        std::replace(key.begin(), key.end(), '_', '-');
        pairs.emplace_back(key, value);
    }
    return pairs;
}

/// Expands `--config FILE` into per-key tokens injected after the
/// subcommand name.  Keys given explicitly on the command line are not
/// injected, so flags override the file.
std::vector<std::string> expand_config(const CLI::App& app, std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size();) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size())
                throw ecd::config_error("config", "--config needs a file path");
            path = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + i);
        } else {
            ++i;
        }
    }
    if (path.empty()) return args;

    std::size_t subpos = args.size();
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (!args[i].empty() && args[i][0] != '-') {
            subpos = i;
            break;
        }
    }
    if (subpos == args.size())
        throw ecd::config_error("config", "--config needs a subcommand");
    const CLI::App* sub = app.get_subcommand_no_throw(args[subpos]);
    if (sub == nullptr) return args;  // let the parser report the bad subcommand

    std::vector<std::string> inject;
    for (const auto& [key, value] : read_config_file(path)) {
        const std::string flag = "--" + key;
        const CLI::Option* opt =
            flag == "--config" ? nullptr : sub->get_option_no_throw(flag);
        if (opt == nullptr)
            throw ecd::config_error(key, "unknown config key for " + args[subpos]);
        bool overridden = false;
        for (std::size_t i = subpos + 1; i < args.size(); ++i)
            overridden = overridden || args[i] == flag ||
                         args[i].rfind(flag + "=", 0) == 0;
        if (overridden) continue;
        if (opt->get_expected_min() == 0) {  // flags take their value inline
            inject.push_back(flag + "=" + value);
        } else {
            inject.push_back(flag);
            inject.push_back(value);
        }
    }
    args.insert(args.begin() + subpos + 1, inject.begin(), inject.end());
    return args;
}

void add_config_flag(CLI::App* sub) {
    static std::string sink;  // consumed by expand_config before parsing
    sub->add_option("--config", sink, "key = value file; explicit flags override it");
}

void add_grid_flags(CLI::App* sub, ecd::SweepConfig& cfg) {
    sub->add_option("--a-min", cfg.a_min, "lower end of the parameter grid");
    sub->add_option("--a-max", cfg.a_max, "upper end of the parameter grid");
    sub->add_option("--a-count", cfg.a_count, "number of grid points (endpoints included)");
    sub->add_option("--seed", cfg.seed, "seed for randomized verification");
    sub->add_option("--out-csv", cfg.out_csv, "write the sweep as CSV");
    sub->add_option("--out-svg", cfg.out_svg, "write the sweep as an SVG plot");
    add_config_flag(sub);
}

void emit_outputs(const ecd::SweepResult& res, const ecd::SweepConfig& cfg) {
    if (!cfg.out_csv.empty()) ecd::emit_csv(res, cfg.out_csv);
    if (!cfg.out_svg.empty()) ecd::emit_svg(res, cfg.out_svg);
    std::printf("%s: %zu points, classification %s, %.2f s\n", res.label.c_str(),
                res.rows.size(), classification_name(res.classification),
                res.wall_seconds);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entropic chaos degree for qubit channels and classical maps", "ecd"};
    app.require_subcommand(1);

    ecd::SweepConfig qcfg;
    std::string qx0 = "0.3,0.3,0.3";
    bool full = false;
    CLI::App* qsweep = app.add_subcommand(
        "quantum-sweep", "chaos degree of the Baker channel over an a-grid");
    add_grid_flags(qsweep, qcfg);
    qsweep->add_option("--n", qcfg.n, "channel steps before decomposing");
    qsweep->add_option("--m", qcfg.m, "averaging horizon of the degree");
    qsweep->add_option("--x0", qx0, "initial Bloch vector, e.g. 0.3,0.3,0.3");
    qsweep->add_flag("--full", full, "full-scale preset: 740 points, n=2000, m=1000");

    double point_a = 0.5;
    ecd::SweepConfig pcfg;
    std::string px0 = "0.3,0.3,0.3";
    CLI::App* qpoint =
        app.add_subcommand("quantum-point", "chaos degree at a single a");
    qpoint->add_option("--a", point_a, "Baker map parameter")->required();
    qpoint->add_option("--n", pcfg.n, "channel steps before decomposing");
    qpoint->add_option("--m", pcfg.m, "averaging horizon of the degree");
    qpoint->add_option("--x0", px0, "initial Bloch vector");
    add_config_flag(qpoint);

    ecd::SweepConfig ccfg;
    ccfg.a_min = 3.0;
    ccfg.a_max = 4.0;
    ccfg.a_count = 200;
    std::string cx0;
    CLI::App* csweep = app.add_subcommand(
        "classical-sweep", "classical chaos degree over a parameter grid");
    add_grid_flags(csweep, ccfg);
    csweep->add_option("--map", ccfg.map_name, "logistic, baker or tinkerbell");
    csweep->add_option("--bins", ccfg.bins, "partition cells per axis");
    csweep->add_option("--transient", ccfg.transient, "iterates discarded before counting");
    csweep->add_option("--samples", ccfg.samples, "iterates counted");
    csweep->add_option("--x0", cx0, "initial point, e.g. 0.3 or -0.72,-0.64");

    unsigned long seed = 12345;
    CLI::App* verify = app.add_subcommand(
        "verify-theorem", "property checks of the channel-stability theorem");
    verify->add_option("--seed", seed, "seed for the random instances");
    add_config_flag(verify);

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = expand_config(app, std::move(args));
        std::reverse(args.begin(), args.end());  // the parser pops from the back
        app.parse(std::move(args));

        if (qsweep->parsed()) {
            if (full) {
                if (!qsweep->count("--a-count")) qcfg.a_count = 740;
                if (!qsweep->count("--n")) qcfg.n = 2000;
                if (!qsweep->count("--m")) qcfg.m = 1000;
            }
            qcfg.x0 = parse_bloch(qx0);
            emit_outputs(ecd::run_quantum_sweep(qcfg), qcfg);
        } else if (qpoint->parsed()) {
            pcfg.x0 = parse_bloch(px0);
            const ecd::Channel ch = ecd::baker_channel(point_a);
            const ecd::ChaosDegreeResult r = ecd::chaos_degree_multi_step(
                ch, ecd::bloch_to_density(pcfg.x0), pcfg.n, pcfg.m);
            std::printf("a = %.12g  n = %zu  m = %zu\n", point_a, pcfg.n, pcfg.m);
            std::printf("D = %.12g\n", r.degree);
            std::printf("eigenvalues = (%.12g, %.12g)%s\n",
                        r.decomposition.eigenvalues[0], r.decomposition.eigenvalues[1],
                        r.degenerate_path ? "  [degenerate: infimum search]" : "");
        } else if (csweep->parsed()) {
            if (!cx0.empty()) ccfg.classical_x0 = parse_components(cx0);
            emit_outputs(ecd::run_classical_sweep(ccfg), ccfg);
        } else if (verify->parsed()) {
            const ecd::TheoremReport report = ecd::run_theorem_suite(seed);
            std::printf("seed %lu\n", report.seed);
            for (const auto& p : report.properties)
                std::printf("%-70s  %3d samples  max dev %.3e  tol %.0e  %s\n",
                            p.name.c_str(), p.samples, p.max_deviation, p.tolerance,
                            p.pass ? "pass" : "FAIL");
            if (!report.all_pass) return kExitTheorem;
        }
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
            e.get_name() == "CallForVersion")
            return app.exit(e);
        app.exit(e);
        return kExitConfig;
    } catch (const ecd::config_error& e) {
        std::fprintf(stderr, "config error (%s): %s\n", e.field.c_str(), e.what());
        return kExitConfig;
    } catch (const ecd::io_error& e) {
        std::fprintf(stderr, "I/O error: %s\n", e.what());
        return kExitIo;
    } catch (const ecd::divergence_error& e) {
        std::fprintf(stderr, "computation error: %s (at step %zu)\n", e.what(),
                     e.escape_index);
        return kExitComputation;
    } catch (const ecd::insufficient_data_error& e) {
        std::fprintf(stderr, "computation error: %s\n", e.what());
        return kExitComputation;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUnexpected;
    }
}
