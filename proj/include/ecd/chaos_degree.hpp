#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "ecd/channels.hpp"
#include "ecd/errors.hpp"
#include "ecd/state.hpp"

namespace ecd {

// Classifier thresholds on trajectories of degree values.
inline constexpr double kZeroTol = 1e-6;   // a degree below this counts as zero
inline constexpr double kConstTol = 1e-6;  // spread below this counts as constant

inline DensityMatrix evolve(const Channel& ch, DensityMatrix rho, std::size_t steps) {
    for (std::size_t i = 0; i < steps; ++i) rho = apply_channel(ch, rho);
    return rho;
}

enum class Classification { stable, weak_stable, chaotic, unclassified_single_point };

struct ChaosDegreeResult {
    double degree = 0;
    // Decomposition of the evolved state: the Schatten basis, or the argmin
    // basis when the spectrum is degenerate and the infimum search ran.
    SpectralDecomposition decomposition;
    // S_k = sum_{j=1..m} S(F^j e_k); degree = (1/m) sum_k lambda_k S_k.
    std::array<double, 2> eigenstate_entropies{};
    bool degenerate_path = false;
    Classification classification = Classification::unclassified_single_point;
};

namespace detail {

/// sum_{j=1..m} S(F^j e) for a pure starting direction e.
inline double orbit_entropy_sum(const Channel& ch, const BlochVector& e,
                                std::size_t m) {
    DensityMatrix rho = bloch_to_density(e);
    double acc = 0;
    for (std::size_t j = 0; j < m; ++j) {
        rho = apply_channel(ch, rho);
        acc += von_neumann_entropy(rho);
    }
    return acc;
}

inline BlochVector normalized(const BlochVector& v) {
    const double r = v.norm();
    return r > 0 ? (1.0 / r) * v : BlochVector{0, 0, 1};
}

inline BlochVector cross(const BlochVector& a, const BlochVector& b) {
    return {a.x2 * b.x3 - a.x3 * b.x2, a.x3 * b.x1 - a.x1 * b.x3,
            a.x1 * b.x2 - a.x2 * b.x1};
}

} // namespace detail

struct DegenerateMinimum {
    double degree = 0;
    BlochVector axis;                       // argmin eigenbasis is {axis, -axis}
    std::array<double, 2> entropy_sums{};
};

/// Infimum of the degree over eigenbases of a (near-)degenerate state.
/// Every orthogonal eigenbasis of rho ~ I/2 is a pair of antipodal pure
/// states, so the search space is the unit sphere.  Coarse pass: a
/// 1000-point Fibonacci lattice plus the canonical +-z basis; fine pass:
/// Nelder-Mead in a tangent-plane chart around the best lattice point.
/// The canonical basis is always among the candidates, so the result
/// never exceeds its value.
inline DegenerateMinimum minimize_degenerate(const Channel& ch,
                                             const std::array<double, 2>& eigenvalues,
                                             std::size_t m) {
    if (m < 1) throw config_error("m", "need at least one degree step");

    const auto entropy_pair = [&](const BlochVector& u) -> std::array<double, 2> {
        return {detail::orbit_entropy_sum(ch, u, m),
                detail::orbit_entropy_sum(ch, -u, m)};
    };
    const auto degree_of = [&](const std::array<double, 2>& s) {
        return (eigenvalues[0] * s[0] + eigenvalues[1] * s[1]) /
               static_cast<double>(m);
    };

    DegenerateMinimum best;
    best.axis = {0, 0, 1};
    best.entropy_sums = entropy_pair(best.axis);
    best.degree = degree_of(best.entropy_sums);

    const auto consider = [&](const BlochVector& u) {
        const auto s = entropy_pair(u);
        const double d = degree_of(s);
        if (d < best.degree) best = {d, u, s};
    };

    constexpr int kLattice = 1000;
    const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < kLattice; ++i) {
        const double z = 1.0 - (2.0 * i + 1.0) / kLattice;
        const double rxy = std::sqrt(std::max(1.0 - z * z, 0.0));
        const double phi = golden_angle * i;
        consider({rxy * std::cos(phi), rxy * std::sin(phi), z});
    }

    // Tangent-plane chart u(s, t) = normalize(u0 + s e1 + t e2).
    const BlochVector u0 = best.axis;
    const BlochVector pick = std::abs(u0.x1) < 0.9 ? BlochVector{1, 0, 0}
                                                   : BlochVector{0, 1, 0};
    const BlochVector e1 = detail::normalized(detail::cross(u0, pick));
    const BlochVector e2 = detail::cross(u0, e1);
    const auto chart = [&](double s, double t) {
        return detail::normalized(u0 + s * e1 + t * e2);
    };
    const auto f = [&](const std::array<double, 2>& p) {
        return degree_of(entropy_pair(chart(p[0], p[1])));
    };

    // Nelder-Mead, standard coefficients.
    std::array<std::array<double, 2>, 3> xs{{{0, 0}, {0.1, 0}, {0, 0.1}}};
    std::array<double, 3> fs{f(xs[0]), f(xs[1]), f(xs[2])};
    for (int it = 0; it < 300; ++it) {
        std::array<int, 3> ord{0, 1, 2};
        std::sort(ord.begin(), ord.end(), [&](int a, int b) { return fs[a] < fs[b]; });
        const auto &xb = xs[ord[0]], &xm = xs[ord[1]], &xw = xs[ord[2]];
        const double diam = std::max(std::hypot(xb[0] - xw[0], xb[1] - xw[1]),
                                     std::hypot(xb[0] - xm[0], xb[1] - xm[1]));
        if (fs[ord[2]] - fs[ord[0]] < 1e-13 && diam < 1e-10) break;
        const std::array<double, 2> cen{(xb[0] + xm[0]) / 2, (xb[1] + xm[1]) / 2};
        const auto at = [&](double coef) {
            return std::array<double, 2>{cen[0] + coef * (cen[0] - xw[0]),
                                         cen[1] + coef * (cen[1] - xw[1])};
        };
        const auto xr = at(1.0);
        const double fr = f(xr);
        if (fr < fs[ord[0]]) {
            const auto xe = at(2.0);
            const double fe = f(xe);
            if (fe < fr) { xs[ord[2]] = xe; fs[ord[2]] = fe; }
            else { xs[ord[2]] = xr; fs[ord[2]] = fr; }
        } else if (fr < fs[ord[1]]) {
            xs[ord[2]] = xr; fs[ord[2]] = fr;
        } else {
            const auto xc = at(-0.5);
            const double fc = f(xc);
            if (fc < fs[ord[2]]) { xs[ord[2]] = xc; fs[ord[2]] = fc; }
            else {
                for (int i : {ord[1], ord[2]}) {
                    xs[i] = {xb[0] + 0.5 * (xs[i][0] - xb[0]),
                             xb[1] + 0.5 * (xs[i][1] - xb[1])};
                    fs[i] = f(xs[i]);
                }
            }
        }
    }
    for (int i = 0; i < 3; ++i) consider(chart(xs[i][0], xs[i][1]));
    return best;
}

/// Entropic chaos degree of the state after n channel steps, averaged
/// over an m-step future: D = (1/m) sum_k lambda_k sum_{j=1..m} S(F^j e_k),
/// with {lambda_k, e_k} the Schatten decomposition of rho^(n).  Degenerate
/// spectra route through the infimum search over eigenbases.
inline ChaosDegreeResult chaos_degree_multi_step(const Channel& ch,
                                                 const DensityMatrix& rho0,
                                                 std::size_t n, std::size_t m) {
    if (m < 1) throw config_error("m", "need at least one degree step");
    ChaosDegreeResult out;
    const DensityMatrix rho_n = evolve(ch, rho0, n);
    out.decomposition = spectral_decompose(rho_n);
    if (out.decomposition.degenerate) {
        const DegenerateMinimum min =
            minimize_degenerate(ch, out.decomposition.eigenvalues, m);
        out.degree = min.degree;
        out.decomposition.eigenstates = {min.axis, -min.axis};
        out.eigenstate_entropies = min.entropy_sums;
        out.degenerate_path = true;
        return out;
    }
    double acc = 0;
    for (int k = 0; k < 2; ++k) {
        const double lam = out.decomposition.eigenvalues[k];
        if (lam <= 0.0) continue;  // zero weight contributes nothing
        out.eigenstate_entropies[k] =
            detail::orbit_entropy_sum(ch, out.decomposition.eigenstates[k], m);
        acc += lam * out.eigenstate_entropies[k];
    }
    out.degree = acc / static_cast<double>(m);
    return out;
}

inline ChaosDegreeResult chaos_degree_one_step(const Channel& ch,
                                               const DensityMatrix& rho0,
                                               std::size_t n) {
    return chaos_degree_multi_step(ch, rho0, n, 1);
}

/// Trajectory classifier.  stable: every degree is zero (below kZeroTol);
/// weak_stable: degrees are constant (spread below kConstTol) at a nonzero
/// mean; chaotic: anything else.
inline Classification classify(const std::vector<double>& degrees) {
    if (degrees.size() < 2)
        throw insufficient_data_error("classification needs at least two degree values");
    const auto [lo, hi] = std::minmax_element(degrees.begin(), degrees.end());
    const bool all_zero = std::all_of(degrees.begin(), degrees.end(),
                                      [](double d) { return std::abs(d) < kZeroTol; });
    if (all_zero) return Classification::stable;
    double mean = 0;
    for (double d : degrees) mean += d;
    mean /= static_cast<double>(degrees.size());
    if (*hi - *lo < kConstTol && mean >= kZeroTol) return Classification::weak_stable;
    return Classification::chaotic;
}

} // namespace ecd
