#pragma once

// Independent reference implementations used only by the tests.  Each one
// deliberately takes a different route than the library: entropy via the
// Bloch-norm identity instead of the characteristic polynomial, a full
// 4x4 Jacobi eigensolver for Kronecker products, and a derivative-sum
// Lyapunov exponent for the logistic map.

#include <array>
#include <cmath>
#include <complex>
#include <random>

#include "ecd/ecd.hpp"

namespace oracle {

/// Entropy from the norm of the Bloch vector: S = h((1 + ||X||)/2).
inline double entropy_via_bloch(const ecd::DensityMatrix& rho) {
    const double r = ecd::density_to_bloch(rho).norm();
    double s = 0;
    for (double lam : {(1.0 + r) / 2.0, (1.0 - r) / 2.0})
        if (lam > 0.0) s -= lam * std::log(lam);
    return s;
}

using C4 = std::array<std::array<std::complex<double>, 4>, 4>;

/// Kronecker product of two qubit states as a dense 4x4 matrix.
inline C4 kron(const ecd::Mat2& a, const ecd::Mat2& b) {
    C4 out{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    out[2 * i + k][2 * j + l] = a(i, j) * b(k, l);
    return out;
}

/// Eigenvalues of a 4x4 complex hermitian matrix via cyclic Jacobi
/// rotations.  Each (p, q) step first rotates the phase of a_pq onto the
/// real axis, then applies the classical symmetric Jacobi angle.
inline std::array<double, 4> jacobi_eigenvalues(C4 a) {
    using cplx = std::complex<double>;
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0;
        for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q) off += std::norm(a[p][q]);
        if (off < 1e-30) break;
        for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q) {
                const double g = std::abs(a[p][q]);
                if (g < 1e-300) continue;
                const cplx phase = std::conj(a[p][q]) / g;
                const double alpha = a[p][p].real(), beta = a[q][q].real();
                const double theta = 0.5 * std::atan2(2.0 * g, alpha - beta);
                const double c = std::cos(theta), s = std::sin(theta);
                // G = diag(1, phase) * plane rotation by theta; then
                // (G^dagger A G)_pq = 0 for the hermitian block.
                const cplx gpp{c, 0}, gpq{-s, 0};
                const cplx gqp = phase * s, gqq = phase * c;
                for (int r = 0; r < 4; ++r) {  // A <- A G
                    const cplx ap = a[r][p], aq = a[r][q];
                    a[r][p] = ap * gpp + aq * gqp;
                    a[r][q] = ap * gpq + aq * gqq;
                }
                for (int r = 0; r < 4; ++r) {  // A <- G^dagger A
                    const cplx ap = a[p][r], aq = a[q][r];
                    a[p][r] = std::conj(gpp) * ap + std::conj(gqp) * aq;
                    a[q][r] = std::conj(gpq) * ap + std::conj(gqq) * aq;
                }
            }
    }
    return {a[0][0].real(), a[1][1].real(), a[2][2].real(), a[3][3].real()};
}

/// Entropy of a 4x4 state from the Jacobi spectrum, clipping the same
/// [-1e-12, 0) band as the library.
inline double entropy4(const C4& m) {
    double s = 0;
    for (double lam : jacobi_eigenvalues(m)) {
        if (lam < 0.0 && lam >= -1e-12) lam = 0.0;
        if (lam > 0.0) s -= lam * std::log(lam);
    }
    return s;
}

/// Lyapunov exponent of the logistic map by the derivative sum
/// (1/T) sum ln |r (1 - 2 x_t)| along the orbit.
inline double logistic_lyapunov(double r, double x0, std::size_t transient,
                                std::size_t samples) {
    double x = x0;
    for (std::size_t i = 0; i < transient; ++i) x = r * x * (1.0 - x);
    double acc = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        acc += std::log(std::abs(r * (1.0 - 2.0 * x)));
        x = r * x * (1.0 - x);
    }
    return acc / static_cast<double>(samples);
}

/// Deterministic random states and channels for property tests.
struct Rng {
    std::mt19937_64 gen;
    explicit Rng(unsigned long seed) : gen(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen);
    }

    ecd::BlochVector direction() {
        std::normal_distribution<double> g(0.0, 1.0);
        while (true) {
            const ecd::BlochVector v{g(gen), g(gen), g(gen)};
            const double r = v.norm();
            if (r > 1e-6) return (1.0 / r) * v;
        }
    }

    ecd::BlochVector in_ball() { return std::cbrt(uniform(0, 1)) * direction(); }

    ecd::DensityMatrix state() { return ecd::bloch_to_density(in_ball()); }

    ecd::Mat2 hermitian(double scale = 2.0) {
        using ecd::cplx;
        return cplx{uniform(-scale, scale), 0} * ecd::kIdentity +
               cplx{uniform(-scale, scale), 0} * ecd::kSigmaX +
               cplx{uniform(-scale, scale), 0} * ecd::kSigmaY +
               cplx{uniform(-scale, scale), 0} * ecd::kSigmaZ;
    }

    ecd::UnitaryChannel unitary() {
        return ecd::UnitaryChannel{hermitian(), uniform(-3.0, 3.0)};
    }
};

} // namespace oracle
