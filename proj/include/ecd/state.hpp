#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "ecd/errors.hpp"
#include "ecd/matrix2.hpp"

namespace ecd {

// Numeric policy, shared across the library.
inline constexpr double kNormTol = 1e-12;        // Bloch ball membership slack
inline constexpr double kHermTol = 1e-12;        // hermiticity / trace slack
inline constexpr double kEigClip = 1e-12;        // eigenvalues in [-clip, 0) snap to 0
inline constexpr double kDegenerateTol = 1e-9;   // spectral-gap threshold
// Below this radius the Bloch direction carries no information and the
// decomposition falls back to the canonical z axis.  Between the floor and
// kDegenerateTol the true eigenbasis is kept (reconstruction stays exact)
// while the degenerate flag still routes degree computations to the
// infimum search.
inline constexpr double kDegenerateFloor = 1e-15;
// States within this distance of purity (1 - ||X||) keep their raw Bloch
// vector as eigenstate direction instead of normalizing it.  Normalizing a
// machine-pure vector can push components one ulp past branch boundaries of
// piecewise channel maps; leaving it raw keeps the decomposition's
// reconstruction error at (1 - ||X||)/2, inside the 1e-10 contract.
inline constexpr double kPureSnapTol = 2e-10;

inline constexpr double kLn2 = 0.6931471805599453;

/// Real 3-vector X with rho = (I + X . sigma)/2.  Valid as a state when
/// ||X|| <= 1 + kNormTol; enforced at the conversion boundary, not here,
/// so intermediate map arithmetic can use the type freely.
struct BlochVector {
    double x1 = 0, x2 = 0, x3 = 0;

    double norm() const { return std::sqrt(x1 * x1 + x2 * x2 + x3 * x3); }

    friend BlochVector operator*(double s, const BlochVector& v) {
        return {s * v.x1, s * v.x2, s * v.x3};
    }
    friend BlochVector operator+(const BlochVector& a, const BlochVector& b) {
        return {a.x1 + b.x1, a.x2 + b.x2, a.x3 + b.x3};
    }
    friend BlochVector operator-(const BlochVector& v) { return {-v.x1, -v.x2, -v.x3}; }
    friend bool operator==(const BlochVector&, const BlochVector&) = default;
};

/// Qubit density matrix.  Construction validates hermiticity, unit trace
/// and positive semidefiniteness (within the shared tolerances), so a
/// live instance is always a usable state.
class DensityMatrix {
  public:
    explicit DensityMatrix(const Mat2& m) : m_(m) {
        const double herm = hermiticity_defect(m_);
        if (herm > kHermTol)
            throw invalid_state_error("not hermitian: defect " + std::to_string(herm));
        const double tr = m_.trace().real();
        if (std::abs(tr - 1.0) > kHermTol)
            throw invalid_state_error("trace " + std::to_string(tr) + " != 1");
        if (min_eigenvalue() < -kEigClip)
            throw invalid_state_error("negative eigenvalue " +
                                      std::to_string(min_eigenvalue()));
    }

    const Mat2& mat() const { return m_; }
    cplx operator()(int i, int j) const { return m_(i, j); }

    /// Eigenvalues {larger, smaller}, real by hermiticity, via the
    /// characteristic polynomial.
    std::array<double, 2> eigenvalues() const {
        const double t = m_.trace().real();
        const double d = m_.det().real();
        const double disc = std::max(t * t / 4.0 - d, 0.0);
        const double s = std::sqrt(disc);
        return {t / 2.0 + s, t / 2.0 - s};
    }

    double min_eigenvalue() const { return eigenvalues()[1]; }

  private:
    Mat2 m_;
};

inline DensityMatrix maximally_mixed() {
    return DensityMatrix{0.5 * kIdentity};
}

/// rho = (I + X . sigma)/2.  Rejects vectors outside the Bloch ball.
inline DensityMatrix bloch_to_density(const BlochVector& v) {
    if (v.norm() > 1.0 + kNormTol)
        throw invalid_state_error("Bloch vector norm " + std::to_string(v.norm()) +
                                  " outside unit ball");
    Mat2 m{{cplx{(1 + v.x3) / 2, 0}, cplx{v.x1 / 2, -v.x2 / 2},
            cplx{v.x1 / 2, v.x2 / 2}, cplx{(1 - v.x3) / 2, 0}}};
    return DensityMatrix{m};
}

/// Inverse of bloch_to_density.  A state whose smallest eigenvalue sits in
/// the allowed [-kEigClip, 0) band maps just outside the unit sphere; the
/// result is pulled back onto it (entrywise change <= kEigClip).
inline BlochVector density_to_bloch(const DensityMatrix& rho) {
    BlochVector v{(rho(0, 1) + rho(1, 0)).real(),
                  (rho(1, 0) - rho(0, 1)).imag(),
                  (rho(0, 0) - rho(1, 1)).real()};
    const double r = v.norm();
    if (r > 1.0) v = (1.0 / r) * v;
    return v;
}

/// -sum lambda ln lambda over {p, 1-p}, in nats.
inline double binary_entropy(double p) {
    double s = 0;
    for (double lam : {p, 1.0 - p}) {
        if (lam < 0.0 && lam >= -kEigClip) lam = 0.0;
        if (lam > 1.0 && lam <= 1.0 + kEigClip) lam = 1.0;
        if (lam > 0.0) s -= lam * std::log(lam);
    }
    return std::clamp(s, 0.0, kLn2);
}

/// Von Neumann entropy in nats, in [0, ln 2].
inline double von_neumann_entropy(const DensityMatrix& rho) {
    return binary_entropy(rho.eigenvalues()[0]);
}

/// Schatten decomposition rho = sum_k lambda_k |e_k><e_k| in Bloch form:
/// eigenstates are the pure states at +-X/||X||.
struct SpectralDecomposition {
    std::array<double, 2> eigenvalues;    // descending, sum 1
    std::array<BlochVector, 2> eigenstates;
    bool degenerate = false;              // spectral gap below kDegenerateTol
};

inline SpectralDecomposition spectral_decompose(const DensityMatrix& rho) {
    const BlochVector x = density_to_bloch(rho);
    const double r = x.norm();
    const double lo = std::max((1.0 - r) / 2.0, 0.0);
    SpectralDecomposition d;
    d.eigenvalues = {(1.0 + r) / 2.0, lo};
    d.degenerate = r < kDegenerateTol;
    if (r < kDegenerateFloor) {
        // Direction is numerically meaningless; use the canonical z axis.
        d.eigenstates = {BlochVector{0, 0, 1}, BlochVector{0, 0, -1}};
    } else if (1.0 - r < kPureSnapTol) {
        d.eigenstates = {x, -x};
    } else {
        d.eigenstates = {(1.0 / r) * x, -(1.0 / r) * x};
    }
    return d;
}

/// sum_k lambda_k rho(e_k), for checking reconstruction error.
inline Mat2 reconstruct(const SpectralDecomposition& d) {
    Mat2 acc{};
    for (int k = 0; k < 2; ++k) {
        const Mat2 pure = bloch_to_density(d.eigenstates[k]).mat();
        acc = acc + cplx{d.eigenvalues[k], 0} * pure;
    }
    return acc;
}

} // namespace ecd
