#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ecd/errors.hpp"
#include "ecd/matrix2.hpp"
#include "ecd/state.hpp"

namespace ecd {

inline constexpr double kSqrt2 = 1.4142135623730951;
inline constexpr double kInvSqrt2 = 0.7071067811865476;  // branch/clamp constant

/// rho -> U rho U^dagger with U = exp(i t H).  Global phase of H drops
/// out of the conjugation, so U is built from the traceless part alone:
/// H = alpha I + v . sigma gives U ~ cos(t|v|) I + i sin(t|v|) vhat.sigma.
class UnitaryChannel {
  public:
    UnitaryChannel(const Mat2& hamiltonian, double t) {
        if (hermiticity_defect(hamiltonian) > kHermTol)
            throw invalid_channel_error("Hamiltonian is not hermitian");
        const double v1 = hamiltonian(0, 1).real();
        const double v2 = -hamiltonian(0, 1).imag();
        const double v3 = (hamiltonian(0, 0) - hamiltonian(1, 1)).real() / 2.0;
        const double vn = std::sqrt(v1 * v1 + v2 * v2 + v3 * v3);
        if (vn == 0.0) {
            u_ = kIdentity;
        } else {
            const double c = std::cos(t * vn), s = std::sin(t * vn);
            const cplx is{0, s};
            u_ = cplx{c, 0} * kIdentity +
                 is * (cplx{v1 / vn, 0} * kSigmaX + cplx{v2 / vn, 0} * kSigmaY +
                       cplx{v3 / vn, 0} * kSigmaZ);
        }
    }

    DensityMatrix apply(const DensityMatrix& rho) const {
        return DensityMatrix{u_ * rho.mat() * u_.adjoint()};
    }

    const Mat2& unitary() const { return u_; }

  private:
    Mat2 u_;
};

/// rho -> rho0, regardless of input.
class ConstantChannel {
  public:
    explicit ConstantChannel(DensityMatrix target) : target_(std::move(target)) {}
    DensityMatrix apply(const DensityMatrix&) const { return target_; }
    const DensityMatrix& target() const { return target_; }

  private:
    DensityMatrix target_;
};

/// rho -> exp(-rate) rho + (1 - exp(-rate)) rho0, rate > 0.
class ExponentialMixingChannel {
  public:
    ExponentialMixingChannel(double rate, DensityMatrix target)
        : rate_(rate), target_(std::move(target)) {
        if (!(rate > 0.0))
            throw invalid_channel_error("mixing rate must be positive, got " +
                                        std::to_string(rate));
    }

    DensityMatrix apply(const DensityMatrix& rho) const {
        const cplx w{std::exp(-rate_), 0};
        return DensityMatrix{w * rho.mat() + (cplx{1, 0} - w) * target_.mat()};
    }

    double rate() const { return rate_; }
    const DensityMatrix& target() const { return target_; }

  private:
    double rate_;
    DensityMatrix target_;
};

/// rho -> sum_k P_k rho P_k.  Trace preservation for every input forces
/// sum P_k^2 = I, which together with positivity makes the P_k mutually
/// orthogonal projectors; both resolutions are validated here.
class MeasurementChannel {
  public:
    explicit MeasurementChannel(std::vector<Mat2> projectors)
        : p_(std::move(projectors)) {
        if (p_.empty()) throw invalid_channel_error("empty projector set");
        Mat2 sum{}, sumsq{};
        for (const Mat2& p : p_) {
            if (hermiticity_defect(p) > kHermTol)
                throw invalid_channel_error("projector is not hermitian");
            const double t = p.trace().real(), d = p.det().real();
            const double lo = t / 2.0 - std::sqrt(std::max(t * t / 4.0 - d, 0.0));
            if (lo < -kEigClip)
                throw invalid_channel_error("projector has negative eigenvalue");
            sum = sum + p;
            sumsq = sumsq + p * p;
        }
        if (max_abs_diff(sum, kIdentity) > kHermTol)
            throw invalid_channel_error("projectors do not sum to the identity");
        if (max_abs_diff(sumsq, kIdentity) > 1e-10)
            throw invalid_channel_error("map is not trace preserving "
                                        "(projectors are not orthogonal)");
    }

    DensityMatrix apply(const DensityMatrix& rho) const {
        Mat2 acc{};
        for (const Mat2& p : p_) acc = acc + p * rho.mat() * p;
        return DensityMatrix{acc};
    }

    const std::vector<Mat2>& projectors() const { return p_; }

  private:
    std::vector<Mat2> p_;
};

/// Channel given directly as a map on Bloch vectors.  Construction probes
/// a 20^3 grid of the ball and rejects maps that leave it; apply() also
/// checks each actual output, since a grid can miss excursions.
class BlochMapChannel {
  public:
    explicit BlochMapChannel(std::function<BlochVector(const BlochVector&)> f)
        : f_(std::move(f)) {
        if (!f_) throw invalid_channel_error("empty Bloch map");
        constexpr int kGrid = 20;
        for (int i = 0; i < kGrid; ++i)
            for (int j = 0; j < kGrid; ++j)
                for (int k = 0; k < kGrid; ++k) {
                    auto coord = [](int n) { return -1.0 + 2.0 * n / (kGrid - 1); };
                    const BlochVector x{coord(i), coord(j), coord(k)};
                    if (x.norm() > 1.0) continue;
                    if (f_(x).norm() > 1.0 + kNormTol)
                        throw invalid_channel_error(
                            "map leaves the Bloch ball on the validation grid");
                }
    }

    DensityMatrix apply(const DensityMatrix& rho) const {
        const BlochVector y = f_(density_to_bloch(rho));
        if (y.norm() > 1.0 + kNormTol)
            throw invalid_channel_error("map output left the Bloch ball");
        return bloch_to_density(y);
    }

  private:
    std::function<BlochVector(const BlochVector&)> f_;
};

using Channel = std::variant<UnitaryChannel, ConstantChannel, ExponentialMixingChannel,
                             MeasurementChannel, BlochMapChannel>;

inline DensityMatrix apply_channel(const Channel& ch, const DensityMatrix& rho) {
    return std::visit([&](const auto& c) { return c.apply(rho); }, ch);
}

/// Pure-state projector (I + n.sigma)/2 for a unit axis n.
inline Mat2 projector(const BlochVector& axis) {
    const double r = axis.norm();
    if (std::abs(r - 1.0) > kNormTol)
        throw invalid_channel_error("projector axis must be a unit vector");
    return bloch_to_density(axis).mat();
}

inline MeasurementChannel measurement_along(const BlochVector& axis) {
    return MeasurementChannel{{projector(axis), projector(-axis)}};
}

/// One step of the Baker's-type map on the Bloch ball, contraction a.
///
/// Components with |x| > 1/sqrt(2) are zeroed first (each independently);
/// the boundary itself is left alone so the corner fixed point
/// (-1/sqrt(2), -1/sqrt(2), 0) survives.  Then, writing c = 1/sqrt(2):
///   x1 <  0:  (2a(x1+c) - c,          a(x2+c)/2 - c,            0)
///   x1 >= 0:  (2a(x1+c) - sqrt(2)a - c, a(x2+c)/2 + a/sqrt(2) - c, 0)
/// The image is the square [-c, c]^2 in the z = 0 plane, so iterates stay
/// inside the ball for any a in [0, 1].
inline BlochVector baker_map(const BlochVector& x, double a) {
    if (!(a >= 0.0) || a > 1.0)
        throw config_error("a", "baker map parameter must lie in [0, 1], got " +
                                    std::to_string(a));
    constexpr double c = kInvSqrt2;
    const double x1 = std::abs(x.x1) > c ? 0.0 : x.x1;
    const double x2 = std::abs(x.x2) > c ? 0.0 : x.x2;
    if (x1 < 0.0)
        return {2.0 * a * (x1 + c) - c, a * (x2 + c) / 2.0 - c, 0.0};
    return {2.0 * a * (x1 + c) - kSqrt2 * a - c, a * (x2 + c) / 2.0 + a * kInvSqrt2 - c,
            0.0};
}

inline Channel baker_channel(double a) {
    baker_map(BlochVector{}, a);  // surface bad parameters at construction
    return BlochMapChannel{[a](const BlochVector& x) { return baker_map(x, a); }};
}

} // namespace ecd
