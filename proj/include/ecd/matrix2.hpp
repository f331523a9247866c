#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace ecd {

using cplx = std::complex<double>;

/// Dense complex 2x2 matrix, row-major. Value type with the handful of
/// operations the qubit formalism needs; not a general linear-algebra
/// class.
struct Mat2 {
    std::array<cplx, 4> e{};  // e[0]=a00 e[1]=a01 e[2]=a10 e[3]=a11

    constexpr cplx& operator()(int i, int j) { return e[2 * i + j]; }
    constexpr const cplx& operator()(int i, int j) const { return e[2 * i + j]; }

    friend Mat2 operator+(const Mat2& x, const Mat2& y) {
        return {{x.e[0] + y.e[0], x.e[1] + y.e[1], x.e[2] + y.e[2], x.e[3] + y.e[3]}};
    }
    friend Mat2 operator-(const Mat2& x, const Mat2& y) {
        return {{x.e[0] - y.e[0], x.e[1] - y.e[1], x.e[2] - y.e[2], x.e[3] - y.e[3]}};
    }
    friend Mat2 operator*(cplx s, const Mat2& x) {
        return {{s * x.e[0], s * x.e[1], s * x.e[2], s * x.e[3]}};
    }
    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {{x.e[0] * y.e[0] + x.e[1] * y.e[2], x.e[0] * y.e[1] + x.e[1] * y.e[3],
                 x.e[2] * y.e[0] + x.e[3] * y.e[2], x.e[2] * y.e[1] + x.e[3] * y.e[3]}};
    }

    Mat2 adjoint() const {
        return {{std::conj(e[0]), std::conj(e[2]), std::conj(e[1]), std::conj(e[3])}};
    }
    cplx trace() const { return e[0] + e[3]; }
    cplx det() const { return e[0] * e[3] - e[1] * e[2]; }

    /// Max entrywise absolute difference.
    friend double max_abs_diff(const Mat2& x, const Mat2& y) {
        double d = 0;
        for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(x.e[i] - y.e[i]));
        return d;
    }
};

inline constexpr Mat2 kIdentity{{cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{1, 0}}};
inline constexpr Mat2 kSigmaX{{cplx{0, 0}, cplx{1, 0}, cplx{1, 0}, cplx{0, 0}}};
inline constexpr Mat2 kSigmaY{{cplx{0, 0}, cplx{0, -1}, cplx{0, 1}, cplx{0, 0}}};
inline constexpr Mat2 kSigmaZ{{cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{-1, 0}}};

/// Deviation from hermiticity, max over entries of |A - A^dagger|.
inline double hermiticity_defect(const Mat2& a) {
    return max_abs_diff(a, a.adjoint());
}

} // namespace ecd
