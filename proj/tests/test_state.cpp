#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ecd/ecd.hpp"
#include "oracles.hpp"

using namespace ecd;

TEST_CASE("bloch_to_density maps landmarks correctly") {
    SECTION("center of the ball is the maximally mixed state") {
        const DensityMatrix rho = bloch_to_density({0, 0, 0});
        CHECK(rho(0, 0) == cplx{0.5, 0});
        CHECK(rho(0, 1) == cplx{0, 0});
        CHECK(rho(1, 0) == cplx{0, 0});
        CHECK(rho(1, 1) == cplx{0.5, 0});
    }
    SECTION("north pole is diag(1, 0)") {
        const DensityMatrix rho = bloch_to_density({0, 0, 1});
        CHECK(rho(0, 0) == cplx{1, 0});
        CHECK(rho(1, 1) == cplx{0, 0});
    }
    SECTION("eigenvalues are (1 +- ||v||)/2") {
        const DensityMatrix rho = bloch_to_density({0.3, 0.3, 0.3});
        const double r = std::sqrt(0.27);
        const auto ev = rho.eigenvalues();
        CHECK_THAT(ev[0], Catch::Matchers::WithinAbs((1 + r) / 2, 1e-14));
        CHECK_THAT(ev[1], Catch::Matchers::WithinAbs((1 - r) / 2, 1e-14));
        CHECK_THAT(ev[0], Catch::Matchers::WithinAbs(0.7598076211353316, 1e-12));
    }
    SECTION("vectors outside the ball are rejected") {
        CHECK_THROWS_AS(bloch_to_density({1.1, 0, 0}), invalid_state_error);
        CHECK_THROWS_AS(bloch_to_density({0.8, 0.8, 0.8}), invalid_state_error);
    }
}

TEST_CASE("DensityMatrix construction validates its contract") {
    CHECK_THROWS_AS(DensityMatrix(Mat2{{cplx{0.5, 0}, cplx{0.3, 0}, cplx{0.1, 0},
                                        cplx{0.5, 0}}}),
                    invalid_state_error);  // not hermitian
    CHECK_THROWS_AS(DensityMatrix(Mat2{{cplx{0.7, 0}, cplx{0, 0}, cplx{0, 0},
                                        cplx{0.7, 0}}}),
                    invalid_state_error);  // trace 1.4
    CHECK_THROWS_AS(DensityMatrix(Mat2{{cplx{1.2, 0}, cplx{0, 0}, cplx{0, 0},
                                        cplx{-0.2, 0}}}),
                    invalid_state_error);  // negative eigenvalue
    CHECK_NOTHROW(DensityMatrix(Mat2{{cplx{0.76, 0}, cplx{0, 0}, cplx{0, 0},
                                      cplx{0.24, 0}}}));
}

TEST_CASE("density_to_bloch inverts bloch_to_density") {
    CHECK(density_to_bloch(maximally_mixed()) == BlochVector{0, 0, 0});
    const BlochVector pole =
        density_to_bloch(DensityMatrix{Mat2{{cplx{1, 0}, {}, {}, cplx{0, 0}}}});
    CHECK(pole == BlochVector{0, 0, 1});
    const BlochVector v = density_to_bloch(bloch_to_density({0.3, 0.3, 0.3}));
    CHECK_THAT(v.x1, Catch::Matchers::WithinAbs(0.3, 1e-15));
    CHECK_THAT(v.x2, Catch::Matchers::WithinAbs(0.3, 1e-15));
    CHECK_THAT(v.x3, Catch::Matchers::WithinAbs(0.3, 1e-15));
}

TEST_CASE("round trip bloch<->density is the identity on random states") {
    oracle::Rng rng(101);
    for (int i = 0; i < 1000; ++i) {
        const BlochVector v = rng.in_ball();
        const DensityMatrix rho = bloch_to_density(v);
        const BlochVector w = density_to_bloch(rho);
        CHECK(std::abs(v.x1 - w.x1) < 1e-12);
        CHECK(std::abs(v.x2 - w.x2) < 1e-12);
        CHECK(std::abs(v.x3 - w.x3) < 1e-12);
        CHECK(max_abs_diff(bloch_to_density(w).mat(), rho.mat()) < 1e-12);
    }
}

TEST_CASE("von Neumann entropy of landmark states") {
    CHECK(von_neumann_entropy(bloch_to_density({0, 0, 1})) == 0.0);
    CHECK(von_neumann_entropy(bloch_to_density({kInvSqrt2, kInvSqrt2, 0})) < 1e-15);
    CHECK_THAT(von_neumann_entropy(maximally_mixed()),
               Catch::Matchers::WithinAbs(kLn2, 1e-15));
    // Eigenvalues (0.9, 0.1): h(0.9) = -0.9 ln 0.9 - 0.1 ln 0.1.
    const double expected = -0.9 * std::log(0.9) - 0.1 * std::log(0.1);
    CHECK_THAT(expected, Catch::Matchers::WithinAbs(0.325083, 5e-7));
    CHECK_THAT(von_neumann_entropy(bloch_to_density({0, 0, 0.8})),
               Catch::Matchers::WithinAbs(expected, 1e-14));
}

TEST_CASE("entropy matches the Bloch-norm identity on random states") {
    oracle::Rng rng(202);
    for (int i = 0; i < 1000; ++i) {
        const DensityMatrix rho = rng.state();
        const double s = von_neumann_entropy(rho);
        CHECK(std::abs(s - oracle::entropy_via_bloch(rho)) < 1e-12);
        CHECK(s >= 0.0);
        CHECK(s <= kLn2);
    }
}

TEST_CASE("spectral decomposition of landmark states") {
    SECTION("diagonal state") {
        const auto d = spectral_decompose(
            DensityMatrix{Mat2{{cplx{0.76, 0}, {}, {}, cplx{0.24, 0}}}});
        CHECK_THAT(d.eigenvalues[0], Catch::Matchers::WithinAbs(0.76, 1e-14));
        CHECK_THAT(d.eigenvalues[1], Catch::Matchers::WithinAbs(0.24, 1e-14));
        CHECK(d.eigenstates[0] == BlochVector{0, 0, 1});
        CHECK(d.eigenstates[1] == BlochVector{0, 0, -1});
        CHECK_FALSE(d.degenerate);
    }
    SECTION("maximally mixed state reports the canonical basis") {
        const auto d = spectral_decompose(maximally_mixed());
        CHECK(d.degenerate);
        CHECK(d.eigenvalues[0] == 0.5);
        CHECK(d.eigenvalues[1] == 0.5);
        CHECK(d.eigenstates[0] == BlochVector{0, 0, 1});
        CHECK(d.eigenstates[1] == BlochVector{0, 0, -1});
    }
    SECTION("x-axis state") {
        const auto d = spectral_decompose(bloch_to_density({0.6, 0, 0}));
        CHECK_THAT(d.eigenvalues[0], Catch::Matchers::WithinAbs(0.8, 1e-14));
        CHECK_THAT(d.eigenvalues[1], Catch::Matchers::WithinAbs(0.2, 1e-14));
        CHECK_THAT(d.eigenstates[0].x1, Catch::Matchers::WithinAbs(1.0, 1e-14));
        CHECK_THAT(d.eigenstates[1].x1, Catch::Matchers::WithinAbs(-1.0, 1e-14));
        CHECK(max_abs_diff(reconstruct(d), bloch_to_density({0.6, 0, 0}).mat()) <
              1e-10);
    }
}

TEST_CASE("spectral decomposition properties on random states") {
    oracle::Rng rng(303);
    for (int i = 0; i < 1000; ++i) {
        // Mix generic, near-degenerate, and near-pure states.
        BlochVector v = rng.in_ball();
        if (i % 3 == 1) v = rng.uniform(0, 1e-8) * v;
        if (i % 3 == 2) v = (1.0 - rng.uniform(0, 1e-9)) * (1.0 / v.norm()) * v;
        const DensityMatrix rho = bloch_to_density(v);
        const auto d = spectral_decompose(rho);

        CHECK(std::abs(d.eigenvalues[0] + d.eigenvalues[1] - 1.0) < 1e-10);
        CHECK(d.eigenvalues[0] >= d.eigenvalues[1]);
        CHECK(d.eigenvalues[1] >= 0.0);
        CHECK(d.degenerate == (std::abs(d.eigenvalues[0] - d.eigenvalues[1]) <
                               kDegenerateTol));
        CHECK(max_abs_diff(reconstruct(d), rho.mat()) < 1e-10);
        // Antipodal pure eigenstates; the near-pure branch may keep the raw
        // vector, whose norm sits within the snap tolerance of 1.
        CHECK(std::abs(d.eigenstates[0].norm() - 1.0) < kPureSnapTol);
        CHECK(d.eigenstates[0].x1 == -d.eigenstates[1].x1);
        CHECK(d.eigenstates[0].x3 == -d.eigenstates[1].x3);
    }
}

TEST_CASE("near-pure states keep their raw Bloch vector as eigenstate") {
    // The corner fixed point of the Baker map: its floating-point norm is
    // one ulp below 1, and normalizing would push |x1| past the clamp
    // boundary 1/sqrt(2).  The decomposition must return it unchanged.
    const BlochVector corner{-kInvSqrt2, -kInvSqrt2, 0};
    const auto d = spectral_decompose(bloch_to_density(corner));
    CHECK_FALSE(d.degenerate);
    CHECK(d.eigenstates[0].x1 == -kInvSqrt2);
    CHECK(d.eigenstates[0].x2 == -kInvSqrt2);
    CHECK(d.eigenstates[1].x1 == kInvSqrt2);
    CHECK(max_abs_diff(reconstruct(d), bloch_to_density(corner).mat()) < 1e-10);
}

TEST_CASE("entropy of a Kronecker product is additive (4x4 oracle)") {
    oracle::Rng rng(404);
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        const DensityMatrix rho = rng.state(), sigma = rng.state();
        const double s4 = oracle::entropy4(oracle::kron(rho.mat(), sigma.mat()));
        const double sum = von_neumann_entropy(rho) + von_neumann_entropy(sigma);
        worst = std::max(worst, std::abs(s4 - sum));
    }
    CHECK(worst < 1e-9);
}
