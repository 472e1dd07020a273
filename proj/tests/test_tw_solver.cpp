// SPDX-License-Identifier: MIT
#include "fhd/tw_solver.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

namespace fhd {
namespace {

using testing::max_abs_diff;
using testing::v_closed_form;
using testing::xi_closed_form;

const std::vector<SolitonParams> kParams = {{0.2, 1.0}, {0.5, 1.0}, {0.8, 1.0}, {0.5, 0.9}, {1.0, 1.3}};

Grid1D shooting_grid(const SolitonParams& p) {
    // 56 decay lengths, symmetric, node at 0
    const double half = 28.0 / p.decay_rate();
    return make_grid(-half, half, 2048, true);
}

TEST(Quadrature, AnchoredAtTurningPoint) {
    const QuadratureWave w({0.5, 1.0});
    EXPECT_EQ(w(0.0), 0.5);
    const auto prof = profile_by_quadrature({0.5, 1.0}, 500);
    EXPECT_EQ(*std::min_element(prof.v.begin(), prof.v.end()), 0.5);
}

TEST(Quadrature, MatchesClosedFormCoordinate) {
    for (const auto& p : kParams) {
        const QuadratureWave w(p);
        for (int i = 1; i <= 200; ++i) {
            const double s = w.s_max() * i / 200.0;
            const double v = w.v_of_s(s);
            // rounding v costs eps / |dv/dxi| in xi, which grows toward v0
            const double tol = 1e-10 + 1e-15 / (p.v0 - v);
            EXPECT_NEAR(w.xi_of_s(s), xi_closed_form(v, p.lambda_speed, p.v0), tol);
        }
    }
}

TEST(Quadrature, PointEvaluationMatchesClosedFormProfile) {
    for (const auto& p : kParams) {
        const QuadratureWave w(p);
        for (double xi = -30.0; xi <= 30.0; xi += 0.37) {
            EXPECT_NEAR(w(xi), v_closed_form(xi, p.lambda_speed, p.v0), 1e-11) << xi;
        }
    }
}

TEST(Quadrature, ProfileIsEvenMonotoneAndBounded) {
    const auto prof = profile_by_quadrature({0.5, 1.0}, 301);
    const std::size_t n = prof.xi.size();
    ASSERT_EQ(n, 601u);
    for (std::size_t i = 0; i < n; ++i) {
        EXPECT_EQ(prof.xi[i], -prof.xi[n - 1 - i]);
        EXPECT_EQ(prof.v[i], prof.v[n - 1 - i]);
        EXPECT_GE(prof.v[i], 0.5 - 1e-8);
        EXPECT_LT(prof.v[i], 1.0);
    }
    for (std::size_t i = n / 2; i + 1 < n; ++i) {
        EXPECT_GT(prof.xi[i + 1], prof.xi[i]);
        EXPECT_GE(prof.v[i + 1], prof.v[i]);
    }
}

// xi ~ -log(v0 - v)/kappa near the background, so halving the cut moves the
// end of the table out by ln(2)/kappa.
TEST(Quadrature, TailExtendsLogarithmically) {
    const SolitonParams p{0.5, 1.0};
    const double kappa = std::sqrt(0.5);
    EXPECT_NEAR(p.decay_rate(), 0.70710678118654757, 1e-15);
    const QuadratureWave w1(p, 512, 1e-8);
    const QuadratureWave w2(p, 512, 0.5e-8);
    const QuadratureWave w3(p, 512, 0.25e-8);
    EXPECT_NEAR(w2.xi_max() - w1.xi_max(), std::log(2.0) / kappa, 1e-6);
    EXPECT_NEAR(w3.xi_max() - w2.xi_max(), std::log(2.0) / kappa, 1e-6);
    // the analytic tail continues the table consistently
    EXPECT_NEAR(w1(w2.xi_max()), 1.0 - 0.5e-8, 1e-14);
}

TEST(Quadrature, RejectsInadmissibleParams) {
    EXPECT_THROW(QuadratureWave({1.0, 1.0}), DomainError);
    EXPECT_THROW(profile_by_quadrature({1.2, 1.0}, 100), DomainError);
    EXPECT_THROW(QuadratureWave({0.5, 1.0}, 512, 0.6), DomainError);
}

TEST(Quadrature, SecondOrderOdeResidualConvergesAtFourthOrder) {
    const SolitonParams p{0.5, 1.0};
    const QuadratureWave w(p);
    double prev = 0.0;
    for (std::size_t n : {512u, 1024u, 2048u}) {
        const auto grid = make_grid(-40.0, 40.0, n, true);
        const Field v = w.sample(grid);
        const Field vxx = derivative(derivative(v, 1), 1);
        double res = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            res = std::max(res, std::abs(vxx[i] - travelling_wave_force(v[i], p)));
        }
        if (prev > 0.0) {
            EXPECT_GE(prev / res, 12.0) << n;
        }
        prev = res;
    }
}

TEST(Shooting, AnchorSymmetryAndAgreementWithQuadrature) {
    for (const auto& p : kParams) {
        const auto grid = shooting_grid(p);
        const auto prof = profile_by_shooting(p, grid);
        const auto quad = QuadratureWave(p).sample(grid);
        const std::vector<double> q(quad.values().begin(), quad.values().end());
        EXPECT_NEAR(*std::min_element(prof.v.begin(), prof.v.end()), p.turning_value(), 1e-8);
        EXPECT_LT(max_abs_diff(prof.v, q), 1e-6) << "Lambda=" << p.lambda_speed << " v0=" << p.v0;
        EXPECT_LT(prof.first_integral_residual, 1e-9);
        for (double v : prof.v) {
            EXPECT_GE(v, p.turning_value() - 1e-8);
            EXPECT_LE(v, p.v0 + 1e-8);
        }
        // node i mirrors node n - i on a symmetric periodic grid
        const std::size_t n = grid.size();
        double asym = 0.0;
        for (std::size_t i = 1; i < n; ++i) asym = std::max(asym, std::abs(prof.v[i] - prof.v[n - i]));
        EXPECT_LT(asym, 1e-10);
    }
}

TEST(Shooting, RejectsBadGrids) {
    const SolitonParams p{0.5, 1.0};
    EXPECT_THROW(profile_by_shooting(p, make_grid(-10.0, 10.0, 256, true)), DomainError);
    EXPECT_THROW(profile_by_shooting(p, make_grid(-30.0, 40.0, 256, true)), DomainError);
    EXPECT_THROW(profile_by_shooting({1.0, 1.0}, make_grid(-40.0, 40.0, 256, true)), DomainError);
}

TEST(Metrics, DepthsAndWidths) {
    const double widths[] = {testing::kFwhmLambda02, testing::kFwhmLambda05, testing::kFwhmLambda08};
    const double lambdas[] = {0.2, 0.5, 0.8};
    for (int k = 0; k < 3; ++k) {
        const SolitonParams p{lambdas[k], 1.0};
        const auto mq = profile_metrics(profile_by_quadrature(p, 4001));
        const auto ms = profile_metrics(profile_by_shooting(p, make_grid(-40.0, 40.0, 2048, true)));
        EXPECT_NEAR(mq.depth, 1.0 - lambdas[k], 1e-12);
        EXPECT_NEAR(ms.depth, 1.0 - lambdas[k], 1e-8);
        EXPECT_NEAR(mq.fwhm / widths[k], 1.0, 1e-4);
        EXPECT_NEAR(ms.fwhm / widths[k], 1.0, 1e-3);
        EXPECT_LT(std::abs(mq.fwhm - ms.fwhm) / mq.fwhm, 0.01);
    }
}

TEST(Metrics, DepthVanishesTowardDegenerateLimit) {
    double prev = 1.0;
    for (double lambda : {0.9, 0.99, 0.999}) {
        const auto m = profile_metrics(profile_by_quadrature({lambda, 1.0}, 2001));
        EXPECT_NEAR(m.depth, 1.0 - lambda, 1e-12);
        EXPECT_LT(m.depth, prev);
        prev = m.depth;
    }
}

TEST(Metrics, FlatProfileIsRejected) {
    Profile flat;
    flat.params = {0.5, 1.0};
    flat.xi = {-1.0, 0.0, 1.0};
    flat.v = {1.0, 1.0, 1.0};
    EXPECT_THROW(profile_metrics(flat), DomainError);
}

TEST(TravellingTrajectory, FramesAreTranslatedCopies) {
    const QuadratureWave w({0.5, 1.0});
    const auto grid = make_grid(-40.0, 40.0, 1024, true);
    const double dx = grid.dx();
    // speed 0.5: t = 2 dx moves the wave by exactly one node
    const std::vector<double> times = {0.0, 2.0 * dx, 4.0 * dx};
    const auto traj = travelling_trajectory(w, grid, times);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        EXPECT_NEAR(traj.frames()[1][(i + 1) % grid.size()], traj.frames()[0][i], 1e-12);
        EXPECT_NEAR(traj.frames()[2][(i + 2) % grid.size()], traj.frames()[0][i], 1e-12);
    }
}

}  // namespace
}  // namespace fhd
