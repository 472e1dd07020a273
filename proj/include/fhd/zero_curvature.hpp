// SPDX-License-Identifier: MIT
/**
 * @file zero_curvature.hpp
 * @brief Lax pair of the FHD equation and numerical zero-curvature checks.
 *
 * Spatial problem  Psi_x = M Psi,  M = [[0, 1], [-lambda/v^2, 1]].
 * Temporal problem Psi_t = N Psi,  N = [[A, B], [C, -A]] with
 *
 *     B = -4 lambda v
 *     A = -(B_x + B)/2              = 2 lambda (v_x + v)
 *     C = -(B_xx + B_x)/2 - lambda B / v^2 = 2 lambda (v_xx + v_x) + 4 lambda^2 / v
 *
 * With these choices the (1,1), (1,2) and (2,2) entries of
 * M_t + [M, N] - N_x vanish identically, and the (2,1) entry equals
 * 2 lambda (v_t / v^3 - v_xxx + v_x), i.e. the evolution equation.
 */

#pragma once

#include "fhd/core_model.hpp"
#include "fhd/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

namespace fhd {

/// Dense 2x2 matrix over a real or complex scalar.
template <typename T>
struct Mat2 {
    std::array<std::array<T, 2>, 2> m{};

    T& operator()(std::size_t r, std::size_t c) { return m[r][c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return m[r][c]; }

    friend Mat2 operator+(const Mat2& a, const Mat2& b) {
        Mat2 r;
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) r.m[i][j] = a.m[i][j] + b.m[i][j];
        return r;
    }
    friend Mat2 operator-(const Mat2& a, const Mat2& b) {
        Mat2 r;
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) r.m[i][j] = a.m[i][j] - b.m[i][j];
        return r;
    }
    friend Mat2 operator*(const Mat2& a, const Mat2& b) {
        Mat2 r;
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) r.m[i][j] = a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j];
        return r;
    }
    friend Mat2 operator*(const T& s, const Mat2& a) {
        Mat2 r;
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) r.m[i][j] = s * a.m[i][j];
        return r;
    }

    [[nodiscard]] T trace() const { return m[0][0] + m[1][1]; }
    [[nodiscard]] T det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
};

template <typename T>
Mat2<T> commutator(const Mat2<T>& a, const Mat2<T>& b) {
    return a * b - b * a;
}

template <typename T = double>
Mat2<T> build_M(double v, T lambda_spec) {
    if (!(v > 0.0)) throw DomainError("build_M requires v > 0");
    Mat2<T> M;
    M(0, 0) = T(0);
    M(0, 1) = T(1);
    M(1, 0) = -lambda_spec / (v * v);
    M(1, 1) = T(1);
    return M;
}

template <typename T = double>
Mat2<T> build_N(double v, double v_x, double v_xx, T lambda_spec) {
    if (!(v > 0.0)) throw DomainError("build_N requires v > 0");
    const T two_l = T(2) * lambda_spec;
    Mat2<T> N;
    N(0, 0) = two_l * (v_x + v);
    N(0, 1) = T(-4) * lambda_spec * v;
    N(1, 0) = two_l * (v_xx + v_x) + T(4) * lambda_spec * lambda_spec / v;
    N(1, 1) = -N(0, 0);
    return N;
}

/// Lax pair at a fixed spectral parameter.
template <typename T = double>
struct LaxPair {
    T lambda_spec;

    [[nodiscard]] Mat2<T> M(double v) const { return build_M(v, lambda_spec); }
    [[nodiscard]] Mat2<T> N(double v, double v_x, double v_xx) const {
        return build_N(v, v_x, v_xx, lambda_spec);
    }
};

struct LaxResidualReport {
    double lambda_spec = 1.0;
    /// max-norm of each entry of M_t + [M,N] - N_x over the space-time patch
    std::array<std::array<double, 2>, 2> entry_norms{};
    double dx = 0.0;
    double dt = 0.0;
    /// log2 ratio of (2,1) norms between two resolutions; NaN for a single run
    double convergence_order = std::numeric_limits<double>::quiet_NaN();

    [[nodiscard]] double off_shell_max() const {
        return std::max({entry_norms[0][0], entry_norms[0][1], entry_norms[1][1]});
    }
};

namespace detail {

// N entries of one frame, each as a nodal array.
struct NFields {
    std::vector<double> A, B, C;
};

inline NFields n_fields(const Field& f, double lambda_spec) {
    const std::size_t n = f.size();
    std::vector<double> vx(n), vxx(n);
    derivative_into(f.values(), f.grid(), 1, vx);
    derivative_into(vx, f.grid(), 1, vxx);
    NFields out{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        const auto N = build_N(f[i], vx[i], vxx[i], lambda_spec);
        out.A[i] = N(0, 0);
        out.B[i] = N(0, 1);
        out.C[i] = N(1, 0);
    }
    return out;
}

}  // namespace detail

/**
 * Discrete zero-curvature residual on a trajectory.
 *
 * v_x comes from the 4th-order first-derivative operator and v_xx from
 * applying it twice; N_x differentiates the nodal N entries with the same
 * operator, and M_t uses three-point central differences on interior
 * frames (non-uniform spacing allowed).
 */
inline LaxResidualReport zc_residual(const Trajectory& traj, double lambda_spec) {
    if (traj.size() < 3) throw DomainError("zero-curvature residual needs at least 3 frames");
    const Grid1D& grid = traj.grid();
    const std::size_t n = grid.size();
    const auto t = traj.times();

    LaxResidualReport rep;
    rep.lambda_spec = lambda_spec;
    rep.dx = grid.dx();
    for (std::size_t k = 1; k < traj.size(); ++k) rep.dt = std::max(rep.dt, t[k] - t[k - 1]);

    std::vector<double> Ax(n), Bx(n), Cx(n);
    for (std::size_t k = 1; k + 1 < traj.size(); ++k) {
        const Field& f = traj.frames()[k];
        f.require_positive("zc_residual");
        const Field& fm = traj.frames()[k - 1];
        const Field& fp = traj.frames()[k + 1];
        const double hm = t[k] - t[k - 1];
        const double hp = t[k + 1] - t[k];

        const auto N = detail::n_fields(f, lambda_spec);
        derivative_into(N.A, grid, 1, Ax);
        derivative_into(N.B, grid, 1, Bx);
        derivative_into(N.C, grid, 1, Cx);

        for (std::size_t i = 0; i < n; ++i) {
            // d/dt of -lambda/v^2 at frame k
            const double qm = -lambda_spec / (fm[i] * fm[i]);
            const double q0 = -lambda_spec / (f[i] * f[i]);
            const double qp = -lambda_spec / (fp[i] * fp[i]);
            const double q_t = ((qp - q0) * hm / hp + (q0 - qm) * hp / hm) / (hm + hp);

            Mat2<double> Mt;
            Mt(1, 0) = q_t;
            Mat2<double> Nx;
            Nx(0, 0) = Ax[i];
            Nx(0, 1) = Bx[i];
            Nx(1, 0) = Cx[i];
            Nx(1, 1) = -Ax[i];
            Mat2<double> Nk;
            Nk(0, 0) = N.A[i];
            Nk(0, 1) = N.B[i];
            Nk(1, 0) = N.C[i];
            Nk(1, 1) = -N.A[i];

            const auto R = Mt + commutator(build_M(f[i], lambda_spec), Nk) - Nx;
            for (std::size_t r = 0; r < 2; ++r)
                for (std::size_t c = 0; c < 2; ++c)
                    rep.entry_norms[r][c] = std::max(rep.entry_norms[r][c], std::abs(R(r, c)));
        }
    }
    return rep;
}

struct LaxConvergence {
    LaxResidualReport coarse;
    LaxResidualReport fine;
    double order = std::numeric_limits<double>::quiet_NaN();
};

/**
 * Runs zc_residual at refinement levels 0 and 1, where `make_trajectory(level)`
 * must halve both dx and dt at level 1, and fits the observed order of the
 * (2,1) entry.
 */
template <typename MakeTrajectory>
LaxConvergence zc_convergence(MakeTrajectory&& make_trajectory, double lambda_spec) {
    LaxConvergence out;
    out.coarse = zc_residual(make_trajectory(0), lambda_spec);
    out.fine = zc_residual(make_trajectory(1), lambda_spec);
    out.order = std::log2(out.coarse.entry_norms[1][0] / out.fine.entry_norms[1][0]);
    out.coarse.convergence_order = out.order;
    out.fine.convergence_order = out.order;
    return out;
}

struct ReductionResult {
    bool passed = false;
    double max_discrepancy = 0.0;
};

/**
 * Max-norm difference between
 *     -B_xxx/(4 lambda) + B_x/(4 lambda) + (v_x/v^3) B - B_x/v^2
 * with B = -4 lambda v + b_shift, and v_xxx - v_x. The two agree identically
 * for b_shift = 0; a non-zero shift is a negative control.
 */
inline double reduction_discrepancy(const Field& v, double lambda_spec, double b_shift = 0.0) {
    v.require_positive("reduction_check");
    if (lambda_spec == 0.0) throw DomainError("spectral parameter must be non-zero");
    const Grid1D& grid = v.grid();
    const std::size_t n = v.size();
    std::vector<double> B(n), vx(n), vxxx(n), Bx(n), Bxxx(n);
    for (std::size_t i = 0; i < n; ++i) B[i] = -4.0 * lambda_spec * v[i] + b_shift;
    derivative_into(v.values(), grid, 1, vx);
    derivative_into(v.values(), grid, 3, vxxx);
    derivative_into(B, grid, 1, Bx);
    derivative_into(B, grid, 3, Bxxx);

    double worst = 0.0;
    const double inv4l = 1.0 / (4.0 * lambda_spec);
    for (std::size_t i = 0; i < n; ++i) {
        const double vi = v[i];
        const double lhs = -Bxxx[i] * inv4l + Bx[i] * inv4l + vx[i] / (vi * vi * vi) * B[i] -
                           Bx[i] / (vi * vi);
        const double rhs = vxxx[i] - vx[i];
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

inline ReductionResult reduction_check(const Field& v, double lambda_spec, double tolerance = 1e-10) {
    ReductionResult r;
    r.max_discrepancy = reduction_discrepancy(v, lambda_spec);
    r.passed = r.max_discrepancy < tolerance;
    return r;
}

}  // namespace fhd
