// SPDX-License-Identifier: MIT
/**
 * @file pde_integrator.hpp
 * @brief Method-of-lines integration of v_t = v^3 (v_xxx - v_x) on a periodic grid.
 *
 * Space: 4th-order central differences. Time: classical RK4 with the
 * dispersive step dt = cfl * dx^3 / max(v)^3, recomputed every step.
 *
 * Both difference operators are antisymmetric matrices, so the
 * semi-discrete flow conserves sum(1/v) dx exactly; only the time stepper
 * perturbs it.
 */

#pragma once

#include "fhd/core_model.hpp"
#include "fhd/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fhd {

struct EvolveConfig {
    double t_final = 1.0;
    double cfl_constant = 0.1;
    /// record a frame every output_stride steps; 0 picks a stride giving about 100 frames
    std::size_t output_stride = 0;
    /// defaults to 0.01 * max of the initial field
    std::optional<double> positivity_floor;

    void validate() const {
        if (!(t_final > 0.0) || !std::isfinite(t_final)) throw DomainError("t_final must be positive");
        if (!(cfl_constant > 0.0 && cfl_constant <= 0.5)) {
            throw DomainError("cfl_constant must lie in (0, 0.5]");
        }
        if (positivity_floor && !(*positivity_floor > 0.0)) {
            throw DomainError("positivity_floor must be positive");
        }
    }
};

struct EvolveStats {
    std::size_t steps = 0;
    double dt_mean = 0.0;
};

/// Thrown when the run is aborted; carries everything up to the last good frame.
class EvolveAborted : public NumericalError {
public:
    EvolveAborted(const std::string& what, Trajectory partial)
        : NumericalError(what), partial_(std::move(partial)) {}

    [[nodiscard]] const Trajectory& partial() const { return partial_; }

private:
    Trajectory partial_;
};

namespace detail {

inline void require_periodic(const Grid1D& grid, const char* what) {
    if (!grid.periodic()) throw DomainError(std::string(what) + " requires a periodic grid");
}

/// Scratch space for repeated right-hand-side evaluations.
class FhdOperator {
public:
    explicit FhdOperator(const Grid1D& grid) : grid_(grid), d1_(grid.size()), d3_(grid.size()) {}

    void apply(std::span<const double> v, std::span<double> out) {
        derivative_into(v, grid_, 1, d1_);
        derivative_into(v, grid_, 3, d3_);
        const std::size_t n = v.size();
        for (std::size_t i = 0; i < n; ++i) {
            const double c = v[i] * v[i] * v[i];
            out[i] = c * (d3_[i] - d1_[i]);
        }
    }

private:
    Grid1D grid_;
    std::vector<double> d1_;
    std::vector<double> d3_;
};

}  // namespace detail

/// Pointwise v^3 (v_xxx - v_x).
inline Field rhs_fhd(const Field& field) {
    detail::require_periodic(field.grid(), "rhs_fhd");
    field.require_positive("rhs_fhd");
    std::vector<double> out(field.size());
    detail::FhdOperator(field.grid()).apply(field.values(), out);
    return Field(field.grid(), std::move(out));
}

/// Periodic trapezoid rule (plain trapezoid on bounded grids) for the integral of 1/v.
inline double conserved_functional(const Field& field) {
    field.require_positive("conserved_functional");
    const auto v = field.values();
    double sum = 0.0;
    for (double x : v) sum += 1.0 / x;
    if (!field.grid().periodic()) sum -= 0.5 * (1.0 / v.front() + 1.0 / v.back());
    return sum * field.grid().dx();
}

/**
 * Classical RK4 evolution. Records frame 0, every output_stride-th step and
 * the final state at exactly t_final.
 */
inline Trajectory evolve(const Field& initial, const EvolveConfig& config, EvolveStats* stats = nullptr) {
    config.validate();
    const Grid1D& grid = initial.grid();
    detail::require_periodic(grid, "evolve");
    initial.require_positive("evolve");

    const std::size_t n = grid.size();
    const double dx = grid.dx();
    const double dx3 = dx * dx * dx;
    const double floor = config.positivity_floor.value_or(0.01 * initial.max());

    std::size_t stride = config.output_stride;
    if (stride == 0) {
        const double vmax = initial.max();
        const double dt_est = config.cfl_constant * dx3 / (vmax * vmax * vmax);
        stride = std::max<std::size_t>(1, static_cast<std::size_t>(config.t_final / dt_est / 100.0));
    }

    std::vector<double> v(initial.values().begin(), initial.values().end());
    std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
    detail::FhdOperator op(grid);

    Trajectory traj;
    traj.append(0.0, initial);

    double t = 0.0;
    std::size_t step = 0;
    double dt_sum = 0.0;
    while (t < config.t_final) {
        const double vmax = *std::max_element(v.begin(), v.end());
        double dt = config.cfl_constant * dx3 / (vmax * vmax * vmax);
        bool last = false;
        if (t + dt >= config.t_final * (1.0 - 1e-14)) {
            dt = config.t_final - t;
            last = true;
        }

        op.apply(v, k1);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = v[i] + 0.5 * dt * k1[i];
        op.apply(tmp, k2);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = v[i] + 0.5 * dt * k2[i];
        op.apply(tmp, k3);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = v[i] + dt * k3[i];
        op.apply(tmp, k4);
        for (std::size_t i = 0; i < n; ++i) {
            tmp[i] = v[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }

        const double t_next = last ? config.t_final : t + dt;
        for (std::size_t i = 0; i < n; ++i) {
            if (!std::isfinite(tmp[i])) {
                throw EvolveAborted("non-finite value at t=" + std::to_string(t_next), std::move(traj));
            }
            if (tmp[i] < floor) {
                if (traj.times().back() < t) traj.append(t, Field(grid, v));
                throw EvolveAborted("positivity floor " + std::to_string(floor) + " violated at t=" +
                                        std::to_string(t_next) + ", x=" + std::to_string(grid.node(i)),
                                    std::move(traj));
            }
        }
        v.swap(tmp);
        t = t_next;
        ++step;
        dt_sum += dt;
        if (last || step % stride == 0) traj.append(t, Field(grid, v));
    }
    if (stats) {
        stats->steps = step;
        stats->dt_mean = step ? dt_sum / static_cast<double>(step) : 0.0;
    }
    return traj;
}

/// Sub-grid location of the minimum from a parabola through the lowest node and its neighbours.
inline double minimum_position(const Field& field) {
    const auto v = field.values();
    const std::size_t n = v.size();
    const auto [lo_it, hi_it] = std::minmax_element(v.begin(), v.end());
    const double spread = *hi_it - *lo_it;
    if (!(spread > 1e-12 * std::max(1.0, std::abs(*hi_it)))) {
        throw DomainError("frame is flat, no localized minimum to track");
    }
    const auto i = static_cast<std::size_t>(std::distance(v.begin(), lo_it));
    const Grid1D& grid = field.grid();
    double fm, fp;
    if (grid.periodic()) {
        fm = v[(i + n - 1) % n];
        fp = v[(i + 1) % n];
    } else {
        if (i == 0 || i + 1 == n) return grid.node(i);
        fm = v[i - 1];
        fp = v[i + 1];
    }
    const double denom = fm - 2.0 * v[i] + fp;
    const double offset = denom > 0.0 ? 0.5 * (fm - fp) / denom : 0.0;
    return grid.node(i) + offset * grid.dx();
}

/// Least-squares slope of the (unwrapped) minimum position against time.
inline double measure_speed(const Trajectory& traj) {
    if (traj.size() < 2) throw DomainError("speed measurement needs at least two frames");
    const double L = traj.grid().length();
    const bool periodic = traj.grid().periodic();
    const std::size_t m = traj.size();
    std::vector<double> pos(m);
    double prev = minimum_position(traj.frames()[0]);
    pos[0] = prev;
    for (std::size_t k = 1; k < m; ++k) {
        const double raw = minimum_position(traj.frames()[k]);
        double step = raw - prev;
        if (periodic) step -= L * std::floor(step / L + 0.5);
        pos[k] = pos[k - 1] + step;
        prev = raw;
    }
    const auto t = traj.times();
    const double tbar = std::accumulate(t.begin(), t.end(), 0.0) / static_cast<double>(m);
    const double pbar = std::accumulate(pos.begin(), pos.end(), 0.0) / static_cast<double>(m);
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        num += (t[k] - tbar) * (pos[k] - pbar);
        den += (t[k] - tbar) * (t[k] - tbar);
    }
    return num / den;
}

/// Total displacement of the minimum between the first and last frames (unwrapped).
inline double measure_displacement(const Trajectory& traj) {
    const double L = traj.grid().length();
    double total = 0.0;
    double prev = minimum_position(traj.front());
    for (std::size_t k = 1; k < traj.size(); ++k) {
        const double cur = minimum_position(traj.frames()[k]);
        double step = cur - prev;
        if (traj.grid().periodic()) step -= L * std::floor(step / L + 0.5);
        total += step;
        prev = cur;
    }
    return total;
}

/**
 * Periodic translation by an arbitrary displacement using 8-point Lagrange
 * interpolation: result(x) = field(x - displacement).
 */
inline Field circular_shift(const Field& field, double displacement) {
    detail::require_periodic(field.grid(), "circular_shift");
    constexpr int kPoints = 8;
    const Grid1D& grid = field.grid();
    const std::size_t n = grid.size();
    const auto v = field.values();
    const double q = displacement / grid.dx();
    const double qi = std::floor(q);
    const double frac = q - qi;  // in [0, 1)
    const auto shift = static_cast<std::ptrdiff_t>(qi);

    // Weights for sampling at offset -frac relative to node j - shift.
    std::array<double, kPoints> w{};
    constexpr int first = -kPoints / 2;  // stencil offsets -4..3
    for (int a = 0; a < kPoints; ++a) {
        const double xa = first + a;
        double l = 1.0;
        for (int b = 0; b < kPoints; ++b) {
            if (b == a) continue;
            const double xb = first + b;
            l *= (-frac - xb) / (xa - xb);
        }
        w[static_cast<std::size_t>(a)] = l;
    }
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        const auto base = static_cast<std::ptrdiff_t>(j) - shift;
        for (int a = 0; a < kPoints; ++a) {
            s += w[static_cast<std::size_t>(a)] * v[detail::wrap(base + first + a, n)];
        }
        out[j] = s;
    }
    return Field(grid, std::move(out));
}

/**
 * Relative L2 shape error: shift `later` back by `displacement` and compare
 * with `initial`, normalized by the L2 norm of (initial - background).
 */
inline double shape_error(const Field& initial, const Field& later, double displacement,
                          double background) {
    const Field back = circular_shift(later, -displacement);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < initial.size(); ++i) {
        const double e = back[i] - initial[i];
        const double d = initial[i] - background;
        num += e * e;
        den += d * d;
    }
    if (!(den > 0.0)) throw DomainError("initial field has no depression to normalize by");
    return std::sqrt(num / den);
}

}  // namespace fhd
