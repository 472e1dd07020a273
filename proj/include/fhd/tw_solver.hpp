// SPDX-License-Identifier: MIT
/**
 * @file tw_solver.hpp
 * @brief Travelling-wave (depression soliton) profiles built two ways.
 *
 * Quadrature route: invert xi(v) = int_{v_turn}^{v} dw / sqrt(-2 S(w)).
 * With a = Lambda/v0^2 and b^2 = v0 - a, the factorized pseudopotential
 * gives -2 S(w) = (v0 - w)^2 (w - a) / w. Writing w = a + u^2 removes the
 * square-root singularity at the turning point and u = b (1 - e^{-s})
 * removes the logarithmic divergence at v0, leaving the smooth integrand
 *
 *     dxi/ds = 2 sqrt(a + u^2) / (b + u).
 *
 * Shooting route: integrate v'' = (Lambda/2)(1/v^2 - 1/v0^2) + (v - v0)
 * outward from the minimum with an adaptive Dormand-Prince pair.
 *
 * Both routes stop a small distance below v0 and continue with the
 * linearized tail v0 - v ~ exp(-kappa xi), kappa^2 = (v0^3 - Lambda)/v0^3.
 */

#pragma once

#include "fhd/core_model.hpp"
#include "fhd/error.hpp"
#include "fhd/pseudopotential.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

namespace fhd {

enum class ProfileMethod { quadrature, shooting };

inline const char* to_string(ProfileMethod m) {
    return m == ProfileMethod::quadrature ? "quadrature" : "shooting";
}

/// Even soliton profile sampled at xi, minimum at xi = 0.
struct Profile {
    std::vector<double> xi;
    std::vector<double> v;
    SolitonParams params;
    ProfileMethod method = ProfileMethod::quadrature;
    /// max |v'^2/2 + S(v)| over accepted integrator steps (shooting only)
    double first_integral_residual = 0.0;
};

struct ProfileMetrics {
    double depth = 0.0;
    double fwhm = 0.0;
};

/**
 * Quadrature solution of the first integral, evaluable at any xi.
 *
 * The tabulated antiderivative xi(s) is built once with composite
 * Gauss-Legendre panels; point evaluation inverts it by safeguarded Newton.
 */
class QuadratureWave {
public:
    explicit QuadratureWave(const SolitonParams& params, std::size_t panels = 512,
                            double tail_cut = -1.0)
        : params_(params) {
        require_existence(params_);
        if (panels < 8) throw DomainError("quadrature needs at least 8 panels");
        a_ = params_.turning_value();
        b_ = std::sqrt(params_.v0 - a_);
        kappa_ = params_.decay_rate();
        tail_cut_ = tail_cut > 0.0 ? tail_cut : 1e-8 * (params_.v0 - a_);
        if (!(tail_cut_ < params_.v0 - a_)) {
            throw DomainError("tail_cut must be smaller than the depression depth");
        }

        // v0 - v = b^2 y (2 - y) with y = e^{-s}; solve for the cut-off s.
        const double r = tail_cut_ / (b_ * b_);
        const double y = r / (1.0 + std::sqrt(1.0 - r));
        s_max_ = -std::log(y);

        s_.resize(panels + 1);
        xi_.resize(panels + 1);
        const double h = s_max_ / static_cast<double>(panels);
        xi_[0] = 0.0;
        for (std::size_t k = 0; k <= panels; ++k) s_[k] = h * static_cast<double>(k);
        s_[panels] = s_max_;
        for (std::size_t k = 0; k < panels; ++k) {
            xi_[k + 1] = xi_[k] + integrate(s_[k], s_[k + 1]);
            if (!std::isfinite(xi_[k + 1])) {
                throw NumericalError("quadrature produced a non-finite coordinate at panel " +
                                     std::to_string(k));
            }
        }
        v_cut_ = v_of_s(s_max_);
    }

    [[nodiscard]] const SolitonParams& params() const { return params_; }
    [[nodiscard]] double tail_cut() const { return tail_cut_; }
    [[nodiscard]] double xi_max() const { return xi_.back(); }
    [[nodiscard]] double s_max() const { return s_max_; }
    [[nodiscard]] double decay_rate() const { return kappa_; }

    [[nodiscard]] double u_of_s(double s) const { return -b_ * std::expm1(-s); }
    [[nodiscard]] double v_of_s(double s) const {
        const double u = u_of_s(s);
        return a_ + u * u;
    }
    [[nodiscard]] double dxi_ds(double s) const {
        const double u = u_of_s(s);
        return 2.0 * std::sqrt(a_ + u * u) / (b_ + u);
    }

    /// xi as a function of the stretched coordinate s in [0, s_max].
    [[nodiscard]] double xi_of_s(double s) const {
        const std::size_t k = panel_of_s(s);
        return xi_[k] + integrate(s_[k], s);
    }

    /// Profile value at any real xi (even in xi).
    [[nodiscard]] double operator()(double xi) const {
        const double x = std::abs(xi);
        if (x >= xi_max()) {
            return params_.v0 - (params_.v0 - v_cut_) * std::exp(-kappa_ * (x - xi_max()));
        }
        return v_of_s(s_of_xi(x));
    }

    /// Inverse of xi(s) on [0, xi_max].
    [[nodiscard]] double s_of_xi(double x) const {
        auto it = std::upper_bound(xi_.begin(), xi_.end(), x);
        std::size_t k = static_cast<std::size_t>(std::distance(xi_.begin(), it));
        k = std::clamp<std::size_t>(k, 1, xi_.size() - 1) - 1;
        double lo = s_[k];
        double hi = s_[k + 1];
        double s = lo + (hi - lo) * (x - xi_[k]) / (xi_[k + 1] - xi_[k]);
        for (int iter = 0; iter < 50; ++iter) {
            const double f = xi_[k] + integrate(s_[k], s) - x;
            if (f > 0.0) hi = s; else lo = s;
            double next = s - f / dxi_ds(s);
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            if (std::abs(next - s) <= 1e-15 * (1.0 + s)) return next;
            s = next;
        }
        return s;
    }

    /// Tabulated even profile on n_points stretched-coordinate nodes per flank.
    [[nodiscard]] Profile tabulate(std::size_t n_points) const {
        if (n_points < 2) throw DomainError("profile needs at least 2 points per flank");
        std::vector<double> xs(n_points), vs(n_points);
        for (std::size_t i = 0; i < n_points; ++i) {
            const double s = s_max_ * static_cast<double>(i) / static_cast<double>(n_points - 1);
            xs[i] = i + 1 == n_points ? xi_max() : xi_of_s(s);
            vs[i] = v_of_s(s);
        }
        Profile p;
        p.params = params_;
        p.method = ProfileMethod::quadrature;
        p.xi.reserve(2 * n_points - 1);
        p.v.reserve(2 * n_points - 1);
        for (std::size_t i = n_points; i-- > 1;) {
            p.xi.push_back(-xs[i]);
            p.v.push_back(vs[i]);
        }
        for (std::size_t i = 0; i < n_points; ++i) {
            p.xi.push_back(xs[i]);
            p.v.push_back(vs[i]);
        }
        return p;
    }

    /// Samples the wave centred at `center` on a grid; periodic grids use the nearest image.
    [[nodiscard]] Field sample(const Grid1D& grid, double center = 0.0) const {
        const double L = grid.length();
        return Field::from_function(grid, [&](double x) {
            double d = x - center;
            if (grid.periodic()) d -= L * std::floor(d / L + 0.5);
            return (*this)(d);
        });
    }

private:
    [[nodiscard]] std::size_t panel_of_s(double s) const {
        auto it = std::upper_bound(s_.begin(), s_.end(), s);
        std::size_t k = static_cast<std::size_t>(std::distance(s_.begin(), it));
        return std::clamp<std::size_t>(k, 1, s_.size() - 1) - 1;
    }

    [[nodiscard]] double integrate(double lo, double hi) const {
        if (hi == lo) return 0.0;
        return boost::math::quadrature::gauss<double, 10>::integrate(
            [this](double s) { return dxi_ds(s); }, lo, hi);
    }

    SolitonParams params_;
    double a_ = 0.0;
    double b_ = 0.0;
    double kappa_ = 0.0;
    double tail_cut_ = 0.0;
    double s_max_ = 0.0;
    double v_cut_ = 0.0;
    std::vector<double> s_;
    std::vector<double> xi_;
};

/// Tabulated quadrature profile; tail_cut <= 0 selects 1e-8 (v0 - v_turn).
inline Profile profile_by_quadrature(const SolitonParams& params, std::size_t n_points,
                                     double tail_cut = -1.0) {
    return QuadratureWave(params, 512, tail_cut).tabulate(n_points);
}

struct ShootingOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    /// switch to the analytic tail once v0 - v drops below this fraction of the depth
    double tail_switch = 1e-5;
};

/// Travelling-wave ODE v'' = (Lambda/2)(1/v^2 - 1/v0^2) + (v - v0).
inline double travelling_wave_force(double v, const SolitonParams& p) {
    return 0.5 * p.lambda_speed * (1.0 / (v * v) - 1.0 / (p.v0 * p.v0)) + (v - p.v0);
}

/**
 * Shoots from v(0) = Lambda/v0^2, v'(0) = 0 outward and resamples onto the
 * grid nodes using the stepper's dense output. The grid must be symmetric
 * about 0 and at least 20 decay lengths long.
 */
inline Profile profile_by_shooting(const SolitonParams& params, const Grid1D& grid,
                                   const ShootingOptions& opt = {}) {
    namespace ode = boost::numeric::odeint;
    using State = std::array<double, 2>;

    require_existence(params);
    const double L = grid.length();
    if (std::abs(grid.x_min() + grid.x_max()) > 1e-12 * L) {
        throw DomainError("shooting grid must be symmetric about xi = 0");
    }
    const double kappa = params.decay_rate();
    if (L * kappa < 20.0) {
        throw DomainError("shooting grid spans " + std::to_string(L * kappa) +
                          " decay lengths, need at least 20");
    }

    const double v0 = params.v0;
    const double a = params.turning_value();
    const double depth = v0 - a;
    const double switch_gap = opt.tail_switch * depth;

    // Requested |xi| values, ascending, with their node indices.
    const std::size_t n = grid.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> targets(n);
    for (std::size_t i = 0; i < n; ++i) targets[i] = std::abs(grid.node(i));
    std::sort(order.begin(), order.end(),
              [&](std::size_t l, std::size_t r) { return targets[l] < targets[r]; });

    auto rhs = [&params](const State& x, State& dxdt, double /*xi*/) {
        dxdt[0] = x[1];
        dxdt[1] = travelling_wave_force(x[0], params);
    };
    auto energy = [&params](const State& x) { return 0.5 * x[1] * x[1] + eval_S(x[0], params); };

    auto stepper = ode::make_dense_output(opt.abs_tol, opt.rel_tol, ode::runge_kutta_dopri5<State>());
    stepper.initialize(State{a, 0.0}, 0.0, 1e-3);

    Profile prof;
    prof.params = params;
    prof.method = ProfileMethod::shooting;
    prof.xi = grid.nodes();
    prof.v.assign(n, v0);

    std::size_t next = 0;
    while (next < n && targets[order[next]] == 0.0) prof.v[order[next++]] = a;

    double xi_s = 0.0;
    double v_s = a;
    bool switched = false;
    const double xi_end = targets[order.back()];
    while (next < n) {
        const auto [t0, t1] = stepper.do_step(rhs);
        const State& x = stepper.current_state();
        if (!std::isfinite(x[0]) || !std::isfinite(x[1]) || x[0] <= 0.0) {
            throw NumericalError("shooting blew up at xi=" + std::to_string(t1));
        }
        if (x[0] > v0 || x[1] < 0.0) {
            throw NumericalError("shooting left the homoclinic orbit at xi=" + std::to_string(t1));
        }
        prof.first_integral_residual = std::max(prof.first_integral_residual, std::abs(energy(x)));

        State tmp;
        while (next < n && targets[order[next]] <= t1) {
            stepper.calc_state(targets[order[next]], tmp);
            prof.v[order[next++]] = tmp[0];
        }
        if (v0 - x[0] < switch_gap || t1 >= xi_end) {
            xi_s = t1;
            v_s = x[0];
            switched = true;
            break;
        }
        (void)t0;
    }
    if (switched) {
        for (; next < n; ++next) {
            const double t = targets[order[next]];
            prof.v[order[next]] = v0 - (v0 - v_s) * std::exp(-kappa * (t - xi_s));
        }
    }
    return prof;
}

/// Field view of a profile sampled on grid nodes.
inline Field to_field(const Profile& profile, const Grid1D& grid) {
    return Field(grid, profile.v);
}

/**
 * Depth below the background and full width at half depth, with crossings
 * located by linear interpolation.
 */
inline ProfileMetrics profile_metrics(const Profile& profile) {
    const auto& v = profile.v;
    const auto& xi = profile.xi;
    if (v.size() < 3 || v.size() != xi.size()) throw DomainError("profile is malformed");
    const auto imin = static_cast<std::size_t>(
        std::distance(v.begin(), std::min_element(v.begin(), v.end())));
    ProfileMetrics m;
    m.depth = profile.params.v0 - v[imin];
    if (m.depth < 1e-12) throw DomainError("profile is flat, metrics are degenerate");
    const double level = profile.params.v0 - 0.5 * m.depth;

    auto cross = [&](std::size_t i, std::size_t j) {
        return xi[i] + (level - v[i]) * (xi[j] - xi[i]) / (v[j] - v[i]);
    };
    std::size_t r = imin;
    while (r + 1 < v.size() && v[r + 1] <= level) ++r;
    std::size_t l = imin;
    while (l > 0 && v[l - 1] <= level) --l;
    if (r + 1 >= v.size() || l == 0) throw DomainError("profile window does not contain the half-depth crossings");
    m.fwhm = cross(r, r + 1) - cross(l, l - 1);
    return m;
}

/// Exact translated-profile trajectory v(x, t) = wave(x - center - speed t).
inline Trajectory travelling_trajectory(const QuadratureWave& wave, const Grid1D& grid,
                                        std::span<const double> times, double center = 0.0) {
    Trajectory traj;
    const double speed = wave.params().lambda_speed;
    for (double t : times) traj.append(t, wave.sample(grid, center + speed * t));
    return traj;
}

}  // namespace fhd
