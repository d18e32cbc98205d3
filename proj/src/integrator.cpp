#include "pk/integrator.hpp"

#include <algorithm>
#include <cmath>

namespace pk {

std::vector<double> Trajectory::monitor(const std::string& name) const {
    std::vector<double> out;
    for (std::size_t i = 0; i < monitor_names.size(); ++i) {
        if (monitor_names[i] != name) continue;
        out.reserve(samples.size());
        for (const auto& s : samples) out.push_back(s.monitors[i]);
        return out;
    }
    throw Error("trajectory has no monitor named '" + name + "'");
}

Point2 rk4_step(const VectorField& rhs, const Point2& s, double h) {
    int stage = 1;
    try {
        const Vec2 k1 = rhs(s);
        stage = 2;
        const Vec2 k2 = rhs(s + 0.5 * h * k1);
        stage = 3;
        const Vec2 k3 = rhs(s + 0.5 * h * k2);
        stage = 4;
        const Vec2 k4 = rhs(s + h * k3);
        return s + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    } catch (const StepFailure&) {
        throw;
    } catch (const Error& e) {
        throw StepFailure(stage, e.what());
    }
}

namespace {

void validate(const StepperConfig& cfg) {
    if (!(cfg.h > 0.0)) throw Error("stepper config: h must be > 0");
    if (!(cfg.t_final >= 0.0)) throw Error("stepper config: t_final must be >= 0");
    if (cfg.t_final > 0.0 && cfg.h > cfg.t_final)
        throw Error("stepper config: h must not exceed t_final");
    if (cfg.max_steps <= 0) throw Error("stepper config: max_steps must be > 0");
    if (cfg.mode == StepMode::HalvingRk4 && !(cfg.tol > 0.0))
        throw Error("stepper config: halving mode needs tol > 0");
}

bool record(Trajectory& traj, const std::vector<Monitor>& monitors, double t, const Point2& p) {
    TrajectorySample sample;
    sample.t = t;
    sample.p = p;
    sample.monitors.reserve(monitors.size());
    try {
        for (const auto& m : monitors) sample.monitors.push_back(m.fn(t, p));
    } catch (const Error& e) {
        traj.termination = {false, std::string("monitor failed: ") + e.what(), t};
        return false;
    }
    traj.samples.push_back(std::move(sample));
    return true;
}

Trajectory integrate_fixed(const VectorField& rhs, const Point2& s0, const StepperConfig& cfg,
                           const std::vector<Monitor>& monitors, const StateGuard& guard,
                           Trajectory traj) {
    Point2 p = s0;
    double t = 0.0;
    long k = 0;
    while (t < cfg.t_final) {
        if (k >= cfg.max_steps) {
            traj.termination = {false, "max_steps exhausted", t};
            return traj;
        }
        // Uniform grid t_k = k*h; the final step is shortened to land on
        // t_final exactly.
        const double t_next = std::min(cfg.t_final, static_cast<double>(k + 1) * cfg.h);
        try {
            p = rk4_step(rhs, p, t_next - t);
            if (guard) guard(t_next, p);
        } catch (const Error& e) {
            traj.termination = {false, e.what(), t};
            return traj;
        }
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            traj.termination = {false, "state became non-finite", t};
            return traj;
        }
        t = t_next;
        ++k;
        if (!record(traj, monitors, t, p)) return traj;
    }
    traj.termination = {true, "", t};
    return traj;
}

Trajectory integrate_halving(const VectorField& rhs, const Point2& s0, const StepperConfig& cfg,
                             const std::vector<Monitor>& monitors, const StateGuard& guard,
                             Trajectory traj) {
    const double h_min = cfg.h * 1e-12;
    Point2 p = s0;
    double t = 0.0;
    double h_cur = cfg.h;
    long attempts = 0;
    while (t < cfg.t_final) {
        if (attempts >= cfg.max_steps) {
            traj.termination = {false, "max_steps exhausted", t};
            return traj;
        }
        ++attempts;
        const double h_try = std::min(h_cur, cfg.t_final - t);
        Point2 full, half;
        try {
            full = rk4_step(rhs, p, h_try);
            half = rk4_step(rhs, rk4_step(rhs, p, 0.5 * h_try), 0.5 * h_try);
        } catch (const Error& e) {
            traj.termination = {false, e.what(), t};
            return traj;
        }
        // Richardson estimate of the two-half-step error.
        const double err =
            std::max(std::fabs(full.x - half.x), std::fabs(full.y - half.y)) / 15.0;
        if (err > cfg.tol && h_try > h_min) {
            h_cur = 0.5 * h_try;
            continue;
        }
        if (h_try <= h_min && err > cfg.tol) {
            traj.termination = {false, "step size underflow", t};
            return traj;
        }
        if (!std::isfinite(half.x) || !std::isfinite(half.y)) {
            traj.termination = {false, "state became non-finite", t};
            return traj;
        }
        try {
            if (guard) guard(t + h_try, half);
        } catch (const Error& e) {
            traj.termination = {false, e.what(), t};
            return traj;
        }
        p = half;
        t += h_try;
        if (!record(traj, monitors, t, p)) return traj;
        if (err < cfg.tol / 64.0) h_cur = std::min(2.0 * h_try, cfg.h);
    }
    traj.termination = {true, "", t};
    return traj;
}

}  // namespace

Trajectory integrate(const VectorField& rhs, const Point2& s0, const StepperConfig& cfg,
                     const std::vector<Monitor>& monitors, const StateGuard& guard) {
    validate(cfg);
    Trajectory traj;
    traj.step_size = cfg.h;
    traj.monitor_names.reserve(monitors.size());
    for (const auto& m : monitors) traj.monitor_names.push_back(m.name);
    if (!record(traj, monitors, 0.0, s0)) return traj;
    if (cfg.t_final == 0.0) {
        traj.termination = {true, "", 0.0};
        return traj;
    }
    if (cfg.mode == StepMode::FixedRk4)
        return integrate_fixed(rhs, s0, cfg, monitors, guard, std::move(traj));
    return integrate_halving(rhs, s0, cfg, monitors, guard, std::move(traj));
}

}  // namespace pk
