#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pk/errors.hpp"
#include "pk/types.hpp"

namespace pk {

using VectorField = std::function<Vec2(const Point2&)>;

// Named per-sample observable evaluated at every recorded state.
struct Monitor {
    std::string name;
    std::function<double(double t, const Point2&)> fn;
};

enum class StepMode { FixedRk4, HalvingRk4 };

struct StepperConfig {
    double h = 1e-3;         // base step, > 0
    double t_final = 1.0;    // >= 0; 0 records the initial state only
    StepMode mode = StepMode::FixedRk4;
    double tol = 1e-10;      // per-step error bound, halving mode only
    long max_steps = 10000000;
};

struct TrajectorySample {
    double t = 0.0;
    Point2 p;
    std::vector<double> monitors;  // ordered as Trajectory::monitor_names
};

struct Termination {
    bool completed = false;
    std::string reason;  // empty when completed
    double t = 0.0;      // time of the last recorded sample
};

struct Trajectory {
    std::vector<std::string> monitor_names;
    std::vector<TrajectorySample> samples;
    double step_size = 0.0;
    Termination termination;

    bool completed() const { return termination.completed; }
    const TrajectorySample& back() const { return samples.back(); }

    // Column of one monitor across the whole trajectory.
    std::vector<double> monitor(const std::string& name) const;
};

// One classical RK4 update. Vector-field failures are rethrown as
// StepFailure carrying the stage index (1..4).
Point2 rk4_step(const VectorField& rhs, const Point2& s, double h);

// Veto hook for accepted states: runs on the combined RK4 result before
// it is recorded, catching excursions the stage evaluations never saw.
// Throwing pk::Error aborts the trajectory at the previous sample.
using StateGuard = std::function<void(double t, const Point2&)>;

// Integrates the autonomous field from s0 over [0, t_final], recording a
// sample (with monitor values) at t = 0 and after every accepted step.
// Never throws for dynamics reasons: a vector-field, guard or monitor
// failure, a non-finite state, or max_steps exhaustion ends the
// trajectory with an aborted termination that keeps everything recorded
// so far.
Trajectory integrate(const VectorField& rhs, const Point2& s0, const StepperConfig& cfg,
                     const std::vector<Monitor>& monitors = {}, const StateGuard& guard = {});

}  // namespace pk
