#pragma once

// Concurrence time series, sudden-death detection, closed-form versus
// oracle validation, and sweeps over the initial superposition angle.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dualjc/model.hpp"
#include "dualjc/numerics.hpp"

namespace dualjc {

enum class Source { ClosedForm, Oracle };

std::string to_string(Source s);
std::string to_string(Family f);

/// Concurrence on a uniform grid together with the run that produced it.
struct ConcurrenceSeries {
    std::vector<double> times;
    std::vector<double> values;
    /// Unclamped generator (phi_f or the signed Wootters value); empty when
    /// unavailable.
    std::vector<double> signed_values;
    SubsystemPair pair{Subsystem::AtomA, Subsystem::AtomB};
    Source source = Source::ClosedForm;
    InitialState init;
    ModelParams params;
};

struct Interval {
    double start = 0.0;
    double end = 0.0;
};

struct DeathReport {
    std::vector<Interval> dead_intervals;
    std::vector<double> touch_points;
    double period = 0.0;
    double initial_concurrence = 0.0;

    double total_dead_time() const;
};

struct ValidationReport {
    double max_abs_error = 0.0;
    double worst_time = 0.0;
    std::size_t samples = 0;
    double tolerance = 0.0;
    bool pass = false;
    // Per-quantity breakdown of max_abs_error.
    double amplitude_error = 0.0;
    double density_error = 0.0;
    double concurrence_error = 0.0;
};

inline constexpr double kClosedFormZeroTol = 1e-12;
inline constexpr double kOracleZeroTol = 1e-9;
inline constexpr double kBisectionTimeTol = 1e-12;
inline constexpr std::size_t kDefaultSteps = 2001;

double default_zero_tol(Source source);

/// Default grid end: two zero-detuning periods, 4*pi/G.
double default_t_max(const ModelParams& params);

/// Uniform grid of `steps` points over [0, t_max]. ClosedForm supports only
/// the atom-atom pair of a named family; Oracle evaluates any pair at the
/// given cutoff.
ConcurrenceSeries scan(const InitialState& init, const ModelParams& params, SubsystemPair pair,
                       double t_max, std::size_t steps, Source source, int cutoff = 1);

/// All six pairs from one oracle propagation, in SubsystemPair::all() order.
std::vector<ConcurrenceSeries> scan_all_pairs(const InitialState& init, const ModelParams& params,
                                              double t_max, std::size_t steps, int cutoff = 1);

/// Runs of values <= zero_tol spanning at least two grid intervals are dead
/// intervals, provided the signed generator (when present) drops below
/// -zero_tol inside the run; other runs are touch points at the run's
/// minimum. Interval endpoints are refined by bisection on phi_f for
/// closed-form Phi series, by linear interpolation of the signed generator
/// for other series that carry one, and otherwise by secant extrapolation of
/// the last two non-zero samples. Runs that reach the ends of the grid keep
/// the grid endpoint.
DeathReport detect_death(const ConcurrenceSeries& series, double zero_tol);

/// Critical angle at zero detuning for the Phi family: interval death occurs
/// iff alpha < pi/4, where sin^2(Gt/2) = tan(alpha) first becomes attainable.
double death_threshold_alpha();

/// Compares closed-form amplitudes (with phase), atom-atom reduced states and
/// concurrences with oracle propagation at every grid point.
ValidationReport validate(const InitialState& init, const ModelParams& params, double t_max,
                          std::size_t steps, double tolerance, int cutoff = 1);

struct SweepEntry {
    double alpha = 0.0;
    DeathReport report;
};

std::vector<SweepEntry> sweep_alpha(Family family, const ModelParams& params, std::span<const double> alphas,
                                    double t_max, std::size_t steps, Source source = Source::ClosedForm,
                                    int cutoff = 1);

}  // namespace dualjc
