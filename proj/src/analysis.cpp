#include "dualjc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "dualjc/closed_form.hpp"

namespace dualjc {
namespace {

const SubsystemPair kAtomPair{Subsystem::AtomA, Subsystem::AtomB};

std::vector<double> uniform_grid(double t_max, std::size_t steps) {
    if (steps < 2) throw ConfigError("a scan needs at least 2 time steps");
    if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ConfigError("t_max must be positive");
    std::vector<double> times(steps);
    const double last = static_cast<double>(steps - 1);
    for (std::size_t i = 0; i < steps; ++i) times[i] = t_max * static_cast<double>(i) / last;
    return times;
}

InitialState named_state(Family family, double alpha) {
    switch (family) {
        case Family::PsiAlpha: return InitialState::psi(alpha);
        case Family::PhiAlpha: return InitialState::phi(alpha);
        case Family::Custom: break;
    }
    throw ConfigError("a named family (psi or phi) is required");
}

/// Root of a sign-changing function on [pos, neg] with f(pos) > 0 > f(neg).
double bisect(const std::function<double(double)>& f, double pos, double neg) {
    for (int it = 0; it < 200 && std::abs(neg - pos) > kBisectionTimeTol; ++it) {
        const double mid = 0.5 * (pos + neg);
        (f(mid) > 0.0 ? pos : neg) = mid;
    }
    return 0.5 * (pos + neg);
}

/// Secant through samples a (farther) and b (nearer) extrapolated to zero,
/// clamped into [lo, hi].
double secant_zero(double ta, double va, double tb, double vb, double lo, double hi) {
    const double slope = (vb - va) / (tb - ta);
    if (slope == 0.0 || !std::isfinite(slope)) return tb < lo ? hi : lo;
    return std::clamp(tb - vb / slope, lo, hi);
}

}  // namespace

std::string to_string(Source s) { return s == Source::ClosedForm ? "closed" : "oracle"; }

std::string to_string(Family f) {
    switch (f) {
        case Family::PsiAlpha: return "psi";
        case Family::PhiAlpha: return "phi";
        case Family::Custom: return "custom";
    }
    return "?";
}

double DeathReport::total_dead_time() const {
    double total = 0.0;
    for (const auto& iv : dead_intervals) total += iv.end - iv.start;
    return total;
}

double default_zero_tol(Source source) {
    return source == Source::ClosedForm ? kClosedFormZeroTol : kOracleZeroTol;
}

double default_t_max(const ModelParams& params) { return 4.0 * std::numbers::pi / (2.0 * params.g); }

ConcurrenceSeries scan(const InitialState& init, const ModelParams& params, SubsystemPair pair, double t_max,
                       std::size_t steps, Source source, int cutoff) {
    ConcurrenceSeries series{uniform_grid(t_max, steps), {}, {}, pair, source, init, params};
    series.values.resize(steps);
    series.signed_values.resize(steps);
    const JCConstants c = derive_constants(params);

    if (source == Source::ClosedForm) {
        if (!init.is_named()) throw ConfigError("closed-form scan requires a named family");
        if (!(pair == kAtomPair)) throw ConfigError("closed-form scan supports only the atom-atom pair AB");
        for (std::size_t i = 0; i < steps; ++i) {
            const double t = series.times[i];
            const double g = init.family == Family::PsiAlpha ? psi_concurrence(init.alpha, c, t)
                                                             : phi_f(init.alpha, c, t);
            series.signed_values[i] = g;
            series.values[i] = std::max(0.0, g);
        }
        return series;
    }

    const Propagator prop(build_hamiltonian(params, cutoff));
    const PureState state0 = initial_state_vector(init, cutoff);
    for (std::size_t i = 0; i < steps; ++i) {
        const double g = pair_signed_concurrence(prop.evolve(state0, series.times[i]), pair);
        series.signed_values[i] = g;
        series.values[i] = std::clamp(g, 0.0, 1.0);
    }
    return series;
}

std::vector<ConcurrenceSeries> scan_all_pairs(const InitialState& init, const ModelParams& params, double t_max,
                                              std::size_t steps, int cutoff) {
    const auto pairs = SubsystemPair::all();
    const auto times = uniform_grid(t_max, steps);
    std::vector<ConcurrenceSeries> out;
    for (const auto& p : pairs)
        out.push_back({times, std::vector<double>(steps), std::vector<double>(steps), p, Source::Oracle, init, params});

    const Propagator prop(build_hamiltonian(params, cutoff));
    const PureState state0 = initial_state_vector(init, cutoff);
    for (std::size_t i = 0; i < steps; ++i) {
        const PureState s = prop.evolve(state0, times[i]);
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            const double g = pair_signed_concurrence(s, pairs[k]);
            out[k].signed_values[i] = g;
            out[k].values[i] = std::clamp(g, 0.0, 1.0);
        }
    }
    return out;
}

DeathReport detect_death(const ConcurrenceSeries& series, double zero_tol) {
    const auto& t = series.times;
    const auto& v = series.values;
    if (t.empty() || v.size() != t.size()) throw ConfigError("detect_death needs a non-empty series");

    DeathReport report;
    report.period = derive_constants(series.params).period();
    report.initial_concurrence = v.front();

    const auto& s = series.signed_values;
    const bool has_signed = s.size() == t.size();
    const bool closed_phi = has_signed && series.source == Source::ClosedForm &&
                            series.init.family == Family::PhiAlpha && series.pair == kAtomPair;
    const JCConstants c = derive_constants(series.params);
    const std::function<double(double)> f = [&](double time) { return phi_f(series.init.alpha, c, time); };
    // Zero of the signed generator between grid points a (>= 0) and b (< 0).
    const auto crossing = [&](std::size_t a, std::size_t b) {
        if (closed_phi) return bisect(f, t[a], t[b]);
        return t[a] + (t[b] - t[a]) * s[a] / (s[a] - s[b]);
    };

    const std::size_t n = v.size();
    std::size_t i = 0;
    while (i < n) {
        if (v[i] > zero_tol) {
            ++i;
            continue;
        }
        const std::size_t first = i;
        while (i + 1 < n && v[i + 1] <= zero_tol) ++i;
        const std::size_t last = i;
        ++i;

        bool dead = last - first >= 2;
        // A quartic touch can leave several samples under the tolerance; only
        // a genuinely negative generator marks death.
        if (dead && has_signed) dead = *std::min_element(s.begin() + first, s.begin() + last + 1) < -zero_tol;
        if (!dead) {
            std::size_t at = first;
            for (std::size_t k = first; k <= last; ++k)
                if (v[k] < v[at]) at = k;
            report.touch_points.push_back(t[at]);
            continue;
        }

        Interval iv{t[first], t[last]};
        if (has_signed) {
            if (first > 0) {
                std::size_t k = first;
                while (s[k] >= 0.0) ++k;
                iv.start = crossing(k - 1, k);
            }
            if (last + 1 < n) {
                std::size_t k = last;
                while (s[k] >= 0.0) --k;
                iv.end = crossing(k + 1, k);
            }
        } else {
            if (first >= 2)
                iv.start = secant_zero(t[first - 2], v[first - 2], t[first - 1], v[first - 1], t[first - 1], t[first]);
            if (last + 2 < n)
                iv.end = secant_zero(t[last + 2], v[last + 2], t[last + 1], v[last + 1], t[last], t[last + 1]);
        }
        report.dead_intervals.push_back(iv);
    }
    return report;
}

double death_threshold_alpha() { return std::numbers::pi / 4.0; }

ValidationReport validate(const InitialState& init, const ModelParams& params, double t_max, std::size_t steps,
                          double tolerance, int cutoff) {
    if (!init.is_named()) throw ConfigError("validation requires a named family");
    const auto times = uniform_grid(t_max, steps);
    const JCConstants c = derive_constants(params);
    const Propagator prop(build_hamiltonian(params, cutoff));
    const PureState state0 = initial_state_vector(init, cutoff);
    const bool psi = init.family == Family::PsiAlpha;

    ValidationReport r;
    r.samples = steps;
    r.tolerance = tolerance;
    for (double time : times) {
        const PureState oracle = prop.evolve(state0, time);
        const PureState closed = psi ? to_state(psi_amplitudes(init.alpha, c, time), cutoff)
                                     : to_state(phi_amplitudes(init.alpha, c, time), cutoff);
        const DensityMatrix rho_closed =
            psi ? psi_reduced_density(init.alpha, c, time) : phi_reduced_density(init.alpha, c, time);
        const double conc_closed = psi ? psi_concurrence(init.alpha, c, time) : phi_concurrence(init.alpha, c, time);

        const double amp_err = (oracle.amplitudes - closed.amplitudes).cwiseAbs().maxCoeff();
        const double rho_err = (partial_trace_pair(oracle, kAtomPair).entries - rho_closed.entries).cwiseAbs().maxCoeff();
        const double conc_err = std::abs(pair_concurrence(oracle, kAtomPair) - conc_closed);

        r.amplitude_error = std::max(r.amplitude_error, amp_err);
        r.density_error = std::max(r.density_error, rho_err);
        r.concurrence_error = std::max(r.concurrence_error, conc_err);
        const double worst = std::max({amp_err, rho_err, conc_err});
        if (worst > r.max_abs_error) {
            r.max_abs_error = worst;
            r.worst_time = time;
        }
    }
    r.pass = r.max_abs_error <= tolerance;
    return r;
}

std::vector<SweepEntry> sweep_alpha(Family family, const ModelParams& params, std::span<const double> alphas,
                                    double t_max, std::size_t steps, Source source, int cutoff) {
    if (alphas.empty()) throw ConfigError("alpha grid is empty");
    std::vector<SweepEntry> out;
    out.reserve(alphas.size());
    for (double alpha : alphas) {
        const auto series = scan(named_state(family, alpha), params, kAtomPair, t_max, steps, source, cutoff);
        out.push_back({alpha, detect_death(series, default_zero_tol(source))});
    }
    return out;
}

}  // namespace dualjc
