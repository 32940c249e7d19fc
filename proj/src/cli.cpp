#include "dualjc/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dualjc/analysis.hpp"
#include "dualjc/closed_form.hpp"

namespace dualjc::cli {
namespace {

using nlohmann::json;

struct Options {
    std::string family = "psi";
    double alpha = std::numbers::pi / 4.0;
    std::optional<double> delta, big_g, omega, nu, g;
    std::optional<double> t_max;
    std::size_t steps = kDefaultSteps;
    std::string pair = "AB";
    std::string source = "closed";
    int cutoff = 1;
    std::optional<std::string> format;
    std::string plot_script;
    std::string out_path;
    double tolerance = 1e-9;
    std::optional<double> zero_tol;
    std::string amplitudes;
    std::string alphas;
    int alpha_count = 50;
};

/// Everything a subcommand needs, resolved and validated.
struct RunConfig {
    InitialState init;
    ModelParams params;
    double t_max = 0.0;
    std::size_t steps = kDefaultSteps;
    bool all_pairs = false;
    SubsystemPair pair{Subsystem::AtomA, Subsystem::AtomB};
    Source source = Source::ClosedForm;
    int cutoff = 1;
    bool json_output = false;
};

std::vector<double> parse_number_list(const std::string& text, const char* what) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError(std::string("cannot parse ") + what + " entry '" + item + "'");
        }
    }
    return values;
}

ModelParams resolve_params(const Options& o) {
    const bool explicit_freqs = o.omega || o.g;
    if (explicit_freqs && (o.delta || o.big_g))
        throw ConfigError("conflicting parameterizations: give either --omega/--nu/--g or --delta/--G");
    if (explicit_freqs) {
        if (o.g && !(*o.g > 0.0)) throw ConfigError("coupling must be positive");
        if (!o.omega || !o.nu || !o.g) throw ConfigError("--omega, --nu and --g must be given together");
        ModelParams p{*o.omega, *o.nu, *o.g};
        p.validate();
        return p;
    }
    const double big_g = o.big_g.value_or(1.0);
    if (!(big_g > 0.0)) throw ConfigError("coupling must be positive");
    return ModelParams::from_detuning(o.delta.value_or(0.0), big_g, o.nu.value_or(10.0 * big_g));
}

RunConfig resolve(const Options& o) {
    RunConfig rc;
    rc.params = resolve_params(o);
    if (o.family == "psi") {
        rc.init = InitialState::psi(o.alpha);
    } else if (o.family == "phi") {
        rc.init = InitialState::phi(o.alpha);
    } else if (o.family == "custom") {
        if (o.amplitudes.empty()) throw ConfigError("--family custom needs --amplitudes re0,im0,re1,im1,...");
        const auto flat = parse_number_list(o.amplitudes, "--amplitudes");
        if (flat.size() % 2 != 0) throw ConfigError("--amplitudes needs an even count of numbers (re,im pairs)");
        std::vector<Complex> amps;
        for (std::size_t i = 0; i < flat.size(); i += 2) amps.emplace_back(flat[i], flat[i + 1]);
        rc.init = InitialState::custom(std::move(amps));
        initial_state_vector(rc.init, o.cutoff);  // validates length and norm
    } else {
        throw ConfigError("unknown family '" + o.family + "'");
    }
    rc.cutoff = o.cutoff;
    FockBasis{o.cutoff};
    rc.t_max = o.t_max.value_or(default_t_max(rc.params));
    rc.steps = o.steps;
    if (rc.steps < 2) throw ConfigError("--steps must be at least 2");
    if (!(rc.t_max > 0.0)) throw ConfigError("--tmax must be positive");
    if (o.source == "closed") {
        rc.source = Source::ClosedForm;
    } else if (o.source == "oracle") {
        rc.source = Source::Oracle;
    } else {
        throw ConfigError("unknown source '" + o.source + "'");
    }
    rc.all_pairs = o.pair == "all";
    if (!rc.all_pairs) rc.pair = SubsystemPair::parse(o.pair);
    if (rc.source == Source::ClosedForm) {
        if (rc.all_pairs || !(rc.pair == SubsystemPair{Subsystem::AtomA, Subsystem::AtomB}))
            throw ConfigError("the closed-form source supports only pair AB; use --source oracle");
        if (!rc.init.is_named()) throw ConfigError("the closed-form source requires a named family");
    }
    return rc;
}

/// Writes to --out when given, otherwise to the caller's stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw ConfigError("cannot open output file '" + path + "'");
            stream_ = &file_;
        }
    }
    std::ostream& operator*() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

std::string fmt(double x) {
    std::ostringstream ss;
    ss << std::setprecision(17) << x;
    return ss.str();
}

json params_json(const RunConfig& rc) {
    const JCConstants c = derive_constants(rc.params);
    return {{"family", to_string(rc.init.family)},
            {"alpha", rc.init.alpha},
            {"omega", rc.params.omega},
            {"nu", rc.params.nu},
            {"g", rc.params.g},
            {"delta", c.delta},
            {"G", c.big_g},
            {"tmax", rc.t_max},
            {"steps", rc.steps},
            {"pair", rc.all_pairs ? std::string("all") : rc.pair.name()},
            {"source", to_string(rc.source)},
            {"cutoff", rc.cutoff}};
}

std::string parameter_echo(const RunConfig& rc) {
    const JCConstants c = derive_constants(rc.params);
    std::ostringstream ss;
    ss << "# dualjc scan family=" << to_string(rc.init.family) << " alpha=" << fmt(rc.init.alpha)
       << " omega=" << fmt(rc.params.omega) << " nu=" << fmt(rc.params.nu) << " g=" << fmt(rc.params.g)
       << " delta=" << fmt(c.delta) << " G=" << fmt(c.big_g) << " tmax=" << fmt(rc.t_max) << " steps=" << rc.steps
       << " pair=" << (rc.all_pairs ? std::string("all") : rc.pair.name()) << " source=" << to_string(rc.source)
       << " cutoff=" << rc.cutoff;
    return ss.str();
}

json report_json(const DeathReport& r) {
    json intervals = json::array();
    for (const auto& iv : r.dead_intervals) intervals.push_back({iv.start, iv.end});
    return {{"dead_intervals", intervals},
            {"touch_points", r.touch_points},
            {"period", r.period},
            {"initial_concurrence", r.initial_concurrence},
            {"total_dead_time", r.total_dead_time()}};
}

void write_plot_script(const std::string& script_path, const std::string& csv_path, std::size_t columns) {
    std::ofstream s(script_path, std::ios::binary);
    if (!s) throw ConfigError("cannot open plot script '" + script_path + "'");
    const auto png = std::filesystem::path(csv_path).replace_extension(".png").string();
    s << "# gnuplot script generated by dualjc scan\n"
      << "set datafile separator ','\n"
      << "set key autotitle columnhead\n"
      << "set terminal pngcairo size 900,540\n"
      << "set output '" << png << "'\n"
      << "set xlabel 't'\n"
      << "set ylabel 'concurrence'\n"
      << "set yrange [0:1.05]\n"
      << "plot for [i=2:" << columns + 1 << "] '" << csv_path << "' using 1:i with lines lw 2\n";
}

int cmd_constants(const Options& o, std::ostream& out) {
    const ModelParams p = resolve_params(o);
    const JCConstants c = derive_constants(p);
    Sink sink(o.out_path, out);
    const std::vector<std::pair<std::string, double>> rows{
        {"delta", c.delta},          {"G", c.big_g},   {"rabi", c.rabi},  {"lambda_plus", c.lambda_plus},
        {"lambda_minus", c.lambda_minus}, {"L", c.l_coef}, {"M", c.m_coef}, {"N", c.n_coef}};
    if (o.format.value_or("csv") == "json") {
        json j = json::object();
        for (const auto& [k, v] : rows) j[k] = v;
        *sink << j.dump(2) << '\n';
    } else {
        for (const auto& [k, v] : rows) *sink << std::left << std::setw(13) << k << ' ' << fmt(v) << '\n';
    }
    return kSuccess;
}

int cmd_scan(const Options& o, std::ostream& out) {
    const RunConfig rc = resolve(o);
    if (!o.plot_script.empty() && o.out_path.empty())
        throw ConfigError("--plot-script needs --out so the script can reference the CSV file");
    const bool json_output = o.format.value_or("csv") == "json";

    std::vector<ConcurrenceSeries> series;
    if (rc.all_pairs) {
        series = scan_all_pairs(rc.init, rc.params, rc.t_max, rc.steps, rc.cutoff);
    } else {
        series.push_back(scan(rc.init, rc.params, rc.pair, rc.t_max, rc.steps, rc.source, rc.cutoff));
    }

    Sink sink(o.out_path, out);
    const auto& times = series.front().times;
    if (json_output) {
        json cols = json::array({"t"});
        for (const auto& s : series) cols.push_back(s.pair.name());
        json rows = json::array();
        for (std::size_t i = 0; i < times.size(); ++i) {
            json row = json::array({times[i]});
            for (const auto& s : series) row.push_back(s.values[i]);
            rows.push_back(std::move(row));
        }
        *sink << json{{"parameters", params_json(rc)}, {"columns", cols}, {"rows", rows}}.dump() << '\n';
    } else {
        *sink << parameter_echo(rc) << '\n' << 't';
        for (const auto& s : series) *sink << ',' << s.pair.name();
        *sink << '\n';
        for (std::size_t i = 0; i < times.size(); ++i) {
            *sink << fmt(times[i]);
            for (const auto& s : series) *sink << ',' << fmt(s.values[i]);
            *sink << '\n';
        }
    }
    if (!o.plot_script.empty()) write_plot_script(o.plot_script, o.out_path, series.size());
    return kSuccess;
}

int cmd_death(const Options& o, std::ostream& out) {
    const RunConfig rc = resolve(o);
    if (rc.all_pairs) throw ConfigError("death analysis takes a single pair");
    const auto series = scan(rc.init, rc.params, rc.pair, rc.t_max, rc.steps, rc.source, rc.cutoff);
    const double tol = o.zero_tol.value_or(default_zero_tol(rc.source));
    json j = params_json(rc);
    j["zero_tol"] = tol;
    j.update(report_json(detect_death(series, tol)));
    Sink sink(o.out_path, out);
    *sink << j.dump(2) << '\n';
    return kSuccess;
}

int cmd_validate(const Options& o, std::ostream& out) {
    if (o.family == "custom") throw ConfigError("validation requires a named family");
    Options closed = o;
    closed.source = "closed";
    closed.pair = "AB";
    const RunConfig rc = resolve(closed);
    const ValidationReport r = validate(rc.init, rc.params, rc.t_max, rc.steps, o.tolerance, rc.cutoff);
    json j = params_json(rc);
    j.erase("source");
    j.erase("pair");
    j["max_abs_error"] = r.max_abs_error;
    j["worst_time"] = r.worst_time;
    j["samples"] = r.samples;
    j["tolerance"] = r.tolerance;
    j["amplitude_error"] = r.amplitude_error;
    j["density_error"] = r.density_error;
    j["concurrence_error"] = r.concurrence_error;
    j["pass"] = r.pass;
    Sink sink(o.out_path, out);
    *sink << j.dump(2) << '\n';
    return r.pass ? kSuccess : kValidationFailed;
}

int cmd_sweep(const Options& o, std::ostream& out) {
    Options single = o;
    single.pair = "AB";
    const RunConfig rc = resolve(single);
    if (!rc.init.is_named()) throw ConfigError("sweep requires a named family");

    std::vector<double> alphas;
    if (!o.alphas.empty()) {
        alphas = parse_number_list(o.alphas, "--alphas");
    } else {
        if (o.alpha_count < 1) throw ConfigError("--alpha-count must be positive");
        // Interior of (0, pi/2).
        for (int k = 1; k <= o.alpha_count; ++k)
            alphas.push_back(std::numbers::pi / 2.0 * k / (o.alpha_count + 1));
    }
    const auto entries = sweep_alpha(rc.init.family, rc.params, alphas, rc.t_max, rc.steps, rc.source, rc.cutoff);
    json reports = json::array();
    for (const auto& e : entries) {
        json r = report_json(e.report);
        r["alpha"] = e.alpha;
        reports.push_back(std::move(r));
    }
    json j = params_json(rc);
    j.erase("alpha");
    j.erase("pair");
    j["death_threshold_alpha"] = death_threshold_alpha();
    j["reports"] = std::move(reports);
    Sink sink(o.out_path, out);
    *sink << j.dump(2) << '\n';
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Entanglement dynamics of two atoms in separate lossless Jaynes-Cummings cavities", "dualjc"};
    app.fallthrough();
    app.require_subcommand(1);
    app.set_config("--config", "", "Read 'key = value' settings from a file; flags override it");

    Options o;
    app.add_option("--family", o.family, "Initial atomic state: psi, phi or custom")
        ->check(CLI::IsMember({"psi", "phi", "custom"}));
    app.add_option("--alpha", o.alpha, "Superposition angle (rad)");
    app.add_option("--delta", o.delta, "Detuning omega - nu");
    app.add_option("--G", o.big_g, "Interaction strength G = 2g");
    app.add_option("--omega", o.omega, "Atomic transition frequency");
    app.add_option("--nu", o.nu, "Cavity mode frequency (default 10*G in the delta/G parameterization)");
    app.add_option("--g", o.g, "Atom-cavity coupling");
    app.add_option("--tmax", o.t_max, "End of the time grid (default 4*pi/G)");
    app.add_option("--steps", o.steps, "Number of grid points");
    app.add_option("--pair", o.pair, "Subsystem pair: AB, ab, Aa, Bb, Ab, Ba or all");
    app.add_option("--source", o.source, "closed (analytic) or oracle (numerical propagation)")
        ->check(CLI::IsMember({"closed", "oracle"}));
    app.add_option("--cutoff", o.cutoff, "Fock cutoff per cavity (1..4)");
    app.add_option("--format", o.format, "Output format: csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--plot-script", o.plot_script, "Write a gnuplot script plotting the --out CSV");
    app.add_option("--out", o.out_path, "Output file (default stdout)");
    app.add_option("--tol", o.tolerance, "validate: maximum allowed absolute error");
    app.add_option("--zero-tol", o.zero_tol, "death: concurrence threshold treated as zero");
    app.add_option("--amplitudes", o.amplitudes, "custom family: re0,im0,re1,im1,... in basis order");
    app.add_option("--alphas", o.alphas, "sweep: comma-separated angles");
    app.add_option("--alpha-count", o.alpha_count, "sweep: uniform grid size on (0, pi/2)");

    auto* constants = app.add_subcommand("constants", "Print the dressed-state constants");
    auto* scan_cmd = app.add_subcommand("scan", "Concurrence versus time as CSV or JSON");
    auto* death = app.add_subcommand("death", "Sudden-death intervals and touch points as JSON");
    auto* validate_cmd = app.add_subcommand("validate", "Compare closed forms with numerical propagation");
    auto* sweep = app.add_subcommand("sweep", "Death reports over a grid of angles");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "dualjc: " << e.what() << '\n';
        return kConfigError;
    }

    try {
        if (constants->parsed()) return cmd_constants(o, out);
        if (scan_cmd->parsed()) return cmd_scan(o, out);
        if (death->parsed()) return cmd_death(o, out);
        if (validate_cmd->parsed()) return cmd_validate(o, out);
        if (sweep->parsed()) return cmd_sweep(o, out);
    } catch (const ConfigError& e) {
        err << "dualjc: " << e.what() << '\n';
        return kConfigError;
    } catch (const QubitEquivalenceError& e) {
        err << "dualjc: " << e.what() << '\n';
        return kPhysicalAssumption;
    }
    return kConfigError;
}

}  // namespace dualjc::cli
