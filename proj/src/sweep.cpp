#include "kerrcp/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "kerrcp/fluctuations.hpp"
#include "kerrcp/sensing.hpp"
#include "kerrcp/stability.hpp"
#include "kerrcp/version.hpp"

namespace kerrcp {

namespace {

using json = nlohmann::json;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::vector<std::string> kAxisNames = {"delta", "u_kerr", "eps", "g2"};
const std::vector<std::string> kOutputNames = {"steady", "eigen", "noise", "snr", "sens"};

struct OutputSet {
    bool steady = false, eigen = false, noise = false, want_snr = false, sens = false;
};

OutputSet output_set(const std::vector<std::string>& outputs) {
    OutputSet s;
    for (const auto& o : outputs) {
        if (o == "steady") s.steady = true;
        else if (o == "eigen") s.eigen = true;
        else if (o == "noise") s.noise = true;
        else if (o == "snr") s.want_snr = true;
        else if (o == "sens") s.sens = true;
        else throw SimError(ErrorKind::ConfigError, "unknown output '" + o + "'");
    }
    return s;
}

void set_param(CavityParams& p, const std::string& name, double v) {
    if (name == "delta") p.delta = v;
    else if (name == "u_kerr") p.u_kerr = v;
    else if (name == "eps") p.eps = v;
    else if (name == "g2") p.g2 = v;
    else throw SimError(ErrorKind::ConfigError, "unknown parameter '" + name + "'");
}

struct Row {
    std::vector<double> cols;
    unsigned flags = 0;
};

struct Schema {
    std::vector<std::string> names;  // all double columns, in emit order
    OutputSet out;
};

Schema make_schema(const SweepSpec& spec) {
    Schema sc;
    sc.out = output_set(spec.outputs);
    for (const auto& ax : spec.axes) {
        sc.names.push_back(ax.name);
        if (spec.hz2pi_columns) sc.names.push_back(ax.name + "_hz2pi");
    }
    if (sc.out.steady) {
        sc.names.insert(sc.names.end(), {"alpha_re", "alpha_im", "n_mean"});
    }
    if (sc.out.eigen) {
        sc.names.insert(sc.names.end(),
                        {"Lambda_plus_re", "Lambda_plus_im", "Lambda_minus_re",
                         "Lambda_minus_im", "lambda_plus_re", "lambda_plus_im",
                         "lambda_minus_re", "lambda_minus_im"});
    }
    if (sc.out.noise) {
        sc.names.insert(sc.names.end(), {"n_fluct", "m_anom_re", "m_anom_im"});
    }
    if (sc.out.want_snr) sc.names.push_back("snr_db");
    if (sc.out.sens) {
        sc.names.push_back("s_numeric");
        if (spec.hz2pi_columns) sc.names.push_back("s_per_hz2pi");
    }
    return sc;
}

// evaluate one grid point; ref_alpha carries branch continuity along a line
Row evaluate_point(const SweepSpec& spec, const Schema& sc,
                   const std::vector<double>& axis_vals,
                   std::optional<std::complex<double>>& ref_alpha) {
    Row row;
    row.cols.reserve(sc.names.size());
    CavityParams q = spec.base;
    for (std::size_t i = 0; i < spec.axes.size(); ++i) {
        set_param(q, spec.axes[i].name, axis_vals[i]);
        row.cols.push_back(axis_vals[i]);
        if (spec.hz2pi_columns) row.cols.push_back(axis_vals[i] * spec.gamma_hz);
    }

    const OutputSet& out = sc.out;
    bool need_branch = out.steady || out.noise || out.want_snr || out.sens ||
                       (out.eigen && q.u_kerr > 0.0);
    std::optional<SteadyStateBranch> branch;
    if (need_branch) {
        try {
            BranchSet set = (spec.branch_policy == BranchPolicy::Continuity && ref_alpha)
                                ? steady_state_closed_form(q, BranchPolicy::Continuity, *ref_alpha)
                                : steady_state_closed_form(q);
            branch = set.chosen();
            ref_alpha = branch->alpha;
            if (!branch->mf_stable) row.flags |= kFlagMfUnstable;
            if (!branch->fluct_stable) row.flags |= kFlagFluctUnstable;
        } catch (const SimError& e) {
            row.flags |= (e.kind() == ErrorKind::UnstableLinearSystem)
                             ? kFlagNoSteadyState
                             : kFlagSolverFailure;
        }
    }

    if (out.steady) {
        if (branch) {
            row.cols.push_back(branch->alpha.real());
            row.cols.push_back(branch->alpha.imag());
            row.cols.push_back(branch->n_mean);
        } else {
            row.cols.insert(row.cols.end(), 3, kNaN);
        }
    }

    if (out.eigen) {
        std::optional<EigenSpectrum> es;
        if (branch) {
            es = spectrum(q, *branch);
        } else if (q.u_kerr == 0.0) {
            // linear system: the spectra do not depend on alpha
            es = spectrum(q, q.delta, q.delta, std::complex<double>(q.g2, 0.0));
        }
        if (es) {
            row.cols.push_back(es->lambda_cap_plus.real());
            row.cols.push_back(es->lambda_cap_plus.imag());
            row.cols.push_back(es->lambda_cap_minus.real());
            row.cols.push_back(es->lambda_cap_minus.imag());
            row.cols.push_back(es->lambda_low_plus.real());
            row.cols.push_back(es->lambda_low_plus.imag());
            row.cols.push_back(es->lambda_low_minus.real());
            row.cols.push_back(es->lambda_low_minus.imag());
        } else {
            row.cols.insert(row.cols.end(), 8, kNaN);
        }
    }

    std::optional<NoiseState> ns;
    if ((out.noise || out.want_snr) && branch) {
        try {
            ns = noise_steady_state(*branch, q);
            if (!ns->phys_ok) row.flags |= kFlagPhysViolation;
        } catch (const NonConvergentError&) {
            row.flags |= kFlagNonConvergent;
        } catch (const SimError& e) {
            row.flags |= (e.kind() == ErrorKind::UnstableLinearSystem)
                             ? kFlagFluctUnstable
                             : kFlagSolverFailure;
        }
    }
    if (out.noise) {
        if (ns) {
            row.cols.push_back(ns->n_fluct);
            row.cols.push_back(ns->m_anom.real());
            row.cols.push_back(ns->m_anom.imag());
        } else {
            row.cols.insert(row.cols.end(), 3, kNaN);
        }
    }
    if (out.want_snr) {
        if (ns && branch) {
            SnrReport r = snr(*branch, *ns);
            if (r.infinite) {
                row.flags |= kFlagSnrInfinite;
                row.cols.push_back(kNaN);
            } else {
                row.cols.push_back(r.snr_db);
            }
        } else {
            row.cols.push_back(kNaN);
        }
    }

    if (out.sens) {
        double s_num = kNaN;
        if (branch && q.u_kerr > 0.0) {
            try {
                s_num = sensitivity_numeric(q).s_numeric;
            } catch (const SimError&) {
                row.flags |= kFlagSensFailed;
            }
        } else if (branch) {
            row.flags |= kFlagSensFailed;  // sensitivity undefined at U = 0
        }
        row.cols.push_back(s_num);
        if (spec.hz2pi_columns)
            row.cols.push_back(std::isnan(s_num) ? kNaN : s_num / spec.gamma_hz);
    }
    return row;
}

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

void validate_axis(const SweepAxis& ax, const std::string& ctx) {
    bool known = false;
    for (const auto& n : kAxisNames) known = known || n == ax.name;
    if (!known)
        throw SimError(ErrorKind::ConfigError,
                       ctx + ".name: '" + ax.name + "' is not a sweepable parameter");
    if (!ax.values.empty()) {
        for (double v : ax.values)
            if (!std::isfinite(v))
                throw SimError(ErrorKind::ConfigError, ctx + ".values: non-finite entry");
    } else {
        if (ax.count < 1)
            throw SimError(ErrorKind::ConfigError, ctx + ".count: must be >= 1");
        if (!std::isfinite(ax.start) || !std::isfinite(ax.stop))
            throw SimError(ErrorKind::ConfigError, ctx + ": start/stop must be finite");
        if (ax.log_scale && (ax.start <= 0.0 || ax.stop <= 0.0))
            throw SimError(ErrorKind::ConfigError,
                           ctx + ": log scale requires positive endpoints");
    }
    if (ax.name != "delta") {
        for (double v : ax.grid())
            if (v < 0.0)
                throw SimError(ErrorKind::ConfigError,
                               ctx + ": '" + ax.name + "' values must be >= 0");
    }
}

}  // namespace

std::string flags_text(unsigned flags) {
    if (flags == 0) return "ok";
    std::string s;
    auto add = [&](unsigned bit, const char* name) {
        if (flags & bit) {
            if (!s.empty()) s += '|';
            s += name;
        }
    };
    add(kFlagMfUnstable, "mf_unstable");
    add(kFlagFluctUnstable, "fluct_unstable");
    add(kFlagNoSteadyState, "no_steady_state");
    add(kFlagNonConvergent, "non_convergent");
    add(kFlagPhysViolation, "phys_violation");
    add(kFlagSensFailed, "sens_failed");
    add(kFlagSnrInfinite, "snr_infinite");
    add(kFlagSolverFailure, "solver_failure");
    return s;
}

std::vector<double> SweepAxis::grid() const {
    if (!values.empty()) return values;
    std::vector<double> g(count);
    if (count == 1) {
        g[0] = start;
        return g;
    }
    if (log_scale) {
        double la = std::log10(start), lb = std::log10(stop);
        for (int i = 0; i < count; ++i)
            g[i] = std::pow(10.0, la + (lb - la) * i / double(count - 1));
    } else {
        for (int i = 0; i < count; ++i)
            g[i] = start + (stop - start) * i / double(count - 1);
    }
    return g;
}

SweepOutcome run_sweep(const SweepSpec& spec, const SweepOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    spec.base.validate();
    if (spec.axes.empty() || spec.axes.size() > 2)
        throw SimError(ErrorKind::ConfigError, "axes: need 1 or 2 swept parameters");
    for (std::size_t i = 0; i < spec.axes.size(); ++i)
        validate_axis(spec.axes[i], "axes[" + std::to_string(i) + "]");
    if (spec.outputs.empty())
        throw SimError(ErrorKind::ConfigError, "outputs: need at least one of "
                                               "steady|eigen|noise|snr|sens");
    if (spec.hz2pi_columns && !(spec.gamma_hz > 0.0))
        throw SimError(ErrorKind::ConfigError,
                       "hz2pi_columns requires a positive gamma_hz2pi");

    Schema sc = make_schema(spec);

    // outer lines x inner points; single-axis sweeps are one line
    std::vector<double> outer = spec.axes.size() == 2 ? spec.axes[0].grid()
                                                      : std::vector<double>{0.0};
    std::vector<double> inner =
        spec.axes.size() == 2 ? spec.axes[1].grid() : spec.axes[0].grid();

    const std::size_t n_lines = outer.size();
    const std::size_t n_inner = inner.size();
    std::vector<Row> rows(n_lines * n_inner);

    std::atomic<std::size_t> next_line{0};
    std::exception_ptr first_error;
    std::mutex err_mutex;
    auto worker = [&] {
        for (;;) {
            std::size_t li = next_line.fetch_add(1);
            if (li >= n_lines) return;
            try {
                std::optional<std::complex<double>> ref;
                for (std::size_t ii = 0; ii < n_inner; ++ii) {
                    std::vector<double> vals;
                    if (spec.axes.size() == 2) vals = {outer[li], inner[ii]};
                    else vals = {inner[ii]};
                    rows[li * n_inner + ii] = evaluate_point(spec, sc, vals, ref);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    int n_threads = std::max(1, opt.threads);
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    namespace fs = std::filesystem;
    fs::create_directories(opt.out_dir);
    SweepOutcome outcome;
    outcome.rows = rows.size();
    for (const Row& r : rows)
        if (r.flags != 0) ++outcome.flagged;
    outcome.exit_code = outcome.flagged == 0 ? 0 : 2;

    fs::path csv_path = fs::path(opt.out_dir) / (spec.name + ".csv");
    {
        std::ofstream csv(csv_path);
        if (!csv)
            throw SimError(ErrorKind::ConfigError,
                           "cannot write " + csv_path.string());
        for (std::size_t i = 0; i < sc.names.size(); ++i)
            csv << sc.names[i] << ',';
        csv << "flags,flags_text\n";
        for (const Row& r : rows) {
            for (double v : r.cols) csv << fmt(v) << ',';
            csv << r.flags << ',' << flags_text(r.flags) << '\n';
        }
    }
    outcome.csv_path = csv_path.string();

    if (spec.json_mirror) {
        json jrows = json::array();
        for (const Row& r : rows) {
            json jr;
            for (std::size_t i = 0; i < sc.names.size(); ++i)
                jr[sc.names[i]] = std::isnan(r.cols[i]) ? json(nullptr) : json(r.cols[i]);
            jr["flags"] = r.flags;
            jr["flags_text"] = flags_text(r.flags);
            jrows.push_back(std::move(jr));
        }
        std::ofstream js(fs::path(opt.out_dir) / (spec.name + ".json"));
        js << jrows.dump() << '\n';
    }

    auto wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
    json manifest;
    manifest["tool"] = "kerrcp";
    manifest["version"] = kVersion;
    manifest["name"] = spec.name;
    manifest["base"] = {{"gamma", spec.base.gamma}, {"delta", spec.base.delta},
                        {"u_kerr", spec.base.u_kerr}, {"eps", spec.base.eps},
                        {"g2", spec.base.g2}};
    manifest["axes"] = json::array();
    for (const auto& ax : spec.axes) {
        json ja = {{"name", ax.name}};
        if (!ax.values.empty()) {
            ja["values"] = ax.values;
        } else {
            ja["scale"] = ax.log_scale ? "log" : "linear";
            ja["start"] = ax.start;
            ja["stop"] = ax.stop;
            ja["count"] = ax.count;
        }
        manifest["axes"].push_back(std::move(ja));
    }
    manifest["outputs"] = spec.outputs;
    manifest["branch_policy"] =
        spec.branch_policy == BranchPolicy::Continuity ? "continuity" : "lowest";
    manifest["gamma_hz2pi"] = spec.gamma_hz;
    manifest["tolerances"] = {{"tol_root", kTolRoot}, {"tol_stab", kTolStab}};
    manifest["rows"] = outcome.rows;
    manifest["flagged_rows"] = outcome.flagged;
    manifest["threads"] = n_threads;
    manifest["wall_time_s"] = wall.count();
    manifest["timestamp_unix"] =
        std::chrono::duration_cast<std::chrono::seconds>(
            std::chrono::system_clock::now().time_since_epoch()).count();
    fs::path man_path = fs::path(opt.out_dir) / (spec.name + ".manifest.json");
    std::ofstream man(man_path);
    man << manifest.dump(2) << '\n';
    outcome.manifest_path = man_path.string();
    return outcome;
}

namespace {

double get_number(const json& j, const std::string& ctx) {
    if (!j.is_number())
        throw SimError(ErrorKind::ConfigError, ctx + ": expected a number");
    return j.get<double>();
}

void check_keys(const json& j, const std::vector<std::string>& allowed,
                const std::string& ctx) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const auto& k : allowed) ok = ok || k == it.key();
        if (!ok)
            throw SimError(ErrorKind::ConfigError,
                           ctx + ": unknown key '" + it.key() + "'");
    }
}

}  // namespace

SweepSpec parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw SimError(ErrorKind::ConfigError, "cannot open config file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw SimError(ErrorKind::ConfigError,
                       std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw SimError(ErrorKind::ConfigError, "config root must be an object");
    check_keys(j, {"name", "units", "gamma_hz2pi", "base", "axes", "branch_policy",
                   "outputs", "hz2pi_columns", "json_mirror"}, "config");

    SweepSpec spec;
    if (j.contains("name")) {
        if (!j["name"].is_string())
            throw SimError(ErrorKind::ConfigError, "name: expected a string");
        spec.name = j["name"].get<std::string>();
    }

    if (!j.contains("units") || !j["units"].is_string())
        throw SimError(ErrorKind::ConfigError,
                       "units: required, 'gamma' or 'hz2pi'");
    std::string units = j["units"].get<std::string>();
    if (units != "gamma" && units != "hz2pi")
        throw SimError(ErrorKind::ConfigError,
                       "units: must be 'gamma' or 'hz2pi', got '" + units + "'");
    double gamma_hz = 0.0;
    if (j.contains("gamma_hz2pi")) gamma_hz = get_number(j["gamma_hz2pi"], "gamma_hz2pi");
    if (units == "hz2pi" && !(gamma_hz > 0.0))
        throw SimError(ErrorKind::ConfigError,
                       "gamma_hz2pi: required and positive when units = 'hz2pi'");
    spec.gamma_hz = gamma_hz;

    if (!j.contains("base") || !j["base"].is_object())
        throw SimError(ErrorKind::ConfigError, "base: required object");
    check_keys(j["base"], {"gamma", "delta", "u_kerr", "eps", "g2"}, "base");
    CavityParams raw;
    raw.gamma = j["base"].contains("gamma")
                    ? get_number(j["base"]["gamma"], "base.gamma")
                    : (units == "hz2pi" ? gamma_hz : 1.0);
    raw.delta = j["base"].contains("delta") ? get_number(j["base"]["delta"], "base.delta") : 0.0;
    raw.u_kerr = j["base"].contains("u_kerr") ? get_number(j["base"]["u_kerr"], "base.u_kerr") : 0.0;
    raw.eps = j["base"].contains("eps") ? get_number(j["base"]["eps"], "base.eps") : 0.0;
    raw.g2 = j["base"].contains("g2") ? get_number(j["base"]["g2"], "base.g2") : 0.0;
    try {
        spec.base = units == "hz2pi" ? normalize(raw, gamma_hz) : raw;
        spec.base.validate();
    } catch (const SimError& e) {
        throw SimError(ErrorKind::ConfigError, std::string("base: ") + e.what());
    }

    if (!j.contains("axes") || !j["axes"].is_array() || j["axes"].empty() ||
        j["axes"].size() > 2)
        throw SimError(ErrorKind::ConfigError, "axes: required array of 1 or 2 entries");
    for (std::size_t i = 0; i < j["axes"].size(); ++i) {
        const json& ja = j["axes"][i];
        std::string ctx = "axes[" + std::to_string(i) + "]";
        if (!ja.is_object())
            throw SimError(ErrorKind::ConfigError, ctx + ": expected an object");
        check_keys(ja, {"name", "scale", "start", "stop", "count", "values"}, ctx);
        SweepAxis ax;
        if (!ja.contains("name") || !ja["name"].is_string())
            throw SimError(ErrorKind::ConfigError, ctx + ".name: required string");
        ax.name = ja["name"].get<std::string>();
        if (ja.contains("values")) {
            if (ja.contains("scale") || ja.contains("start") || ja.contains("stop") ||
                ja.contains("count"))
                throw SimError(ErrorKind::ConfigError,
                               ctx + ": 'values' excludes scale/start/stop/count");
            if (!ja["values"].is_array() || ja["values"].empty())
                throw SimError(ErrorKind::ConfigError,
                               ctx + ".values: expected a non-empty array");
            for (const auto& v : ja["values"])
                ax.values.push_back(get_number(v, ctx + ".values[]"));
        } else {
            std::string scale = "linear";
            if (ja.contains("scale")) {
                if (!ja["scale"].is_string())
                    throw SimError(ErrorKind::ConfigError, ctx + ".scale: expected a string");
                scale = ja["scale"].get<std::string>();
            }
            if (scale != "linear" && scale != "log")
                throw SimError(ErrorKind::ConfigError,
                               ctx + ".scale: must be 'linear' or 'log'");
            ax.log_scale = scale == "log";
            if (!ja.contains("start") || !ja.contains("stop") || !ja.contains("count"))
                throw SimError(ErrorKind::ConfigError,
                               ctx + ": start, stop and count are required");
            ax.start = get_number(ja["start"], ctx + ".start");
            ax.stop = get_number(ja["stop"], ctx + ".stop");
            if (!ja["count"].is_number_integer())
                throw SimError(ErrorKind::ConfigError, ctx + ".count: expected an integer");
            ax.count = ja["count"].get<int>();
        }
        if (units == "hz2pi") {
            for (auto& v : ax.values) v /= gamma_hz;
            ax.start /= gamma_hz;
            ax.stop /= gamma_hz;
        }
        validate_axis(ax, ctx);
        spec.axes.push_back(std::move(ax));
    }

    if (j.contains("branch_policy")) {
        std::string bp = j["branch_policy"].is_string()
                             ? j["branch_policy"].get<std::string>()
                             : "";
        if (bp == "lowest") spec.branch_policy = BranchPolicy::LowestN;
        else if (bp == "continuity") spec.branch_policy = BranchPolicy::Continuity;
        else
            throw SimError(ErrorKind::ConfigError,
                           "branch_policy: must be 'lowest' or 'continuity'");
    }

    if (!j.contains("outputs") || !j["outputs"].is_array() || j["outputs"].empty())
        throw SimError(ErrorKind::ConfigError, "outputs: required non-empty array");
    for (const auto& o : j["outputs"]) {
        if (!o.is_string())
            throw SimError(ErrorKind::ConfigError, "outputs[]: expected strings");
        std::string name = o.get<std::string>();
        bool known = false;
        for (const auto& k : kOutputNames) known = known || k == name;
        if (!known)
            throw SimError(ErrorKind::ConfigError, "outputs[]: unknown output '" + name + "'");
        spec.outputs.push_back(name);
    }

    if (j.contains("hz2pi_columns")) {
        if (!j["hz2pi_columns"].is_boolean())
            throw SimError(ErrorKind::ConfigError, "hz2pi_columns: expected a boolean");
        spec.hz2pi_columns = j["hz2pi_columns"].get<bool>();
        if (spec.hz2pi_columns && !(gamma_hz > 0.0))
            throw SimError(ErrorKind::ConfigError,
                           "hz2pi_columns: requires gamma_hz2pi");
    }
    if (j.contains("json_mirror")) {
        if (!j["json_mirror"].is_boolean())
            throw SimError(ErrorKind::ConfigError, "json_mirror: expected a boolean");
        spec.json_mirror = j["json_mirror"].get<bool>();
    }
    return spec;
}

SweepOutcome run_config(const std::string& config_path, const SweepOptions& opt) {
    return run_sweep(parse_config(config_path), opt);
}

std::vector<std::string> figure_ids() {
    return {"fig2a", "fig2b", "fig2c", "fig3a", "fig3b", "fig3c", "fig4a", "fig4b"};
}

SweepSpec figure_spec(const std::string& fig_id) {
    // reference operating point: gamma/2pi = 1e9 Hz, Delta = 0, eps/gamma = 1e-3
    const double g0 = 0.25;
    SweepSpec s;
    s.name = fig_id;
    s.gamma_hz = 1e9;
    s.hz2pi_columns = true;
    s.branch_policy = BranchPolicy::Continuity;
    s.base = CavityParams{1.0, 0.0, 0.0, 1e-3, g0};

    auto lin = [](const std::string& name, double a, double b, int n) {
        SweepAxis ax;
        ax.name = name;
        ax.start = a;
        ax.stop = b;
        ax.count = n;
        return ax;
    };
    auto log_ax = [](const std::string& name, double a, double b, int n) {
        SweepAxis ax;
        ax.name = name;
        ax.log_scale = true;
        ax.start = a;
        ax.stop = b;
        ax.count = n;
        return ax;
    };
    auto vals = [](const std::string& name, std::vector<double> v) {
        SweepAxis ax;
        ax.name = name;
        ax.values = std::move(v);
        return ax;
    };

    if (fig_id == "fig2a") {
        s.base.u_kerr = 0.0;
        s.axes = {lin("g2", 0.0, 0.3, 121)};
        s.outputs = {"eigen"};
    } else if (fig_id == "fig2b") {
        // U/2pi in {0, 0.01, 0.1, 1} Hz
        s.axes = {vals("u_kerr", {0.0, 1e-11, 1e-10, 1e-9}),
                  lin("g2", g0 - 2e-3, g0 + 2e-3, 81)};
        s.outputs = {"eigen"};
    } else if (fig_id == "fig2c") {
        s.axes = {vals("u_kerr", {1e-11, 1e-10, 1e-9}),
                  lin("g2", g0 - 2e-5, g0 + 2e-5, 81)};
        s.outputs = {"eigen"};
    } else if (fig_id == "fig3a") {
        s.axes = {lin("g2", g0 - 2e-3, g0, 41), log_ax("u_kerr", 1e-11, 1e-6, 51)};
        s.outputs = {"steady", "sens"};
    } else if (fig_id == "fig3b") {
        s.axes = {vals("g2", {g0, g0 - 1e-4, g0 - 5e-4, g0 - 1e-3}),
                  log_ax("u_kerr", 1e-11, 1e-6, 61)};
        s.outputs = {"steady", "sens"};
    } else if (fig_id == "fig3c") {
        s.axes = {vals("u_kerr", {1e-11, 1e-10, 1e-9}),
                  lin("g2", g0 - 1e-3, g0, 61)};
        s.outputs = {"steady", "sens"};
    } else if (fig_id == "fig4a") {
        s.axes = {log_ax("u_kerr", 1e-10, 1e-6, 61)};
        s.outputs = {"steady", "noise", "snr"};
    } else if (fig_id == "fig4b") {
        s.base.u_kerr = 1e-9;  // U/2pi = 1 Hz
        s.axes = {log_ax("eps", 1e-6, 1e-2, 81)};
        s.outputs = {"steady", "noise", "snr"};
    } else {
        throw SimError(ErrorKind::ConfigError, "unknown figure id '" + fig_id + "'");
    }
    return s;
}

}  // namespace kerrcp
