// decoh: run each model over a time grid, sweep a parameter, or run the
// oracle-vs-analytic verification reports. Emits CSV or JSON trace files.
//
// Exit codes: 0 success, 1 verification failure, 2 configuration error, 3 I/O error.

#include "decoh/cavity_mirror.hpp"
#include "decoh/large_spin.hpp"
#include "decoh/localization.hpp"
#include "decoh/semiclassics.hpp"
#include "decoh/stern_gerlach.hpp"
#include "decoh/trace_io.hpp"
#include "decoh/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <map>
#include <set>

namespace {

using decoh::Complex;
using decoh::DecoherenceTrace;
namespace io = decoh::io;

struct RunConfig {
    std::string model;
    std::map<std::string, double> params;
    double t_start = 0.0;
    double t_end = 1.0;
    long n_steps = 2;
    std::string out;
    io::Format format = io::Format::csv;
    bool show_paper_form = false;

    void validate() const {
        static const std::set<std::string> models{"sg", "spin", "cavity", "localize", "semiclassic"};
        if (!models.count(model))
            throw std::invalid_argument("model must be one of sg|spin|cavity|localize|semiclassic");
        if (!(t_end > t_start)) throw std::invalid_argument("t-end must exceed t-start");
        if (n_steps < 2) throw std::invalid_argument("steps must be >= 2");
        if (out.empty()) throw std::invalid_argument("out path is required");
    }
};

double need(const RunConfig& c, const std::string& key) {
    const auto it = c.params.find(key);
    if (it == c.params.end()) throw std::invalid_argument("missing required key '" + key + "'");
    return it->second;
}

double opt(const RunConfig& c, const std::string& key, double fallback) {
    const auto it = c.params.find(key);
    return it == c.params.end() ? fallback : it->second;
}

const std::set<std::string>& known_keys(const std::string& model) {
    static const std::map<std::string, std::set<std::string>> table{
        {"spin", {"j2", "omega", "g", "omega_s"}},
        {"sg", {"M", "a", "f", "k", "theta"}},
        {"cavity", {"omega", "g", "f", "Omega", "M", "n_trunc", "k_idx", "l_idx", "n_mirror", "form"}},
        {"localize",
         {"n", "omega", "g", "x", "x_prime", "mode", "form", "a", "d", "gamma", "t", "k1", "k2",
          "mass"}},
        {"semiclassic", {"sigma", "delta_f"}},
    };
    const auto it = table.find(model);
    if (it == table.end()) throw std::invalid_argument("unknown model '" + model + "'");
    return it->second;
}

std::string digest(const RunConfig& c) {
    std::string d = c.model;
    for (const auto& [k, v] : c.params) d += ";" + k + "=" + io::format_double(v);
    d += ";t=" + io::format_double(c.t_start) + ".." + io::format_double(c.t_end) + "/" +
         std::to_string(c.n_steps);
    return d;
}

std::vector<double> time_grid(const RunConfig& c) {
    std::vector<double> ts(c.n_steps);
    for (long i = 0; i < c.n_steps; ++i)
        ts[i] = c.t_start + (c.t_end - c.t_start) * i / double(c.n_steps - 1);
    return ts;
}

// Evaluate one model's decoherence factor over the time grid.
DecoherenceTrace evaluate_trace(const RunConfig& c) {
    DecoherenceTrace trace;
    trace.model_id = c.model;
    trace.params_digest = digest(c);
    trace.times = time_grid(c);
    trace.values.reserve(trace.times.size());

    if (c.model == "spin") {
        decoh::spin::LargeSpinParams p;
        p.j = decoh::specfun::HalfInteger(static_cast<int>(need(c, "j2")));
        p.omega = need(c, "omega");
        p.g = need(c, "g");
        p.omega_s = opt(c, "omega_s", 0.0);
        const decoh::spin::BranchEvolver evolver(p);
        for (double t : trace.times) trace.values.push_back(evolver.overlap(t));
    } else if (c.model == "sg") {
        const auto p = decoh::sg::SGParams::make(need(c, "M"), need(c, "a"), need(c, "f"),
                                                 need(c, "k"), need(c, "theta"));
        for (double t : trace.times)
            trace.values.emplace_back(c.show_paper_form ? decoh::sg::decoherence_factor(p, t)
                                                        : decoh::sg::decoherence_factor_exact(p, t),
                                      0.0);
    } else if (c.model == "cavity") {
        decoh::cavity::CavityParams p;
        p.omega = need(c, "omega");
        p.g = need(c, "g");
        p.f_drive = opt(c, "f", 0.0);
        p.Omega = need(c, "Omega");
        p.M = need(c, "M");
        p.n_trunc = static_cast<int>(opt(c, "n_trunc", 128));
        const int k = static_cast<int>(opt(c, "k_idx", 0));
        const int l = static_cast<int>(opt(c, "l_idx", 1));
        const int nm = static_cast<int>(opt(c, "n_mirror", 0));
        const int form = static_cast<int>(opt(c, "form", 0));
        for (double t : trace.times) {
            double v = 0.0;
            switch (form) {
                case 0: v = decoh::cavity::overlap_coherent(p, k, l, t); break;
                case 1: v = decoh::cavity::overlap_coherent_limit(p, k, l, t); break;
                case 2:
                    v = c.show_paper_form ? decoh::cavity::overlap_fock_printed(p, k, l, nm, t)
                                          : decoh::cavity::overlap_fock(p, k, l, nm, t);
                    break;
                case 3: v = decoh::cavity::overlap_fock_limit(p, k, l, nm, t); break;
                default: throw std::invalid_argument("cavity: form must be 0..3");
            }
            trace.values.emplace_back(v, 0.0);
        }
    } else if (c.model == "localize") {
        const auto n = static_cast<std::size_t>(need(c, "n"));
        const auto p = decoh::loc::LocalizationParams::uniform(n, need(c, "omega"), need(c, "g"));
        const double x = need(c, "x"), xp = need(c, "x_prime");
        const auto mode = opt(c, "mode", 0.0) == 0.0 ? decoh::loc::CouplingMode::exact
                                                     : decoh::loc::CouplingMode::weak;
        for (double t : trace.times)
            trace.values.push_back(decoh::loc::total_decoherence_factor(p, x, xp, t, mode));
    } else if (c.model == "semiclassic") {
        const double sigma = need(c, "sigma"), df = need(c, "delta_f");
        for (double t : trace.times)
            trace.values.emplace_back(decoh::semi::linearized_decoherence_factor(sigma, df, t), 0.0);
    }
    return trace;
}

// Density sections (localize form 2/3) reuse the grid flags as the x grid.
bool is_density_section(const RunConfig& c) {
    return c.model == "localize" && (opt(c, "form", 0.0) == 2.0 || opt(c, "form", 0.0) == 3.0);
}

io::DensitySection evaluate_section(const RunConfig& c) {
    io::DensitySection s;
    s.model_id = c.model;
    const auto grid = time_grid(c);  // reused as the position grid
    const int form = static_cast<int>(opt(c, "form", 0.0));
    const double t = need(c, "t");
    const double gamma = need(c, "gamma");
    for (double x : grid)
        for (double xp : grid) {
            s.x.push_back(x);
            s.x_prime.push_back(xp);
            if (form == 2) {
                decoh::loc::TwoPacketState st;
                st.separation = need(c, "a");
                st.width = need(c, "d");
                s.abs_rho.push_back(decoh::loc::two_packet_density(st, gamma, t, x, xp));
            } else {
                s.abs_rho.push_back(std::abs(decoh::loc::plane_wave_density(
                    need(c, "k1"), need(c, "k2"), need(c, "mass"), gamma, t, x, xp)));
            }
        }
    return s;
}

int write_output(const RunConfig& c, const std::string& path) {
    std::string payload;
    if (is_density_section(c)) {
        const auto s = evaluate_section(c);
        payload = c.format == io::Format::csv ? io::section_to_csv(s) : io::section_to_json(s);
    } else {
        const auto trace = evaluate_trace(c);
        payload = c.format == io::Format::csv ? io::trace_to_csv(trace) : io::trace_to_json(trace);
    }
    io::write_atomic(path, payload);
    return 0;
}

void merge_config_file(RunConfig& c, const std::string& path,
                       const std::set<std::string>& overridden) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config file " + path);
    nlohmann::json j;
    f >> j;
    // flags override file values: only fill fields the command line left alone
    if (j.contains("model") && !overridden.count("model")) c.model = j["model"].get<std::string>();
    if (j.contains("t_start") && !overridden.count("t-start")) c.t_start = j["t_start"].get<double>();
    if (j.contains("t_end") && !overridden.count("t-end")) c.t_end = j["t_end"].get<double>();
    if (j.contains("steps") && !overridden.count("steps")) c.n_steps = j["steps"].get<long>();
    if (j.contains("out") && !overridden.count("out")) c.out = j["out"].get<std::string>();
    if (j.contains("format") && !overridden.count("format"))
        c.format = j["format"].get<std::string>() == "json" ? io::Format::json : io::Format::csv;
    if (j.contains("params"))
        for (const auto& [k, v] : j["params"].items())
            if (!c.params.count(k)) c.params[k] = v.get<double>();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"decoh: adiabatic-entanglement decoherence models, traces and verification"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::vector<std::string> raw_params;
    std::string config_file, format_str = "csv";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--model", cfg.model, "sg|spin|cavity|localize|semiclassic");
        sub->add_option("--param", raw_params, "model parameter key=value (repeatable)");
        sub->add_option("--t-start", cfg.t_start, "first time sample");
        sub->add_option("--t-end", cfg.t_end, "last time sample");
        sub->add_option("--steps", cfg.n_steps, "number of samples (>= 2)");
        sub->add_option("--out", cfg.out, "output file path");
        sub->add_option("--format", format_str, "csv|json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--config", config_file, "JSON config file; flags override");
        sub->add_flag("--show-paper-form", cfg.show_paper_form,
                      "emit the printed closed forms instead of the oracle-validated ones");
    };

    auto* run = app.add_subcommand("run", "evaluate one model over a time grid");
    add_common(run);

    auto* verify = app.add_subcommand("verify", "oracle-vs-analytic verification report");
    std::string verify_model = "all", level_str = "fast";
    verify->add_option("--model", verify_model, "sg|spin|cavity|localize|semiclassic|core|all");
    verify->add_option("--level", level_str, "fast|full")->check(CLI::IsMember({"fast", "full"}));

    auto* sweep = app.add_subcommand("sweep", "run once per value of one parameter");
    add_common(sweep);
    std::string sweep_key;
    std::vector<double> sweep_values;
    sweep->add_option("--sweep-key", sweep_key, "parameter to sweep")->required();
    sweep->add_option("--values", sweep_values, "comma-separated values")->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) {
            const auto level = level_str == "full" ? decoh::verify::Level::full
                                                   : decoh::verify::Level::fast;
            decoh::verify::Report rep;
            try {
                rep = decoh::verify::run_model(verify_model, level);
            } catch (const std::invalid_argument& e) {
                std::fprintf(stderr, "config error: %s\n", e.what());
                return 2;
            }
            std::fputs(decoh::verify::render(rep).c_str(), stdout);
            return rep.all_passed() ? 0 : 1;
        }

        // run / sweep share config assembly
        std::set<std::string> overridden;
        for (const auto* sub : {run, sweep})
            if (sub->parsed())
                for (const std::string& name :
                     {std::string("--model"), std::string("--t-start"), std::string("--t-end"),
                      std::string("--steps"), std::string("--out"), std::string("--format")})
                    if (sub->count(name)) overridden.insert(name.substr(2));
        for (const std::string& kv : raw_params) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("--param expects key=value, got '" + kv + "'");
            cfg.params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
        }
        if (!config_file.empty()) merge_config_file(cfg, config_file, overridden);
        cfg.format = format_str == "json" ? io::Format::json : io::Format::csv;

        try {
            cfg.validate();
        } catch (const std::invalid_argument& e) {
            std::fprintf(stderr, "config error: %s\n", e.what());
            return 2;
        }

        if (run->parsed()) {
            try {
                return write_output(cfg, cfg.out);
            } catch (const std::invalid_argument& e) {
                std::fprintf(stderr, "config error: %s\n", e.what());
                return 2;
            }
        }

        if (sweep->parsed()) {
            if (sweep_key.empty() || !known_keys(cfg.model).count(sweep_key)) {
                std::fprintf(stderr, "config error: unknown sweep key '%s' for model %s\n",
                             sweep_key.c_str(), cfg.model.c_str());
                return 2;
            }
            std::string index = "value,file\n";
            const std::filesystem::path base(cfg.out);
            for (std::size_t i = 0; i < sweep_values.size(); ++i) {
                RunConfig c = cfg;
                c.params[sweep_key] = sweep_values[i];
                const std::string ext = c.format == io::Format::csv ? ".csv" : ".json";
                const auto file = base.parent_path() /
                                  (base.stem().string() + "_" + std::to_string(i) + ext);
                try {
                    write_output(c, file.string());
                } catch (const std::invalid_argument& e) {
                    std::fprintf(stderr, "config error: %s\n", e.what());
                    return 2;
                }
                index += io::format_double(sweep_values[i]) + "," + file.filename().string() + "\n";
            }
            io::write_atomic(cfg.out, index);  // index written last
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
