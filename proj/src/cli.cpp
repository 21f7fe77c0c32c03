#include "eit4/cli.hpp"

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>

#include "eit4/asymptotic.hpp"
#include "eit4/cubic.hpp"
#include "eit4/model.hpp"
#include "eit4/oracle.hpp"
#include "eit4/transient.hpp"

namespace eit4::cli {

namespace {

const char* kUsage =
    "usage: eit4 <eigen|evolve|steady|fig2|fig3|sweep> [--config FILE]\n"
    "            [--key value ...] [--out FILE]\n"
    "\n"
    "keys (config file or --flag; rate values accept a G3 suffix, e.g. 4G3):\n"
    "  gamma21 Gamma3 Gamma4            decay rates, s^-1\n"
    "  omega_c omega_p omega_24         Rabi magnitudes, s^-1\n"
    "  phase_c phase_p phase_24         Rabi phases, rad\n"
    "  t_end n_points                   time grid\n"
    "  method                           exact|weak|strong|rk4 (evolve)\n"
    "  force                            run closed forms outside their regime\n"
    "  unit                             dimensionless|seconds|absolute\n"
    "  atom_density dipole_31           medium data for unit=absolute\n"
    "  r_weak r_rate                    regime classification thresholds\n"
    "  rk4_dt                           integrator step override, s\n"
    "  fig2_omega_c fig2_signal_ratio fig2_probe_ratio\n"
    "  fig3_omega_c fig3_omega_24_factors fig3_probe_ratio\n"
    "  sweep_omega_c_min/max/n sweep_omega_24_min/max/n sweep_spacing\n"
    "  seed out\n";

const std::set<std::string> kKnownKeys = {
    "gamma21", "Gamma3", "Gamma4", "omega_c", "omega_p", "omega_24",
    "phase_c", "phase_p", "phase_24", "t_end", "n_points", "method", "force",
    "unit", "atom_density", "dipole_31", "out", "seed", "r_weak", "r_rate",
    "rk4_dt", "fig2_omega_c", "fig2_signal_ratio", "fig2_probe_ratio",
    "fig3_omega_c", "fig3_omega_24_factors", "fig3_probe_ratio",
    "sweep_omega_c_min", "sweep_omega_c_max", "sweep_omega_c_n",
    "sweep_omega_24_min", "sweep_omega_24_max", "sweep_omega_24_n",
    "sweep_spacing",
};

bool color_enabled() {
    return std::getenv("EIT4_NO_COLOR") == nullptr && isatty(2);
}

void print_error(const std::string& msg) {
    if (color_enabled())
        std::cerr << "\x1b[31meit4: error:\x1b[0m " << msg << "\n";
    else
        std::cerr << "eit4: error: " << msg << "\n";
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0' || !std::isfinite(x))
        throw ConfigError("invalid number for " + key + ": '" + v + "'");
    return x;
}

// bare number in s^-1 or "<number>G3"
double parse_rate(const std::string& key, const std::string& v, double Gamma3) {
    if (v.size() > 2 && v.compare(v.size() - 2, 2, "G3") == 0)
        return parse_double(key, v.substr(0, v.size() - 2)) * Gamma3;
    return parse_double(key, v);
}

long parse_int(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const long x = std::strtol(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError("invalid integer for " + key + ": '" + v + "'");
    return x;
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("invalid boolean for " + key + ": '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::string format_compact(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

std::string format_full(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

void RawConfig::set(const std::string& key, const std::string& value) {
    if (!kKnownKeys.count(key)) throw ConfigError("unknown key '" + key + "'");
    kv[key] = value;
}

RawConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    RawConfig raw;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": expected key = value");
        raw.set(key, value);
    }
    return raw;
}

RabiFields RunConfig::fields() const {
    return {std::polar(mag_c, phase_c), std::polar(mag_p, phase_p),
            std::polar(mag_24, phase_24)};
}

RunConfig resolve(const RawConfig& raw, const std::string& command) {
    RunConfig c;
    auto get = [&](const char* k) { return raw.kv.at(k); };

    if (raw.has("Gamma3")) {
        const std::string v = get("Gamma3");
        if (v.size() > 2 && v.compare(v.size() - 2, 2, "G3") == 0)
            throw ConfigError("Gamma3 must be absolute (no G3 suffix)");
        c.decay.Gamma3 = parse_double("Gamma3", v);
    }
    const double G3 = c.decay.Gamma3;
    if (raw.has("gamma21")) c.decay.gamma21 = parse_rate("gamma21", get("gamma21"), G3);
    if (raw.has("Gamma4")) c.decay.Gamma4 = parse_rate("Gamma4", get("Gamma4"), G3);

    if (raw.has("omega_c")) {
        c.mag_c = parse_rate("omega_c", get("omega_c"), G3);
        c.has_omega_c = true;
    }
    if (raw.has("omega_p")) {
        c.mag_p = parse_rate("omega_p", get("omega_p"), G3);
        c.has_omega_p = true;
    }
    if (raw.has("omega_24")) c.mag_24 = parse_rate("omega_24", get("omega_24"), G3);
    if (raw.has("phase_c")) c.phase_c = parse_double("phase_c", get("phase_c"));
    if (raw.has("phase_p")) c.phase_p = parse_double("phase_p", get("phase_p"));
    if (raw.has("phase_24")) c.phase_24 = parse_double("phase_24", get("phase_24"));

    if (raw.has("t_end")) {
        c.t_end = parse_double("t_end", get("t_end"));
        c.t_end_set = true;
    }
    if (raw.has("n_points")) {
        c.n_points = static_cast<int>(parse_int("n_points", get("n_points")));
        c.n_points_set = true;
    }
    if (raw.has("method")) {
        c.method = get("method");
        if (c.method != "exact" && c.method != "weak" && c.method != "strong" &&
            c.method != "rk4")
            throw ConfigError("method must be exact|weak|strong|rk4");
    }
    if (raw.has("force")) c.force = parse_bool("force", get("force"));
    if (raw.has("unit")) {
        const std::string u = get("unit");
        if (u == "dimensionless") c.unit = response::ChiUnit::dimensionless;
        else if (u == "seconds") c.unit = response::ChiUnit::seconds;
        else if (u == "absolute") c.unit = response::ChiUnit::absolute;
        else throw ConfigError("unit must be dimensionless|seconds|absolute");
    }
    if (raw.has("atom_density") || raw.has("dipole_31")) {
        if (!raw.has("atom_density") || !raw.has("dipole_31"))
            throw ConfigError("atom_density and dipole_31 must be given together");
        c.medium = MediumConstants{
            parse_double("atom_density", get("atom_density")),
            parse_double("dipole_31", get("dipole_31"))};
    }
    if (c.unit == response::ChiUnit::absolute && !c.medium)
        throw ConfigError("unit=absolute requires atom_density and dipole_31");
    if (raw.has("out")) c.out = get("out");
    if (raw.has("seed"))
        c.seed = static_cast<unsigned long long>(parse_int("seed", get("seed")));
    if (raw.has("r_weak")) c.r_weak = parse_double("r_weak", get("r_weak"));
    if (raw.has("r_rate")) c.r_rate = parse_double("r_rate", get("r_rate"));
    if (raw.has("rk4_dt")) c.rk4_dt = parse_double("rk4_dt", get("rk4_dt"));

    c.fig2_omega_c = {0.5 * G3, 1.0 * G3, 2.0 * G3, 4.0 * G3};
    if (raw.has("fig2_omega_c")) {
        c.fig2_omega_c.clear();
        for (const auto& item : split_list(get("fig2_omega_c")))
            c.fig2_omega_c.push_back(parse_rate("fig2_omega_c", item, G3));
        if (c.fig2_omega_c.empty()) throw ConfigError("fig2_omega_c list is empty");
    }
    if (raw.has("fig2_signal_ratio"))
        c.fig2_signal_ratio = parse_double("fig2_signal_ratio", get("fig2_signal_ratio"));
    if (raw.has("fig2_probe_ratio"))
        c.fig2_probe_ratio = parse_double("fig2_probe_ratio", get("fig2_probe_ratio"));
    if (raw.has("fig3_omega_24_factors")) {
        c.fig3_factors.clear();
        for (const auto& item : split_list(get("fig3_omega_24_factors")))
            c.fig3_factors.push_back(parse_double("fig3_omega_24_factors", item));
        if (c.fig3_factors.empty())
            throw ConfigError("fig3_omega_24_factors list is empty");
    }
    if (raw.has("fig3_probe_ratio"))
        c.fig3_probe_ratio = parse_double("fig3_probe_ratio", get("fig3_probe_ratio"));
    c.fig3_omega_c = raw.has("fig3_omega_c")
                         ? parse_rate("fig3_omega_c", get("fig3_omega_c"), G3)
                         : 4.0 * G3;

    c.sweep_oc_min = raw.has("sweep_omega_c_min")
                         ? parse_rate("sweep_omega_c_min", get("sweep_omega_c_min"), G3)
                         : 0.5 * G3;
    c.sweep_oc_max = raw.has("sweep_omega_c_max")
                         ? parse_rate("sweep_omega_c_max", get("sweep_omega_c_max"), G3)
                         : 8.0 * G3;
    if (raw.has("sweep_omega_c_n"))
        c.sweep_oc_n = static_cast<int>(parse_int("sweep_omega_c_n", get("sweep_omega_c_n")));
    c.sweep_o24_min = raw.has("sweep_omega_24_min")
                          ? parse_rate("sweep_omega_24_min", get("sweep_omega_24_min"), G3)
                          : 0.0;
    c.sweep_o24_max = raw.has("sweep_omega_24_max")
                          ? parse_rate("sweep_omega_24_max", get("sweep_omega_24_max"), G3)
                          : 10.0 * G3;
    if (raw.has("sweep_omega_24_n"))
        c.sweep_o24_n = static_cast<int>(parse_int("sweep_omega_24_n", get("sweep_omega_24_n")));
    if (raw.has("sweep_spacing")) {
        const std::string s = get("sweep_spacing");
        if (s == "log") c.sweep_log = true;
        else if (s == "linear") c.sweep_log = false;
        else throw ConfigError("sweep_spacing must be linear|log");
    }

    // per-command grid defaults and required flags
    if (command == "eigen" || command == "evolve" || command == "steady") {
        if (!c.has_omega_c) throw ConfigError("missing required flag --omega_c");
        if ((command == "evolve" || command == "steady") && !c.has_omega_p)
            throw ConfigError("missing required flag --omega_p");
    }
    if (!c.t_end_set) {
        if (command == "fig2") c.t_end = 5e-7;
        else if (command == "fig3") c.t_end = 2e-7;
        else c.t_end = 1e-7;
    }
    if (!c.n_points_set) {
        if (command == "fig2" || command == "fig3") c.n_points = 2000;
        else c.n_points = 1000;
    }
    if (!(c.t_end > 0)) throw ConfigError("t_end must be > 0");
    if (c.n_points < 2) throw ConfigError("n_points must be >= 2");
    if (c.sweep_oc_n < 1 || c.sweep_o24_n < 1)
        throw ConfigError("sweep grid sizes must be >= 1");

    c.decay.validate();
    return c;
}

// ------------------------------------------------------------------ commands

namespace {

std::vector<double> linspace(double t_end, int n) {
    std::vector<double> t(n);
    for (int i = 0; i < n; ++i) t[i] = t_end * i / double(n - 1);
    return t;
}

std::vector<double> axis(double lo, double hi, int n, bool log_spaced) {
    if (n == 1) return {lo};
    std::vector<double> v(n);
    if (log_spaced) {
        if (!(lo > 0) || !(hi > 0))
            throw ConfigError("log spacing requires positive bounds");
        const double la = std::log(lo), lb = std::log(hi);
        for (int i = 0; i < n; ++i)
            v[i] = std::exp(la + (lb - la) * i / double(n - 1));
    } else {
        for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / double(n - 1);
    }
    return v;
}

void emit(const RunConfig& cfg, const std::string& body) {
    if (cfg.out.empty() || cfg.out == "-") {
        std::cout << body;
        std::cout.flush();
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file '" + cfg.out + "'");
    f << body;
}

cplx chi_in_unit(const RunConfig& cfg, cplx a3, const RabiFields& fields) {
    if (std::abs(fields.omega_p) == 0.0) return {0, 0};
    return response::chi_from_a3(a3, fields, cfg.decay, cfg.medium).in_unit(cfg.unit);
}

int cmd_eigen(const RunConfig& cfg) {
    const RabiFields fields = cfg.fields();
    const auto exact = cubic::solve_characteristic(
        cubic::characteristic_coefficients(cfg.decay, fields));

    double scale = 0;
    for (const auto& l : exact.lambdas) scale = std::max(scale, std::abs(l));

    auto dev = [&](cplx lam) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& e : exact.lambdas)
            best = std::min(best,
                            std::abs(lam - e) / std::max(std::abs(e), 1e-300 * scale));
        return best;
    };

    std::string body = "method,index,re_lambda_rad_s,im_lambda_rad_s,rel_dev_vs_exact\n";
    auto rows = [&](const char* name, const std::array<cplx, 3>& ls, bool is_exact) {
        for (int i = 0; i < 3; ++i) {
            body += name;
            body += "," + std::to_string(i + 1);
            body += "," + format_full(ls[i].real());
            body += "," + format_full(ls[i].imag());
            body += "," + format_full(is_exact ? 0.0 : dev(ls[i]));
            body += "\n";
        }
    };
    rows("exact", exact.lambdas, true);

    const asymptotic::WeakSignalSolution weak{
        cfg.decay, fields, transient::steady_state(cfg.decay, fields),
        4.0 * std::norm(fields.omega_c) - cfg.decay.Gamma3 * cfg.decay.Gamma3};
    rows("weak", weak.lambdas(), false);

    const asymptotic::StrongSignalSolution strong{
        cfg.decay, fields, transient::steady_state(cfg.decay, fields),
        4.0 * std::norm(fields.omega_24) - cfg.decay.Gamma4 * cfg.decay.Gamma4};
    rows("strong", strong.lambdas(), false);

    emit(cfg, body);
    return 0;
}

std::vector<Amplitudes> rk4_trace_on_grid(const RunConfig& cfg,
                                          const RabiFields& fields,
                                          const std::vector<double>& grid) {
    const double speed = cfg.decay.max_rate() + fields.max_magnitude();
    double dt = cfg.rk4_dt > 0 ? cfg.rk4_dt : 0.01 / speed;
    const double h = grid[1] - grid[0];
    const int m = std::max(1, static_cast<int>(std::ceil(h / dt * (1 - 1e-12))));
    const oracle::IntegratorConfig icfg{h / m, cfg.t_end, m};
    const auto trace = oracle::integrate_reduced(
        cfg.decay, fields, transient::initial_amplitudes(fields), icfg);
    if (trace.size() != grid.size())
        throw NumericalError("rk4 grid mismatch");   // cannot happen: N = (n-1)*m
    std::vector<Amplitudes> out(trace.size());
    for (size_t i = 0; i < trace.size(); ++i) out[i] = trace[i].a;
    return out;
}

int cmd_evolve(const RunConfig& cfg) {
    const RabiFields fields = cfg.fields();
    const auto grid = linspace(cfg.t_end, cfg.n_points);
    const model::RegimeThresholds th{cfg.r_weak, cfg.r_rate};

    std::vector<Amplitudes> amps(grid.size());
    if (cfg.method == "exact") {
        const auto decomp = transient::decompose(cfg.decay, fields);
        const auto trace = transient::evolve_trace(decomp, grid);
        for (size_t i = 0; i < grid.size(); ++i) amps[i] = trace[i].a;
    } else if (cfg.method == "weak") {
        const auto sol = asymptotic::weak_solution(cfg.decay, fields, cfg.force, th);
        for (size_t i = 0; i < grid.size(); ++i) amps[i] = sol.at(grid[i]);
    } else if (cfg.method == "strong") {
        const auto sol = asymptotic::strong_solution(cfg.decay, fields, cfg.force, th);
        for (size_t i = 0; i < grid.size(); ++i) amps[i] = sol.at(grid[i]);
    } else {
        amps = rk4_trace_on_grid(cfg, fields, grid);
    }

    std::string body = "t_s,re_a2,im_a2,re_a3,im_a3,re_a4,im_a4,re_chi,im_chi\n";
    for (size_t i = 0; i < grid.size(); ++i) {
        const cplx chi = chi_in_unit(cfg, amps[i].a3, fields);
        body += format_full(grid[i]);
        body += "," + format_full(amps[i].a2.real()) + "," + format_full(amps[i].a2.imag());
        body += "," + format_full(amps[i].a3.real()) + "," + format_full(amps[i].a3.imag());
        body += "," + format_full(amps[i].a4.real()) + "," + format_full(amps[i].a4.imag());
        body += "," + format_full(chi.real()) + "," + format_full(chi.imag());
        body += "\n";
    }
    emit(cfg, body);
    return 0;
}

int cmd_steady(const RunConfig& cfg) {
    const RabiFields fields = cfg.fields();
    const auto st = transient::steady_state(cfg.decay, fields).amps;
    const cplx chi = chi_in_unit(cfg, st.a3, fields);

    std::string body = "re_a2,im_a2,re_a3,im_a3,re_a4,im_a4,re_chi,im_chi\n";
    body += format_full(st.a2.real()) + "," + format_full(st.a2.imag());
    body += "," + format_full(st.a3.real()) + "," + format_full(st.a3.imag());
    body += "," + format_full(st.a4.real()) + "," + format_full(st.a4.imag());
    body += "," + format_full(chi.real()) + "," + format_full(chi.imag());
    body += "\n";
    emit(cfg, body);
    return 0;
}

// fig2/fig3 reproduce the closed-form figure data in units of
// Gamma3 * chi_norm; the closed forms run in forced mode because parts of the
// default sweeps sit outside the strict regime gates.
int cmd_fig2(const RunConfig& cfg) {
    const auto grid = linspace(cfg.t_end, cfg.n_points);
    std::vector<std::vector<double>> cols;
    std::string header = "t_s";
    for (const double oc : cfg.fig2_omega_c) {
        const RabiFields f{cplx{oc, 0}, cplx{cfg.fig2_probe_ratio * oc, 0},
                           cplx{cfg.fig2_signal_ratio * oc, 0}};
        const auto sol = asymptotic::weak_solution(cfg.decay, f, /*force=*/true);
        std::vector<double> col(grid.size());
        for (size_t i = 0; i < grid.size(); ++i) {
            const cplx chi = sol.a3(grid[i]) / std::conj(f.omega_p);
            col[i] = cfg.decay.Gamma3 * chi.imag();
        }
        cols.push_back(std::move(col));
        header += ",im_chi_oc_" + format_compact(oc);
    }

    std::string body = header + "\n";
    for (size_t i = 0; i < grid.size(); ++i) {
        body += format_full(grid[i]);
        for (const auto& col : cols) body += "," + format_full(col[i]);
        body += "\n";
    }
    emit(cfg, body);
    return 0;
}

int cmd_fig3(const RunConfig& cfg) {
    const auto grid = linspace(cfg.t_end, cfg.n_points);
    const double oc = cfg.fig3_omega_c;
    std::vector<std::vector<double>> cols;
    std::string header = "t_s";
    for (const double fac : cfg.fig3_factors) {
        const RabiFields f{cplx{oc, 0}, cplx{cfg.fig3_probe_ratio * oc, 0},
                           cplx{fac * oc, 0}};
        const auto sol = asymptotic::strong_solution(cfg.decay, f, /*force=*/true);
        std::vector<double> col(grid.size());
        for (size_t i = 0; i < grid.size(); ++i) {
            const cplx chi = sol.a3(grid[i]) / std::conj(f.omega_p);
            col[i] = cfg.decay.Gamma3 * chi.imag();
        }
        cols.push_back(std::move(col));
        header += ",im_chi_o24_" + format_compact(fac * oc);
    }

    std::string body = header + "\n";
    for (size_t i = 0; i < grid.size(); ++i) {
        body += format_full(grid[i]);
        for (const auto& col : cols) body += "," + format_full(col[i]);
        body += "\n";
    }
    emit(cfg, body);
    return 0;
}

int cmd_sweep(const RunConfig& cfg) {
    const auto ocs = axis(cfg.sweep_oc_min, cfg.sweep_oc_max, cfg.sweep_oc_n,
                          cfg.sweep_log);
    const auto o24s = axis(cfg.sweep_o24_min, cfg.sweep_o24_max, cfg.sweep_o24_n,
                           cfg.sweep_log);
    std::string body = "omega_c_rad_s,omega_24_rad_s,im_chi\n";
    for (const double oc : ocs) {
        for (const double o24 : o24s) {
            const RabiFields f{cplx{oc, 0}, cplx{1, 0}, cplx{o24, 0}};
            const cplx chi_norm = response::weak_steady_chi(cfg.decay, f);
            double value;
            switch (cfg.unit) {
                case response::ChiUnit::seconds: value = chi_norm.imag(); break;
                case response::ChiUnit::absolute: {
                    const double scale = 2.0 * cfg.medium->atom_density *
                                         cfg.medium->dipole_31 * cfg.medium->dipole_31 /
                                         (model::epsilon0 * model::hbar);
                    value = scale * chi_norm.imag();
                    break;
                }
                default: value = cfg.decay.Gamma3 * chi_norm.imag();
            }
            body += format_full(oc) + "," + format_full(o24) + "," +
                    format_full(value) + "\n";
        }
    }
    emit(cfg, body);
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
    try {
        if (argc < 2) throw ConfigError("missing command");
        const std::string command = argv[1];
        if (command == "-h" || command == "--help" || command == "help") {
            std::cout << kUsage;
            return 0;
        }
        if (command != "eigen" && command != "evolve" && command != "steady" &&
            command != "fig2" && command != "fig3" && command != "sweep")
            throw ConfigError("unknown command '" + command + "'");

        // collect flags; --config is applied first, flags override
        RawConfig flags;
        std::string config_path;
        for (int i = 2; i < argc; ++i) {
            std::string arg = argv[i];
            if (arg.rfind("--", 0) != 0)
                throw ConfigError("unexpected argument '" + arg + "'");
            arg = arg.substr(2);
            std::string key, value;
            const auto eq = arg.find('=');
            if (eq != std::string::npos) {
                key = arg.substr(0, eq);
                value = arg.substr(eq + 1);
            } else {
                key = arg;
                if (key == "force") {
                    // boolean flag, value optional
                    if (i + 1 < argc && argv[i + 1][0] != '-') value = argv[++i];
                    else value = "true";
                } else {
                    if (i + 1 >= argc)
                        throw ConfigError("flag --" + key + " needs a value");
                    value = argv[++i];
                }
            }
            if (key == "config") config_path = value;
            else flags.set(key, value);
        }

        RawConfig raw;
        if (!config_path.empty()) raw = parse_config_file(config_path);
        for (const auto& [k, v] : flags.kv) raw.set(k, v);

        const RunConfig cfg = resolve(raw, command);
        if (command == "eigen") return cmd_eigen(cfg);
        if (command == "evolve") return cmd_evolve(cfg);
        if (command == "steady") return cmd_steady(cfg);
        if (command == "fig2") return cmd_fig2(cfg);
        if (command == "fig3") return cmd_fig3(cfg);
        return cmd_sweep(cfg);
    } catch (const ConfigError& e) {
        print_error(e.what());
        std::cerr << kUsage;
        return 2;
    } catch (const RegimeViolation& e) {
        print_error(e.what());
        return 3;
    } catch (const NumericalError& e) {
        print_error(e.what());
        return 4;
    } catch (const InvalidInput& e) {
        print_error(e.what());
        return 2;
    } catch (const std::exception& e) {
        print_error(e.what());
        return 1;
    }
}

}  // namespace eit4::cli
