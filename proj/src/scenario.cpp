// scenario.cpp

#include "rwasb/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include "rwasb/matching.hpp"

namespace rwasb::scenario {

// --- TOML subset -------------------------------------------------------------

namespace {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;
    int line = 1;

    bool eof() const { return i >= s.size(); }
    char peek() const { return eof() ? '\0' : s[i]; }
    char get() {
        char c = s[i++];
        if (c == '\n') ++line;
        return c;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ConfigError("line " + std::to_string(line) + ": " + msg);
    }

    // whitespace and comments; newlines consumed only if `newlines`
    void skip(bool newlines) {
        while (!eof()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r') {
                get();
            } else if (c == '#') {
                while (!eof() && peek() != '\n') get();
            } else if (c == '\n' && newlines) {
                get();
            } else {
                break;
            }
        }
    }
};

bool is_bare_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

std::string parse_key(Cursor& c) {
    std::string key;
    while (!c.eof() && is_bare_char(c.peek())) key += c.get();
    if (key.empty()) c.fail("expected a key");
    return key;
}

TomlValue parse_value(Cursor& c);

std::string parse_string(Cursor& c) {
    c.get();  // opening quote
    std::string out;
    while (true) {
        if (c.eof()) c.fail("unterminated string");
        char ch = c.get();
        if (ch == '"') break;
        if (ch == '\\') {
            if (c.eof()) c.fail("unterminated escape");
            char e = c.get();
            switch (e) {
                case '"': out += '"'; break;
                case '\\': out += '\\'; break;
                case 'n': out += '\n'; break;
                case 't': out += '\t'; break;
                default: c.fail("unsupported escape");
            }
        } else if (ch == '\n') {
            c.fail("newline in string");
        } else {
            out += ch;
        }
    }
    return out;
}

TomlValue parse_array(Cursor& c) {
    c.get();  // '['
    TomlArray arr;
    while (true) {
        c.skip(true);
        if (c.eof()) c.fail("unterminated array");
        if (c.peek() == ']') {
            c.get();
            break;
        }
        arr.push_back(parse_value(c));
        c.skip(true);
        if (c.peek() == ',') {
            c.get();
        } else if (c.peek() != ']') {
            c.fail("expected ',' or ']' in array");
        }
    }
    return TomlValue{arr};
}

TomlValue parse_inline_table(Cursor& c) {
    c.get();  // '{'
    TomlTable table;
    c.skip(true);
    if (c.peek() == '}') {
        c.get();
        return TomlValue{table};
    }
    while (true) {
        c.skip(true);
        std::string key = parse_key(c);
        c.skip(false);
        if (c.peek() != '=') c.fail("expected '=' in inline table");
        c.get();
        c.skip(false);
        if (!table.emplace(key, parse_value(c)).second) c.fail("duplicate key '" + key + "'");
        c.skip(true);
        if (c.peek() == ',') {
            c.get();
        } else if (c.peek() == '}') {
            c.get();
            break;
        } else {
            c.fail("expected ',' or '}' in inline table");
        }
    }
    return TomlValue{table};
}

TomlValue parse_number(Cursor& c) {
    std::string tok;
    while (!c.eof()) {
        char ch = c.peek();
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '+' || ch == '-' || ch == '.' ||
            ch == 'e' || ch == 'E' || ch == '_') {
            tok += c.get();
        } else {
            break;
        }
    }
    tok.erase(std::remove(tok.begin(), tok.end(), '_'), tok.end());
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        c.fail("malformed number '" + tok + "'");
    }
    if (used != tok.size()) c.fail("malformed number '" + tok + "'");
    return TomlValue{v};
}

TomlValue parse_value(Cursor& c) {
    char ch = c.peek();
    if (ch == '"') return TomlValue{parse_string(c)};
    if (ch == '[') return parse_array(c);
    if (ch == '{') return parse_inline_table(c);
    if (ch == 't' || ch == 'f') {
        std::string word = parse_key(c);
        if (word == "true") return TomlValue{true};
        if (word == "false") return TomlValue{false};
        c.fail("unexpected token '" + word + "'");
    }
    return parse_number(c);
}

void expect_line_end(Cursor& c) {
    c.skip(false);
    if (!c.eof() && c.peek() != '\n') c.fail("trailing characters after value");
}

}  // namespace

std::map<std::string, TomlTable> parse_toml(const std::string& text) {
    Cursor c{text};
    std::map<std::string, TomlTable> doc;
    std::string section;
    while (true) {
        c.skip(true);
        if (c.eof()) break;
        if (c.peek() == '[') {
            c.get();
            c.skip(false);
            section = parse_key(c);
            c.skip(false);
            if (c.peek() != ']') c.fail("expected ']' after section name");
            c.get();
            expect_line_end(c);
            doc[section];  // materialize empty sections
        } else {
            std::string key = parse_key(c);
            c.skip(false);
            if (c.peek() != '=') c.fail("expected '=' after key '" + key + "'");
            c.get();
            c.skip(false);
            TomlValue v = parse_value(c);
            expect_line_end(c);
            if (!doc[section].emplace(key, std::move(v)).second)
                c.fail("duplicate key '" + key + "'");
        }
    }
    return doc;
}

// --- scenario construction ---------------------------------------------------

namespace {

const TomlValue* find(const TomlTable& t, const std::string& key) {
    auto it = t.find(key);
    return it == t.end() ? nullptr : &it->second;
}

double need_number(const TomlTable& t, const std::string& where, const std::string& key) {
    const TomlValue* v = find(t, key);
    if (!v || !v->is_number()) throw ConfigError(where + "." + key + ": expected a number");
    return std::get<double>(v->data);
}

double opt_number(const TomlTable& t, const std::string& where, const std::string& key,
                  double fallback) {
    const TomlValue* v = find(t, key);
    if (!v) return fallback;
    if (!v->is_number()) throw ConfigError(where + "." + key + ": expected a number");
    return std::get<double>(v->data);
}

Output output_from_name(const std::string& name) {
    if (name == "exact") return Output::Exact;
    if (name == "pert") return Output::Pert;
    if (name == "pert-uncorrected") return Output::PertUncorrected;
    if (name == "uniform") return Output::Uniform;
    if (name == "born") return Output::Born;
    if (name == "tcl2") return Output::Tcl2;
    if (name == "tcl4") return Output::Tcl4;
    if (name == "overlap") return Output::Overlap;
    if (name == "short-time") return Output::ShortTime;
    if (name == "gamma-rate") return Output::GammaRate;
    if (name == "tstar") return Output::Tstar;
    if (name == "correlations") return Output::Correlations;
    throw ConfigError("run.outputs: unknown output '" + name + "'");
}

bool order_dependent(Output o) {
    switch (o) {
        case Output::Pert:
        case Output::PertUncorrected:
        case Output::Uniform:
        case Output::Overlap:
        case Output::ShortTime:
            return true;
        default:
            return false;
    }
}

bool single_resonant_peak(const Scenario& sc) {
    return sc.kind == KernelKind::Lorentz && sc.modes.size() == 1 && sc.modes[0].dw == 0.0;
}

}  // namespace

std::string output_name(Output o) {
    switch (o) {
        case Output::Exact: return "exact";
        case Output::Pert: return "pert";
        case Output::PertUncorrected: return "pert-uncorrected";
        case Output::Uniform: return "uniform";
        case Output::Born: return "born";
        case Output::Tcl2: return "tcl2";
        case Output::Tcl4: return "tcl4";
        case Output::Overlap: return "overlap";
        case Output::ShortTime: return "short-time";
        case Output::GammaRate: return "gamma-rate";
        case Output::Tstar: return "tstar";
        case Output::Correlations: return "correlations";
    }
    return "?";
}

Scenario scenario_from_toml(const std::map<std::string, TomlTable>& doc) {
    Scenario sc;

    auto kit = doc.find("kernel");
    if (kit == doc.end()) throw ConfigError("missing [kernel] section");
    const TomlTable& kernel = kit->second;
    std::string type = "lorentz";
    if (const TomlValue* tv = find(kernel, "type")) {
        if (!tv->is_string()) throw ConfigError("kernel.type: expected a string");
        type = std::get<std::string>(tv->data);
    }
    if (type == "lorentz") {
        sc.kind = KernelKind::Lorentz;
        const TomlValue* mv = find(kernel, "modes");
        if (!mv || !mv->is_array() || std::get<TomlArray>(mv->data).empty())
            throw ConfigError("kernel.modes: expected a non-empty array of {g, gamma, dw}");
        for (const TomlValue& entry : std::get<TomlArray>(mv->data)) {
            if (!entry.is_table()) throw ConfigError("kernel.modes: entries must be tables");
            const TomlTable& m = std::get<TomlTable>(entry.data);
            try {
                sc.modes.emplace_back(need_number(m, "kernel.modes", "g"),
                                      need_number(m, "kernel.modes", "gamma"),
                                      opt_number(m, "kernel.modes", "dw", 0.0));
            } catch (const std::invalid_argument& e) {
                throw ConfigError(std::string("kernel.modes: ") + e.what());
            }
        }
    } else if (type == "appendixG") {
        sc.kind = KernelKind::SubohmicMix;
        sc.chi = need_number(kernel, "kernel", "chi");
        sc.sub_g = need_number(kernel, "kernel", "g");
        sc.sub_gamma = need_number(kernel, "kernel", "gamma");
        try {
            subohmic::SubohmicMixKernel check(sc.chi, sc.sub_g, sc.sub_gamma);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("kernel: ") + e.what());
        }
    } else {
        throw ConfigError("kernel.type: must be \"lorentz\" or \"appendixG\"");
    }

    auto rit = doc.find("run");
    if (rit == doc.end()) throw ConfigError("missing [run] section");
    const TomlTable& run = rit->second;

    if (const TomlValue* lv = find(run, "lambdas")) {
        if (!lv->is_array()) throw ConfigError("run.lambdas: expected an array");
        for (const TomlValue& v : std::get<TomlArray>(lv->data)) {
            if (!v.is_number()) throw ConfigError("run.lambdas: entries must be numbers");
            sc.lambdas.push_back(std::get<double>(v.data));
        }
    } else {
        sc.lambdas.push_back(need_number(run, "run", "lambda"));
    }
    if (sc.lambdas.empty()) throw ConfigError("run.lambdas: must not be empty");
    for (double l : sc.lambdas)
        if (!(l > 0.0)) throw ConfigError("run.lambdas: values must be > 0");

    sc.t_max = need_number(run, "run", "t_max");
    if (!(sc.t_max > 0.0)) throw ConfigError("run.t_max: must be > 0");
    sc.n_points = static_cast<std::size_t>(opt_number(run, "run", "n_points", 201.0));
    if (sc.n_points < 2) throw ConfigError("run.n_points: must be >= 2");

    if (const TomlValue* ov = find(run, "orders")) {
        if (!ov->is_array()) throw ConfigError("run.orders: expected an array");
        for (const TomlValue& v : std::get<TomlArray>(ov->data)) {
            if (!v.is_number()) throw ConfigError("run.orders: entries must be numbers");
            double d = std::get<double>(v.data);
            int n = static_cast<int>(d);
            if (n != d || n < 0 || n > 16)
                throw ConfigError("run.orders: entries must be integers in [0, 16]");
            sc.orders.push_back(n);
        }
    }
    if (sc.orders.empty()) sc.orders.push_back(1);

    const TomlValue* out = find(run, "outputs");
    if (!out || !out->is_array()) throw ConfigError("run.outputs: expected an array of strings");
    for (const TomlValue& v : std::get<TomlArray>(out->data)) {
        if (!v.is_string()) throw ConfigError("run.outputs: entries must be strings");
        sc.outputs.push_back(output_from_name(std::get<std::string>(v.data)));
    }
    if (sc.outputs.empty()) throw ConfigError("run.outputs: at least one output required");

    if (auto dit = doc.find("rho0"); dit != doc.end()) {
        const TomlTable& r0 = dit->second;
        double p11 = opt_number(r0, "rho0", "p11", 1.0);
        Complex c10{opt_number(r0, "rho0", "c10_re", 0.0), opt_number(r0, "rho0", "c10_im", 0.0)};
        sc.rho0 = dynamics::make_density(p11, c10);
        if (!sc.rho0.physical) throw ConfigError("rho0: not a physical initial state");
    }

    // feature gating
    for (Output o : sc.outputs) {
        if ((o == Output::Born || o == Output::Tcl2 || o == Output::Tcl4) &&
            !single_resonant_peak(sc))
            throw ConfigError("run.outputs: '" + output_name(o) +
                              "' requires a single resonant Lorentz peak");
        if (sc.kind == KernelKind::SubohmicMix && o != Output::Exact && o != Output::Pert &&
            o != Output::GammaRate && o != Output::Tstar)
            throw ConfigError("run.outputs: '" + output_name(o) +
                              "' is unavailable for the appendixG kernel (first moment diverges)");
    }
    return sc;
}

Scenario parse_scenario(const std::string& text) { return scenario_from_toml(parse_toml(text)); }

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open scenario file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

std::string preset_text(const std::string& name) {
    if (name == "figure1") {
        return R"(# Single resonant peak, strong scaling parameter: exact population vs the
# corrected and uncorrected perturbative exponentials.
[kernel]
type = "lorentz"
modes = [{ g = 0.4, gamma = 1.0, dw = 0.0 }]

[run]
lambda = 1.0
t_max = 10.0
n_points = 201
orders = [12]
outputs = ["exact", "pert", "pert-uncorrected", "tstar"]

[rho0]
p11 = 1.0
)";
    }
    if (name == "figure2") {
        return R"(# Single resonant peak: exact population vs the order-0 weak-coupling GKSL
# curve, the order-1 perturbative exponential, and the matched uniform curve.
[kernel]
type = "lorentz"
modes = [{ g = 0.4, gamma = 1.0, dw = 0.0 }]

[run]
lambda = 1.0
t_max = 8.0
n_points = 201
orders = [0, 1]
outputs = ["exact", "pert", "uniform"]

[rho0]
p11 = 1.0
)";
    }
    throw ConfigError("unknown preset '" + name + "' (expected figure1 or figure2)");
}

// --- run ---------------------------------------------------------------------

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

using dynamics::QubitDensity;
using kernels::ExpSumKernel;
using matching::overlap_x;
using matching::short_time_x;
using matching::uniform_x;
using perturbation::PoleExpansion;
using volterra::Trajectory;

struct CsvFile {
    std::string name;
    std::string body;
};

struct LambdaResult {
    std::vector<CsvFile> files;
    std::string manifest;
};

PoleExpansion truncate_expansion(const PoleExpansion& full, int n) {
    PoleExpansion e;
    e.p_terms.assign(full.p_terms.begin(), full.p_terms.begin() + n + 1);
    e.r_terms.assign(full.r_terms.begin(), full.r_terms.begin() + n + 1);
    return e;
}

std::string trajectory_csv(const std::vector<double>& grid, const std::vector<Complex>& values,
                           const QubitDensity& rho0) {
    std::string out = "t,value_re,value_im,p11,physical\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const QubitDensity rho = dynamics::density_from_x(values[i], rho0);
        out += format_number(grid[i]) + "," + format_number(values[i].real()) + "," +
               format_number(values[i].imag()) + "," + format_number(rho.p11) + "," +
               (rho.physical ? "1" : "0") + "\n";
    }
    return out;
}

std::string rates_csv(const Trajectory& traj) {
    std::string out = "t,gamma,delta_omega\n";
    for (double t : traj.times) {
        double g = std::nan(""), dw = std::nan("");
        try {
            const auto rates = dynamics::generator_rates(traj, t);
            g = rates.gamma_t;
            dw = rates.delta_omega_t;
        } catch (const dynamics::NodeSingularityError&) {
            // node of x(t): rates undefined, emitted as nan
        }
        out += format_number(t) + "," + format_number(g) + "," + format_number(dw) + "\n";
    }
    return out;
}

std::string correlations_csv(const Trajectory& traj, const PoleExpansion& expansion,
                             double t_max) {
    std::string out = "t1,t2,exact_re,exact_im,markov_re,markov_im,renorm_re,renorm_im\n";
    const double step = t_max / 20.0;
    for (double t1 : {0.0, t_max / 4.0, t_max / 2.0}) {
        for (double t2 = t1; t2 <= t_max + 1e-12; t2 += step) {
            const Complex ex = dynamics::corr_exact(traj, t1, t2);
            Complex mk{std::nan(""), std::nan("")};
            try {
                mk = dynamics::corr_markov(traj, t1, t2);
            } catch (const dynamics::NodeSingularityError&) {
            }
            const Complex rn = dynamics::corr_renormalized(traj, expansion, t1, t2);
            out += format_number(t1) + "," + format_number(t2) + "," + format_number(ex.real()) +
                   "," + format_number(ex.imag()) + "," + format_number(mk.real()) + "," +
                   format_number(mk.imag()) + "," + format_number(rn.real()) + "," +
                   format_number(rn.imag()) + "\n";
        }
    }
    return out;
}

LambdaResult run_lorentz_lambda(const Scenario& sc, std::size_t li,
                                const std::vector<double>& grid) {
    const double lambda = sc.lambdas[li];
    const ExpSumKernel kernel(sc.modes);
    const int max_order = *std::max_element(sc.orders.begin(), sc.orders.end());
    const kernels::MomentTable mom = kernels::moments(kernel, max_order);
    const PoleExpansion full = perturbation::pole_residue_series(mom, max_order);
    const std::string prefix = "lambda" + std::to_string(li);

    LambdaResult res;
    res.manifest += prefix + ".value=" + format_number(lambda) + "\n";

    Trajectory exact;
    bool have_exact = false;
    auto ensure_exact = [&]() {
        if (!have_exact) {
            exact = volterra::solve_expsum(kernel, lambda, grid);
            have_exact = true;
        }
    };

    auto sample = [&](auto&& f) {
        std::vector<Complex> v(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) v[i] = f(grid[i]);
        return v;
    };

    const std::string lsuf = "_l" + std::to_string(li);
    for (Output o : sc.outputs) {
        if (order_dependent(o)) {
            for (int n : sc.orders) {
                const PoleExpansion e = truncate_expansion(full, n);
                const kernels::MomentTable mn{{mom.values.begin(), mom.values.begin() + n + 1}};
                std::vector<Complex> v;
                switch (o) {
                    case Output::Pert:
                        v = sample([&](double t) { return perturbation::x_pert(e, lambda, t); });
                        break;
                    case Output::PertUncorrected:
                        v = sample([&](double t) { return std::exp(e.pole(lambda) * t); });
                        break;
                    case Output::Uniform:
                        v = sample([&](double t) { return uniform_x(kernel, e, lambda, t, n); });
                        break;
                    case Output::Overlap:
                        v = sample([&](double t) { return overlap_x(mn, lambda, t, n); });
                        break;
                    case Output::ShortTime:
                        v = sample([&](double t) { return short_time_x(kernel, lambda, t, n); });
                        break;
                    default:
                        break;
                }
                res.files.push_back(CsvFile{output_name(o) + "_o" + std::to_string(n) + lsuf +
                                                ".csv",
                                            trajectory_csv(grid, v, sc.rho0)});
            }
            continue;
        }
        switch (o) {
            case Output::Exact: {
                ensure_exact();
                res.files.push_back(
                    CsvFile{"exact" + lsuf + ".csv", trajectory_csv(grid, exact.values, sc.rho0)});
                break;
            }
            case Output::Born: {
                const auto& m = sc.modes[0];
                auto v = sample([&](double t) {
                    return Complex{volterra::born_x_prime(m.g, m.gamma, lambda, t), 0.0};
                });
                // Born column is the population factor, not an amplitude
                std::string body = "t,population_factor,p11\n";
                for (std::size_t i = 0; i < grid.size(); ++i)
                    body += format_number(grid[i]) + "," + format_number(v[i].real()) + "," +
                            format_number(v[i].real() * sc.rho0.p11) + "\n";
                res.files.push_back(CsvFile{"born" + lsuf + ".csv", body});
                break;
            }
            case Output::Tcl2:
            case Output::Tcl4: {
                const auto& m = sc.modes[0];
                const int ord = (o == Output::Tcl2) ? 2 : 4;
                Trajectory traj = volterra::tcl_x(ord, m.g, m.gamma, lambda, grid);
                res.files.push_back(CsvFile{output_name(o) + lsuf + ".csv",
                                            trajectory_csv(grid, traj.values, sc.rho0)});
                break;
            }
            case Output::GammaRate: {
                ensure_exact();
                res.files.push_back(CsvFile{"gamma-rate" + lsuf + ".csv", rates_csv(exact)});
                break;
            }
            case Output::Tstar: {
                for (int n : sc.orders) {
                    const PoleExpansion e = truncate_expansion(full, n);
                    const std::string base = prefix + ".order" + std::to_string(n);
                    if (n >= 1) {
                        auto ta = perturbation::initial_layer_tstar(
                            e, lambda, perturbation::TstarMode::Asymptotic);
                        res.manifest += base + ".tstar_asymptotic=" +
                                        (ta ? format_number(*ta) : "none") + "\n";
                    }
                    auto te = perturbation::initial_layer_tstar(e, lambda,
                                                                perturbation::TstarMode::Exact);
                    res.manifest +=
                        base + ".tstar_exact=" + (te ? format_number(*te) : "none") + "\n";
                }
                res.manifest += prefix + ".tstar_lorentz=" +
                                format_number(perturbation::lorentz_tstar(kernel, lambda)) + "\n";
                break;
            }
            case Output::Correlations: {
                ensure_exact();
                res.files.push_back(CsvFile{"correlations" + lsuf + ".csv",
                                            correlations_csv(exact, full, sc.t_max)});
                break;
            }
            default:
                break;
        }
    }

    for (int n : sc.orders) {
        const PoleExpansion e = truncate_expansion(full, n);
        const auto gksl = perturbation::asymptotic_gksl(e, lambda);
        const std::string base = prefix + ".order" + std::to_string(n);
        res.manifest += base + ".gamma_pert=" + format_number(gksl.gamma_rate) + "\n";
        res.manifest += base + ".delta_omega_pert=" + format_number(gksl.lamb_shift) + "\n";
        res.manifest += base + ".r_re=" + format_number(gksl.r.real()) + "\n";
        res.manifest += base + ".r_im=" + format_number(gksl.r.imag()) + "\n";
    }
    if (single_resonant_peak(sc)) {
        const auto& m = sc.modes[0];
        const bool oscillatory = lambda * lambda * m.g * m.g > 0.25 * m.gamma * m.gamma;
        // the oscillatory branch is an extension beyond the real-discriminant regime
        res.manifest += prefix + ".oscillatory_branch=" + (oscillatory ? "1" : "0") + "\n";
    }
    return res;
}

LambdaResult run_subohmic_lambda(const Scenario& sc, std::size_t li,
                                 const std::vector<double>& grid) {
    const double lambda = sc.lambdas[li];
    const subohmic::SubohmicMixKernel kernel(sc.chi, sc.sub_g, sc.sub_gamma);
    const kernels::GenericKernel generic = kernel.as_generic();
    const std::string prefix = "lambda" + std::to_string(li);
    const std::string lsuf = "_l" + std::to_string(li);

    LambdaResult res;
    res.manifest += prefix + ".value=" + format_number(lambda) + "\n";

    Trajectory exact;
    bool have_exact = false;
    auto ensure_exact = [&]() {
        if (!have_exact) {
            exact = volterra::solve_generic(generic, lambda, grid);
            have_exact = true;
        }
    };

    for (Output o : sc.outputs) {
        switch (o) {
            case Output::Exact: {
                ensure_exact();
                res.files.push_back(
                    CsvFile{"exact" + lsuf + ".csv", trajectory_csv(grid, exact.values, sc.rho0)});
                break;
            }
            case Output::Pert: {
                // half-order expansion x_0 + lambda x_{1/2}; no lambda^2 term exists
                std::vector<Complex> v(grid.size());
                for (std::size_t i = 0; i < grid.size(); ++i)
                    v[i] = Complex{kernel.x_zero(grid[i]) + lambda * kernel.x_half(grid[i]), 0.0};
                res.files.push_back(
                    CsvFile{"pert_half" + lsuf + ".csv", trajectory_csv(grid, v, sc.rho0)});
                break;
            }
            case Output::GammaRate: {
                ensure_exact();
                res.files.push_back(CsvFile{"gamma-rate" + lsuf + ".csv", rates_csv(exact)});
                break;
            }
            case Output::Tstar: {
                res.manifest += prefix + ".tstar_asymptotic=divergent_first_moment\n";
                break;
            }
            default:
                break;
        }
    }
    return res;
}

std::string manifest_header(const Scenario& sc) {
    std::string m;
    if (sc.kind == KernelKind::Lorentz) {
        m += "kernel.type=lorentz\n";
        for (std::size_t i = 0; i < sc.modes.size(); ++i) {
            const std::string p = "kernel.mode" + std::to_string(i);
            m += p + ".g=" + format_number(sc.modes[i].g) + "\n";
            m += p + ".gamma=" + format_number(sc.modes[i].gamma) + "\n";
            m += p + ".dw=" + format_number(sc.modes[i].dw) + "\n";
        }
    } else {
        m += "kernel.type=appendixG\n";
        m += "kernel.chi=" + format_number(sc.chi) + "\n";
        m += "kernel.g=" + format_number(sc.sub_g) + "\n";
        m += "kernel.gamma=" + format_number(sc.sub_gamma) + "\n";
    }
    m += "grid.t_max=" + format_number(sc.t_max) + "\n";
    m += "grid.n_points=" + std::to_string(sc.n_points) + "\n";
    m += "rho0.p11=" + format_number(sc.rho0.p11) + "\n";
    m += "rho0.c10_re=" + format_number(sc.rho0.c10.real()) + "\n";
    m += "rho0.c10_im=" + format_number(sc.rho0.c10.imag()) + "\n";
    m += "solver.rel_tol=" + format_number(volterra::SolverOptions{}.rel_tol) + "\n";
    m += "solver.abs_tol=" + format_number(volterra::SolverOptions{}.abs_tol) + "\n";
    m += "derivative.method=hermite_interpolant\n";
    std::string orders;
    for (std::size_t i = 0; i < sc.orders.size(); ++i)
        orders += (i ? "," : "") + std::to_string(sc.orders[i]);
    m += "orders=" + orders + "\n";

    const int max_order = *std::max_element(sc.orders.begin(), sc.orders.end());
    if (sc.kind == KernelKind::Lorentz) {
        const ExpSumKernel kernel(sc.modes);
        const kernels::MomentTable mom = kernels::moments(kernel, max_order);
        for (int k = 0; k <= max_order; ++k) {
            m += "moments.G" + std::to_string(k) + "_re=" + format_number(mom[k].real()) + "\n";
            m += "moments.G" + std::to_string(k) + "_im=" + format_number(mom[k].imag()) + "\n";
        }
        const PoleExpansion e = perturbation::pole_residue_series(mom, max_order);
        for (int k = 0; k <= max_order; ++k) {
            const std::string s = std::to_string(k);
            m += "series.p" + s + "_re=" + format_number(e.p_terms[k].real()) + "\n";
            m += "series.p" + s + "_im=" + format_number(e.p_terms[k].imag()) + "\n";
            m += "series.r" + s + "_re=" + format_number(e.r_terms[k].real()) + "\n";
            m += "series.r" + s + "_im=" + format_number(e.r_terms[k].imag()) + "\n";
        }
    } else {
        const subohmic::SubohmicMixKernel kernel(sc.chi, sc.sub_g, sc.sub_gamma);
        m += "moments.G0_re=" + format_number(kernel.a()) + "\n";
        m += "moments.G0_im=0\n";
        m += "moments.G1=divergent\n";
    }
    return m;
}

}  // namespace

void run(const Scenario& sc, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const std::vector<double> grid = volterra::uniform_grid(sc.t_max, sc.n_points);

    std::vector<std::future<LambdaResult>> futures;
    futures.reserve(sc.lambdas.size());
    for (std::size_t li = 0; li < sc.lambdas.size(); ++li) {
        futures.push_back(std::async(std::launch::async, [&sc, li, &grid]() {
            return sc.kind == KernelKind::Lorentz ? run_lorentz_lambda(sc, li, grid)
                                                  : run_subohmic_lambda(sc, li, grid);
        }));
    }

    std::string manifest = manifest_header(sc);
    for (auto& f : futures) {
        LambdaResult r = f.get();
        for (const CsvFile& file : r.files) {
            std::ofstream out(fs::path(out_dir) / file.name, std::ios::binary);
            if (!out) throw std::runtime_error("cannot write " + file.name);
            out << file.body;
        }
        manifest += r.manifest;
    }
    std::ofstream out(fs::path(out_dir) / "manifest.txt", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write manifest.txt");
    out << manifest;
}

std::string report_constants(const Scenario& sc) {
    std::string m = manifest_header(sc);
    const int max_order = *std::max_element(sc.orders.begin(), sc.orders.end());
    for (std::size_t li = 0; li < sc.lambdas.size(); ++li) {
        const double lambda = sc.lambdas[li];
        const std::string prefix = "lambda" + std::to_string(li);
        m += prefix + ".value=" + format_number(lambda) + "\n";
        if (sc.kind != KernelKind::Lorentz) {
            m += prefix + ".tstar_asymptotic=divergent_first_moment\n";
            continue;
        }
        const ExpSumKernel kernel(sc.modes);
        const kernels::MomentTable mom = kernels::moments(kernel, max_order);
        const PoleExpansion full = perturbation::pole_residue_series(mom, max_order);
        const auto gksl = perturbation::asymptotic_gksl(full, lambda);
        m += prefix + ".gamma_pert=" + format_number(gksl.gamma_rate) + "\n";
        m += prefix + ".delta_omega_pert=" + format_number(gksl.lamb_shift) + "\n";
        if (max_order >= 1) {
            auto ta = perturbation::initial_layer_tstar(full, lambda,
                                                        perturbation::TstarMode::Asymptotic);
            m += prefix + ".tstar_asymptotic=" + (ta ? format_number(*ta) : "none") + "\n";
        }
        auto te = perturbation::initial_layer_tstar(full, lambda, perturbation::TstarMode::Exact);
        m += prefix + ".tstar_exact=" + (te ? format_number(*te) : "none") + "\n";
        m += prefix + ".tstar_lorentz=" +
             format_number(perturbation::lorentz_tstar(kernel, lambda)) + "\n";
    }
    return m;
}

}  // namespace rwasb::scenario
