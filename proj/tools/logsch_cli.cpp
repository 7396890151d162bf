// Command-line front end: builds grids, potentials, and operators from a JSON
// config and writes CSV results.  All numeric output uses %.17g and every
// sampling path is seeded, so identical invocations produce identical bytes.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "logsch/evolution.hpp"
#include "logsch/heat_kernel.hpp"
#include "logsch/hermite.hpp"
#include "logsch/log_calculus.hpp"
#include "logsch/operators.hpp"
#include "logsch/potential.hpp"
#include "logsch/spectral_calculus.hpp"

using nlohmann::json;
using namespace logsch;

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) throw ConfigError("'" + where + "' must be an object");
    for (const auto& item : obj.items())
        if (allowed.find(item.key()) == allowed.end())
            throw ConfigError("unknown key '" + item.key() + "' in " + where);
}

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config root must be an object");
    return j;
}

Grid grid_from(const json& cfg) {
    if (!cfg.contains("grid")) throw ConfigError("missing 'grid' block");
    const json& g = cfg["grid"];
    check_keys(g, {"extents", "counts"}, "grid");
    if (!g.contains("extents") || !g.contains("counts"))
        throw ConfigError("grid needs 'extents' and 'counts'");
    std::vector<std::pair<double, double>> extents;
    for (const auto& e : g["extents"]) {
        if (!e.is_array() || e.size() != 2) throw ConfigError("each grid extent is [lo, hi]");
        extents.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    std::vector<int> counts = g["counts"].get<std::vector<int>>();
    try {
        return build_grid(extents, counts);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("bad grid: ") + e.what());
    }
}

Potential potential_from(const json& cfg, int dim) {
    if (!cfg.contains("potential")) throw ConfigError("missing 'potential' entry");
    if (!cfg["potential"].is_string()) throw ConfigError("'potential' must be a preset string");
    try {
        return make_potential(cfg["potential"].get<std::string>(), dim);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("bad potential: ") + e.what());
    }
}

using ScalarFn = std::function<double(std::span<const double>)>;

ScalarFn function_from(const json& cfg, int dim) {
    if (!cfg.contains("function")) throw ConfigError("missing 'function' block");
    const json& f = cfg["function"];
    if (!f.is_object() || !f.contains("type")) throw ConfigError("'function' needs a 'type'");
    const std::string type = f["type"].get<std::string>();
    if (type == "gaussian_bump") {
        check_keys(f, {"type", "center", "width"}, "function");
        std::vector<double> center(static_cast<std::size_t>(dim), 0.0);
        if (f.contains("center")) {
            center = f["center"].get<std::vector<double>>();
            if (static_cast<int>(center.size()) != dim)
                throw ConfigError("function center must have one entry per axis");
        }
        const double width = f.value("width", 1.0);
        if (!(width > 0.0)) throw ConfigError("function width must be positive");
        return [center, width](std::span<const double> x) {
            double s = 0.0;
            for (std::size_t j = 0; j < x.size(); ++j) {
                const double d = x[j] - center[j];
                s += d * d;
            }
            return std::exp(-s / (2.0 * width * width));
        };
    }
    if (type == "hermite") {
        check_keys(f, {"type", "degrees"}, "function");
        std::vector<int> deg = f.at("degrees").get<std::vector<int>>();
        if (static_cast<int>(deg.size()) != dim)
            throw ConfigError("hermite degrees must have one entry per axis");
        for (int v : deg)
            if (v < 0) throw ConfigError("hermite degrees must be nonnegative");
        return [deg](std::span<const double> x) {
            double p = 1.0;
            for (std::size_t j = 0; j < x.size(); ++j) p *= hermite_function(deg[j], x[j]);
            return p;
        };
    }
    if (type == "constant") {
        check_keys(f, {"type", "value"}, "function");
        const double v = f.value("value", 1.0);
        return [v](std::span<const double>) { return v; };
    }
    throw ConfigError("unknown function type '" + type + "'");
}

QuadratureSpec quadrature_from(const json& cfg) {
    QuadratureSpec spec;
    if (!cfg.contains("quadrature")) return spec;
    const json& q = cfg["quadrature"];
    check_keys(q, {"rel_tol", "abs_tol", "max_panels"}, "quadrature");
    spec.rel_tol = q.value("rel_tol", spec.rel_tol);
    spec.abs_tol = q.value("abs_tol", spec.abs_tol);
    spec.max_panels = q.value("max_panels", spec.max_panels);
    return spec;
}

std::vector<std::vector<double>> points_from(const json& cfg, int dim, const char* key) {
    if (!cfg.contains(key)) throw ConfigError(std::string("missing '") + key + "' list");
    std::vector<std::vector<double>> pts;
    for (const auto& p : cfg[key]) {
        std::vector<double> x = p.get<std::vector<double>>();
        if (static_cast<int>(x.size()) != dim)
            throw ConfigError(std::string("each entry of '") + key +
                              "' must have one coordinate per axis");
        pts.push_back(std::move(x));
    }
    if (pts.empty()) throw ConfigError(std::string("'") + key + "' must be nonempty");
    return pts;
}

struct CsvWriter {
    explicit CsvWriter(const std::filesystem::path& path) : out(path) {
        if (!out) throw std::runtime_error("cannot open output file: " + path.string());
        path_str = path.string();
    }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out << ',';
            out << cells[i];
        }
        out << '\n';
    }
    std::ofstream out;
    std::string path_str;
};

std::vector<std::string> coord_headers(int dim, const char* stem) {
    std::vector<std::string> h;
    for (int j = 0; j < dim; ++j) h.push_back(std::string(stem) + std::to_string(j));
    return h;
}

struct Session {
    json cfg;
    std::filesystem::path out_dir;
    std::uint64_t seed = 0;
    bool verbose = false;
};

SpectralData spectral_from(const Session& s, const Grid& g, const Potential& V) {
    const auto node_cap = s.cfg.value("node_cap", 20000);
    return eigendecompose(assemble(g, V, static_cast<std::size_t>(node_cap)));
}

// ---------------------------------------------------------------- commands

int cmd_spectrum(Session& s) {
    check_keys(s.cfg, {"grid", "potential", "count", "node_cap"}, "config");
    Grid g = grid_from(s.cfg);
    Potential V = potential_from(s.cfg, g.dim);
    SpectralData sd = spectral_from(s, g, V);
    std::size_t count = sd.size();
    if (s.cfg.contains("count")) {
        const auto want = s.cfg["count"].get<long long>();
        if (want < 1) throw ConfigError("'count' must be positive");
        count = std::min<std::size_t>(count, static_cast<std::size_t>(want));
    }
    CsvWriter w(s.out_dir / "spectrum.csv");
    w.row({"k", "lambda"});
    for (std::size_t k = 0; k < count; ++k)
        w.row({std::to_string(k + 1), fmt(sd.lambda(static_cast<Eigen::Index>(k)))});
    std::cout << "wrote " << w.path_str << " (" << count << " eigenvalues)\n";
    return 0;
}

int cmd_rho(Session& s) {
    check_keys(s.cfg, {"potential", "dim", "points", "options"}, "config");
    if (!s.cfg.contains("dim")) throw ConfigError("missing 'dim'");
    const int dim = s.cfg["dim"].get<int>();
    if (dim < 1 || dim > 3) throw ConfigError("'dim' must be 1, 2, or 3");
    Potential V = potential_from(s.cfg, dim);
    auto pts = points_from(s.cfg, dim, "points");
    CriticalRadiusOptions opt;
    opt.seed = s.seed;
    if (s.cfg.contains("options")) {
        const json& o = s.cfg["options"];
        check_keys(o, {"tol", "use_known", "qmc_points"}, "options");
        opt.tol = o.value("tol", opt.tol);
        opt.use_known_rho = o.value("use_known", opt.use_known_rho);
        opt.qmc_points = o.value("qmc_points", opt.qmc_points);
    }
    CsvWriter w(s.out_dir / "rho.csv");
    auto head = coord_headers(dim, "x");
    head.push_back("rho");
    w.row(head);
    for (const auto& p : pts) {
        std::vector<std::string> row;
        for (double c : p) row.push_back(fmt(c));
        row.push_back(fmt(critical_radius(V, p, opt)));
        w.row(row);
    }
    std::cout << "wrote " << w.path_str << " (" << pts.size() << " points)\n";
    return 0;
}

SpectralFunction transform_from(const json& cfg) {
    if (!cfg.contains("transform")) throw ConfigError("missing 'transform' block");
    const json& t = cfg["transform"];
    check_keys(t, {"role", "param"}, "transform");
    const std::string role = t.value("role", "");
    const double param = t.value("param", 0.0);
    try {
        if (role == "log") return SpectralFunction::log();
        if (role == "power") return SpectralFunction::power(param);
        if (role == "neg_power") return SpectralFunction::neg_power(param);
        if (role == "heat") return SpectralFunction::heat(param);
        if (role == "imag_power") return SpectralFunction::imag_power(param);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("bad transform: ") + e.what());
    }
    throw ConfigError("unknown transform role '" + role + "'");
}

int cmd_apply(Session& s) {
    check_keys(s.cfg, {"grid", "potential", "function", "transform", "node_cap"}, "config");
    Grid g = grid_from(s.cfg);
    Potential V = potential_from(s.cfg, g.dim);
    ScalarFn fn = function_from(s.cfg, g.dim);
    SpectralFunction phi = transform_from(s.cfg);
    SpectralData sd = spectral_from(s, g, V);
    Field f = sample_field(g, fn);
    CsvWriter w(s.out_dir / "apply.csv");
    auto head = coord_headers(g.dim, "x");
    head.push_back("f");
    std::vector<double> x(static_cast<std::size_t>(g.dim));
    if (phi.is_complex()) {
        head.push_back("result_re");
        head.push_back("result_im");
        w.row(head);
        ComplexField r = apply_spectral_complex(sd, phi, f);
        for (std::size_t i = 0; i < r.v.size(); ++i) {
            g.node(i, x);
            std::vector<std::string> row;
            for (double c : x) row.push_back(fmt(c));
            row.push_back(fmt(f.v[i]));
            row.push_back(fmt(r.v[i].real()));
            row.push_back(fmt(r.v[i].imag()));
            w.row(row);
        }
    } else {
        head.push_back("result");
        w.row(head);
        Field r = apply_spectral(sd, phi, f);
        for (std::size_t i = 0; i < r.v.size(); ++i) {
            g.node(i, x);
            std::vector<std::string> row;
            for (double c : x) row.push_back(fmt(c));
            row.push_back(fmt(f.v[i]));
            row.push_back(fmt(r.v[i]));
            w.row(row);
        }
    }
    std::cout << "wrote " << w.path_str << " (" << g.size() << " nodes)\n";
    return 0;
}

int cmd_frullani(Session& s) {
    check_keys(s.cfg, {"grid", "potential", "function", "window_values", "quadrature", "node_cap"},
               "config");
    Grid g = grid_from(s.cfg);
    Potential V = potential_from(s.cfg, g.dim);
    ScalarFn fn = function_from(s.cfg, g.dim);
    if (!s.cfg.contains("window_values")) throw ConfigError("missing 'window_values'");
    std::vector<double> ms = s.cfg["window_values"].get<std::vector<double>>();
    if (ms.empty()) throw ConfigError("'window_values' must be nonempty");
    QuadratureSpec spec = quadrature_from(s.cfg);
    SpectralData sd = spectral_from(s, g, V);
    Field f = sample_field(g, fn);
    Field ref = apply_spectral(sd, SpectralFunction::log(), f);
    CsvWriter w(s.out_dir / "frullani.csv");
    w.row({"m", "l2_deviation"});
    for (double m : ms) {
        Field approx = frullani_apply(sd, f, m, spec);
        for (std::size_t i = 0; i < approx.v.size(); ++i) approx.v[i] -= ref.v[i];
        w.row({fmt(m), fmt(norm_l2(approx))});
    }
    std::cout << "wrote " << w.path_str << " (" << ms.size() << " windows)\n";
    return 0;
}

int cmd_log_pointwise(Session& s) {
    check_keys(s.cfg,
               {"grid", "potential", "function", "points", "radius", "rho_options", "quadrature",
                "node_cap"},
               "config");
    Grid g = grid_from(s.cfg);
    Potential V = potential_from(s.cfg, g.dim);
    ScalarFn fn = function_from(s.cfg, g.dim);
    auto pts = points_from(s.cfg, g.dim, "points");
    if (!s.cfg.contains("radius")) throw ConfigError("missing 'radius'");
    const double radius = s.cfg["radius"].get<double>();
    CriticalRadiusOptions ropt;
    ropt.seed = s.seed;
    if (s.cfg.contains("rho_options")) {
        const json& o = s.cfg["rho_options"];
        check_keys(o, {"tol", "use_known", "qmc_points"}, "rho_options");
        ropt.tol = o.value("tol", ropt.tol);
        ropt.use_known_rho = o.value("use_known", ropt.use_known_rho);
        ropt.qmc_points = o.value("qmc_points", ropt.qmc_points);
    }
    SpectralData sd = spectral_from(s, g, V);
    auto sd_ptr = std::make_shared<const SpectralData>(std::move(sd));
    EigenKernel K(sd_ptr);
    Field f = sample_field(g, fn);
    Field ref = apply_spectral(*sd_ptr, SpectralFunction::log(), f);
    PointwiseOptions popt;
    if (s.cfg.contains("quadrature")) popt.quad_rel_tol = quadrature_from(s.cfg).rel_tol;
    CsvWriter w(s.out_dir / "log_pointwise.csv");
    auto head = coord_headers(g.dim, "x");
    for (const char* c : {"r", "value", "local", "far", "k_term", "rho", "spectral", "abs_diff"})
        head.push_back(c);
    w.row(head);
    for (const auto& p : pts) {
        const double rho = critical_radius(V, p, ropt);
        PointwiseLogResult r = pointwise_log(K, f, p, radius, rho, popt);
        const double spectral = ref.v[g.nearest_node(p)];
        std::vector<std::string> row;
        for (double c : p) row.push_back(fmt(c));
        row.push_back(fmt(radius));
        row.push_back(fmt(r.value));
        row.push_back(fmt(r.local));
        row.push_back(fmt(r.far));
        row.push_back(fmt(r.k_term));
        row.push_back(fmt(rho));
        row.push_back(fmt(spectral));
        row.push_back(fmt(std::abs(r.value - spectral)));
        w.row(row);
    }
    std::cout << "wrote " << w.path_str << " (" << pts.size() << " points)\n";
    return 0;
}

std::unique_ptr<HeatKernel> kernel_from(Session& s, std::shared_ptr<const SpectralData>& hold) {
    if (!s.cfg.contains("kernel")) throw ConfigError("missing 'kernel' block");
    const json& k = s.cfg["kernel"];
    check_keys(k, {"type", "dim", "m2"}, "kernel");
    const std::string type = k.value("type", "");
    const int dim = k.value("dim", 1);
    if (dim < 1 || dim > 3) throw ConfigError("kernel 'dim' must be 1, 2, or 3");
    if (type == "free") return std::make_unique<GaussianFreeKernel>(dim);
    if (type == "shifted") {
        const double m2 = k.value("m2", 1.0);
        if (!(m2 > 0.0)) throw ConfigError("kernel 'm2' must be positive");
        return std::make_unique<ShiftedGaussianKernel>(dim, m2);
    }
    if (type == "mehler") return std::make_unique<MehlerKernel>(dim);
    if (type == "eigen") {
        Grid g = grid_from(s.cfg);
        Potential V = potential_from(s.cfg, g.dim);
        hold = std::make_shared<const SpectralData>(spectral_from(s, g, V));
        return std::make_unique<EigenKernel>(hold);
    }
    throw ConfigError("unknown kernel type '" + type + "'");
}

int cmd_kernel_dump(Session& s) {
    check_keys(s.cfg, {"kernel", "grid", "potential", "times", "pairs", "node_cap"}, "config");
    std::shared_ptr<const SpectralData> hold;
    std::unique_ptr<HeatKernel> K = kernel_from(s, hold);
    const int dim = K->dim();
    if (!s.cfg.contains("times")) throw ConfigError("missing 'times'");
    std::vector<double> ts = s.cfg["times"].get<std::vector<double>>();
    for (double t : ts)
        if (!(t > 0.0)) throw ConfigError("kernel times must be positive");
    if (!s.cfg.contains("pairs")) throw ConfigError("missing 'pairs'");
    std::vector<std::pair<std::vector<double>, std::vector<double>>> pairs;
    for (const auto& pr : s.cfg["pairs"]) {
        if (!pr.is_array() || pr.size() != 2) throw ConfigError("each pair is [[x...],[y...]]");
        auto x = pr[0].get<std::vector<double>>();
        auto y = pr[1].get<std::vector<double>>();
        if (static_cast<int>(x.size()) != dim || static_cast<int>(y.size()) != dim)
            throw ConfigError("pair coordinates must match the kernel dimension");
        pairs.emplace_back(std::move(x), std::move(y));
    }
    CsvWriter w(s.out_dir / "kernel_dump.csv");
    std::vector<std::string> head = {"t"};
    for (const auto& h : coord_headers(dim, "x")) head.push_back(h);
    for (const auto& h : coord_headers(dim, "y")) head.push_back(h);
    head.push_back("mass_at_x");
    head.push_back("value");
    w.row(head);
    for (double t : ts)
        for (const auto& [x, y] : pairs) {
            std::vector<std::string> row = {fmt(t)};
            for (double c : x) row.push_back(fmt(c));
            for (double c : y) row.push_back(fmt(c));
            row.push_back(fmt(K->mass(t, x)));
            row.push_back(fmt(K->eval(t, x, y)));
            w.row(row);
        }
    std::cout << "wrote " << w.path_str << " (" << ts.size() * pairs.size() << " rows)\n";
    return 0;
}

int cmd_cauchy(Session& s) {
    check_keys(s.cfg, {"grid", "potential", "function", "times", "route", "quadrature", "node_cap"},
               "config");
    Grid g = grid_from(s.cfg);
    Potential V = potential_from(s.cfg, g.dim);
    ScalarFn fn = function_from(s.cfg, g.dim);
    if (!s.cfg.contains("times")) throw ConfigError("missing 'times'");
    std::vector<double> ts = s.cfg["times"].get<std::vector<double>>();
    if (ts.empty()) throw ConfigError("'times' must be nonempty");
    const std::string route_name = s.cfg.value("route", "spectral");
    CauchyRoute route;
    if (route_name == "spectral")
        route = CauchyRoute::Spectral;
    else if (route_name == "quadrature")
        route = CauchyRoute::Quadrature;
    else
        throw ConfigError("route must be 'spectral' or 'quadrature'");
    QuadratureSpec spec = quadrature_from(s.cfg);
    SpectralData sd = spectral_from(s, g, V);
    Field f = sample_field(g, fn);
    CsvWriter w(s.out_dir / "cauchy.csv");
    std::vector<std::string> head = {"t"};
    for (const auto& h : coord_headers(g.dim, "x")) head.push_back(h);
    head.push_back("u");
    w.row(head);
    std::vector<double> x(static_cast<std::size_t>(g.dim));
    for (double t : ts) {
        Field u = solve_cauchy(sd, f, t, route, spec);
        for (std::size_t i = 0; i < u.v.size(); ++i) {
            g.node(i, x);
            std::vector<std::string> row = {fmt(t)};
            for (double c : x) row.push_back(fmt(c));
            row.push_back(fmt(u.v[i]));
            w.row(row);
        }
    }
    std::cout << "wrote " << w.path_str << " (" << ts.size() << " times)\n";
    return 0;
}

int cmd_probes(Session& s) {
    check_keys(s.cfg, {"grid", "potential", "samples", "probes", "node_cap"}, "config");
    Grid g = grid_from(s.cfg);
    Potential V = potential_from(s.cfg, g.dim);
    KernelSampleSpec spec;
    spec.seed = s.seed + 1;
    if (s.cfg.contains("samples")) {
        const json& o = s.cfg["samples"];
        check_keys(o, {"num_samples", "t_lo", "t_hi", "box_radius"}, "samples");
        spec.num_samples = o.value("num_samples", spec.num_samples);
        spec.t_lo = o.value("t_lo", spec.t_lo);
        spec.t_hi = o.value("t_hi", spec.t_hi);
        spec.box_radius = o.value("box_radius", spec.box_radius);
    }
    std::set<std::string> wanted = {"fk", "decay", "holder"};
    if (s.cfg.contains("probes")) {
        wanted.clear();
        for (const auto& p : s.cfg["probes"]) wanted.insert(p.get<std::string>());
        for (const auto& p : wanted)
            if (p != "fk" && p != "decay" && p != "holder")
                throw ConfigError("unknown probe '" + p + "'");
    }
    SpectralData sd = spectral_from(s, g, V);
    auto sd_ptr = std::make_shared<const SpectralData>(std::move(sd));
    EigenKernel K(sd_ptr);
    CriticalRadiusOptions ropt;
    ropt.seed = s.seed;
    RhoFn rho = [&V, ropt](std::span<const double> x) { return critical_radius(V, x, ropt); };
    std::vector<BoundProbeReport> reports;
    if (wanted.count("fk")) reports.push_back(fk_domination_probe(K, spec));
    if (wanted.count("decay")) reports.push_back(decay_bound_fit(K, rho, {1.0, 2.0, 4.0}, spec));
    if (wanted.count("holder")) reports.push_back(holder_probe(K, rho, spec));
    CsvWriter w(s.out_dir / "probes.csv");
    w.row({"probe", "constant", "value"});
    for (const auto& r : reports) {
        for (const auto& [name, value] : r.constants) w.row({r.bound_id, name, fmt(value)});
        w.row({r.bound_id, "max_violation", fmt(r.max_violation)});
    }
    std::cout << "wrote " << w.path_str << " (" << reports.size() << " probes)\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical calculus for the logarithm of Schrodinger operators"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".";
    std::uint64_t seed = 0;
    bool verbose = false;
    app.add_option("--config", config_path, "JSON config file")->required();
    app.add_option("--out", out_dir, "output directory (default: current)");
    app.add_option("--seed", seed, "seed for sampled probes (default 0)");
    app.add_flag("--verbose", verbose, "extra progress output");

    struct Cmd {
        const char* name;
        const char* desc;
        int (*run)(Session&);
    };
    const std::vector<Cmd> cmds = {
        {"spectrum", "eigenvalues of the discrete operator", cmd_spectrum},
        {"rho", "critical radius of the potential at points", cmd_rho},
        {"apply", "apply a spectral function to a field", cmd_apply},
        {"frullani", "windowed logarithm integral vs the spectral logarithm", cmd_frullani},
        {"log-pointwise", "pointwise logarithm via the heat semigroup", cmd_log_pointwise},
        {"kernel-dump", "heat kernel values on a time/point set", cmd_kernel_dump},
        {"cauchy", "evolution u(t) = H^{-t} f", cmd_cauchy},
        {"probes", "sampled kernel bound probes", cmd_probes},
    };
    std::string chosen;
    for (const auto& c : cmds) {
        CLI::App* sub = app.add_subcommand(c.name, c.desc);
        sub->fallthrough();
        sub->callback([&chosen, name = std::string(c.name)]() { chosen = name; });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        Session s;
        s.cfg = load_config(config_path);
        s.out_dir = out_dir;
        s.seed = seed;
        s.verbose = verbose;
        std::filesystem::create_directories(s.out_dir);
        for (const auto& c : cmds)
            if (chosen == c.name) return c.run(s);
        throw ConfigError("no subcommand selected");
    } catch (const ConfigError& e) {
        json diag = {{"error", "config"}, {"detail", e.what()}};
        std::cerr << diag.dump() << "\n";
        return 2;
    } catch (const json::exception& e) {
        json diag = {{"error", "config"}, {"detail", e.what()}};
        std::cerr << diag.dump() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        json diag = {{"error", "config"}, {"detail", e.what()}};
        std::cerr << diag.dump() << "\n";
        return 2;
    } catch (const QuadratureError& e) {
        json diag = {{"error", "numeric"},
                     {"detail", e.what()},
                     {"partial_value", e.partial_value},
                     {"last_panel", e.last_panel}};
        std::cerr << diag.dump() << "\n";
        return 3;
    } catch (const std::exception& e) {
        json diag = {{"error", "numeric"}, {"detail", e.what()}};
        std::cerr << diag.dump() << "\n";
        return 3;
    }
}
