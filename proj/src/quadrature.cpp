#include "logsch/quadrature.hpp"

#include <cmath>
#include <map>

namespace logsch {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            // three-term recurrence for P_n and P_n'
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

namespace {

struct PanelRule {
    std::vector<double> x, w;
};

const PanelRule& panel_rule(int n) {
    static std::map<int, PanelRule> cache;
    auto it = cache.find(n);
    if (it == cache.end()) {
        PanelRule r;
        gauss_legendre(n, r.x, r.w);
        it = cache.emplace(n, std::move(r)).first;
    }
    return it->second;
}

// ∫_a^b g(e^u) e^u du over one log-time panel
double log_panel(const TimeIntegrand& g, double a, double b, const PanelRule& r) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i) {
        double u = mid + half * r.x[i];
        double t = std::exp(u);
        s += r.w[i] * g(t) * t;
    }
    return s * half;
}

struct Walker {
    const TimeIntegrand& g;
    const QuadratureSpec& spec;
    const PanelRule& rule;
    double acc = 0.0;
    int panels = 0;
    double last = 0.0;

    Walker(const TimeIntegrand& g_, const QuadratureSpec& s_)
        : g(g_), spec(s_), rule(panel_rule(s_.nodes_per_panel)) {}

    double add(double a, double b) {
        double p = log_panel(g, a, b, rule);
        if (!std::isfinite(p))
            throw QuadratureError("time quadrature: non-finite panel", acc, p);
        acc += p;
        last = p;
        ++panels;
        if (panels > spec.max_panels)
            throw QuadratureError("time quadrature: max panels exceeded", acc, p);
        return p;
    }

    double threshold() const {
        return std::max(spec.abs_tol, spec.rel_tol * std::abs(acc));
    }

    // march panels of width w from u0 in direction dir (+1 right, -1 left)
    // until two consecutive panels fall below the running threshold, or a
    // hard bound is reached
    void extend(double u0, int dir, std::optional<double> bound) {
        double w = spec.panel_width;
        int quiet = 0;
        double u = u0;
        while (quiet < 2) {
            double a = (dir > 0) ? u : u - w;
            double b = (dir > 0) ? u + w : u;
            if (bound) {
                if (dir > 0 && b >= *bound) {
                    if (a < *bound) add(a, *bound);
                    return;
                }
                if (dir < 0 && a <= *bound) {
                    if (b > *bound) add(*bound, b);
                    return;
                }
            }
            double p = add(a, b);
            u += dir * w;
            if (std::abs(p) <= threshold())
                ++quiet;
            else
                quiet = 0;
        }
    }
};

} // namespace

QuadratureResult improper_time_quadrature_ex(const TimeIntegrand& g, const QuadratureSpec& spec) {
    Walker wk(g, spec);
    double u0 = spec.t_min_hint ? std::log(*spec.t_min_hint) : std::log(1e-3);
    double u1 = spec.t_max_hint ? std::log(*spec.t_max_hint) : std::log(10.0);
    if (spec.u_lo_bound) u0 = std::max(u0, *spec.u_lo_bound);
    if (spec.u_hi_bound) u1 = std::min(u1, *spec.u_hi_bound);
    if (!(u0 < u1)) u1 = u0 + spec.panel_width;
    int core = static_cast<int>(std::ceil((u1 - u0) / spec.panel_width));
    double w = (u1 - u0) / core;
    for (int i = 0; i < core; ++i) wk.add(u0 + i * w, u0 + (i + 1) * w);
    wk.extend(u1, +1, spec.u_hi_bound);
    wk.extend(u0, -1, spec.u_lo_bound);
    return {wk.acc, wk.panels, wk.last, true};
}

double improper_time_quadrature(const TimeIntegrand& g, const QuadratureSpec& spec) {
    return improper_time_quadrature_ex(g, spec).value;
}

double time_quadrature_0_to(const TimeIntegrand& g, double T, const QuadratureSpec& spec) {
    if (!(T > 0)) throw std::invalid_argument("time_quadrature_0_to: T > 0 required");
    Walker wk(g, spec);
    double u1 = std::log(T);
    double u0 = u1 - spec.panel_width;
    if (spec.t_min_hint && std::log(*spec.t_min_hint) < u0) u0 = std::log(*spec.t_min_hint);
    if (spec.u_lo_bound) u0 = std::max(u0, *spec.u_lo_bound);
    if (u0 >= u1) return 0.0;  // whole interval sits below the hard floor
    int core = static_cast<int>(std::ceil((u1 - u0) / spec.panel_width));
    double w = (u1 - u0) / core;
    for (int i = 0; i < core; ++i) wk.add(u0 + i * w, u0 + (i + 1) * w);
    wk.extend(u0, -1, spec.u_lo_bound);
    return wk.acc;
}

double time_quadrature_from(const TimeIntegrand& g, double T, const QuadratureSpec& spec) {
    if (!(T > 0)) throw std::invalid_argument("time_quadrature_from: T > 0 required");
    Walker wk(g, spec);
    double u0 = std::log(T);
    wk.extend(u0, +1, spec.u_hi_bound);
    return wk.acc;
}

double time_quadrature_window(const TimeIntegrand& g, double a, double b,
                              const QuadratureSpec& spec) {
    if (!(0 < a && a < b)) throw std::invalid_argument("time_quadrature_window: need 0 < a < b");
    Walker wk(g, spec);
    double u0 = std::log(a), u1 = std::log(b);
    int core = static_cast<int>(std::ceil((u1 - u0) / spec.panel_width));
    double w = (u1 - u0) / core;
    for (int i = 0; i < core; ++i) wk.add(u0 + i * w, u0 + (i + 1) * w);
    return wk.acc;
}

double integrate_gl(const std::function<double(double)>& f, double a, double b, int panels,
                    int nodes_per_panel) {
    if (!(a < b) || panels < 1) throw std::invalid_argument("integrate_gl: bad interval");
    const PanelRule& r = panel_rule(nodes_per_panel);
    double w = (b - a) / panels, s = 0.0;
    for (int p = 0; p < panels; ++p) {
        double lo = a + p * w;
        double mid = lo + 0.5 * w, half = 0.5 * w;
        for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * f(mid + half * r.x[i]);
    }
    return s * 0.5 * w;
}

} // namespace logsch
