#include "logsch/potential.hpp"

#include <cmath>
#include <stdexcept>

#include "logsch/special_functions.hpp"

namespace logsch {

double BoundProbeReport::constant(const std::string& name) const {
    for (const auto& [k, v] : constants)
        if (k == name) return v;
    throw std::invalid_argument("BoundProbeReport: no constant named " + name);
}

double unit_ball_volume(int dim) {
    if (dim < 1) throw std::invalid_argument("unit_ball_volume: dim >= 1");
    return std::pow(M_PI, 0.5 * dim) / gamma_function(0.5 * dim + 1.0);
}

namespace {

double radical_inverse(std::uint64_t i, std::uint64_t base) {
    double f = 1.0 / static_cast<double>(base), r = 0.0;
    while (i > 0) {
        r += f * static_cast<double>(i % base);
        i /= base;
        f /= static_cast<double>(base);
    }
    return r;
}

// 1D part grammar: zero | one | const:m2=<v> | harmonic | harmonic_shift:c=<v>
std::function<double(double)> parse_part(const std::string& s) {
    if (s == "zero") return [](double) { return 0.0; };
    if (s == "one") return [](double) { return 1.0; };
    if (s == "harmonic") return [](double u) { return u * u; };
    if (s.rfind("const:m2=", 0) == 0) {
        double v = std::stod(s.substr(9));
        if (v < 0) throw std::invalid_argument("potential: m2 must be >= 0");
        return [v](double) { return v; };
    }
    if (s.rfind("harmonic_shift:c=", 0) == 0) {
        double c = std::stod(s.substr(17));
        if (c < 0) throw std::invalid_argument("potential: shift must be >= 0");
        return [c](double u) { return u * u + c; };
    }
    throw std::invalid_argument("potential: unknown 1D part '" + s + "'");
}

// closed-form rho for V = |x|^2 + c: solve omega_d r^2 (|x|^2 + c + d r^2/(d+2)) = 1
double rho_harmonic_shift(int dim, double c, std::span<const double> x) {
    double omega = unit_ball_volume(dim);
    double x2 = 0.0;
    for (double u : x) x2 += u * u;
    double a = omega * dim / (dim + 2.0);
    double b = omega * (x2 + c);
    double r2 = (-b + std::sqrt(b * b + 4.0 * a)) / (2.0 * a);
    return std::sqrt(r2);
}

void validate(Potential& V) {
    auto pts = unit_ball_points(V.dim, 128, 0);
    std::vector<double> x(V.dim);
    double vmax = 0.0;
    for (const auto& p : pts) {
        for (int j = 0; j < V.dim; ++j) x[j] = 8.0 * p[j];
        double v = V.eval(x);
        if (!(v >= -1e-12)) throw std::invalid_argument("potential: V must be >= 0");
        vmax = std::max(vmax, v);
        if (V.separable()) {
            double s = 0.0;
            for (int j = 0; j < V.dim; ++j) s += V.separable_parts[j](x[j]);
            if (std::abs(s - v) > 1e-12 * (1.0 + std::abs(v)))
                throw std::invalid_argument("potential: declared separable parts do not sum to V");
        }
    }
    if (vmax <= 0.0) throw std::invalid_argument("potential: V identically zero is out of scope");
}

} // namespace

Potential make_potential(const std::string& spec, int dim) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("potential: dim in {1,2,3}");
    Potential V;
    V.dim = dim;
    V.name = spec;
    double omega = unit_ball_volume(dim);

    if (spec == "one" || spec.rfind("const:m2=", 0) == 0) {
        double m2 = (spec == "one") ? 1.0 : std::stod(spec.substr(9));
        if (!(m2 > 0)) throw std::invalid_argument("potential: const needs m2 > 0");
        V.eval = [m2](std::span<const double>) { return m2; };
        for (int j = 0; j < dim; ++j)
            V.separable_parts.push_back([m2, dim](double) { return m2 / dim; });
        // F(r) = m2 * omega_d * r^2  ==>  rho = 1/sqrt(m2 omega_d)
        V.known_rho = [m2, omega](std::span<const double>) {
            return 1.0 / std::sqrt(m2 * omega);
        };
    } else if (spec == "harmonic" || spec.rfind("harmonic_shift:c=", 0) == 0) {
        double c = (spec == "harmonic") ? 0.0 : std::stod(spec.substr(17));
        if (c < 0) throw std::invalid_argument("potential: shift must be >= 0");
        V.eval = [c](std::span<const double> x) {
            double s = c;
            for (double u : x) s += u * u;
            return s;
        };
        for (int j = 0; j < dim; ++j)
            V.separable_parts.push_back([c, dim](double u) { return u * u + c / dim; });
        V.known_rho = [dim, c](std::span<const double> x) {
            return rho_harmonic_shift(dim, c, x);
        };
    } else if (spec.rfind("separable:", 0) == 0) {
        std::string rest = spec.substr(10);
        std::vector<std::string> parts;
        std::size_t pos = 0;
        while (pos != std::string::npos) {
            std::size_t semi = rest.find(';', pos);
            parts.push_back(rest.substr(pos, semi == std::string::npos ? semi : semi - pos));
            pos = (semi == std::string::npos) ? semi : semi + 1;
        }
        if (static_cast<int>(parts.size()) != dim)
            throw std::invalid_argument("potential: separable needs one part per axis");
        for (const auto& p : parts) V.separable_parts.push_back(parse_part(p));
        auto parts_fns = V.separable_parts;
        V.eval = [parts_fns](std::span<const double> x) {
            double s = 0.0;
            for (std::size_t j = 0; j < parts_fns.size(); ++j) s += parts_fns[j](x[j]);
            return s;
        };
    } else {
        throw std::invalid_argument("potential: unknown preset '" + spec + "'");
    }
    validate(V);
    return V;
}

std::vector<std::vector<double>> unit_ball_points(int dim, int count, std::uint64_t seed) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("unit_ball_points: dim in {1,2,3}");
    if (count < 1) throw std::invalid_argument("unit_ball_points: count >= 1");
    std::vector<std::vector<double>> pts(count, std::vector<double>(dim));
    std::uint64_t offset = seed * 62987ull + 1ull;
    for (int i = 0; i < count; ++i) {
        std::uint64_t k = offset + static_cast<std::uint64_t>(i);
        double u1 = radical_inverse(k, 2);
        if (dim == 1) {
            pts[i][0] = 2.0 * u1 - 1.0;
        } else if (dim == 2) {
            double u2 = radical_inverse(k, 3);
            double s = std::sqrt(u1), th = 2.0 * M_PI * u2;
            pts[i][0] = s * std::cos(th);
            pts[i][1] = s * std::sin(th);
        } else {
            double u2 = radical_inverse(k, 3);
            double u3 = radical_inverse(k, 5);
            double s = std::cbrt(u1);
            double mu = 1.0 - 2.0 * u2;                    // cos(theta)
            double rho = std::sqrt(std::max(0.0, 1.0 - mu * mu));
            double ph = 2.0 * M_PI * u3;
            pts[i][0] = s * rho * std::cos(ph);
            pts[i][1] = s * rho * std::sin(ph);
            pts[i][2] = s * mu;
        }
    }
    return pts;
}

double ball_average(const Potential& V, std::span<const double> center, double r,
                    const std::vector<std::vector<double>>& unit_points) {
    if (static_cast<int>(center.size()) != V.dim)
        throw std::invalid_argument("ball_average: center dim mismatch");
    std::vector<double> x(V.dim);
    double s = 0.0;
    for (const auto& p : unit_points) {
        for (int j = 0; j < V.dim; ++j) x[j] = center[j] + r * p[j];
        s += V.eval(x);
    }
    return s / static_cast<double>(unit_points.size());
}

RhConstantReport reverse_holder_estimate(const Potential& V, double q,
                                         const std::vector<std::pair<std::vector<double>, double>>& balls,
                                         int points_per_ball, std::uint64_t seed) {
    if (!(q > 1)) throw std::invalid_argument("reverse_holder_estimate: q > 1 required");
    if (balls.empty()) throw std::invalid_argument("reverse_holder_estimate: need balls");
    auto pts = unit_ball_points(V.dim, points_per_ball, seed);
    RhConstantReport rep;
    rep.q = q;
    rep.num_balls = static_cast<int>(balls.size());
    std::vector<double> x(V.dim);
    for (const auto& [c, r] : balls) {
        double s1 = 0.0, sq = 0.0;
        for (const auto& p : pts) {
            for (int j = 0; j < V.dim; ++j) x[j] = c[j] + r * p[j];
            double v = V.eval(x);
            s1 += v;
            sq += std::pow(v, q);
        }
        s1 /= pts.size();
        sq /= pts.size();
        if (!(s1 > 0))
            throw std::runtime_error("reverse_holder_estimate: V averages to zero on a ball");
        double ratio = std::pow(sq, 1.0 / q) / s1;
        if (ratio > rep.constant) {
            rep.constant = ratio;
            rep.worst_center = c;
            rep.worst_radius = r;
        }
    }
    return rep;
}

namespace {

double critical_radius_numeric(const Potential& V, std::span<const double> x,
                               const CriticalRadiusOptions& opt) {
    if (V.dim < 3)
        throw std::invalid_argument("critical_radius: numeric path requires dim >= 3");
    auto pts = unit_ball_points(V.dim, opt.qmc_points, opt.seed);
    double omega = unit_ball_volume(V.dim);
    auto F = [&](double r) {
        // r^{2-d} ∫_B V = omega_d r^2 * ball average
        return omega * r * r * ball_average(V, x, r, pts);
    };
    int nscan = static_cast<int>(std::round(
                    std::log10(opt.scan_hi / opt.scan_lo) * opt.points_per_decade)) + 1;
    double dlog = std::log(opt.scan_hi / opt.scan_lo) / (nscan - 1);
    // last crossing of F(r) = 1 on the scan
    int cross = -1;
    double prev = F(opt.scan_lo);
    bool any_le = prev <= 1.0;
    for (int i = 1; i < nscan; ++i) {
        double r = opt.scan_lo * std::exp(i * dlog);
        double cur = F(r);
        if (prev <= 1.0 && cur > 1.0) cross = i;
        any_le = any_le || cur <= 1.0;
        prev = cur;
    }
    if (cross < 0) {
        if (!any_le)
            throw std::runtime_error("critical_radius: F > 1 on the whole scan (rho below range)");
        throw std::runtime_error("critical_radius: no crossing of F = 1 on the scan range");
    }
    double lo = opt.scan_lo * std::exp((cross - 1) * dlog);
    double hi = opt.scan_lo * std::exp(cross * dlog);
    for (int it = 0; it < 200 && (hi - lo) > opt.tol * lo; ++it) {
        double mid = std::sqrt(lo * hi);
        (F(mid) <= 1.0 ? lo : hi) = mid;
    }
    return std::sqrt(lo * hi);
}

} // namespace

double critical_radius(const Potential& V, std::span<const double> x,
                       const CriticalRadiusOptions& opt) {
    if (static_cast<int>(x.size()) != V.dim)
        throw std::invalid_argument("critical_radius: point dim mismatch");
    if (opt.use_known_rho && V.known_rho) return V.known_rho(x);
    return critical_radius_numeric(V, x, opt);
}

BoundProbeReport rho_comparison_probe(const Potential& V,
                                      const std::vector<std::pair<std::vector<double>, std::vector<double>>>& pairs,
                                      const CriticalRadiusOptions& opt) {
    if (pairs.empty()) throw std::invalid_argument("rho_comparison_probe: need pairs");
    BoundProbeReport rep;
    rep.bound_id = "rho_compare";
    double equiv = 1.0;
    int close_pairs = 0;
    struct Row {
        double rx, ry, dist;
    };
    std::vector<Row> rows;
    for (const auto& [x, y] : pairs) {
        double rx = critical_radius(V, x, opt);
        double ry = critical_radius(V, y, opt);
        double dist = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) dist += (x[j] - y[j]) * (x[j] - y[j]);
        dist = std::sqrt(dist);
        rows.push_back({rx, ry, dist});
        if (dist <= rx) {
            equiv = std::max({equiv, rx / ry, ry / rx});
            ++close_pairs;
        }
    }
    // smallest (c_rho, N0) on a grid satisfying the two-sided envelope
    //   c^{-1} rho(x) (1+d/rho(x))^{-N0} <= rho(y) <= c rho(x) (1+d/rho(x))^{N0/(N0+1)}
    double best_c = 0.0, best_n0 = 0.0;
    for (double n0 = 0.5; n0 <= 8.0 + 1e-9; n0 += 0.5) {
        double c = 1.0;
        for (const auto& r : rows) {
            double base = 1.0 + r.dist / r.rx;
            c = std::max(c, r.rx * std::pow(base, -n0) / r.ry);
            c = std::max(c, r.ry / (r.rx * std::pow(base, n0 / (n0 + 1.0))));
        }
        if (best_c == 0.0 || c < best_c) {
            best_c = c;
            best_n0 = n0;
        }
    }
    rep.constants = {{"equiv_C", equiv}, {"c_rho", best_c}, {"N0", best_n0}};
    rep.max_violation = 0.0;   // constants fitted to cover all pairs
    rep.sample_desc = std::to_string(pairs.size()) + " pairs, " +
                      std::to_string(close_pairs) + " with |x-y| <= rho(x)";
    return rep;
}

} // namespace logsch
