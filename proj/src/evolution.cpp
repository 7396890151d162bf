#include "logsch/evolution.hpp"

#include <cmath>
#include <stdexcept>

#include "logsch/log_calculus.hpp"
#include "logsch/spectral_calculus.hpp"

namespace logsch {

namespace {

// deterministic low-discrepancy pair sampling over node indices
std::pair<std::size_t, std::size_t> halton_pair(std::uint64_t k, std::size_t n) {
    auto radical = [](std::uint64_t i, int base) {
        double f = 1.0, r = 0.0;
        while (i > 0) {
            f /= base;
            r += f * static_cast<double>(i % static_cast<std::uint64_t>(base));
            i /= static_cast<std::uint64_t>(base);
        }
        return r;
    };
    const auto a = static_cast<std::size_t>(radical(k, 2) * static_cast<double>(n));
    const auto b = static_cast<std::size_t>(radical(k, 3) * static_cast<double>(n));
    return {std::min(a, n - 1), std::min(b, n - 1)};
}

} // namespace

LipVReport lipv_seminorm(const Field& f, const RhoFn& rho, double theta, int num_pairs,
                         std::uint64_t seed) {
    if (!(theta > 0.0 && theta <= 1.0))
        throw std::invalid_argument("Holder exponent must lie in (0,1]");
    if (num_pairs < 1) throw std::invalid_argument("need at least one sample pair");
    const Grid& g = f.grid;
    const std::size_t n = f.v.size();
    std::vector<double> x(static_cast<std::size_t>(g.dim));
    LipVReport out;
    out.theta = theta;
    for (std::size_t i = 0; i < n; ++i) {
        g.node(i, x);
        const double r = rho(x);
        if (!(r > 0.0)) throw std::domain_error("critical radius must be positive on the grid");
        out.weighted_sup = std::max(out.weighted_sup, std::abs(f.v[i]) * std::pow(r, -theta));
    }
    std::vector<double> y(static_cast<std::size_t>(g.dim));
    const std::uint64_t offset = seed * 77261 + 1;
    for (int k = 0; k < num_pairs; ++k) {
        auto [ia, ib] = halton_pair(offset + static_cast<std::uint64_t>(k), n);
        if (ia == ib) continue;
        g.node(ia, x);
        g.node(ib, y);
        double d2 = 0.0;
        for (int j = 0; j < g.dim; ++j) {
            const double dj = x[static_cast<std::size_t>(j)] - y[static_cast<std::size_t>(j)];
            d2 += dj * dj;
        }
        const double q = std::abs(f.v[ia] - f.v[ib]) / std::pow(std::sqrt(d2), theta);
        out.holder_quotient = std::max(out.holder_quotient, q);
        ++out.pairs_sampled;
    }
    out.total = out.weighted_sup + out.holder_quotient;
    return out;
}

Field solve_cauchy(const SpectralData& sd, const Field& f, double t, CauchyRoute route,
                   const QuadratureSpec& spec) {
    if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("evolution time must lie in (0,1)");
    if (route == CauchyRoute::Spectral)
        return apply_spectral(sd, SpectralFunction::neg_power(t), f);
    if (t < 0.01)
        throw std::invalid_argument("quadrature route needs t >= 0.01");
    return heat_neg_power(sd, f, t, spec);
}

double pde_residual(const SpectralData& sd, const Field& f, double t, double dt) {
    if (!(dt > 0.0 && t - dt > 0.0 && t + dt < 1.0))
        throw std::invalid_argument("difference stencil must stay inside (0,1)");
    const Field up = solve_cauchy(sd, f, t + dt);
    const Field um = solve_cauchy(sd, f, t - dt);
    const Field ut = solve_cauchy(sd, f, t);
    const Field lg = apply_spectral(sd, SpectralFunction::log(), ut);
    Field res = up;
    for (std::size_t i = 0; i < res.v.size(); ++i)
        res.v[i] = (up.v[i] - um.v[i]) / (2.0 * dt) + lg.v[i];
    return norm_l2(res);
}

std::vector<double> initial_limit_probe(const SpectralData& sd, const Field& f,
                                        const std::vector<double>& ts) {
    std::vector<double> out;
    out.reserve(ts.size());
    for (double t : ts) {
        const Field u = solve_cauchy(sd, f, t);
        double sup = 0.0;
        for (std::size_t i = 0; i < u.v.size(); ++i)
            sup = std::max(sup, std::abs(u.v[i] - f.v[i]));
        out.push_back(sup);
    }
    return out;
}

double composition_residual(const SpectralData& sd, const Field& f, double t1, double t2,
                            CauchyRoute route, const QuadratureSpec& spec) {
    if (!(t1 > 0.0 && t2 > 0.0 && t1 + t2 < 1.0))
        throw std::invalid_argument("composition times must stay inside (0,1)");
    const Field two_step = solve_cauchy(sd, solve_cauchy(sd, f, t1, route, spec), t2, route, spec);
    const Field one_step = solve_cauchy(sd, f, t1 + t2, route, spec);
    Field res = two_step;
    for (std::size_t i = 0; i < res.v.size(); ++i) res.v[i] -= one_step.v[i];
    return norm_l2(res);
}

std::vector<LipMappingPoint> lip_mapping_probe(const SpectralData& sd, const Field& f,
                                               const RhoFn& rho, double theta,
                                               const std::vector<double>& ss, int num_pairs,
                                               std::uint64_t seed) {
    const LipVReport base = lipv_seminorm(f, rho, theta, num_pairs, seed);
    std::vector<LipMappingPoint> out;
    out.reserve(ss.size());
    for (double s : ss) {
        if (!(s > 0.0 && theta + 2.0 * s <= 1.0))
            throw std::invalid_argument("smoothing exponent theta + 2s must stay within (0,1]");
        const Field g = apply_spectral(sd, SpectralFunction::neg_power(s), f);
        const LipVReport mapped = lipv_seminorm(g, rho, theta + 2.0 * s, num_pairs, seed);
        LipMappingPoint p;
        p.s = s;
        p.input_norm = base.total;
        p.output_norm = mapped.total;
        p.ratio = base.total > 0.0 ? mapped.total / base.total : 0.0;
        out.push_back(p);
    }
    return out;
}

} // namespace logsch
