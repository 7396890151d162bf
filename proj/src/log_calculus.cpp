#include "logsch/log_calculus.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "logsch/special_functions.hpp"

namespace logsch {

namespace {

constexpr double kSupportRelTol = 1e-10;
// Node sums of a continuum kernel resolve the heat profile only once its width
// exceeds the spacing; below kRiemannFactor * h^2 the sums are replaced by the
// first-order short-time limit of the integrand.
constexpr double kRiemannFactor = 0.4;

struct BallNodes {
    std::vector<std::size_t> flat;
    std::vector<std::array<int, 3>> axis_idx;
};

BallNodes collect_ball(const Grid& g, std::span<const double> x, double r) {
    const int d = g.dim;
    std::array<int, 3> imin{0, 0, 0}, imax{0, 0, 0};
    for (int j = 0; j < d; ++j) {
        imin[j] = std::max(0, static_cast<int>(std::ceil((x[j] - r - g.lo[j]) / g.h[j] - 1e-12)));
        imax[j] = std::min(g.n[j] - 1,
                           static_cast<int>(std::floor((x[j] + r - g.lo[j]) / g.h[j] + 1e-12)));
    }
    const double r2 = r * r * (1.0 + 1e-14);
    BallNodes out;
    std::array<int, 3> idx{0, 0, 0};
    for (int i0 = imin[0]; i0 <= imax[0]; ++i0) {
        idx[0] = i0;
        const double d0 = g.axis_nodes[0][static_cast<std::size_t>(i0)] - x[0];
        for (int i1 = imin[1]; i1 <= imax[1]; ++i1) {
            idx[1] = i1;
            const double d1 = d > 1 ? g.axis_nodes[1][static_cast<std::size_t>(i1)] - x[1] : 0.0;
            for (int i2 = imin[2]; i2 <= imax[2]; ++i2) {
                idx[2] = i2;
                const double d2 = d > 2 ? g.axis_nodes[2][static_cast<std::size_t>(i2)] - x[2] : 0.0;
                if (d0 * d0 + d1 * d1 + d2 * d2 > r2) continue;
                out.flat.push_back(g.flat_index(std::span<const int>(idx.data(),
                                                                    static_cast<std::size_t>(d))));
                out.axis_idx.push_back(idx);
            }
        }
    }
    if (out.flat.empty()) throw std::logic_error("ball contains no grid nodes");
    return out;
}

void check_point_setup(const Grid& g, std::span<const double> x, double r, double rho_x,
                       const PointwiseOptions& opt) {
    if (static_cast<int>(x.size()) != g.dim)
        throw std::invalid_argument("evaluation point dimension mismatch");
    if (!(rho_x > 0.0)) throw std::invalid_argument("critical radius must be positive");
    if (!(r >= 4.0 * g.max_h()))
        throw std::invalid_argument("ball radius must be at least 4 grid spacings");
    if (g.boundary_distance(x) < r + opt.ball_margin)
        throw std::invalid_argument("ball plus margin must stay inside the grid box");
}

void check_compact_support(const Field& f, double margin) {
    const double fmax = norm_sup(f);
    if (fmax == 0.0) return;
    std::vector<double> y(static_cast<std::size_t>(f.grid.dim));
    for (std::size_t i = 0; i < f.v.size(); ++i) {
        if (std::abs(f.v[i]) <= kSupportRelTol * fmax) continue;
        f.grid.node(i, y);
        if (f.grid.boundary_distance(y) < margin)
            throw std::invalid_argument("field does not vanish near the box boundary");
    }
}

void check_axis_support(const Grid& g, const std::vector<std::vector<double>>& factors,
                        double margin) {
    for (int j = 0; j < g.dim; ++j) {
        const auto& fj = factors[static_cast<std::size_t>(j)];
        double fmax = 0.0;
        for (double v : fj) fmax = std::max(fmax, std::abs(v));
        if (fmax == 0.0) continue;
        for (std::size_t i = 0; i < fj.size(); ++i) {
            const double u = g.axis_nodes[static_cast<std::size_t>(j)][i];
            const double dist = std::min(u - g.lo[static_cast<std::size_t>(j)],
                                         g.hi[static_cast<std::size_t>(j)] - u);
            if (dist < margin && std::abs(fj[i]) > kSupportRelTol * fmax)
                throw std::invalid_argument("axis factor does not vanish near the box ends");
        }
    }
}

bool is_discrete_kernel(const HeatKernel& K) {
    if (dynamic_cast<const EigenKernel*>(&K) != nullptr) return true;
    if (const auto* tk = dynamic_cast<const TensorKernel*>(&K)) {
        for (int j = 0; j < tk->dim(); ++j)
            if (dynamic_cast<const EigenKernel*>(&tk->axis(j)) == nullptr) return false;
        return true;
    }
    return false;
}

// The three time integrals behind k(x,r), split at T = rho^2.  u_floor, when
// set, truncates the ball-mass integrals at the short-time resolution limit.
template <class MassFn, class BallFn>
KFunctionResult k_terms(const MassFn& mass, const BallFn& ballmass, double rho_x,
                        const QuadratureSpec& base, std::optional<double> u_floor) {
    KFunctionResult out;
    const double T = rho_x * rho_x;
    out.term_log = 2.0 * std::log(rho_x);
    out.term_short = time_quadrature_0_to([&](double t) { return (mass(t) - 1.0) / t; }, T, base);
    QuadratureSpec floored = base;
    if (u_floor) floored.u_lo_bound = *u_floor;
    out.term_mid = -time_quadrature_0_to(
        [&](double t) { return (mass(t) - ballmass(t)) / t; }, T, floored);
    out.term_far = time_quadrature_from([&](double t) { return ballmass(t) / t; }, T, base);
    out.term_const = euler_gamma();
    out.value = out.term_log + out.term_short + out.term_mid + out.term_far + out.term_const;
    return out;
}

QuadratureSpec pointwise_spec(const PointwiseOptions& opt, double scale) {
    QuadratureSpec qs;
    qs.rel_tol = opt.quad_rel_tol;
    qs.abs_tol = 1e-13 * std::max(scale, 1e-30);
    return qs;
}

} // namespace

double frullani_log(double lambda, const QuadratureSpec& spec) {
    if (!(lambda > 0.0)) throw std::domain_error("logarithm integral needs lambda > 0");
    return improper_time_quadrature(
        [lambda](double t) { return (std::exp(-t) - std::exp(-lambda * t)) / t; }, spec);
}

double frullani_log_window(double lambda, double m, const QuadratureSpec& spec) {
    if (!(lambda > 0.0)) throw std::domain_error("logarithm integral needs lambda > 0");
    if (!(m > 1.0)) throw std::invalid_argument("window parameter must exceed 1");
    return time_quadrature_window(
        [lambda](double t) { return (std::exp(-t) - std::exp(-lambda * t)) / t; }, 1.0 / m, m,
        spec);
}

Field frullani_apply(const SpectralData& sd, const Field& f, double m,
                     const QuadratureSpec& spec) {
    if (!(m > 1.0)) throw std::invalid_argument("window parameter must exceed 1");
    Eigen::VectorXd c = analyze(sd, f);
    for (std::size_t i = 0; i < sd.size(); ++i)
        c[static_cast<Eigen::Index>(i)] *= frullani_log_window(sd.lambda(static_cast<Eigen::Index>(i)), m, spec);
    return synthesize(sd, c);
}

Field heat_frac_power(const SpectralData& sd, const Field& f, double alpha,
                      const QuadratureSpec& spec) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("fractional order must lie in (0,1)");
    if (sd.lambda(0) <= 0.0) throw std::domain_error("fractional power needs a positive spectrum");
    const double pref = 1.0 / gamma_neg(alpha);
    QuadratureSpec qs = spec;
    // tail of -t^{-1-alpha}: cutting at u keeps e^{-alpha u}/alpha, push below
    // round-off; cap both ends inside log(DBL_MAX) so t = e^u stays finite
    qs.u_hi_bound = std::min(38.0 / alpha, 700.0);
    qs.u_lo_bound = -700.0;
    Eigen::VectorXd c = analyze(sd, f);
    for (std::size_t i = 0; i < sd.size(); ++i) {
        const double lam = sd.lambda(static_cast<Eigen::Index>(i));
        // t^{-1-alpha} written as t^{-alpha}/t: every intermediate stays
        // inside double range down to t = e^{-700}
        const double integral = improper_time_quadrature(
            [lam, alpha](double t) {
                return std::expm1(-lam * t) * std::pow(t, -alpha) / t;
            },
            qs);
        c[static_cast<Eigen::Index>(i)] *= pref * integral;
    }
    return synthesize(sd, c);
}

Field heat_neg_power(const SpectralData& sd, const Field& f, double alpha,
                     const QuadratureSpec& spec) {
    if (!(alpha > 0.0)) throw std::invalid_argument("power order must be positive");
    if (sd.lambda(0) <= 0.0) throw std::domain_error("negative power needs a positive spectrum");
    const double pref = 1.0 / gamma_function(alpha);
    QuadratureSpec qs = spec;
    // below u = ln(eps)/alpha the factor t^alpha is already sub-round-off;
    // cap above -log(DBL_MAX) so t = e^u stays a normal double
    qs.u_lo_bound = std::max(std::log(2.220446049250313e-16) / alpha, -700.0);
    Eigen::VectorXd c = analyze(sd, f);
    for (std::size_t i = 0; i < sd.size(); ++i) {
        const double lam = sd.lambda(static_cast<Eigen::Index>(i));
        const double integral = improper_time_quadrature(
            [lam, alpha](double t) { return std::exp(-lam * t) * std::pow(t, alpha - 1.0); }, qs);
        c[static_cast<Eigen::Index>(i)] *= pref * integral;
    }
    return synthesize(sd, c);
}

double time_kernel_G(const HeatKernel& K, std::span<const double> x, std::span<const double> y,
                     TimeWeight weight, const QuadratureSpec& spec) {
    if (static_cast<int>(x.size()) != K.dim() || static_cast<int>(y.size()) != K.dim())
        throw std::invalid_argument("point dimension mismatch");
    return improper_time_quadrature(
        [&](double t) {
            const double k = K.eval(t, x, y);
            return weight == TimeWeight::OverT ? k / t : k;
        },
        spec);
}

double free_green_function(int dim, double r) {
    if (dim < 3) throw std::invalid_argument("undamped time integral diverges below dimension 3");
    if (!(r > 0.0)) throw std::invalid_argument("separation must be positive");
    return gamma_function(dim / 2.0 - 1.0) * std::pow(M_PI, -dim / 2.0) *
           std::pow(r, 2.0 - dim) / 4.0;
}

double damped_free_green_function(int dim, double r) {
    if (dim < 1 || dim % 2 == 0)
        throw std::invalid_argument("closed form available for odd dimensions only");
    if (!(r > 0.0)) throw std::invalid_argument("separation must be positive");
    // integral t^{-d/2} e^{-t - r^2/(4t)} dt = 2 (r/2)^{1-d/2} K_{d/2-1}(r)
    const int n = (std::abs(dim - 2) - 1) / 2;  // K_{|d-2|/2} = K_{n+1/2}
    return 2.0 * std::pow(4.0 * M_PI, -dim / 2.0) * std::pow(r / 2.0, 1.0 - dim / 2.0) *
           bessel_k_half_integer(n, r);
}

double damped_free_log_kernel(int dim, double r) {
    if (dim < 1 || dim % 2 == 0)
        throw std::invalid_argument("closed form available for odd dimensions only");
    if (!(r > 0.0)) throw std::invalid_argument("separation must be positive");
    // integral t^{-d/2-1} e^{-t - r^2/(4t)} dt = 2 (r/2)^{-d/2} K_{d/2}(r)
    const int n = (dim - 1) / 2;  // K_{d/2} = K_{n+1/2} for odd d
    return 2.0 * std::pow(4.0 * M_PI, -dim / 2.0) * std::pow(r / 2.0, -dim / 2.0) *
           bessel_k_half_integer(n, r);
}

KFunctionResult k_function(const HeatKernel& K, const Grid& grid, std::span<const double> x,
                           double r, double rho_x, const PointwiseOptions& opt) {
    if (K.dim() != grid.dim) throw std::invalid_argument("kernel/grid dimension mismatch");
    check_point_setup(grid, x, r, rho_x, opt);
    const std::size_t ix = grid.nearest_node(x);
    std::vector<double> xs(static_cast<std::size_t>(grid.dim));
    grid.node(ix, xs);

    BallNodes ball = collect_ball(grid, xs, r);
    std::vector<std::vector<double>> ball_pts(ball.flat.size(),
                                              std::vector<double>(xs.size()));
    for (std::size_t b = 0; b < ball.flat.size(); ++b) grid.node(ball.flat[b], ball_pts[b]);

    const double cv = grid.cell_volume;
    auto mass = [&](double t) { return K.mass(t, xs); };
    auto ballmass = [&](double t) {
        double acc = 0.0;
        for (const auto& y : ball_pts) acc += K.eval(t, xs, y);
        return acc * cv;
    };
    std::optional<double> u_floor;
    if (!is_discrete_kernel(K))
        u_floor = std::log(kRiemannFactor * grid.max_h() * grid.max_h());
    QuadratureSpec qs = pointwise_spec(opt, 1.0);
    KFunctionResult out = k_terms(mass, ballmass, rho_x, qs, u_floor);
    out.ball_nodes = ball.flat.size();
    return out;
}

PointwiseLogResult pointwise_log(const EigenKernel& K, const Field& f, std::span<const double> x,
                                 double r, double rho_x, const PointwiseOptions& opt) {
    const SpectralData& sd = K.spectral();
    const Grid& g = sd.grid;
    if (f.v.size() != g.size()) throw std::invalid_argument("field/grid size mismatch");
    check_point_setup(g, x, r, rho_x, opt);
    if (opt.require_compact_support) check_compact_support(f, opt.support_margin);
    if (sd.lambda(0) <= 0.0)
        throw std::domain_error("pointwise logarithm needs a positive spectrum");

    const std::size_t ix = g.nearest_node(x);
    std::vector<double> xs(static_cast<std::size_t>(g.dim));
    g.node(ix, xs);
    const double fx = f.v[ix];
    BallNodes ball = collect_ball(g, xs, r);
    const double cv = g.cell_volume;
    const Eigen::Index N = static_cast<Eigen::Index>(sd.size());

    Eigen::VectorXd c_f = analyze(sd, f);
    Eigen::VectorXd c_ind = Eigen::VectorXd::Zero(N);
    Eigen::VectorXd c_loc = Eigen::VectorXd::Zero(N);
    for (std::size_t b = 0; b < ball.flat.size(); ++b) {
        const Eigen::Index row = static_cast<Eigen::Index>(ball.flat[b]);
        c_ind += sd.phi.row(row).transpose();
        c_loc += (f.v[ball.flat[b]] - fx) * sd.phi.row(row).transpose();
    }
    c_ind *= cv;
    c_loc *= cv;
    const Eigen::VectorXd c_main = c_f - fx * c_ind;

    const QuadratureSpec qs = pointwise_spec(opt, norm_sup(f));
    auto mass = [&](double t) { return heat_apply_at(sd, sd.ones_coeffs, ix, t); };
    auto ballmass = [&](double t) { return heat_apply_at(sd, c_ind, ix, t); };
    const KFunctionResult kf = k_terms(mass, ballmass, rho_x, qs, std::nullopt);

    const double I_main = improper_time_quadrature(
        [&](double t) { return heat_apply_at(sd, c_main, ix, t) / t; }, qs);
    const double I_loc = improper_time_quadrature(
        [&](double t) { return heat_apply_at(sd, c_loc, ix, t) / t; }, qs);

    PointwiseLogResult out;
    out.k_value = kf.value;
    out.k_term = -kf.value * fx;
    out.local = -I_loc;
    out.far = -I_main + I_loc;
    out.value = -I_main - kf.value * fx;
    out.f_at_x = fx;
    out.rho_x = rho_x;
    out.radius = r;
    out.ball_nodes = ball.flat.size();
    return out;
}

PointwiseLogResult pointwise_log(const TensorKernel& K, const Grid& grid,
                                 const std::vector<std::vector<double>>& factor_values,
                                 std::span<const double> x, double r, double rho_x,
                                 const PointwiseOptions& opt) {
    const int d = grid.dim;
    if (K.dim() != d) throw std::invalid_argument("kernel/grid dimension mismatch");
    if (static_cast<int>(factor_values.size()) != d)
        throw std::invalid_argument("need one factor per axis");
    for (int j = 0; j < d; ++j)
        if (factor_values[static_cast<std::size_t>(j)].size() !=
            static_cast<std::size_t>(grid.n[static_cast<std::size_t>(j)]))
            throw std::invalid_argument("axis factor sample count mismatch");
    check_point_setup(grid, x, r, rho_x, opt);
    if (opt.require_compact_support) check_axis_support(grid, factor_values, opt.support_margin);

    const std::size_t ix = grid.nearest_node(x);
    std::vector<double> xs(static_cast<std::size_t>(d));
    grid.node(ix, xs);
    // axis indices of the snapped point
    std::array<int, 3> ixa{0, 0, 0};
    {
        std::size_t rem = ix;
        for (int j = d - 1; j >= 0; --j) {
            const std::size_t nj = static_cast<std::size_t>(grid.n[static_cast<std::size_t>(j)]);
            ixa[static_cast<std::size_t>(j)] = static_cast<int>(rem % nj);
            rem /= nj;
        }
    }
    double fx = 1.0;
    for (int j = 0; j < d; ++j)
        fx *= factor_values[static_cast<std::size_t>(j)]
                           [static_cast<std::size_t>(ixa[static_cast<std::size_t>(j)])];

    BallNodes ball = collect_ball(grid, xs, r);
    std::vector<double> gloc(ball.flat.size());
    double fmax_scale = 1.0;
    for (std::size_t b = 0; b < ball.flat.size(); ++b) {
        double fv = 1.0;
        for (int j = 0; j < d; ++j)
            fv *= factor_values[static_cast<std::size_t>(j)]
                               [static_cast<std::size_t>(ball.axis_idx[b][static_cast<std::size_t>(j)])];
        gloc[b] = fv - fx;
        fmax_scale = std::max(fmax_scale, std::abs(fv));
    }

    const bool discrete = is_discrete_kernel(K);

    // per-axis kernel rows at the snapped point, rebuilt for each quadrature time
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j)
        rows[static_cast<std::size_t>(j)].resize(
            static_cast<std::size_t>(grid.n[static_cast<std::size_t>(j)]));
    auto build_rows = [&](double t) {
        for (int j = 0; j < d; ++j) {
            const auto& nodes = grid.axis_nodes[static_cast<std::size_t>(j)];
            auto& row = rows[static_cast<std::size_t>(j)];
            for (std::size_t i = 0; i < nodes.size(); ++i)
                row[i] = K.axis(j).eval(t, std::span<const double>(&xs[static_cast<std::size_t>(j)], 1),
                                        std::span<const double>(&nodes[i], 1));
        }
    };
    auto ballmass_rows = [&]() {
        double acc = 0.0;
        for (std::size_t b = 0; b < ball.flat.size(); ++b) {
            double p = 1.0;
            for (int j = 0; j < d; ++j)
                p *= rows[static_cast<std::size_t>(j)]
                         [static_cast<std::size_t>(ball.axis_idx[b][static_cast<std::size_t>(j)])];
            acc += p;
        }
        return acc * grid.cell_volume;
    };
    auto loc_rows = [&]() {
        double acc = 0.0;
        for (std::size_t b = 0; b < ball.flat.size(); ++b) {
            double p = 1.0;
            for (int j = 0; j < d; ++j)
                p *= rows[static_cast<std::size_t>(j)]
                         [static_cast<std::size_t>(ball.axis_idx[b][static_cast<std::size_t>(j)])];
            acc += p * gloc[b];
        }
        return acc * grid.cell_volume;
    };
    auto full_apply_rows = [&]() {
        double prod = 1.0;
        for (int j = 0; j < d; ++j) {
            const auto& row = rows[static_cast<std::size_t>(j)];
            const auto& fj = factor_values[static_cast<std::size_t>(j)];
            double s = 0.0;
            for (std::size_t i = 0; i < row.size(); ++i) s += row[i] * fj[i];
            prod *= s * grid.h[static_cast<std::size_t>(j)];
        }
        return prod;
    };

    auto mass = [&](double t) { return K.mass(t, xs); };
    auto ballmass = [&](double t) {
        build_rows(t);
        return ballmass_rows();
    };
    auto main_fn = [&](double t) {
        build_rows(t);
        return full_apply_rows() - fx * ballmass_rows();
    };
    auto loc_fn = [&](double t) {
        build_rows(t);
        return loc_rows();
    };

    std::optional<double> u_floor;
    double t_floor = 0.0;
    if (!discrete) {
        t_floor = kRiemannFactor * grid.max_h() * grid.max_h();
        u_floor = std::log(t_floor);
    }

    QuadratureSpec qs = pointwise_spec(opt, fmax_scale);
    const KFunctionResult kf = k_terms(mass, ballmass, rho_x, qs, u_floor);

    QuadratureSpec qm = qs;
    if (u_floor) qm.u_lo_bound = u_floor;
    double I_main = improper_time_quadrature([&](double t) { return main_fn(t) / t; }, qm);
    double I_loc = improper_time_quadrature([&](double t) { return loc_fn(t) / t; }, qm);
    if (!discrete) {
        // first-order patch for the truncated short-time piece:
        // integral_0^t0 g(t)/t dt ~ g(t0) when g(t)/t tends to a constant
        I_main += main_fn(t_floor);
        I_loc += loc_fn(t_floor);
    }

    PointwiseLogResult out;
    out.k_value = kf.value;
    out.k_term = -kf.value * fx;
    out.local = -I_loc;
    out.far = -I_main + I_loc;
    out.value = -I_main - kf.value * fx;
    out.f_at_x = fx;
    out.rho_x = rho_x;
    out.radius = r;
    out.ball_nodes = ball.flat.size();
    return out;
}

ExtendedPointwiseResult extended_pointwise(const EigenKernel& K, const Field& f,
                                           std::span<const double> x, double r, double rho_x,
                                           const PointwiseOptions& opt) {
    PointwiseOptions relaxed = opt;
    relaxed.require_compact_support = false;
    ExtendedPointwiseResult out;
    out.core = pointwise_log(K, f, x, r, rho_x, relaxed);
    const Grid& g = f.grid;
    std::vector<double> y(static_cast<std::size_t>(g.dim));
    double acc = 0.0;
    for (std::size_t i = 0; i < f.v.size(); ++i) {
        g.node(i, y);
        double s = 0.0;
        for (double yj : y) s += yj * yj;
        acc += std::abs(f.v[i]) * std::pow(1.0 + std::sqrt(s), -(g.dim + 1.0));
    }
    out.weight_integral = acc * g.cell_volume;
    out.support_check_waived = true;
    return out;
}

namespace {

// per-mode weight of the one-sided difference quotient minus the logarithm
double limit_weight(double lambda, double s) {
    const double lg = std::log(lambda);
    // (1 - lambda^{-s})/s - log lambda
    return -std::expm1(-s * lg) / s - lg;
}

} // namespace

std::vector<double> lp_limit_probe(const SpectralData& sd, const Field& f,
                                   const std::vector<double>& ss, double p) {
    if (sd.lambda(0) <= 0.0) throw std::domain_error("limit probe needs a positive spectrum");
    const Eigen::VectorXd c = analyze(sd, f);
    std::vector<double> out;
    out.reserve(ss.size());
    for (double s : ss) {
        if (!(s > 0.0)) throw std::invalid_argument("probe exponents must be positive");
        Eigen::VectorXd w = c;
        for (std::size_t i = 0; i < sd.size(); ++i)
            w[static_cast<Eigen::Index>(i)] *= limit_weight(sd.lambda(static_cast<Eigen::Index>(i)), s);
        Field residual = synthesize(sd, w);
        if (p <= 0.0) {
            out.push_back(norm_sup(residual));
        } else if (p == 2.0) {
            out.push_back(norm_l2(residual));
        } else {
            double acc = 0.0;
            for (double v : residual.v) acc += std::pow(std::abs(v), p);
            out.push_back(std::pow(acc * sd.grid.cell_volume, 1.0 / p));
        }
    }
    return out;
}

std::vector<double> left_derivative_probe(const SpectralData& sd, const Field& f,
                                          const std::vector<double>& ss) {
    return lp_limit_probe(sd, f, ss, 2.0);
}

} // namespace logsch
