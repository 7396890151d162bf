#ifndef LOGSCH_LOG_CALCULUS_HPP
#define LOGSCH_LOG_CALCULUS_HPP

#include <span>
#include <string>
#include <vector>

#include "logsch/heat_kernel.hpp"
#include "logsch/operators.hpp"
#include "logsch/quadrature.hpp"

namespace logsch {

// log(lambda) as the improper integral of (e^{-t} - e^{-lambda t})/t over (0, inf).
double frullani_log(double lambda, const QuadratureSpec& spec = {});
// Truncated window (1/m, m) of the same integrand.
double frullani_log_window(double lambda, double m, const QuadratureSpec& spec = {});

// Windowed log approximation: integral over (1/m, m) of (e^{-t} f - T_t f)/t dt,
// applied mode by mode.  Converges to log(H) f as m grows.
Field frullani_apply(const SpectralData& sd, const Field& f, double m,
                     const QuadratureSpec& spec = {});

// H^alpha f, alpha in (0,1), via the subordination integral
// (1/Gamma(-alpha)) Integral (T_t f - f) t^{-1-alpha} dt.
Field heat_frac_power(const SpectralData& sd, const Field& f, double alpha,
                      const QuadratureSpec& spec = {});

// H^{-alpha} f, alpha > 0, via (1/Gamma(alpha)) Integral T_t f t^{alpha-1} dt.
Field heat_neg_power(const SpectralData& sd, const Field& f, double alpha,
                     const QuadratureSpec& spec = {});

// Time integral of the heat kernel at fixed points:
//   Plain: G(x,y) = Integral K_t(x,y) dt      (resolvent-type Green function)
//   OverT: Integral K_t(x,y) / t dt           (far-field kernel of the
//                                              pointwise logarithm)
enum class TimeWeight { Plain, OverT };
double time_kernel_G(const HeatKernel& K, std::span<const double> x, std::span<const double> y,
                     TimeWeight weight = TimeWeight::Plain, const QuadratureSpec& spec = {});

// Closed form of Integral_0^inf (4 pi t)^{-d/2} e^{-r^2/(4t)} dt
//   = Gamma(d/2 - 1) pi^{-d/2} r^{2-d} / 4,  d >= 3  (Green function of -Lap).
double free_green_function(int dim, double r);
// With e^{-t} damping (Green function of -Lap + 1):
//   2 (4 pi)^{-d/2} (r/2)^{1-d/2} BesselK_{d/2-1}(r),  odd d.
double damped_free_green_function(int dim, double r);
// With e^{-t} damping and the 1/t weight (far-field kernel at V = 1):
//   2 (4 pi)^{-d/2} (r/2)^{-d/2} BesselK_{d/2}(r),  odd d.
double damped_free_log_kernel(int dim, double r);

struct PointwiseOptions {
    double quad_rel_tol = 1e-9;
    bool require_compact_support = true;  // sup |f| near the boundary must vanish
    double support_margin = 1.0;          // width of the boundary zone checked
    double ball_margin = 2.0;             // B(x, r + margin) must stay inside the box
};

struct KFunctionResult {
    double value = 0.0;       // the full local correction constant k(x, r)
    double term_log = 0.0;    // 2 log rho(x)
    double term_short = 0.0;  // Integral_0^{rho^2} (mass - 1)/t dt
    double term_mid = 0.0;    // -Integral_0^{rho^2} (mass - ballmass)/t dt
    double term_far = 0.0;    // Integral_{rho^2}^inf ballmass/t dt
    double term_const = 0.0;  // Euler-Mascheroni constant
    std::size_t ball_nodes = 0;
};

// k(x, r): the constant multiplying f(x) in the pointwise representation.
// Independent of r (up to quadrature error) and of the choice of rho.
KFunctionResult k_function(const HeatKernel& K, const Grid& grid, std::span<const double> x,
                           double r, double rho_x, const PointwiseOptions& opt = {});

struct PointwiseLogResult {
    double value = 0.0;      // log(H) f (x)
    double local = 0.0;      // near-field part: -Integral (K_t g_loc)(x)/t dt
    double far = 0.0;        // far-field part over the complement of the ball
    double k_term = 0.0;     // k(x, r) * f(x)
    double k_value = 0.0;    // k(x, r)
    double f_at_x = 0.0;
    double rho_x = 0.0;
    double radius = 0.0;
    std::size_t ball_nodes = 0;
};

// Pointwise evaluation of log(H) f at x through the heat semigroup:
//   log(H) f (x) = -Integral (K_t [f - f(x) 1_B])(x)/t dt - k(x,r) f(x)
// split into a near part (ball) and far part (complement).  Coefficient route
// for a kernel carrying an eigendecomposition of the full grid.
PointwiseLogResult pointwise_log(const EigenKernel& K, const Field& f, std::span<const double> x,
                                 double r, double rho_x, const PointwiseOptions& opt = {});

// Same evaluation for a tensor-product kernel and a separable f given by
// per-axis samples on the axis nodes (f = prod_j f_j).
PointwiseLogResult pointwise_log(const TensorKernel& K, const Grid& grid,
                                 const std::vector<std::vector<double>>& factor_values,
                                 std::span<const double> x, double r, double rho_x,
                                 const PointwiseOptions& opt = {});

struct ExtendedPointwiseResult {
    PointwiseLogResult core;
    double weight_integral = 0.0;  // grid value of Integral |f(y)| (1+|y|)^{-d-1} dy
    bool support_check_waived = true;
};

// Pointwise evaluation without the compact-support requirement; reports the
// weighted integrability diagnostic instead of enforcing decay.
ExtendedPointwiseResult extended_pointwise(const EigenKernel& K, const Field& f,
                                           std::span<const double> x, double r, double rho_x,
                                           const PointwiseOptions& opt = {});

// || (f - H^{-s} f)/s - log(H) f ||_p for each s; p = 2 or sup norm (p <= 0).
std::vector<double> lp_limit_probe(const SpectralData& sd, const Field& f,
                                   const std::vector<double>& ss, double p);

// Left derivative of s -> H^s f at s = 0: e(s) = || (f - H^{-s}f)/s - log(H) f ||_2
// evaluated along a decreasing sequence of s > 0 (the one-sided difference from below).
std::vector<double> left_derivative_probe(const SpectralData& sd, const Field& f,
                                          const std::vector<double>& ss);

} // namespace logsch

#endif
