#include "logsch/special_functions.hpp"

#include <cmath>
#include <stdexcept>

#include "logsch/quadrature.hpp"

namespace logsch {

double gamma_function(double x) {
    if (!(x > 0)) throw std::domain_error("gamma_function: x > 0 required");
    static const double c[9] = {
        0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,    12.507343278686905,
        -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};
    if (x < 0.5) {
        // reflection keeps the Lanczos series in its accurate range
        return M_PI / (std::sin(M_PI * x) * gamma_function(1.0 - x));
    }
    double z = x - 1.0;
    double a = c[0];
    for (int i = 1; i < 9; ++i) a += c[i] / (z + i);
    double t = z + 7.5;
    return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

double gamma_neg(double alpha) {
    if (!(alpha > 0 && alpha < 1)) throw std::domain_error("gamma_neg: alpha in (0,1) required");
    return -gamma_function(1.0 - alpha) / alpha;
}

double euler_gamma() {
    return 0.57721566490153286061;
}

double bessel_k_half_integer(int n, double z) {
    if (n < 0 || !(z > 0)) throw std::domain_error("bessel_k_half_integer: n >= 0, z > 0");
    double k_prev = std::sqrt(M_PI / (2.0 * z)) * std::exp(-z);   // K_{1/2}
    if (n == 0) return k_prev;
    double k = k_prev * (1.0 + 1.0 / z);                          // K_{3/2}
    for (int m = 1; m < n; ++m) {
        // K_{nu+1} = K_{nu-1} + (2 nu / z) K_nu with nu = m + 1/2
        double k_next = k_prev + (2.0 * m + 1.0) / z * k;
        k_prev = k;
        k = k_next;
    }
    return k;
}

double exp_integral_e1(double z) {
    if (!(z > 0)) throw std::domain_error("exp_integral_e1: z > 0 required");
    if (z > 700.0) return 0.0;    // below double underflow
    QuadratureSpec spec;
    spec.rel_tol = 1e-14;
    return time_quadrature_from([](double t) { return std::exp(-t) / t; }, z, spec);
}

double gamma_identity_value(double z) {
    if (!(z > 0)) throw std::domain_error("gamma_identity_value: z > 0 required");
    // (e^{-t}-1)/t is analytic at 0 (value -1); plain panels suffice
    double head = integrate_gl([](double t) { return t == 0.0 ? -1.0 : std::expm1(-t) / t; },
                               0.0, z, std::max(4, static_cast<int>(z) + 1));
    return std::log(z) + head + exp_integral_e1(z);
}

} // namespace logsch
