#ifndef LOGSCH_SPECIAL_FUNCTIONS_HPP
#define LOGSCH_SPECIAL_FUNCTIONS_HPP

namespace logsch {

// Gamma function for x > 0 (Lanczos approximation, g=7, 9 terms)
double gamma_function(double x);

// Gamma(-alpha) = -Gamma(1-alpha)/alpha for alpha in (0,1)
double gamma_neg(double alpha);

// Euler-Mascheroni constant
double euler_gamma();

// Modified Bessel function of the second kind, half-integer order:
// K_{n+1/2}(z) for n >= 0, z > 0.  K_{1/2} closed form plus upward recurrence.
double bessel_k_half_integer(int n, double z);

// E1(z) = ∫_z^∞ e^{-t}/t dt, z > 0
double exp_integral_e1(double z);

// F(z) = log z + ∫_0^z (e^{-t}-1)/t dt + ∫_z^∞ e^{-t}/t dt  (== -euler_gamma()
// for every z > 0; evaluated by quadrature, used as a self-test and by the
// local-part constant of the pointwise representation)
double gamma_identity_value(double z);

} // namespace logsch

#endif
