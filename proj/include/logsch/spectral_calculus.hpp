#ifndef LOGSCH_SPECTRAL_CALCULUS_HPP
#define LOGSCH_SPECTRAL_CALCULUS_HPP

#include <complex>
#include <functional>
#include <vector>

#include "logsch/operators.hpp"

namespace logsch {

// Scalar function applied to the spectrum: phi(H) f = sum phi(lambda_i) c_i phi_i.
class SpectralFunction {
  public:
    enum class Role { Log, Power, NegPower, Heat, ImagPower, Custom };

    static SpectralFunction log();
    static SpectralFunction power(double s);          // lambda^s, s in (0,1)
    static SpectralFunction neg_power(double alpha);  // lambda^-alpha, alpha > 0
    static SpectralFunction heat(double t);           // e^{-t lambda}, t > 0
    static SpectralFunction imag_power(double beta);  // lambda^{i beta} (complex)
    static SpectralFunction custom(std::function<double(double)> fn);

    Role role() const { return role_; }
    double param() const { return param_; }
    bool is_complex() const { return role_ == Role::ImagPower; }
    double eval_real(double lambda) const;
    std::complex<double> eval(double lambda) const;

  private:
    SpectralFunction(Role r, double p) : role_(r), param_(p) {}
    Role role_;
    double param_;
    std::function<double(double)> fn_;
};

// phi(H) f through the eigendecomposition.  Log/Power/NegPower require a
// strictly positive spectrum (throws std::domain_error otherwise).
Field apply_spectral(const SpectralData& sd, const SpectralFunction& phi, const Field& f);
ComplexField apply_spectral_complex(const SpectralData& sd, const SpectralFunction& phi,
                                    const Field& f);

double norm_l2(const ComplexField& f);

// e(s) = || (H^s f - f)/s - log(H) f ||_2 for each s (expected O(s))
std::vector<double> derivative_at_zero_probe(const SpectralData& sd, const Field& f,
                                             const std::vector<double>& ss);

// || H^{i a} H^{i b} f - H^{i(a+b)} f ||_2  (group law, expected ~ round-off)
double imag_power_group_residual(const SpectralData& sd, const Field& f, double a, double b);
// || (H^{i h} f - f)/h - i log(H) f ||_2  (generator of the imaginary-power group)
double imag_power_generator_error(const SpectralData& sd, const Field& f, double h);

// || H^{-a} H^{-b} f - H^{-(a+b)} f ||_2  (semigroup law)
double neg_power_composition_residual(const SpectralData& sd, const Field& f, double a, double b);
// || (H^{-h} f - f)/h + log(H) f ||_2
double neg_power_generator_error(const SpectralData& sd, const Field& f, double h);

struct DomainDiagnostic {
    double weighted_sum = 0.0;     // sum |phi(lambda_i)|^2 c_i^2
    double tail_fraction = 0.0;    // share carried by the top 10% of modes
    bool in_domain_proxy = false;  // finite and not tail-dominated
};

DomainDiagnostic domain_diagnostic(const SpectralData& sd, const SpectralFunction& phi,
                                   const Field& f);

// sup over the spectrum of (log lambda)^2 / (lambda^{-2 beta} + lambda^{2 alpha})
double log_square_bound_constant(const SpectralData& sd, double alpha, double beta);

// phi(H) f (x) for a tensor (Kronecker-sum) operator with separable f:
// sum over multi-indices of phi(lambda_{i1}+...+lambda_{id}) prod_j c_j[i_j] phi_j[i_j](x_j),
// with small coefficient products pruned below cutoff * max-product.
double tensor_spectral_value(const std::vector<const SpectralData*>& axes,
                             const std::vector<std::vector<double>>& factor_values,
                             const SpectralFunction& phi, std::span<const double> x,
                             double cutoff = 1e-14);

} // namespace logsch

#endif
