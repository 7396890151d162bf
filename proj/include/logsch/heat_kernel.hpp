#ifndef LOGSCH_HEAT_KERNEL_HPP
#define LOGSCH_HEAT_KERNEL_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "logsch/operators.hpp"
#include "logsch/probe_report.hpp"

namespace logsch {

// Heat kernel K(t,x,y) of a Schrodinger semigroup e^{-tH}, H = -Laplacian + V.
class HeatKernel {
  public:
    virtual ~HeatKernel() = default;
    virtual int dim() const = 0;
    virtual double eval(double t, std::span<const double> x, std::span<const double> y) const = 0;
    // (e^{-tH} 1)(x)
    virtual double mass(double t, std::span<const double> x) const = 0;
    virtual std::string name() const = 0;
};

// V = 0: (4 pi t)^{-d/2} exp(-|x-y|^2 / 4t), mass identically 1
class GaussianFreeKernel : public HeatKernel {
  public:
    explicit GaussianFreeKernel(int d);
    int dim() const override { return d_; }
    double eval(double t, std::span<const double> x, std::span<const double> y) const override;
    double mass(double t, std::span<const double> x) const override;
    std::string name() const override { return "gaussian_free"; }

  private:
    int d_;
};

// V = m^2: e^{-m^2 t} times the free kernel
class ShiftedGaussianKernel : public HeatKernel {
  public:
    ShiftedGaussianKernel(int d, double m2);
    int dim() const override { return d_; }
    double eval(double t, std::span<const double> x, std::span<const double> y) const override;
    double mass(double t, std::span<const double> x) const override;
    std::string name() const override { return "shifted_gaussian"; }

  private:
    int d_;
    double m2_;
};

// V = |x|^2 (harmonic oscillator), closed form
//   K_t(x,y) = prod_j (2 pi sinh 2t)^{-1/2}
//              exp(-[(x_j^2+y_j^2) cosh 2t - 2 x_j y_j] / (2 sinh 2t))
// with exact mass (cosh 2t)^{-d/2} exp(-tanh(2t) |x|^2 / 2).
class MehlerKernel : public HeatKernel {
  public:
    explicit MehlerKernel(int d);
    int dim() const override { return d_; }
    double eval(double t, std::span<const double> x, std::span<const double> y) const override;
    double mass(double t, std::span<const double> x) const override;
    std::string name() const override { return "mehler"; }

  private:
    int d_;
};

// K(t,x,y) = sum_i e^{-lambda_i t} phi_i(x) phi_i(y) from a discrete
// eigendecomposition; x and y snap to the nearest grid node.  Mode sums are
// truncated once lambda_i t > 46 (relative weight below 1e-20).
class EigenKernel : public HeatKernel {
  public:
    explicit EigenKernel(std::shared_ptr<const SpectralData> sd);
    int dim() const override;
    double eval(double t, std::span<const double> x, std::span<const double> y) const override;
    double mass(double t, std::span<const double> x) const override;
    std::string name() const override { return "eigenexpansion"; }
    const SpectralData& spectral() const { return *sd_; }

  private:
    std::shared_ptr<const SpectralData> sd_;
};

// product of 1D kernels along each axis
class TensorKernel : public HeatKernel {
  public:
    explicit TensorKernel(std::vector<std::shared_ptr<const HeatKernel>> axes);
    int dim() const override { return static_cast<int>(axes_.size()); }
    double eval(double t, std::span<const double> x, std::span<const double> y) const override;
    double mass(double t, std::span<const double> x) const override;
    std::string name() const override { return "tensor_product"; }
    const HeatKernel& axis(int j) const { return *axes_[j]; }

  private:
    std::vector<std::shared_ptr<const HeatKernel>> axes_;
};

// sum_i e^{-lambda_i t} phi_i(node) c_i  (semigroup action on a coefficient
// vector, evaluated at one grid node; same truncation as EigenKernel)
double heat_apply_at(const SpectralData& sd, const Eigen::VectorXd& c, std::size_t node, double t);

// | integral K(u,z,y) K(s,x,z) dz  -  K(u+s,x,y) |, grid quadrature in z
// (per-axis sums for tensor kernels)
double chapman_kolmogorov_residual(const HeatKernel& K, const Grid& g, double u, double s,
                                   std::span<const double> x, std::span<const double> y);

struct KernelSampleSpec {
    int num_samples = 1000;
    double t_lo = 0.05, t_hi = 5.0;
    double box_radius = 2.0;     // x, y drawn from [-R, R]^d
    std::uint64_t seed = 1;
};

// Feynman-Kac domination 0 <= K_V <= K_free: reports the worst violations of
// both sides, scaled by t^{d/2} (so tolerances are t-independent).
// `reference` overrides the dominating kernel; by default the continuum
// Gaussian is used.  Pass the V = 0 kernel built on the same grid to test the
// operator inequality itself: against the continuum Gaussian the result also
// picks up the O(h^2/t) discretisation excess near the diagonal.
BoundProbeReport fk_domination_probe(const HeatKernel& KV, const KernelSampleSpec& spec,
                                     const HeatKernel* reference = nullptr);

// Gaussian decay envelope with critical-radius damping: fits, per N in Ns,
//   C_N = sup K / [ t^{-d/2} e^{-r^2/(5t)} (1 + sqrt(t)/rho(x) + sqrt(t)/rho(y))^{-N} ]
using RhoFn = std::function<double(std::span<const double>)>;
BoundProbeReport decay_bound_fit(const HeatKernel& KV, const RhoFn& rho,
                                 const std::vector<double>& Ns, const KernelSampleSpec& spec);

// Spatial Holder regularity: |K(t,x+h,y)-K(t,x,y)| against
// C (|h|/sqrt t)^eta t^{-d/2} e^{-r^2/(6t)} (1+sqrt t/rho(x)+sqrt t/rho(y))^{-2};
// eta fitted by log-log least squares over samples with |h| < sqrt t.
BoundProbeReport holder_probe(const HeatKernel& KV, const RhoFn& rho, const KernelSampleSpec& spec);

// Small-time perturbation from the free kernel at a fixed x:
// s(t) = sup_y |K_V - K_free|(t,x,y) t^{d/2} over grid nodes y, fitted as
// C (sqrt t / rho_x)^delta for t in ts (all <= rho_x^2).
BoundProbeReport perturbation_probe(const HeatKernel& KV, const Grid& g,
                                    std::span<const double> x, double rho_x,
                                    const std::vector<double>& ts);

} // namespace logsch

#endif
