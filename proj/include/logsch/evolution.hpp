#ifndef LOGSCH_EVOLUTION_HPP
#define LOGSCH_EVOLUTION_HPP

#include <cstdint>
#include <vector>

#include "logsch/heat_kernel.hpp"
#include "logsch/operators.hpp"
#include "logsch/quadrature.hpp"

namespace logsch {

// Weighted Lipschitz-type norm: sup |f| rho^{-theta} plus the Holder quotient
// sup |f(x)-f(y)| / |x-y|^theta, the latter estimated over sampled node pairs.
struct LipVReport {
    double weighted_sup = 0.0;
    double holder_quotient = 0.0;
    double total = 0.0;
    double theta = 0.0;
    std::size_t pairs_sampled = 0;
};

LipVReport lipv_seminorm(const Field& f, const RhoFn& rho, double theta, int num_pairs = 4000,
                         std::uint64_t seed = 0);

enum class CauchyRoute { Spectral, Quadrature };

// u(., t) = H^{-t} f: the solution of  du/dt = -log(H) u,  u(., 0) = f.
// Spectral route applies lambda^{-t} mode by mode; quadrature route goes
// through the heat semigroup (valid for t >= 0.01, throws below).
Field solve_cauchy(const SpectralData& sd, const Field& f, double t,
                   CauchyRoute route = CauchyRoute::Spectral, const QuadratureSpec& spec = {});

// || (u(t+dt) - u(t-dt)) / (2 dt) + log(H) u(t) ||_2  (expected O(dt^2))
double pde_residual(const SpectralData& sd, const Field& f, double t, double dt);

// sup-norm distance || u(., t) - f ||_inf for each t (u -> f as t -> 0+)
std::vector<double> initial_limit_probe(const SpectralData& sd, const Field& f,
                                        const std::vector<double>& ts);

// || S(t2) S(t1) f - S(t1+t2) f ||_2 with both factors on the given route
double composition_residual(const SpectralData& sd, const Field& f, double t1, double t2,
                            CauchyRoute route = CauchyRoute::Spectral,
                            const QuadratureSpec& spec = {});

// Smoothing of the evolution in the weighted Lipschitz scale: compares the
// norm of H^{-s} f at exponent theta + 2s against the norm of f at theta.
struct LipMappingPoint {
    double s = 0.0;
    double input_norm = 0.0;
    double output_norm = 0.0;
    double ratio = 0.0;
};

std::vector<LipMappingPoint> lip_mapping_probe(const SpectralData& sd, const Field& f,
                                               const RhoFn& rho, double theta,
                                               const std::vector<double>& ss,
                                               int num_pairs = 4000, std::uint64_t seed = 0);

} // namespace logsch

#endif
