#ifndef LOGSCH_POTENTIAL_HPP
#define LOGSCH_POTENTIAL_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "logsch/probe_report.hpp"

namespace logsch {

// Nonnegative potential V on R^d.  Presets carry a closed-form critical
// radius where one is known; separable potentials carry their 1D parts
// (V(x) = sum_j parts[j](x_j)).
struct Potential {
    int dim = 0;
    std::string name;
    std::function<double(std::span<const double>)> eval;
    std::vector<std::function<double(double)>> separable_parts;
    std::function<double(std::span<const double>)> known_rho;

    double operator()(std::span<const double> x) const { return eval(x); }
    bool separable() const { return !separable_parts.empty(); }
};

// Preset grammar: "one" | "const:m2=<v>" | "harmonic" | "harmonic_shift:c=<v>"
//               | "separable:<p1>;<p2>;..." with 1D parts from
//                 {zero, one, const:m2=<v>, harmonic, harmonic_shift:c=<v>}.
// Validates V >= 0 and V not identically zero on a deterministic sample, and
// separability of the declared parts; throws std::invalid_argument otherwise.
Potential make_potential(const std::string& spec, int dim);

double unit_ball_volume(int dim);

// Halton low-discrepancy points in the closed unit ball, deterministic for a
// given (dim, count, seed); dim <= 3
std::vector<std::vector<double>> unit_ball_points(int dim, int count, std::uint64_t seed = 0);

// QMC average of V over the ball B(center, r) using precomputed unit-ball points
double ball_average(const Potential& V, std::span<const double> center, double r,
                    const std::vector<std::vector<double>>& unit_points);

struct RhConstantReport {
    double q = 0.0;
    double constant = 0.0;              // sup over balls of (avg V^q)^{1/q} / avg V
    std::vector<double> worst_center;
    double worst_radius = 0.0;
    int num_balls = 0;
};

// Reverse-Holder constant estimate over an explicit family of balls.
// Throws if some ball has zero average (V vanishes on it).
RhConstantReport reverse_holder_estimate(const Potential& V, double q,
                                         const std::vector<std::pair<std::vector<double>, double>>& balls,
                                         int points_per_ball = 32768, std::uint64_t seed = 0);

struct CriticalRadiusOptions {
    double tol = 1e-6;              // relative tolerance on rho
    bool use_known_rho = true;      // honor the preset closed form when present
    int qmc_points = 32768;
    std::uint64_t seed = 0;
    double scan_lo = 1e-4, scan_hi = 1e4;
    int points_per_decade = 20;
};

// Critical radius rho(x) = sup{ r : r^{2-d} ∫_{B(x,r)} V <= 1 }.
// Numeric path: F(r) = omega_d r^2 * ballavg evaluated on a log-spaced scan,
// last crossing of F = 1, then bisection.  Numeric path requires dim >= 3;
// presets carry closed forms for low dimensions.
double critical_radius(const Potential& V, std::span<const double> x,
                       const CriticalRadiusOptions& opt = {});

// rho comparison over point pairs: empirical equivalence constant over pairs
// with |x-y| <= rho(x), and fitted (c_rho, N0) for the two-sided polynomial
// comparison envelope.  bound_id "rho_compare".
BoundProbeReport rho_comparison_probe(const Potential& V,
                                      const std::vector<std::pair<std::vector<double>, std::vector<double>>>& pairs,
                                      const CriticalRadiusOptions& opt = {});

} // namespace logsch

#endif
