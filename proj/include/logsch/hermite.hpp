#ifndef LOGSCH_HERMITE_HPP
#define LOGSCH_HERMITE_HPP

#include <span>
#include <vector>

#include "logsch/grid.hpp"

namespace logsch {

// L2-normalized Hermite function h_ell(u) via the stable three-term
// recurrence h_{l+1} = u sqrt(2/(l+1)) h_l - sqrt(l/(l+1)) h_{l-1},
// h_0 = pi^{-1/4} e^{-u^2/2}.  ell <= 500.
double hermite_function(int ell, double u);

// h_0..h_maxdeg at u in one recurrence pass (out has maxdeg+1 entries)
void hermite_column(int maxdeg, double u, std::span<double> out);

// Tensor Hermite basis: all multi-indices alpha with |alpha| <= max_total_degree.
// The operator -Laplacian + |x|^2 has eigenvalue 2|alpha| + dim on h_alpha.
struct HermiteBasis {
    int dim = 0;
    int max_total_degree = 0;
    std::vector<std::vector<int>> indices;
    std::size_t size() const { return indices.size(); }
    double eigenvalue(std::size_t i) const;
};

HermiteBasis make_hermite_basis(int dim, int max_total_degree);

struct HermiteExpansion {
    HermiteBasis basis;
    std::vector<double> c;
    double truncation_fraction = 0.0;   // 1 - sum c^2 / ||f||^2
    bool truncation_warning = false;    // set when the fraction exceeds 1%
};

// coefficients by tensor-grid quadrature of h_alpha * f
HermiteExpansion hermite_coefficients(const Field& f, const HermiteBasis& basis);

double hermite_eval(const HermiteExpansion& e, std::span<const double> x);

// log of the harmonic-oscillator operator through its exact eigenbasis:
// g = sum log(2|alpha|+d) c_alpha h_alpha, sampled on out_grid
Field harmonic_log_apply(const HermiteExpansion& e, const Grid& out_grid);

} // namespace logsch

#endif
