#ifndef LOGSCH_OPERATORS_HPP
#define LOGSCH_OPERATORS_HPP

#include <Eigen/Dense>

#include "logsch/grid.hpp"
#include "logsch/potential.hpp"

namespace logsch {

// Dense symmetric discretization of -Laplacian + V on the grid box with
// homogeneous Dirichlet boundary (neighbors outside the box read as zero).
// Second-order central differences per axis.
struct DiscreteOperator {
    Grid grid;
    Eigen::MatrixXd A;
};

// Throws if the grid exceeds node_cap (dense eigensolve guard).
DiscreteOperator assemble(const Grid& grid, const Potential& V, std::size_t node_cap = 20000);

Field apply_operator(const DiscreteOperator& op, const Field& f);

// Full eigendecomposition of the discrete operator.  Eigenvalues ascending;
// eigenvectors orthonormal with respect to the grid inner product
// (cell_volume-weighted), sign fixed so the first nonzero component of each
// vector is positive.
struct SpectralData {
    Grid grid;
    Eigen::VectorXd lambda;
    Eigen::MatrixXd phi;          // column i = eigenvector i on the grid
    Eigen::VectorXd ones_coeffs;  // coefficients of the constant-1 field
    std::size_t size() const { return static_cast<std::size_t>(lambda.size()); }
};

SpectralData eigendecompose(const DiscreteOperator& op);

// coefficient vector c_i = <phi_i, f>
Eigen::VectorXd analyze(const SpectralData& sd, const Field& f);
// f = sum c_i phi_i
Field synthesize(const SpectralData& sd, const Eigen::VectorXd& c);

} // namespace logsch

#endif
