#include "logsch/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace logsch {

DiscreteOperator assemble(const Grid& grid, const Potential& V, std::size_t node_cap) {
    if (V.dim != grid.dim) throw std::invalid_argument("assemble: potential/grid dim mismatch");
    std::size_t N = grid.size();
    if (N > node_cap)
        throw std::invalid_argument("assemble: grid exceeds dense eigendecomposition cap");
    DiscreteOperator op;
    op.grid = grid;
    op.A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));

    std::vector<double> x(grid.dim);
    std::vector<int> idx(grid.dim);
    // strides of the flat ordering (axis 0 slowest)
    std::vector<std::size_t> stride(grid.dim, 1);
    for (int j = grid.dim - 2; j >= 0; --j)
        stride[j] = stride[j + 1] * static_cast<std::size_t>(grid.n[j + 1]);

    for (std::size_t i = 0; i < N; ++i) {
        std::size_t rem = i;
        for (int j = 0; j < grid.dim; ++j) {
            idx[j] = static_cast<int>(rem / stride[j]);
            rem %= stride[j];
            x[j] = grid.axis_nodes[j][idx[j]];
        }
        double diag = V.eval(x);
        for (int j = 0; j < grid.dim; ++j) {
            double inv_h2 = 1.0 / (grid.h[j] * grid.h[j]);
            diag += 2.0 * inv_h2;
            if (idx[j] > 0) op.A(i, i - stride[j]) = -inv_h2;
            if (idx[j] < grid.n[j] - 1) op.A(i, i + stride[j]) = -inv_h2;
        }
        op.A(i, i) = diag;
    }
    return op;
}

Field apply_operator(const DiscreteOperator& op, const Field& f) {
    if (f.v.size() != static_cast<std::size_t>(op.A.rows()))
        throw std::invalid_argument("apply_operator: size mismatch");
    Eigen::Map<const Eigen::VectorXd> fv(f.v.data(), f.v.size());
    Eigen::VectorXd g = op.A * fv;
    Field out = make_field(op.grid);
    Eigen::Map<Eigen::VectorXd>(out.v.data(), out.v.size()) = g;
    return out;
}

SpectralData eigendecompose(const DiscreteOperator& op) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(op.A);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigendecompose: solver failed");
    SpectralData sd;
    sd.grid = op.grid;
    sd.lambda = solver.eigenvalues();             // ascending
    sd.phi = solver.eigenvectors();
    double cv = op.grid.cell_volume;
    // orthonormal in l2 -> orthonormal wrt the cell_volume-weighted product
    sd.phi *= 1.0 / std::sqrt(cv);
    // deterministic sign: first component above noise is positive
    for (Eigen::Index c = 0; c < sd.phi.cols(); ++c) {
        double amax = sd.phi.col(c).cwiseAbs().maxCoeff();
        for (Eigen::Index r = 0; r < sd.phi.rows(); ++r) {
            double v = sd.phi(r, c);
            if (std::abs(v) > 1e-8 * amax) {
                if (v < 0) sd.phi.col(c) = -sd.phi.col(c);
                break;
            }
        }
    }
    sd.ones_coeffs = sd.phi.transpose() * Eigen::VectorXd::Ones(sd.phi.rows()) * cv;
    return sd;
}

Eigen::VectorXd analyze(const SpectralData& sd, const Field& f) {
    if (f.v.size() != sd.size()) throw std::invalid_argument("analyze: size mismatch");
    Eigen::Map<const Eigen::VectorXd> fv(f.v.data(), f.v.size());
    return sd.phi.transpose() * fv * sd.grid.cell_volume;
}

Field synthesize(const SpectralData& sd, const Eigen::VectorXd& c) {
    if (static_cast<std::size_t>(c.size()) != sd.size())
        throw std::invalid_argument("synthesize: size mismatch");
    Field out = make_field(sd.grid);
    Eigen::Map<Eigen::VectorXd>(out.v.data(), out.v.size()) = sd.phi * c;
    return out;
}

} // namespace logsch
