#include "logsch/hermite.hpp"

#include <cmath>
#include <stdexcept>

namespace logsch {

namespace {
constexpr double kPiQuarterInv = 0.75112554446494248;   // pi^{-1/4}
}

double hermite_function(int ell, double u) {
    if (ell < 0 || ell > 500) throw std::invalid_argument("hermite_function: 0 <= ell <= 500");
    double h0 = kPiQuarterInv * std::exp(-0.5 * u * u);
    if (ell == 0) return h0;
    double h1 = u * std::sqrt(2.0) * h0;
    for (int l = 1; l < ell; ++l) {
        double h2 = u * std::sqrt(2.0 / (l + 1)) * h1 - std::sqrt(static_cast<double>(l) / (l + 1)) * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

void hermite_column(int maxdeg, double u, std::span<double> out) {
    if (maxdeg < 0 || maxdeg > 500 || static_cast<int>(out.size()) < maxdeg + 1)
        throw std::invalid_argument("hermite_column: bad degree/span");
    out[0] = kPiQuarterInv * std::exp(-0.5 * u * u);
    if (maxdeg == 0) return;
    out[1] = u * std::sqrt(2.0) * out[0];
    for (int l = 1; l < maxdeg; ++l)
        out[l + 1] = u * std::sqrt(2.0 / (l + 1)) * out[l] -
                     std::sqrt(static_cast<double>(l) / (l + 1)) * out[l - 1];
}

double HermiteBasis::eigenvalue(std::size_t i) const {
    int s = 0;
    for (int a : indices[i]) s += a;
    return 2.0 * s + dim;
}

HermiteBasis make_hermite_basis(int dim, int max_total_degree) {
    if (dim < 1 || dim > 3 || max_total_degree < 0)
        throw std::invalid_argument("make_hermite_basis: dim in {1,2,3}, degree >= 0");
    HermiteBasis b;
    b.dim = dim;
    b.max_total_degree = max_total_degree;
    std::vector<int> alpha(dim, 0);
    // lexicographic enumeration of |alpha| <= N
    std::function<void(int, int)> rec = [&](int axis, int remaining) {
        if (axis == dim - 1) {
            for (int a = 0; a <= remaining; ++a) {
                alpha[axis] = a;
                b.indices.push_back(alpha);
            }
            return;
        }
        for (int a = 0; a <= remaining; ++a) {
            alpha[axis] = a;
            rec(axis + 1, remaining - a);
        }
    };
    rec(0, max_total_degree);
    return b;
}

namespace {

// per-axis tables H[j](i, l) = h_l(axis_nodes[j][i])
std::vector<std::vector<double>> axis_tables(const Grid& g, int maxdeg) {
    std::vector<std::vector<double>> tabs(g.dim);
    for (int j = 0; j < g.dim; ++j) {
        tabs[j].resize(static_cast<std::size_t>(g.n[j]) * (maxdeg + 1));
        for (int i = 0; i < g.n[j]; ++i)
            hermite_column(maxdeg, g.axis_nodes[j][i],
                           std::span<double>(&tabs[j][static_cast<std::size_t>(i) * (maxdeg + 1)],
                                             maxdeg + 1));
    }
    return tabs;
}

} // namespace

HermiteExpansion hermite_coefficients(const Field& f, const HermiteBasis& basis) {
    const Grid& g = f.grid;
    if (g.dim != basis.dim) throw std::invalid_argument("hermite_coefficients: dim mismatch");
    int maxdeg = basis.max_total_degree;
    auto tabs = axis_tables(g, maxdeg);
    HermiteExpansion e;
    e.basis = basis;
    e.c.assign(basis.size(), 0.0);

    std::vector<int> idx(g.dim, 0);
    std::vector<std::size_t> stride(g.dim, 1);
    for (int j = g.dim - 2; j >= 0; --j)
        stride[j] = stride[j + 1] * static_cast<std::size_t>(g.n[j + 1]);

    for (std::size_t a = 0; a < basis.size(); ++a) {
        const auto& alpha = basis.indices[a];
        double s = 0.0;
        for (std::size_t i = 0; i < f.v.size(); ++i) {
            double w = f.v[i];
            std::size_t rem = i;
            for (int j = 0; j < g.dim; ++j) {
                std::size_t ij = rem / stride[j];
                rem %= stride[j];
                w *= tabs[j][ij * (maxdeg + 1) + alpha[j]];
            }
            s += w;
        }
        e.c[a] = s * g.cell_volume;
    }
    double f2 = 0.0, c2 = 0.0;
    for (double v : f.v) f2 += v * v;
    f2 *= g.cell_volume;
    for (double v : e.c) c2 += v * v;
    e.truncation_fraction = (f2 > 0) ? std::max(0.0, 1.0 - c2 / f2) : 0.0;
    e.truncation_warning = e.truncation_fraction > 0.01;
    return e;
}

double hermite_eval(const HermiteExpansion& e, std::span<const double> x) {
    const HermiteBasis& b = e.basis;
    if (static_cast<int>(x.size()) != b.dim) throw std::invalid_argument("hermite_eval: dim mismatch");
    int maxdeg = b.max_total_degree;
    std::vector<double> cols(static_cast<std::size_t>(b.dim) * (maxdeg + 1));
    for (int j = 0; j < b.dim; ++j)
        hermite_column(maxdeg, x[j],
                       std::span<double>(&cols[static_cast<std::size_t>(j) * (maxdeg + 1)], maxdeg + 1));
    double s = 0.0;
    for (std::size_t a = 0; a < b.size(); ++a) {
        double w = e.c[a];
        for (int j = 0; j < b.dim; ++j)
            w *= cols[static_cast<std::size_t>(j) * (maxdeg + 1) + b.indices[a][j]];
        s += w;
    }
    return s;
}

Field harmonic_log_apply(const HermiteExpansion& e, const Grid& out_grid) {
    const HermiteBasis& b = e.basis;
    if (out_grid.dim != b.dim) throw std::invalid_argument("harmonic_log_apply: dim mismatch");
    int maxdeg = b.max_total_degree;
    auto tabs = axis_tables(out_grid, maxdeg);
    Field out = make_field(out_grid);

    std::vector<std::size_t> stride(out_grid.dim, 1);
    for (int j = out_grid.dim - 2; j >= 0; --j)
        stride[j] = stride[j + 1] * static_cast<std::size_t>(out_grid.n[j + 1]);

    for (std::size_t a = 0; a < b.size(); ++a) {
        double w_a = std::log(b.eigenvalue(a)) * e.c[a];
        if (w_a == 0.0) continue;
        const auto& alpha = b.indices[a];
        for (std::size_t i = 0; i < out.v.size(); ++i) {
            double w = w_a;
            std::size_t rem = i;
            for (int j = 0; j < out_grid.dim; ++j) {
                std::size_t ij = rem / stride[j];
                rem %= stride[j];
                w *= tabs[j][ij * (maxdeg + 1) + alpha[j]];
            }
            out.v[i] += w;
        }
    }
    return out;
}

} // namespace logsch
