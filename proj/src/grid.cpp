#include "logsch/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace logsch {

std::size_t Grid::size() const {
    std::size_t s = 1;
    for (int k : n) s *= static_cast<std::size_t>(k);
    return s;
}

void Grid::node(std::size_t flat, std::span<double> out) const {
    for (int j = dim - 1; j >= 0; --j) {
        std::size_t nj = static_cast<std::size_t>(n[j]);
        out[j] = axis_nodes[j][flat % nj];
        flat /= nj;
    }
}

std::size_t Grid::flat_index(std::span<const int> idx) const {
    std::size_t f = 0;
    for (int j = 0; j < dim; ++j) {
        if (idx[j] < 0 || idx[j] >= n[j]) throw std::invalid_argument("grid index out of range");
        f = f * static_cast<std::size_t>(n[j]) + static_cast<std::size_t>(idx[j]);
    }
    return f;
}

std::size_t Grid::nearest_node(std::span<const double> x) const {
    std::size_t f = 0;
    for (int j = 0; j < dim; ++j) {
        double u = (x[j] - lo[j]) / h[j];
        long i = std::lround(u);
        if (i < 0 || i >= n[j] || std::abs(u - static_cast<double>(i)) > 0.5 + 1e-9)
            throw std::invalid_argument("point outside grid box");
        f = f * static_cast<std::size_t>(n[j]) + static_cast<std::size_t>(i);
    }
    return f;
}

double Grid::max_h() const {
    double m = 0.0;
    for (double v : h) m = std::max(m, v);
    return m;
}

double Grid::boundary_distance(std::span<const double> x) const {
    double m = hi[0] - lo[0];
    for (int j = 0; j < dim; ++j)
        m = std::min({m, x[j] - lo[j], hi[j] - x[j]});
    return m;
}

Grid build_grid(const std::vector<std::pair<double, double>>& extents,
                const std::vector<int>& counts) {
    if (extents.empty() || extents.size() != counts.size())
        throw std::invalid_argument("grid: extents/counts size mismatch");
    Grid g;
    g.dim = static_cast<int>(extents.size());
    g.cell_volume = 1.0;
    for (int j = 0; j < g.dim; ++j) {
        auto [a, b] = extents[j];
        int nj = counts[j];
        if (!(a < b) || nj < 2) throw std::invalid_argument("grid: need lo < hi and n >= 2");
        g.lo.push_back(a);
        g.hi.push_back(b);
        g.n.push_back(nj);
        double hj = (b - a) / (nj - 1);
        g.h.push_back(hj);
        g.cell_volume *= hj;
        std::vector<double> nodes(nj);
        for (int i = 0; i < nj; ++i) nodes[i] = a + i * hj;
        g.axis_nodes.push_back(std::move(nodes));
    }
    return g;
}

Field make_field(const Grid& g) {
    Field f;
    f.grid = g;
    f.v.assign(g.size(), 0.0);
    return f;
}

Field sample_field(const Grid& g, const std::function<double(std::span<const double>)>& fn) {
    Field f = make_field(g);
    std::vector<double> x(g.dim);
    for (std::size_t i = 0; i < f.v.size(); ++i) {
        g.node(i, x);
        f.v[i] = fn(x);
    }
    return f;
}

double integrate(const Field& f) {
    double s = 0.0;
    for (double v : f.v) {
        if (!std::isfinite(v)) throw std::runtime_error("integrate: non-finite field value");
        s += v;
    }
    return s * f.grid.cell_volume;
}

double inner_product(const Field& f, const Field& g) {
    if (f.v.size() != g.v.size()) throw std::invalid_argument("inner_product: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < f.v.size(); ++i) s += f.v[i] * g.v[i];
    return s * f.grid.cell_volume;
}

std::complex<double> inner_product(const ComplexField& f, const ComplexField& g) {
    if (f.v.size() != g.v.size()) throw std::invalid_argument("inner_product: size mismatch");
    std::complex<double> s = 0.0;
    for (std::size_t i = 0; i < f.v.size(); ++i) s += f.v[i] * std::conj(g.v[i]);
    return s * f.grid.cell_volume;
}

double norm_l2(const Field& f) {
    double s = 0.0;
    for (double v : f.v) s += v * v;
    return std::sqrt(s * f.grid.cell_volume);
}

double norm_sup(const Field& f) {
    double m = 0.0;
    for (double v : f.v) m = std::max(m, std::abs(v));
    return m;
}

} // namespace logsch
