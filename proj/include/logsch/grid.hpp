#ifndef LOGSCH_GRID_HPP
#define LOGSCH_GRID_HPP

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace logsch {

// Uniform tensor-product grid on a box, axis 0 slowest in the flat ordering.
// Nodes include both endpoints: x_j[i] = lo[j] + i*h[j], h[j] = (hi-lo)/(n-1).
struct Grid {
    int dim = 0;
    std::vector<double> lo, hi;
    std::vector<int> n;
    std::vector<double> h;            // per-axis spacing
    double cell_volume = 0.0;         // prod h[j]
    std::vector<std::vector<double>> axis_nodes;

    std::size_t size() const;
    // flat index -> node coordinates (out must have dim entries)
    void node(std::size_t flat, std::span<double> out) const;
    std::size_t flat_index(std::span<const int> idx) const;
    // nearest grid node to x (throws if x outside the box by more than h/2)
    std::size_t nearest_node(std::span<const double> x) const;
    double max_h() const;
    // distance from x to the boundary of the box
    double boundary_distance(std::span<const double> x) const;
};

// extents[j] = {lo, hi}, counts[j] >= 2; throws std::invalid_argument on bad input
Grid build_grid(const std::vector<std::pair<double, double>>& extents,
                const std::vector<int>& counts);

template <class T>
struct BasicField {
    Grid grid;
    std::vector<T> v;
};
using Field = BasicField<double>;
using ComplexField = BasicField<std::complex<double>>;

Field make_field(const Grid& g);
// sample a callable on every node
Field sample_field(const Grid& g, const std::function<double(std::span<const double>)>& f);

// box-rule integral: cell_volume * sum of values; throws on non-finite entries
double integrate(const Field& f);
// <f,g> = cell_volume * sum f_i conj(g_i)
double inner_product(const Field& f, const Field& g);
std::complex<double> inner_product(const ComplexField& f, const ComplexField& g);

double norm_l2(const Field& f);       // sqrt(<f,f>)
double norm_sup(const Field& f);      // max |f_i|

} // namespace logsch

#endif
