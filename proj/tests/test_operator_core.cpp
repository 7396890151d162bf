#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "logsch/grid.hpp"
#include "logsch/hermite.hpp"
#include "logsch/operators.hpp"
#include "logsch/potential.hpp"

using namespace logsch;

namespace {
constexpr double kPi = 3.14159265358979323846;

SpectralData harmonic_spectrum_1d(double half_width, int n) {
    Grid g = build_grid({{-half_width, half_width}}, {n});
    auto V = make_potential("harmonic", 1);
    return eigendecompose(assemble(g, V));
}
} // namespace

TEST_CASE("grid bookkeeping: nodes, indexing, quadrature") {
    Grid g = build_grid({{-1.0, 1.0}, {0.0, 2.0}}, {5, 9});
    CHECK(g.dim == 2);
    CHECK(g.size() == 45);
    // endpoints included: h = (hi - lo)/(n - 1)
    CHECK(g.h[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(g.h[1] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(g.cell_volume == doctest::Approx(g.h[0] * g.h[1]).epsilon(1e-15));

    std::array<double, 2> x{};
    g.node(0, x);   // axis 0 slowest, first node sits at the lower corner
    CHECK(x[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(x[1] == doctest::Approx(0.0).epsilon(1e-14));
    std::array<int, 2> idx{2, 3};
    g.node(g.flat_index(idx), x);
    CHECK(x[0] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(x[1] == doctest::Approx(0.75).epsilon(1e-14));

    std::array<double, 2> probe{0.31, 1.02};
    std::size_t flat = g.nearest_node(probe);
    g.node(flat, x);
    CHECK(std::abs(x[0] - probe[0]) <= 0.5 * g.h[0] + 1e-14);
    CHECK(std::abs(x[1] - probe[1]) <= 0.5 * g.h[1] + 1e-14);
    std::array<double, 2> outside{3.0, 1.0};
    CHECK_THROWS_AS((void)g.nearest_node(outside), std::invalid_argument);

    // box rule: integral of 1 equals node count times cell volume
    Field one = make_field(g);
    for (double& v : one.v) v = 1.0;
    CHECK(integrate(one) == doctest::Approx(45 * g.cell_volume).epsilon(1e-14));

    Grid g1 = build_grid({{-6.0, 6.0}}, {1201});
    Field gauss = sample_field(g1, [](std::span<const double> y) {
        return std::exp(-y[0] * y[0]);
    });
    // integral of e^{-u^2} = sqrt(pi); the box rule on a rapidly decaying
    // smooth function converges super-algebraically
    CHECK(integrate(gauss) == doctest::Approx(1.7724538509055160273).epsilon(1e-12));

    CHECK_THROWS_AS(build_grid({{1.0, -1.0}}, {9}), std::invalid_argument);
    CHECK_THROWS_AS(build_grid({{0.0, 1.0}}, {1}), std::invalid_argument);
}

TEST_CASE("assemble applies the five-point stencil with dirichlet boundary") {
    Grid g = build_grid({{0.0, 2.0}}, {3});   // h = 1, nodes at 0,1,2
    auto V = make_potential("const:m2=0.25", 1);
    auto op = assemble(g, V);
    REQUIRE(op.A.rows() == 3);
    // tridiagonal [-1, 2 + 0.25, -1] with h = 1
    CHECK(op.A(0, 0) == doctest::Approx(2.25).epsilon(1e-14));
    CHECK(op.A(0, 1) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(op.A(0, 2) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(op.A(1, 0) == doctest::Approx(-1.0).epsilon(1e-14));

    // node cap guard
    Grid big = build_grid({{-1.0, 1.0}}, {257});
    CHECK_THROWS_AS(assemble(big, V, 100), std::invalid_argument);
}

TEST_CASE("eigenvectors are orthonormal in the grid inner product") {
    SpectralData sd = harmonic_spectrum_1d(10.0, 201);
    double worst = 0.0;
    for (int i = 0; i < 12; ++i) {
        for (int j = 0; j <= i; ++j) {
            double ip = sd.grid.cell_volume * sd.phi.col(i).dot(sd.phi.col(j));
            worst = std::max(worst, std::abs(ip - (i == j ? 1.0 : 0.0)));
        }
    }
    CHECK(worst < 1e-10);

    // deterministic sign fix: first nonzero component positive
    CHECK(sd.phi(0, 3) >= 0.0);

    // eigen-residual ||A phi - lambda phi|| small relative to lambda
    auto V = make_potential("harmonic", 1);
    auto op = assemble(sd.grid, V);
    for (int i : {0, 5, 40}) {
        Eigen::VectorXd r = op.A * sd.phi.col(i) - sd.lambda[i] * sd.phi.col(i);
        CHECK(r.norm() / std::max(1.0, sd.lambda[i]) < 1e-9);
    }
}

TEST_CASE("analyze/synthesize round trip and parseval identity") {
    SpectralData sd = harmonic_spectrum_1d(8.0, 161);
    Field f = sample_field(sd.grid, [](std::span<const double> x) {
        return std::exp(-x[0] * x[0]) * (1.0 + 0.3 * x[0]);
    });
    Eigen::VectorXd c = analyze(sd, f);
    Field back = synthesize(sd, c);
    double err = 0.0;
    for (std::size_t i = 0; i < f.v.size(); ++i) err = std::max(err, std::abs(f.v[i] - back.v[i]));
    CHECK(err < 1e-10);
    CHECK(c.squaredNorm() == doctest::Approx(norm_l2(f) * norm_l2(f)).epsilon(1e-12));
}

TEST_CASE("harmonic-oscillator eigenvalues: values, defect law, and order") {
    // continuum eigenvalues are 1, 3, 5, ...; the second-order stencil has
    // defect approximately -h^2 (lambda^2 + 1)/32
    SpectralData coarse = harmonic_spectrum_1d(12.0, 513);
    SpectralData fine = harmonic_spectrum_1d(12.0, 1025);
    double hc = coarse.grid.h[0], hf = fine.grid.h[0];
    for (int k : {0, 1, 4, 9}) {
        double exact = 2.0 * k + 1.0;
        double ec = coarse.lambda[k] - exact;
        double ef = fine.lambda[k] - exact;
        double pred_c = -hc * hc * (exact * exact + 1.0) / 32.0;
        double pred_f = -hf * hf * (exact * exact + 1.0) / 32.0;
        CHECK(ec == doctest::Approx(pred_c).epsilon(0.02));
        CHECK(ef == doctest::Approx(pred_f).epsilon(0.02));
        // second order: error ratio approximately 4
        CHECK(ec / ef == doctest::Approx(4.0).epsilon(0.03));
    }
}

TEST_CASE("2d separable operator has kronecker-sum spectrum") {
    // the discrete identity A2 = A1 (x) I + I (x) A1 is exact at any
    // resolution, so a coarse grid suffices and only roundoff enters
    Grid g2 = build_grid({{-7.0, 7.0}, {-7.0, 7.0}}, {41, 41});
    auto V2 = make_potential("harmonic", 2);
    SpectralData sd2 = eigendecompose(assemble(g2, V2));

    Grid g1 = build_grid({{-7.0, 7.0}}, {41});
    auto V1 = make_potential("harmonic", 1);
    SpectralData sd1 = eigendecompose(assemble(g1, V1));

    // lowest 2D eigenvalues must be sums lambda_i + lambda_j of 1D ones
    std::vector<double> sums;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) sums.push_back(sd1.lambda[i] + sd1.lambda[j]);
    std::sort(sums.begin(), sums.end());
    for (int k = 0; k < 10; ++k)
        CHECK(sd2.lambda[k] == doctest::Approx(sums[k]).epsilon(1e-9));
}

TEST_CASE("hermite functions: values, orthonormality, eigen-relation") {
    CHECK(hermite_function(0, 0.0) == doctest::Approx(std::pow(kPi, -0.25)).epsilon(1e-14));
    // h_1(u) = sqrt(2) u h_0(u)
    CHECK(hermite_function(1, 0.7) ==
          doctest::Approx(std::sqrt(2.0) * 0.7 * hermite_function(0, 0.7)).epsilon(1e-13));
    std::vector<double> col(6);
    hermite_column(5, 1.3, col);
    for (int l = 0; l <= 5; ++l)
        CHECK(col[l] == doctest::Approx(hermite_function(l, 1.3)).epsilon(1e-13));

    HermiteBasis b = make_hermite_basis(2, 3);
    // multi-indices with |alpha| <= 3 in d=2: C(3+2,2) = 10
    CHECK(b.size() == 10);
    for (std::size_t i = 0; i < b.size(); ++i) {
        int total = b.indices[i][0] + b.indices[i][1];
        CHECK(b.eigenvalue(i) == doctest::Approx(2.0 * total + 2.0).epsilon(1e-14));
    }
}

TEST_CASE("hermite expansion of a gaussian and exact log-apply") {
    Grid g = build_grid({{-9.0, 9.0}}, {257});
    // f = e^{-u^2/2} = pi^{1/4} h_0, so c_0 = pi^{1/4} and all others vanish
    Field f = sample_field(g, [](std::span<const double> x) { return std::exp(-0.5 * x[0] * x[0]); });
    auto exp0 = hermite_coefficients(f, make_hermite_basis(1, 8));
    CHECK(exp0.c[0] == doctest::Approx(std::pow(kPi, 0.25)).epsilon(1e-10));
    for (std::size_t i = 1; i < exp0.c.size(); ++i) CHECK(std::abs(exp0.c[i]) < 1e-9);
    CHECK(exp0.truncation_fraction < 1e-8);
    CHECK_FALSE(exp0.truncation_warning);

    // log of the oscillator on the d=3 ground state is exactly log(3) f
    Grid g3 = build_grid({{-5.0, 5.0}, {-5.0, 5.0}, {-5.0, 5.0}}, {33, 33, 33});
    Field f3 = sample_field(g3, [](std::span<const double> x) {
        return std::exp(-0.5 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]));
    });
    auto e3 = hermite_coefficients(f3, make_hermite_basis(3, 4));
    Field lg = harmonic_log_apply(e3, g3);
    double worst = 0.0;
    for (std::size_t i = 0; i < lg.v.size(); ++i)
        worst = std::max(worst, std::abs(lg.v[i] - std::log(3.0) * f3.v[i]));
    CHECK(worst < 1e-8);
}

TEST_CASE("hermite eval reproduces sampled values") {
    Grid g = build_grid({{-9.0, 9.0}}, {257});
    Field f = sample_field(g, [](std::span<const double> x) {
        return (1.0 + x[0] + 0.5 * x[0] * x[0]) * std::exp(-0.5 * x[0] * x[0]);
    });
    auto e = hermite_coefficients(f, make_hermite_basis(1, 12));
    std::array<double, 1> x{0.85};
    double direct = (1.0 + 0.85 + 0.5 * 0.85 * 0.85) * std::exp(-0.5 * 0.85 * 0.85);
    CHECK(hermite_eval(e, x) == doctest::Approx(direct).epsilon(1e-9));
}
