#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "logsch/grid.hpp"
#include "logsch/operators.hpp"
#include "logsch/potential.hpp"
#include "logsch/spectral_calculus.hpp"

using namespace logsch;

namespace {
SpectralData harmonic_sd(double w, int n) {
    Grid g = build_grid({{-w, w}}, {n});
    auto V = make_potential("harmonic", 1);
    return eigendecompose(assemble(g, V));
}

Field gauss_bump(const Grid& g, double center, double width) {
    return sample_field(g, [=](std::span<const double> x) {
        double u = (x[0] - center) / width;
        return std::exp(-u * u);
    });
}
} // namespace

TEST_CASE("spectral function factories evaluate their symbols") {
    CHECK(SpectralFunction::log().eval_real(3.0) == doctest::Approx(std::log(3.0)).epsilon(1e-15));
    CHECK(SpectralFunction::power(0.5).eval_real(9.0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(SpectralFunction::neg_power(2.0).eval_real(4.0) ==
          doctest::Approx(0.0625).epsilon(1e-15));
    CHECK(SpectralFunction::heat(0.5).eval_real(2.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    auto ip = SpectralFunction::imag_power(2.0);
    CHECK(ip.is_complex());
    std::complex<double> z = ip.eval(5.0);
    // lambda^{i b} = cos(b log lambda) + i sin(b log lambda), modulus one
    CHECK(std::abs(z) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(z.real() == doctest::Approx(std::cos(2.0 * std::log(5.0))).epsilon(1e-14));
    auto cu = SpectralFunction::custom([](double l) { return l * l; });
    CHECK(cu.eval_real(3.0) == doctest::Approx(9.0).epsilon(1e-15));

    CHECK_THROWS_AS(SpectralFunction::power(0.0), std::invalid_argument);
    CHECK_THROWS_AS(SpectralFunction::power(1.0), std::invalid_argument);
    CHECK_THROWS_AS(SpectralFunction::neg_power(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(SpectralFunction::heat(0.0), std::invalid_argument);
}

TEST_CASE("apply_spectral matches a hand-built mode sum") {
    SpectralData sd = harmonic_sd(10.0, 257);
    Field f = gauss_bump(sd.grid, 0.3, 1.0);
    Eigen::VectorXd c = analyze(sd, f);

    Field lf = apply_spectral(sd, SpectralFunction::log(), f);
    Eigen::VectorXd cl = c;
    for (int i = 0; i < cl.size(); ++i) cl[i] *= std::log(sd.lambda[i]);
    Field expect = synthesize(sd, cl);
    double worst = 0.0;
    for (std::size_t i = 0; i < lf.v.size(); ++i)
        worst = std::max(worst, std::abs(lf.v[i] - expect.v[i]));
    CHECK(worst < 1e-12);

    // power/neg-power compose to the identity on the grid
    Field p = apply_spectral(sd, SpectralFunction::power(0.5), f);
    Field q = apply_spectral(sd, SpectralFunction::custom([](double l) { return std::pow(l, -0.5); }), p);
    double round_trip = 0.0;
    for (std::size_t i = 0; i < q.v.size(); ++i)
        round_trip = std::max(round_trip, std::abs(q.v[i] - f.v[i]));
    CHECK(round_trip < 1e-10);
}

TEST_CASE("strictly positive spectrum is required for log-type symbols") {
    // free operator on a wide box has smallest eigenvalue ~ (pi/L)^2 > 0, so
    // shift it negative with a custom assembled operator: build V = 0 and a
    // tiny box so lambda_1 > 0, then check the guard via a doctored copy
    Grid g = build_grid({{-3.0, 3.0}}, {65});
    Potential V0;
    V0.dim = 1;
    V0.name = "zero";
    V0.eval = [](std::span<const double>) { return 0.0; };
    SpectralData sd = eigendecompose(assemble(g, V0));
    CHECK(sd.lambda[0] > 0.0);   // Dirichlet box: positive ground eigenvalue

    SpectralData bad = sd;
    bad.lambda[0] = -0.5;
    Field f = gauss_bump(g, 0.0, 0.8);
    CHECK_THROWS_AS(apply_spectral(bad, SpectralFunction::log(), f), std::domain_error);
    CHECK_THROWS_AS(apply_spectral(bad, SpectralFunction::power(0.5), f), std::domain_error);
    CHECK_THROWS_AS(apply_spectral_complex(bad, SpectralFunction::imag_power(1.0), f),
                    std::domain_error);
    // heat symbol tolerates any real spectrum
    CHECK_NOTHROW(apply_spectral(bad, SpectralFunction::heat(0.5), f));
}

TEST_CASE("difference quotient of fractional powers converges to the log at rate s") {
    SpectralData sd = harmonic_sd(10.0, 257);
    Field f = gauss_bump(sd.grid, 0.0, 1.0);
    std::vector<double> ss{0.02, 0.01, 0.005, 0.0025};
    auto errs = derivative_at_zero_probe(sd, f, ss);
    REQUIRE(errs.size() == 4);
    for (std::size_t i = 0; i + 1 < errs.size(); ++i) {
        CHECK(errs[i] > errs[i + 1]);
        CHECK(errs[i] / errs[i + 1] == doctest::Approx(2.0).epsilon(0.1));
    }
}

TEST_CASE("imaginary powers form a unitary group with generator i log") {
    SpectralData sd = harmonic_sd(10.0, 257);
    Field f = gauss_bump(sd.grid, 0.2, 0.9);

    CHECK(imag_power_group_residual(sd, f, 0.7, -0.3) < 1e-10);
    CHECK(imag_power_group_residual(sd, f, 1.3, 2.2) < 1e-10);

    // unitarity: ||H^{i b} f|| = ||f||
    ComplexField uf = apply_spectral_complex(sd, SpectralFunction::imag_power(1.7), f);
    CHECK(norm_l2(uf) == doctest::Approx(norm_l2(f)).epsilon(1e-12));

    // generator error is O(h): halving h halves the error
    double e1 = imag_power_generator_error(sd, f, 0.02);
    double e2 = imag_power_generator_error(sd, f, 0.01);
    CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("negative powers form a semigroup with generator -log") {
    SpectralData sd = harmonic_sd(10.0, 257);
    Field f = gauss_bump(sd.grid, -0.4, 1.1);

    CHECK(neg_power_composition_residual(sd, f, 0.3, 0.45) < 1e-10);

    double e1 = neg_power_generator_error(sd, f, 0.02);
    double e2 = neg_power_generator_error(sd, f, 0.01);
    CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("domain diagnostic flags tail-dominated data") {
    SpectralData sd = harmonic_sd(10.0, 257);
    Field f = gauss_bump(sd.grid, 0.0, 1.0);
    auto good = domain_diagnostic(sd, SpectralFunction::log(), f);
    CHECK(good.in_domain_proxy);
    CHECK(good.weighted_sum > 0.0);
    CHECK(good.tail_fraction < 0.5);

    // data concentrated on the top modes: synthesize from tail coefficients
    Eigen::VectorXd c = Eigen::VectorXd::Zero(static_cast<long>(sd.size()));
    for (long i = c.size() - 10; i < c.size(); ++i) c[i] = 1.0;
    Field tail = synthesize(sd, c);
    auto badd = domain_diagnostic(sd, SpectralFunction::custom([](double l) { return l; }), tail);
    CHECK(badd.tail_fraction > 0.5);
    CHECK_FALSE(badd.in_domain_proxy);
}

TEST_CASE("log-squared symbol is dominated by a power pair") {
    SpectralData sd = harmonic_sd(10.0, 257);
    double C = log_square_bound_constant(sd, 0.5, 0.5);
    CHECK(std::isfinite(C));
    CHECK(C > 0.0);
    // verify the reported sup really dominates at every eigenvalue
    double worst = 0.0;
    for (std::size_t i = 0; i < sd.size(); ++i) {
        double l = sd.lambda[static_cast<long>(i)];
        double lhs = std::log(l) * std::log(l);
        double rhs = C * (std::pow(l, -1.0) + std::pow(l, 1.0));
        worst = std::max(worst, lhs - rhs);
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("tensor mode sum equals the direct 2d computation for separable data") {
    // direct 2D spectral value
    Grid g2 = build_grid({{-8.0, 8.0}, {-8.0, 8.0}}, {41, 41});
    auto V2 = make_potential("harmonic", 2);
    SpectralData sd2 = eigendecompose(assemble(g2, V2));
    Field f2 = sample_field(g2, [](std::span<const double> x) {
        double u = x[0] / 1.1, v = (x[1] - 0.3) / 0.9;
        return std::exp(-u * u) * std::exp(-v * v);
    });
    Field lf2 = apply_spectral(sd2, SpectralFunction::log(), f2);

    // tensor route: 1D axes plus separable factor values on the axis nodes
    Grid g1 = build_grid({{-8.0, 8.0}}, {41});
    auto V1 = make_potential("harmonic", 1);
    SpectralData sd1 = eigendecompose(assemble(g1, V1));
    std::vector<double> fx, fy;
    for (double u : g1.axis_nodes[0]) {
        fx.push_back(std::exp(-(u / 1.1) * (u / 1.1)));
        fy.push_back(std::exp(-((u - 0.3) / 0.9) * ((u - 0.3) / 0.9)));
    }

    std::array<double, 2> p{0.4, -0.4};
    std::size_t node = g2.nearest_node(p);
    std::array<double, 2> snapped{};
    g2.node(node, snapped);
    double tens = tensor_spectral_value({&sd1, &sd1}, {fx, fy}, SpectralFunction::log(), snapped);
    CHECK(tens == doctest::Approx(lf2.v[node]).epsilon(1e-9));
}
