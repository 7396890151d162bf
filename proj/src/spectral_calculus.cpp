#include "logsch/spectral_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace logsch {

SpectralFunction SpectralFunction::log() { return SpectralFunction(Role::Log, 0.0); }

SpectralFunction SpectralFunction::power(double s) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("power exponent must lie in (0,1)");
    return SpectralFunction(Role::Power, s);
}

SpectralFunction SpectralFunction::neg_power(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("neg_power order must be positive");
    return SpectralFunction(Role::NegPower, alpha);
}

SpectralFunction SpectralFunction::heat(double t) {
    if (!(t > 0.0)) throw std::invalid_argument("heat time must be positive");
    return SpectralFunction(Role::Heat, t);
}

SpectralFunction SpectralFunction::imag_power(double beta) {
    return SpectralFunction(Role::ImagPower, beta);
}

SpectralFunction SpectralFunction::custom(std::function<double(double)> fn) {
    if (!fn) throw std::invalid_argument("custom spectral function is empty");
    SpectralFunction out(Role::Custom, 0.0);
    out.fn_ = std::move(fn);
    return out;
}

double SpectralFunction::eval_real(double lambda) const {
    switch (role_) {
        case Role::Log: return std::log(lambda);
        case Role::Power: return std::pow(lambda, param_);
        case Role::NegPower: return std::pow(lambda, -param_);
        case Role::Heat: return std::exp(-param_ * lambda);
        case Role::Custom: return fn_(lambda);
        case Role::ImagPower:
            throw std::logic_error("imaginary power is complex-valued; use eval()");
    }
    throw std::logic_error("unreachable spectral role");
}

std::complex<double> SpectralFunction::eval(double lambda) const {
    if (role_ == Role::ImagPower) {
        // lambda^{i beta} = exp(i beta log lambda)
        const double a = param_ * std::log(lambda);
        return {std::cos(a), std::sin(a)};
    }
    return {eval_real(lambda), 0.0};
}

namespace {

bool needs_positive_spectrum(SpectralFunction::Role r) {
    using Role = SpectralFunction::Role;
    return r == Role::Log || r == Role::Power || r == Role::NegPower || r == Role::ImagPower;
}

void check_spectrum(const SpectralData& sd, const SpectralFunction& phi) {
    if (needs_positive_spectrum(phi.role()) && sd.lambda(0) <= 0.0)
        throw std::domain_error("spectral function needs a strictly positive spectrum");
}

} // namespace

Field apply_spectral(const SpectralData& sd, const SpectralFunction& phi, const Field& f) {
    if (phi.is_complex())
        throw std::invalid_argument("complex-valued spectral function; use apply_spectral_complex");
    check_spectrum(sd, phi);
    Eigen::VectorXd c = analyze(sd, f);
    for (std::size_t i = 0; i < sd.size(); ++i) c[static_cast<Eigen::Index>(i)] *= phi.eval_real(sd.lambda(i));
    return synthesize(sd, c);
}

ComplexField apply_spectral_complex(const SpectralData& sd, const SpectralFunction& phi,
                                    const Field& f) {
    check_spectrum(sd, phi);
    Eigen::VectorXd c = analyze(sd, f);
    const std::size_t n = sd.size();
    Eigen::VectorXd cr(static_cast<Eigen::Index>(n)), ci(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const std::complex<double> w = phi.eval(sd.lambda(i)) * c[static_cast<Eigen::Index>(i)];
        cr[static_cast<Eigen::Index>(i)] = w.real();
        ci[static_cast<Eigen::Index>(i)] = w.imag();
    }
    Field re = synthesize(sd, cr);
    Field im = synthesize(sd, ci);
    ComplexField out;
    out.grid = sd.grid;
    out.v.resize(re.v.size());
    for (std::size_t j = 0; j < out.v.size(); ++j) out.v[j] = {re.v[j], im.v[j]};
    return out;
}

double norm_l2(const ComplexField& f) {
    double acc = 0.0;
    for (const auto& z : f.v) acc += std::norm(z);
    return std::sqrt(acc * f.grid.cell_volume);
}

std::vector<double> derivative_at_zero_probe(const SpectralData& sd, const Field& f,
                                             const std::vector<double>& ss) {
    check_spectrum(sd, SpectralFunction::log());
    const Eigen::VectorXd c = analyze(sd, f);
    std::vector<double> out;
    out.reserve(ss.size());
    for (double s : ss) {
        if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("probe exponents must lie in (0,1)");
        Eigen::VectorXd r = c;
        for (std::size_t i = 0; i < sd.size(); ++i) {
            const double lam = sd.lambda(i);
            // (lambda^s - 1)/s - log lambda, evaluated stably through expm1
            const double w = std::expm1(s * std::log(lam)) / s - std::log(lam);
            r[static_cast<Eigen::Index>(i)] *= w;
        }
        out.push_back(norm_l2(synthesize(sd, r)));
    }
    return out;
}

double imag_power_group_residual(const SpectralData& sd, const Field& f, double a, double b) {
    check_spectrum(sd, SpectralFunction::log());
    const Eigen::VectorXd c = analyze(sd, f);
    double acc = 0.0;
    for (std::size_t i = 0; i < sd.size(); ++i) {
        const double lg = std::log(sd.lambda(i));
        const std::complex<double> ja = std::polar(1.0, a * lg);
        const std::complex<double> jb = std::polar(1.0, b * lg);
        const std::complex<double> jab = std::polar(1.0, (a + b) * lg);
        acc += std::norm((ja * jb - jab) * c[static_cast<Eigen::Index>(i)]);
    }
    return std::sqrt(acc * sd.grid.cell_volume);
}

double imag_power_generator_error(const SpectralData& sd, const Field& f, double h) {
    if (h == 0.0) throw std::invalid_argument("generator step must be nonzero");
    check_spectrum(sd, SpectralFunction::log());
    const Eigen::VectorXd c = analyze(sd, f);
    double acc = 0.0;
    for (std::size_t i = 0; i < sd.size(); ++i) {
        const double lg = std::log(sd.lambda(i));
        const std::complex<double> jh = std::polar(1.0, h * lg);
        const std::complex<double> d = (jh - 1.0) / h - std::complex<double>(0.0, lg);
        acc += std::norm(d * c[static_cast<Eigen::Index>(i)]);
    }
    return std::sqrt(acc * sd.grid.cell_volume);
}

double neg_power_composition_residual(const SpectralData& sd, const Field& f, double a, double b) {
    if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("orders must be positive");
    check_spectrum(sd, SpectralFunction::log());
    const Eigen::VectorXd c = analyze(sd, f);
    double acc = 0.0;
    for (std::size_t i = 0; i < sd.size(); ++i) {
        const double lam = sd.lambda(i);
        const double d = std::pow(lam, -a) * std::pow(lam, -b) - std::pow(lam, -(a + b));
        acc += d * d * c[static_cast<Eigen::Index>(i)] * c[static_cast<Eigen::Index>(i)];
    }
    return std::sqrt(acc * sd.grid.cell_volume);
}

double neg_power_generator_error(const SpectralData& sd, const Field& f, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("generator step must be positive");
    check_spectrum(sd, SpectralFunction::log());
    const Eigen::VectorXd c = analyze(sd, f);
    double acc = 0.0;
    for (std::size_t i = 0; i < sd.size(); ++i) {
        const double lg = std::log(sd.lambda(i));
        // (lambda^{-h} - 1)/h + log lambda
        const double d = std::expm1(-h * lg) / h + lg;
        acc += d * d * c[static_cast<Eigen::Index>(i)] * c[static_cast<Eigen::Index>(i)];
    }
    return std::sqrt(acc * sd.grid.cell_volume);
}

DomainDiagnostic domain_diagnostic(const SpectralData& sd, const SpectralFunction& phi,
                                   const Field& f) {
    check_spectrum(sd, phi);
    const Eigen::VectorXd c = analyze(sd, f);
    const std::size_t n = sd.size();
    DomainDiagnostic out;
    double tail = 0.0;
    const std::size_t tail_start = n - n / 10;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = std::norm(phi.eval(sd.lambda(i))) * c[static_cast<Eigen::Index>(i)] *
                         c[static_cast<Eigen::Index>(i)];
        out.weighted_sum += w;
        if (i >= tail_start) tail += w;
    }
    out.tail_fraction = out.weighted_sum > 0.0 ? tail / out.weighted_sum : 0.0;
    out.in_domain_proxy = std::isfinite(out.weighted_sum) && out.tail_fraction < 0.5;
    return out;
}

double log_square_bound_constant(const SpectralData& sd, double alpha, double beta) {
    if (!(alpha > 0.0 && beta > 0.0)) throw std::invalid_argument("exponents must be positive");
    check_spectrum(sd, SpectralFunction::log());
    double best = 0.0;
    for (std::size_t i = 0; i < sd.size(); ++i) {
        const double lam = sd.lambda(i);
        const double lg = std::log(lam);
        const double denom = std::pow(lam, -2.0 * beta) + std::pow(lam, 2.0 * alpha);
        best = std::max(best, lg * lg / denom);
    }
    return best;
}

double tensor_spectral_value(const std::vector<const SpectralData*>& axes,
                             const std::vector<std::vector<double>>& factor_values,
                             const SpectralFunction& phi, std::span<const double> x,
                             double cutoff) {
    const std::size_t d = axes.size();
    if (d == 0 || d > 3) throw std::invalid_argument("tensor oracle supports 1..3 axes");
    if (factor_values.size() != d || x.size() != d)
        throw std::invalid_argument("axis count mismatch");
    if (phi.is_complex()) throw std::invalid_argument("tensor oracle is real-valued");

    struct Axis {
        Eigen::VectorXd c;        // factor coefficients
        std::vector<double> bas;  // phi_i(x_j)
        const SpectralData* sd;
        double cmax;
    };
    std::vector<Axis> ax(d);
    for (std::size_t j = 0; j < d; ++j) {
        const SpectralData& sd = *axes[j];
        if (sd.grid.dim != 1) throw std::invalid_argument("tensor axes must be one-dimensional");
        if (factor_values[j].size() != sd.size())
            throw std::invalid_argument("factor sample count mismatch");
        Field fj;
        fj.grid = sd.grid;
        fj.v = factor_values[j];
        ax[j].c = analyze(sd, fj);
        ax[j].sd = &sd;
        const std::size_t row = sd.grid.nearest_node(x.subspan(j, 1));
        ax[j].bas.resize(sd.size());
        for (std::size_t i = 0; i < sd.size(); ++i)
            ax[j].bas[i] = sd.phi(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(i));
        ax[j].cmax = ax[j].c.cwiseAbs().maxCoeff();
        if (ax[j].sd->lambda(0) <= 0.0)
            throw std::domain_error("tensor oracle needs positive axis spectra");
    }

    double scale = 1.0;
    for (const auto& a : ax) scale *= a.cmax;
    const double floor = cutoff * scale;

    const std::size_t n0 = ax[0].sd->size();
    const std::size_t n1 = d > 1 ? ax[1].sd->size() : 1;
    const std::size_t n2 = d > 2 ? ax[2].sd->size() : 1;
    double acc = 0.0;
    for (std::size_t i0 = 0; i0 < n0; ++i0) {
        const double c0 = ax[0].c[static_cast<Eigen::Index>(i0)];
        if (d > 1 && std::abs(c0) * ax[1].cmax * (d > 2 ? ax[2].cmax : 1.0) < floor) continue;
        const double l0 = ax[0].sd->lambda(i0);
        for (std::size_t i1 = 0; i1 < n1; ++i1) {
            const double c01 = d > 1 ? c0 * ax[1].c[static_cast<Eigen::Index>(i1)] : c0;
            if (d > 2 && std::abs(c01) * ax[2].cmax < floor) continue;
            const double l01 = d > 1 ? l0 + ax[1].sd->lambda(i1) : l0;
            for (std::size_t i2 = 0; i2 < n2; ++i2) {
                const double c = d > 2 ? c01 * ax[2].c[static_cast<Eigen::Index>(i2)] : c01;
                if (std::abs(c) < floor) continue;
                const double lam = d > 2 ? l01 + ax[2].sd->lambda(i2) : l01;
                double basis = ax[0].bas[i0];
                if (d > 1) basis *= ax[1].bas[i1];
                if (d > 2) basis *= ax[2].bas[i2];
                acc += phi.eval_real(lam) * c * basis;
            }
        }
    }
    return acc;
}

} // namespace logsch
