#ifndef LOGSCH_QUADRATURE_HPP
#define LOGSCH_QUADRATURE_HPP

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace logsch {

// Gauss-Legendre nodes/weights on [-1,1], computed by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

struct QuadratureSpec {
    double rel_tol = 1e-12;
    double abs_tol = 1e-300;
    int max_panels = 4000;
    // initial core window for (0,inf) integrals, in t
    std::optional<double> t_min_hint, t_max_hint;
    // hard truncation bounds in u = log t (overrides adaptive extension)
    std::optional<double> u_lo_bound, u_hi_bound;
    double panel_width = 2.0;   // width in u
    int nodes_per_panel = 16;
};

struct QuadratureResult {
    double value = 0.0;
    int panels = 0;
    double last_panel = 0.0;
    bool converged = true;
};

class QuadratureError : public std::runtime_error {
  public:
    QuadratureError(const std::string& msg, double partial, double last_panel)
        : std::runtime_error(msg), partial_value(partial), last_panel(last_panel) {}
    double partial_value;
    double last_panel;
};

using TimeIntegrand = std::function<double(double)>;   // g(t), integrated dt

// ∫_0^∞ g(t) dt via t = e^u substitution, composite Gauss-Legendre panels in u,
// panels appended on both sides until the last panel contributes below
// max(abs_tol, rel_tol*|accumulated|) twice in a row. Throws QuadratureError
// (carrying the partial value and last-panel estimate) if max_panels is hit.
QuadratureResult improper_time_quadrature_ex(const TimeIntegrand& g, const QuadratureSpec& spec);
double improper_time_quadrature(const TimeIntegrand& g, const QuadratureSpec& spec = {});

// ∫_0^T g(t) dt (left end adaptive, right end fixed)
double time_quadrature_0_to(const TimeIntegrand& g, double T, const QuadratureSpec& spec = {});
// ∫_T^∞ g(t) dt (right end adaptive, left end fixed)
double time_quadrature_from(const TimeIntegrand& g, double T, const QuadratureSpec& spec = {});
// ∫_a^b g(t) dt on fixed log-spaced panels, 0 < a < b
double time_quadrature_window(const TimeIntegrand& g, double a, double b,
                              const QuadratureSpec& spec = {});

// plain composite Gauss-Legendre on a linear interval
double integrate_gl(const std::function<double(double)>& f, double a, double b, int panels = 8,
                    int nodes_per_panel = 16);

} // namespace logsch

#endif
