#pragma once

#include <functional>
#include <stdexcept>

// Adaptive numerical integration for the semi-infinite integrals behind the
// coverage expressions, plus the interference tail integrals
//
//   tail_integral(L, alpha) = integral_L^inf dv / (1 + v^(alpha/2))
//   q_func(T, alpha)        = T^(2/alpha) * tail_integral(T^(-2/alpha), alpha)
//
// that appear as precomputed constants in every SINR-coverage exponent.

namespace hetnet {

struct IntegrationSettings {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    int max_subdivisions = 200;

    void validate() const;
};

// Raised when the panel budget is exhausted before the tolerance is met.
// Carries the best estimate and its error bound.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(double best, double bound);
    double best_estimate() const { return best_; }
    double error_bound() const { return bound_; }

private:
    double best_;
    double bound_;
};

using Integrand = std::function<double(double)>;

// integral_a^b f(x) dx, globally adaptive 7/15 Gauss-Kronrod.
double integrate_finite(const Integrand& f, double a, double b,
                        const IntegrationSettings& settings = {});

// integral_0^inf f(x) dx via the change of variables x = t/(1-t), which maps
// [0,inf) onto [0,1). f must be absolutely integrable with decay strong
// enough that f(x)*x^2 -> 0.
double integrate_semi_infinite(const Integrand& f,
                               const IntegrationSettings& settings = {});

// integral_lower^inf dv / (1 + v^(alpha/2)), lower >= 0, alpha > 2.
// Evaluated as an adaptive finite part up to a split point plus the analytic
// alternating series of the remaining tail; alpha = 4 short-circuits to
// pi/2 - atan(lower).
double tail_integral(double lower, double alpha,
                     const IntegrationSettings& settings = {});

// Q(T, alpha) = T^(2/alpha) * tail_integral(T^(-2/alpha), alpha), T > 0,
// alpha > 2. alpha = 4 short-circuits to sqrt(T)*(pi/2 - atan(1/sqrt(T))).
double q_func(double T, double alpha, const IntegrationSettings& settings = {});

// Same as q_func but always takes the quadrature path, including at
// alpha = 4. Exists so the closed form can be checked against it.
double q_func_generic(double T, double alpha,
                      const IntegrationSettings& settings = {});

}  // namespace hetnet
