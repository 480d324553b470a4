#include "hetnet/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

namespace hetnet {

void IntegrationSettings::validate() const {
    if (!(rel_tol > 0.0)) {
        throw std::invalid_argument("IntegrationSettings.rel_tol must be > 0");
    }
    if (!(abs_tol >= 0.0)) {
        throw std::invalid_argument("IntegrationSettings.abs_tol must be >= 0");
    }
    if (max_subdivisions < 10) {
        throw std::invalid_argument("IntegrationSettings.max_subdivisions must be >= 10");
    }
}

QuadratureError::QuadratureError(double best, double bound)
    : std::runtime_error("quadrature did not converge within the subdivision "
                         "budget (best estimate " + std::to_string(best) +
                         ", error bound " + std::to_string(bound) + ")"),
      best_(best), bound_(bound) {}

namespace {

// 7-point Gauss / 15-point Kronrod pair (QUADPACK dqk15 abscissae/weights).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double integral;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel evaluate_panel(const Integrand& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);

    double fv1[7], fv2[7];
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(resk);
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        fv1[j] = f(center - dx);
        fv2[j] = f(center + dx);
        const double fsum = fv1[j] + fv2[j];
        if (j % 2 == 1) {
            resg += kWg[j / 2] * fsum;
        }
        resk += kWgk[j] * fsum;
        resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    }
    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j) {
        resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
    }

    const double integral = resk * half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    const double eps = std::numeric_limits<double>::epsilon();
    const double uflow = std::numeric_limits<double>::min();
    if (resabs > uflow / (50.0 * eps)) {
        err = std::max(eps * 50.0 * resabs, err);
    }
    return Panel{a, b, integral, err};
}

}  // namespace

double integrate_finite(const Integrand& f, double a, double b,
                        const IntegrationSettings& settings) {
    settings.validate();
    if (!(a <= b)) {
        throw std::invalid_argument("integrate_finite: requires a <= b");
    }
    if (a == b) {
        return 0.0;
    }

    std::priority_queue<Panel> panels;
    Panel first = evaluate_panel(f, a, b);
    double total = first.integral;
    double total_err = first.error;
    panels.push(first);

    int used = 1;
    while (total_err > std::max(settings.abs_tol, settings.rel_tol * std::abs(total))) {
        if (used >= settings.max_subdivisions) {
            throw QuadratureError(total, total_err);
        }
        Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval at machine resolution; keep its estimate as-is
            total_err = std::max(0.0, total_err - worst.error);
            if (panels.empty()) break;
            continue;
        }
        Panel left = evaluate_panel(f, worst.a, mid);
        Panel right = evaluate_panel(f, mid, worst.b);
        total += left.integral + right.integral - worst.integral;
        total_err += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        ++used;
    }
    return total;
}

double integrate_semi_infinite(const Integrand& f,
                               const IntegrationSettings& settings) {
    auto transformed = [&f](double t) {
        const double om = 1.0 - t;
        if (om <= 0.0) return 0.0;
        const double x = t / om;
        const double fx = f(x);
        if (fx == 0.0) return 0.0;
        return fx / (om * om);
    };
    return integrate_finite(transformed, 0.0, 1.0, settings);
}

namespace {

// Tail of integral dv/(1+v^p) from V (> 1), via the alternating series
// sum_j (-1)^(j-1) V^(1-jp) / (jp-1).
double tail_series(double V, double p) {
    double sum = 0.0;
    const double r = std::pow(V, -p);
    double v_pow = std::pow(V, 1.0 - p);
    for (int j = 1; j <= 400; ++j) {
        const double term = v_pow / (j * p - 1.0);
        sum += (j % 2 == 1) ? term : -term;
        v_pow *= r;
        if (term < 1e-18 * std::max(1.0, std::abs(sum))) {
            return sum;
        }
    }
    return sum;
}

}  // namespace

double tail_integral(double lower, double alpha,
                     const IntegrationSettings& settings) {
    if (!(alpha > 2.0)) {
        throw std::domain_error("tail_integral: alpha must exceed 2");
    }
    if (!(lower >= 0.0) || !std::isfinite(lower)) {
        if (std::isinf(lower) && lower > 0.0) return 0.0;
        throw std::invalid_argument("tail_integral: lower must be finite and >= 0");
    }
    if (alpha == 4.0) {
        return std::numbers::pi / 2.0 - std::atan(lower);
    }
    const double p = alpha / 2.0;
    const double split = 6.0;
    if (lower >= split) {
        return tail_series(lower, p);
    }
    auto f = [p](double v) { return 1.0 / (1.0 + std::pow(v, p)); };
    return integrate_finite(f, lower, split, settings) + tail_series(split, p);
}

double q_func_generic(double T, double alpha,
                      const IntegrationSettings& settings) {
    if (!(alpha > 2.0)) {
        throw std::domain_error("q_func: alpha must exceed 2 (integral diverges)");
    }
    if (!(T > 0.0)) {
        throw std::domain_error("q_func: T must be > 0");
    }
    const double prefactor = std::pow(T, 2.0 / alpha);
    const double lower = 1.0 / prefactor;
    const double p = alpha / 2.0;
    const double split = 6.0;
    double tail;
    if (lower >= split) {
        tail = tail_series(lower, p);
    } else {
        auto f = [p](double v) { return 1.0 / (1.0 + std::pow(v, p)); };
        tail = integrate_finite(f, lower, split, settings) + tail_series(split, p);
    }
    return prefactor * tail;
}

double q_func(double T, double alpha, const IntegrationSettings& settings) {
    if (!(alpha > 2.0)) {
        throw std::domain_error("q_func: alpha must exceed 2 (integral diverges)");
    }
    if (!(T > 0.0)) {
        throw std::domain_error("q_func: T must be > 0");
    }
    if (alpha == 4.0) {
        const double s = std::sqrt(T);
        return s * (std::numbers::pi / 2.0 - std::atan(1.0 / s));
    }
    return q_func_generic(T, alpha, settings);
}

}  // namespace hetnet
