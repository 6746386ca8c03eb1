#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "efl/types.hpp"

namespace efl {

struct QuadratureConfig {
    double absolute_tolerance = 1e-10;
    double relative_tolerance = 1e-10;
    std::int64_t max_subdivisions = 1000000;
    // Half-height at which infinite vertical-line integrals are truncated.
    double truncation_height = 5000.0;

    QuadratureConfig& with_tolerance(double tol) {
        absolute_tolerance = tol;
        relative_tolerance = tol;
        return *this;
    }
};

namespace detail {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
// Column order: node, Gauss weight (0 for Kronrod-only nodes), Kronrod weight.
inline constexpr double gk15[8][3] = {
    {0.000000000000000000, 0.417959183673469388, 0.209482141084727828},
    {0.405845151377397167, 0.381830050505118945, 0.190350578064785410},
    {0.741531185599394440, 0.279705391489276668, 0.140653259715525919},
    {0.949107912342758525, 0.129484966168869693, 0.063092092629978553},
    {0.207784955007898468, 0.0,                  0.204432940075298892},
    {0.586087235467691130, 0.0,                  0.169004726639267903},
    {0.864864423359769073, 0.0,                  0.104790010322250184},
    {0.991455371120812639, 0.0,                  0.022935322010529225},
};

inline double abs_norm(double v) { return std::fabs(v); }
inline double abs_norm(const Complex& v) { return std::fabs(v.real()) + std::fabs(v.imag()); }

// One G7/K15 panel. Returns the Kronrod value; err is the QUADPACK-rescaled
// difference |K15 - G7|, damped on smooth panels via the resasc scale.
template <typename Value, typename F>
void gk15_panel(const F& f, double a, double b, Value& result, double& err) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    Value samples[15];
    samples[0] = f(mid);
    for (int i = 1; i < 8; ++i) {
        const double dx = half * gk15[i][0];
        samples[2 * i - 1] = f(mid + dx);
        samples[2 * i] = f(mid - dx);
    }

    Value gauss = gk15[0][1] * samples[0];
    Value kronrod = gk15[0][2] * samples[0];
    double resabs = gk15[0][2] * abs_norm(samples[0]);
    for (int i = 1; i < 8; ++i) {
        Value fsum = samples[2 * i - 1] + samples[2 * i];
        gauss += gk15[i][1] * fsum;
        kronrod += gk15[i][2] * fsum;
        resabs += gk15[i][2] * (abs_norm(samples[2 * i - 1]) + abs_norm(samples[2 * i]));
    }

    const Value mean = kronrod * 0.5;
    double resasc = gk15[0][2] * abs_norm(Value(samples[0] - mean));
    for (int i = 1; i < 8; ++i)
        resasc += gk15[i][2] * (abs_norm(Value(samples[2 * i - 1] - mean)) +
                                abs_norm(Value(samples[2 * i] - mean)));

    gauss *= half;
    kronrod *= half;
    resabs *= std::fabs(half);
    resasc *= std::fabs(half);

    result = kronrod;
    err = abs_norm(Value(kronrod - gauss));
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps_floor = 50.0 * 1e-17 * resabs;
    if (resabs > 0.0) err = std::max(err, eps_floor);
    if (!std::isfinite(err) || !std::isfinite(abs_norm(result)))
        throw NumericError("quadrature: integrand produced a non-finite value");
}

template <typename Value>
struct Panel {
    double a, b;
    Value value;
    double err;
    std::uint64_t seq; // creation order, breaks error ties deterministically
};

struct PanelWorse {
    template <typename Value>
    bool operator()(const Panel<Value>& x, const Panel<Value>& y) const {
        if (x.err != y.err) return x.err > y.err;
        if (x.a != y.a) return x.a < y.a;
        return x.seq < y.seq;
    }
};

} // namespace detail

// Globally adaptive Gauss-Kronrod integration over [a, b].
//
// The worst panel (largest error estimate, ties broken by position then by
// creation order) is bisected until the accumulated error estimate meets
// max(absolute_tolerance, relative_tolerance * |integral|). The final value
// accumulates over panels sorted by position, so identical inputs and config
// give bit-identical results.
//
// Integrable singularities are fine as long as the integrand is evaluable at
// the quadrature nodes; panel endpoints are never evaluated, so callers can
// place a singularity at an endpoint. Throws QuadratureError carrying the
// partial estimate when the subdivision budget runs out.
template <typename Value, typename F>
Value integrate_adaptive_typed(const F& f, double a, double b, const QuadratureConfig& cfg) {
    require(cfg.absolute_tolerance > 0 && cfg.relative_tolerance > 0,
            "quadrature: tolerances must be strictly positive");
    require(cfg.max_subdivisions >= 1, "quadrature: max_subdivisions must be >= 1");
    if (a == b) return Value{};

    using Panel = detail::Panel<Value>;
    std::set<Panel, detail::PanelWorse> panels;
    std::uint64_t seq = 0;
    double err_sum = 0.0;
    Value running_sum{}; // tolerance bookkeeping only; final sum is re-done in order

    auto make_panel = [&](double lo, double hi, double forced_err = -1.0) {
        Panel p;
        p.a = lo;
        p.b = hi;
        detail::gk15_panel<Value>(f, lo, hi, p.value, p.err);
        if (forced_err >= 0.0) p.err = forced_err;
        p.seq = seq++;
        panels.insert(p);
        err_sum += p.err;
        running_sum += p.value;
    };

    make_panel(a, b);
    std::int64_t splits = 0;
    while (err_sum > std::max(cfg.absolute_tolerance,
                              cfg.relative_tolerance * detail::abs_norm(running_sum))) {
        Panel worst = *panels.begin();
        if (worst.err == 0.0) break; // only roundoff-limited panels remain
        if (splits >= cfg.max_subdivisions) {
            Value partial{};
            for (const auto& p : panels) partial += p.value;
            throw QuadratureError("quadrature: no convergence after max_subdivisions",
                                  Complex(detail::abs_norm(partial), 0), err_sum);
        }
        panels.erase(panels.begin());
        err_sum -= worst.err;
        running_sum -= worst.value;
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Width at the limit of double precision: freeze this panel.
            panels.insert({worst.a, worst.b, worst.value, 0.0, seq++});
            running_sum += worst.value;
            continue;
        }
        make_panel(worst.a, mid);
        make_panel(mid, worst.b);
        ++splits;
    }

    std::vector<Panel> ordered(panels.begin(), panels.end());
    std::sort(ordered.begin(), ordered.end(),
              [](const Panel& x, const Panel& y) { return x.a < y.a; });
    Value sum{};
    for (const auto& p : ordered) sum += p.value;
    return sum;
}

inline Complex integrate_adaptive(const std::function<Complex(double)>& f, double a, double b,
                                  const QuadratureConfig& cfg = {}) {
    return integrate_adaptive_typed<Complex>(f, a, b, cfg);
}

inline double integrate_adaptive_real(const std::function<double(double)>& f, double a, double b,
                                      const QuadratureConfig& cfg = {}) {
    return integrate_adaptive_typed<double>(f, a, b, cfg);
}

// Integrates over a union of segments given by breakpoints, accumulating in
// segment order. Useful when the integrand has known kinks or singular points
// that should sit at panel boundaries.
template <typename Value, typename F>
Value integrate_segments(const F& f, const std::vector<double>& breakpoints,
                         const QuadratureConfig& cfg) {
    Value sum{};
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (breakpoints[i] == breakpoints[i + 1]) continue;
        sum += integrate_adaptive_typed<Value>(f, breakpoints[i], breakpoints[i + 1], cfg);
    }
    return sum;
}

} // namespace efl
