#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <queue>
#include <type_traits>
#include <vector>

#include "szego/common.hpp"

namespace szego {

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule with n points on [a, b].
Rule gauss_legendre(int n, double a, double b);

/// Equispaced rule for periodic integrands on [a, a + period).
Rule periodic_trapezoid(int n, double a, double period);

template <class T>
struct QuadResult {
    T value{};
    double error = 0.0;
    int intervals = 0;
    bool converged = false;
};

namespace detail {
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const std::complex<double>& x) { return std::abs(x); }

template <class F>
auto gk15(F& f, double a, double b) {
    using T = std::decay_t<decltype(f(a))>;
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    T fc = f(c);
    T kron = fc * kWgk[7];
    T gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        T f1 = f(c - h * kXgk[j]);
        T f2 = f(c + h * kXgk[j]);
        kron += (f1 + f2) * kWgk[j];
        if (j % 2 == 1) gauss += (f1 + f2) * kWg[j / 2];
    }
    return std::pair<T, double>{kron * h, magnitude((kron - gauss) * h)};
}
}  // namespace detail

/// Globally adaptive 7/15 Gauss-Kronrod integration of a real or complex
/// integrand. The result carries a convergence flag instead of throwing.
template <class F>
auto integrate(F f, double a, double b, double abs_tol, double rel_tol = 0.0,
               int max_intervals = 2000) {
    using T = std::decay_t<decltype(f(a))>;
    struct Piece {
        double a, b;
        T value;
        double error;
        bool operator<(const Piece& o) const { return error < o.error; }
    };
    std::priority_queue<Piece> heap;
    auto [v0, e0] = detail::gk15(f, a, b);
    heap.push({a, b, v0, e0});
    T total = v0;
    double err = e0;
    while (true) {
        double target = std::max(abs_tol, rel_tol * detail::magnitude(total));
        if (err <= target || static_cast<int>(heap.size()) >= max_intervals) break;
        Piece p = heap.top();
        heap.pop();
        double m = 0.5 * (p.a + p.b);
        auto [vl, el] = detail::gk15(f, p.a, m);
        auto [vr, er] = detail::gk15(f, m, p.b);
        total += vl + vr - p.value;
        err += el + er - p.error;
        heap.push({p.a, m, vl, el});
        heap.push({m, p.b, vr, er});
    }
    // Re-sum to shed the drift of the running updates.
    QuadResult<T> out;
    out.intervals = static_cast<int>(heap.size());
    T sum{};
    double esum = 0.0;
    while (!heap.empty()) {
        sum += heap.top().value;
        esum += heap.top().error;
        heap.pop();
    }
    out.value = sum;
    out.error = esum;
    out.converged = esum <= std::max(abs_tol, rel_tol * detail::magnitude(sum));
    return out;
}

}  // namespace szego
