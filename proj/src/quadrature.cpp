#include "szego/quadrature.hpp"

namespace szego {

Rule gauss_legendre(int n, double a, double b) {
    if (n < 1) throw DomainError("gauss_legendre: n must be positive");
    Rule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (int j = 2; j <= n; ++j) {
            double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.nodes[i] = c - h * x;
        r.nodes[n - 1 - i] = c + h * x;
        r.weights[i] = r.weights[n - 1 - i] = w * h;
    }
    if (n % 2 == 1) r.nodes[n / 2] = c;
    return r;
}

Rule periodic_trapezoid(int n, double a, double period) {
    if (n < 1) throw DomainError("periodic_trapezoid: n must be positive");
    Rule r;
    r.nodes.resize(n);
    r.weights.assign(n, period / n);
    for (int i = 0; i < n; ++i) r.nodes[i] = a + period * i / n;
    return r;
}

}  // namespace szego
