#include "szego/liegroup.hpp"

#include <algorithm>
#include <cmath>

namespace szego {

namespace {

const Complex I(0.0, 1.0);

Mat2 basis_matrix(int j) {
    Mat2 m;
    switch (j) {
        case 0: m << I, 0.0, 0.0, -I; break;
        case 1: m << 0.0, I, I, 0.0; break;
        default: m << 0.0, -1.0, 1.0, 0.0; break;
    }
    return m;
}

double log_binomial(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

Mat2 AlgebraElement::matrix() const {
    return c[0] * basis_matrix(0) + c[1] * basis_matrix(1) + c[2] * basis_matrix(2);
}

AlgebraElement AlgebraElement::from_matrix(const Mat2& X) {
    AlgebraElement out;
    for (int j = 0; j < 3; ++j) out.c[j] = -0.5 * (X * basis_matrix(j)).trace().real();
    return out;
}

GroupElement::GroupElement(Complex a, Complex b) : a_(a), b_(b) {
    double n = std::sqrt(std::norm(a) + std::norm(b));
    if (!(n > 0.0) || std::abs(n - 1.0) > 1e-8)
        throw DomainError("GroupElement: (a, b) is not a unit vector");
    a_ /= n;
    b_ /= n;
}

GroupElement GroupElement::torus(double phi) { return {std::polar(1.0, phi), 0.0}; }

GroupElement GroupElement::exp(const AlgebraElement& X) {
    double t = X.norm();
    if (t == 0.0) return identity();
    Mat2 U = std::cos(t) * Mat2::Identity() + (std::sin(t) / t) * X.matrix();
    return from_matrix(U);
}

GroupElement GroupElement::from_matrix(const Mat2& U) {
    Mat2 d = U * U.adjoint() - Mat2::Identity();
    if (d.norm() > 1e-8 || std::abs(U.determinant() - 1.0) > 1e-8)
        throw DomainError("GroupElement: matrix is not in SU(2)");
    return {U(0, 0), U(1, 0)};
}

GroupElement GroupElement::random(Rng& rng) {
    double x[4];
    double n = 0.0;
    do {
        n = 0.0;
        for (double& v : x) {
            v = rng.normal();
            n += v * v;
        }
    } while (n < 1e-20);
    n = std::sqrt(n);
    return {Complex(x[0] / n, x[1] / n), Complex(x[2] / n, x[3] / n)};
}

Mat2 GroupElement::matrix() const {
    Mat2 U;
    U << a_, -std::conj(b_), b_, std::conj(a_);
    return U;
}

GroupElement GroupElement::operator*(const GroupElement& o) const {
    return {a_ * o.a_ - std::conj(b_) * o.b_, b_ * o.a_ + std::conj(a_) * o.b_};
}

double GroupElement::class_angle() const {
    return std::acos(std::clamp(a_.real(), -1.0, 1.0));
}

Eigen::Matrix3d GroupElement::rotation() const {
    Eigen::Matrix3d R;
    Mat2 U = matrix();
    for (int j = 0; j < 3; ++j)
        R.col(j) = AlgebraElement::from_matrix(U * basis_matrix(j) * U.adjoint()).c;
    return R;
}

AlgebraElement adjoint(const GroupElement& g, const AlgebraElement& X) {
    Mat2 U = g.matrix();
    return AlgebraElement::from_matrix(U * X.matrix() * U.adjoint());
}

double character(int n, double phi) {
    if (n < 0) throw DomainError("character: negative label");
    double s = std::sin(phi);
    double x = std::cos(phi);
    if (s == 0.0 || std::abs(x) == 1.0) {
        double sign = (x < 0.0 && n % 2 == 1) ? -1.0 : 1.0;
        return sign * (n + 1.0);
    }
    // Chebyshev recurrence for sin((n+1)phi)/sin(phi).
    double u0 = 1.0, u1 = 2.0 * x;
    if (n == 0) return u0;
    for (int j = 2; j <= n; ++j) {
        double u2 = 2.0 * x * u1 - u0;
        u0 = u1;
        u1 = u2;
    }
    return u1;
}

double character(int n, const GroupElement& g) { return character(n, g.class_angle()); }

Eigen::MatrixXcd irrep_matrix(int n, const GroupElement& g) {
    if (n < 0) throw DomainError("irrep_matrix: negative label");
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n + 1, n + 1);
    const Complex p = std::conj(g.a()), q = std::conj(g.b());  // z0 coefficient row
    const Complex r = -g.b(), s = g.a();                       // z1 coefficient row
    auto cpow = [](Complex z, int e) { return e == 0 ? Complex(1.0) : std::pow(z, e); };
    for (int a = 0; a <= n; ++a) {
        for (int i = 0; i <= a; ++i) {
            Complex t1 = std::exp(log_binomial(a, i)) * cpow(p, i) * cpow(q, a - i);
            for (int j = 0; j <= n - a; ++j) {
                Complex t2 = std::exp(log_binomial(n - a, j)) * cpow(r, j) * cpow(s, n - a - j);
                int c = i + j;
                double scale = std::exp(0.5 * (log_binomial(n, a) - log_binomial(n, c)));
                M(c, a) += t1 * t2 * scale;
            }
        }
    }
    return M;
}

HaarRule HaarRule::product(int n_radial, int n_angle) {
    HaarRule h;
    Rule u = gauss_legendre(n_radial, 0.0, 1.0);
    Rule t = periodic_trapezoid(n_angle, 0.0, 2.0 * kPi);
    double wa = 1.0 / (static_cast<double>(n_angle) * n_angle);
    h.nodes.reserve(static_cast<std::size_t>(n_radial) * n_angle * n_angle);
    for (int i = 0; i < n_radial; ++i) {
        double ra = std::sqrt(1.0 - u.nodes[i]), rb = std::sqrt(u.nodes[i]);
        for (int j = 0; j < n_angle; ++j)
            for (int l = 0; l < n_angle; ++l) {
                h.nodes.emplace_back(std::polar(ra, t.nodes[j]), std::polar(rb, t.nodes[l]));
                h.weights.push_back(u.weights[i] * wa);
            }
    }
    return h;
}

HaarRule HaarRule::for_degree(int degree) {
    if (degree < 0) throw DomainError("HaarRule: negative degree");
    return product(degree / 2 + 1, degree + 1);
}

Complex haar_integrate(const std::function<Complex(const GroupElement&)>& f, int degree) {
    HaarRule h = HaarRule::for_degree(degree);
    Complex sum = 0.0;
    for (std::size_t i = 0; i < h.nodes.size(); ++i) sum += h.weights[i] * f(h.nodes[i]);
    return sum;
}

Complex haar_integrate_checked(const std::function<Complex(const GroupElement&)>& f, int degree,
                               double tol, int step) {
    Complex a = haar_integrate(f, degree);
    Complex b = haar_integrate(f, degree + step);
    if (std::abs(a - b) > tol)
        throw ConvergenceError("haar_integrate: consecutive orders differ by " +
                               std::to_string(std::abs(a - b)));
    return b;
}

Complex haar_integrate_class(const std::function<Complex(double)>& f, int degree) {
    Rule t = periodic_trapezoid(degree + 3, 0.0, 2.0 * kPi);
    Complex sum = 0.0;
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        double s = std::sin(t.nodes[i]);
        sum += t.weights[i] * s * s * f(t.nodes[i]);
    }
    return sum / kPi;
}

ProjectionRule ProjectionRule::make_unchecked(int n, int degree) {
    ProjectionRule p;
    p.n = n;
    HaarRule h = HaarRule::for_degree(degree);
    p.nodes = std::move(h.nodes);
    p.weights.resize(h.weights.size());
    for (std::size_t i = 0; i < p.nodes.size(); ++i)
        p.weights[i] = (n + 1.0) * character(n, p.nodes[i]) * h.weights[i];
    return p;
}

ProjectionRule ProjectionRule::make(int n, int max_label, double tol) {
    if (n < 0 || max_label < 0) throw DomainError("ProjectionRule: negative label");
    ProjectionRule p = make_unchecked(n, n + max_label);
    double res = p.residual(max_label);
    if (res > tol)
        throw ConvergenceError("ProjectionRule: residual " + std::to_string(res) +
                               " exceeds tolerance");
    return p;
}

Eigen::MatrixXcd ProjectionRule::apply(
    const std::function<Eigen::MatrixXcd(const GroupElement&)>& rho) const {
    Eigen::MatrixXcd acc = weights[0] * rho(nodes[0]);
    for (std::size_t i = 1; i < nodes.size(); ++i) acc += weights[i] * rho(nodes[i]);
    return acc;
}

double ProjectionRule::residual(int max_label) const {
    double worst = 0.0;
    for (int m = 0; m <= max_label; ++m) {
        Eigen::MatrixXcd P = apply([m](const GroupElement& g) { return irrep_matrix(m, g); });
        Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(m + 1, m + 1);
        if (m == n) expect.setIdentity();
        auto opnorm = [](const Eigen::MatrixXcd& A) {
            return Eigen::JacobiSVD<Eigen::MatrixXcd>(A).singularValues()(0);
        };
        worst = std::max({worst, opnorm(P * P - P), opnorm(P - P.adjoint()), opnorm(P - expect)});
    }
    return worst;
}

double kappa(double r) {
    if (!(r >= 0.0 && r <= 1.0)) throw DomainError("kappa: r outside [0, 1]");
    return std::sqrt((1.0 - r) * (1.0 + r));
}

double unit_s3_volume() {
    // Embedding (cos e cos t1, cos e sin t1, sin e cos t2, sin e sin t2).
    Rule re = gauss_legendre(40, 0.0, kPi / 2);
    Rule rt = periodic_trapezoid(4, 0.0, 2.0 * kPi);
    double vol = 0.0;
    for (std::size_t i = 0; i < re.nodes.size(); ++i)
        for (std::size_t j = 0; j < rt.nodes.size(); ++j)
            for (std::size_t l = 0; l < rt.nodes.size(); ++l) {
                double e = re.nodes[i], t1 = rt.nodes[j], t2 = rt.nodes[l];
                Eigen::Matrix<double, 4, 3> D;
                D.col(0) << -std::sin(e) * std::cos(t1), -std::sin(e) * std::sin(t1),
                    std::cos(e) * std::cos(t2), std::cos(e) * std::sin(t2);
                D.col(1) << -std::cos(e) * std::sin(t1), std::cos(e) * std::cos(t1), 0.0, 0.0;
                D.col(2) << 0.0, 0.0, -std::sin(e) * std::sin(t2), std::sin(e) * std::cos(t2);
                double g = (D.transpose() * D).determinant();
                vol += re.weights[i] * rt.weights[j] * rt.weights[l] * std::sqrt(std::max(g, 0.0));
            }
    return vol;
}

double d_gt() {
    static const double v = 2.0 * kPi / unit_s3_volume();
    return v;
}

namespace {

// Area density of G/T in coordinates (theta, delta), where the coset of
// (cos theta, sin theta e^{-i delta}) is taken, from the quotient metric.
double quotient_area(long double th, long double de) {
    using V = Eigen::Matrix<long double, 4, 1>;
    long double c = std::cos(th), s = std::sin(th), cd = std::cos(de), sd = std::sin(de);
    V v, dth, dde, fib;
    v << c, 0.0L, s * cd, -s * sd;
    dth << -s, 0.0L, c * cd, -c * sd;
    dde << 0.0L, 0.0L, -s * sd, -s * cd;
    fib << 0.0L, c, s * sd, s * cd;  // i * v
    fib /= fib.norm();
    V h1 = dth - dth.dot(fib) * fib;
    V h2 = dde - dde.dot(fib) * fib;
    long double g11 = h1.dot(h1), g22 = h2.dot(h2), g12 = h1.dot(h2);
    long double det = g11 * g22 - g12 * g12;
    return static_cast<double>(std::sqrt(std::max(det, 0.0L)));
}

double quotient_volume() {
    static const double vol = [] {
        Rule rt = gauss_legendre(40, 0.0, kPi / 2);
        Rule rd = periodic_trapezoid(8, 0.0, 2.0 * kPi);
        double acc = 0.0;
        for (std::size_t i = 0; i < rt.nodes.size(); ++i)
            for (std::size_t j = 0; j < rd.nodes.size(); ++j)
                acc += rt.weights[i] * rd.weights[j] * quotient_area(rt.nodes[i], rd.nodes[j]);
        return acc;
    }();
    return vol;
}

double density_direct(double r, double delta) {
    long double th = 0.5L * std::asin(static_cast<long double>(r));
    long double drdth = 2.0L * std::cos(2.0L * th);
    return static_cast<double>(quotient_area(th, delta) / (r * drdth)) / quotient_volume();
}

}  // namespace

double coset_density(double r, double delta) {
    if (!(r >= 0.0 && r < 1.0)) throw DomainError("coset_density: r outside [0, 1)");
    const double r1 = 1e-3, r2 = 2e-3;
    if (r >= r1) return density_direct(r, delta);
    // Smooth in r^2 near the pole; extrapolate from two nearby radii.
    double f1 = density_direct(r1, delta), f2 = density_direct(r2, delta);
    return f1 + (f2 - f1) * (r * r - r1 * r1) / (r2 * r2 - r1 * r1);
}

GroupElement coset_representative(double r, double delta) {
    if (!(r >= 0.0 && r <= 1.0)) throw DomainError("coset_representative: r outside [0, 1]");
    double th = 0.5 * std::asin(r);
    return {Complex(std::cos(th), 0.0), std::polar(std::sin(th), -delta)};
}

}  // namespace szego
