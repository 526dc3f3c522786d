#include "szego/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "szego/quadrature.hpp"

namespace szego {

namespace {

const Complex I(0.0, 1.0);

Complex affine(const Eigen::Vector2cd& z, int chart) {
    return chart == 0 ? z(1) / z(0) : z(0) / z(1);
}

Vec3 direction_of(const Eigen::Vector2cd& z) {
    Complex c = z(0) * std::conj(z(1));
    return {std::norm(z(0)) - std::norm(z(1)), 2.0 * c.real(), 2.0 * c.imag()};
}

}  // namespace

ModelManifold::ModelManifold(std::vector<int> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw DomainError("ModelManifold: no factors");
    for (int p : weights_)
        if (p <= 0) throw DomainError("ModelManifold: weights must be positive");
    if (lambda_min() <= 0.0)
        throw DegenerateInput("ModelManifold: 0 lies in the moment image, action is not free on the zero level");
}

int ModelManifold::total_weight() const {
    return std::accumulate(weights_.begin(), weights_.end(), 0);
}

double ModelManifold::lambda_min() const {
    int pmax = *std::max_element(weights_.begin(), weights_.end());
    return 0.5 * (2 * pmax - total_weight());
}

double ModelManifold::lambda_max() const { return 0.5 * total_weight(); }

std::vector<double> ModelManifold::critical_values() const {
    std::vector<double> out;
    int n = factors();
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        int s = 0;
        for (int i = 0; i < n; ++i) s += (mask >> i & 1u) ? weights_[i] : -weights_[i];
        if (s > 0) out.push_back(0.5 * s);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double ModelManifold::volume() const {
    // Each factor: area of C with density p / (1 + |w|^2)^2, radial coordinate
    // rho = x / (1 - x).
    auto f = [](double x) {
        if (x >= 1.0) return 0.0;
        double rho = x / (1.0 - x), jac = 1.0 / ((1.0 - x) * (1.0 - x));
        double q = 1.0 + rho * rho;
        return 2.0 * kPi * rho / (q * q) * jac;
    };
    double unit = integrate(f, 0.0, 1.0, 1e-15, 1e-15).value;
    double vol = 1.0;
    for (int p : weights_) vol *= p * unit;
    return vol;
}

ManifoldPoint::ManifoldPoint(std::vector<Eigen::Vector2cd> coords, double angle)
    : z(std::move(coords)), theta(angle) {
    for (auto& v : z) {
        double n = v.norm();
        if (!(n > 0.0)) throw DomainError("ManifoldPoint: zero homogeneous coordinates");
        v /= n;
    }
}

ManifoldPoint ManifoldPoint::random(const ModelManifold& M, Rng& rng) {
    std::vector<Eigen::Vector2cd> z(M.factors());
    for (auto& v : z) {
        do {
            v << Complex(rng.normal(), rng.normal()), Complex(rng.normal(), rng.normal());
        } while (v.norm() < 1e-12);
    }
    return ManifoldPoint(std::move(z));
}

Eigen::Vector2cd pair_from_direction(const Vec3& u) {
    Vec3 v = u.normalized();
    double th = std::acos(std::clamp(v(0), -1.0, 1.0));
    double ph = std::atan2(-v(2), v(1));
    Eigen::Vector2cd z;
    z << std::cos(0.5 * th), std::polar(std::sin(0.5 * th), ph);
    return z;
}

ManifoldPoint ManifoldPoint::from_directions(const std::vector<Vec3>& u, double angle) {
    std::vector<Eigen::Vector2cd> z;
    for (const auto& v : u) z.push_back(pair_from_direction(v));
    return ManifoldPoint(std::move(z), angle);
}

ManifoldPoint ManifoldPoint::act(const GroupElement& g) const {
    ManifoldPoint out = *this;
    Mat2 U = g.matrix();
    for (auto& v : out.z) v = U * v;
    return out;
}

ManifoldPoint ManifoldPoint::rotate_fiber(double angle) const {
    ManifoldPoint out = *this;
    out.theta += angle;
    return out;
}

Vec3 ManifoldPoint::direction(int i) const { return direction_of(z.at(i)); }

TangentVector TangentVector::operator+(const TangentVector& o) const {
    if (chart != o.chart) throw DomainError("TangentVector: charts differ");
    TangentVector out = *this;
    for (std::size_t i = 0; i < dw.size(); ++i) out.dw[i] += o.dw[i];
    return out;
}

TangentVector TangentVector::operator*(double s) const {
    TangentVector out = *this;
    for (auto& c : out.dw) c *= s;
    return out;
}

std::vector<int> charts_for(const ManifoldPoint& m) {
    std::vector<int> c;
    for (const auto& v : m.z) c.push_back(std::abs(v(0)) >= std::abs(v(1)) ? 0 : 1);
    return c;
}

TangentVector zero_tangent(const ManifoldPoint& m) {
    TangentVector v;
    v.chart = charts_for(m);
    v.dw.assign(m.z.size(), Complex(0.0));
    return v;
}

TangentVector random_tangent(const ManifoldPoint& m, Rng& rng) {
    TangentVector v = zero_tangent(m);
    for (auto& c : v.dw) c = Complex(rng.normal(), rng.normal());
    return v;
}

double metric(const ModelManifold& M, const ManifoldPoint& m, const TangentVector& a,
              const TangentVector& b) {
    double acc = 0.0;
    for (int i = 0; i < M.factors(); ++i) {
        Complex w = affine(m.z[i], a.chart[i]);
        double q = 1.0 + std::norm(w);
        acc += M.weights()[i] * (a.dw[i] * std::conj(b.dw[i])).real() / (q * q);
    }
    return acc;
}

TangentVector complex_structure(const TangentVector& v) {
    TangentVector out = v;
    for (auto& c : out.dw) c *= I;
    return out;
}

double symplectic(const ModelManifold& M, const ManifoldPoint& m, const TangentVector& a,
                  const TangentVector& b) {
    return metric(M, m, complex_structure(a), b);
}

ManifoldPoint chart_step(const ManifoldPoint& m, const TangentVector& v, double t) {
    std::vector<Eigen::Vector2cd> z(m.z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        Complex w = affine(m.z[i], v.chart[i]) + t * v.dw[i];
        if (v.chart[i] == 0)
            z[i] << 1.0, w;
        else
            z[i] << w, 1.0;
    }
    return ManifoldPoint(std::move(z), m.theta);
}

Vec3 moment_map(const ModelManifold& M, const ManifoldPoint& m) {
    Vec3 acc = Vec3::Zero();
    for (int i = 0; i < M.factors(); ++i) acc += 0.5 * M.weights()[i] * m.direction(i);
    return acc;
}

Vec3 moment_differential(const ModelManifold& M, const ManifoldPoint& m, const TangentVector& v) {
    Vec3 acc = Vec3::Zero();
    for (int i = 0; i < M.factors(); ++i) {
        Complex w = affine(m.z[i], v.chart[i]), dw = v.dw[i];
        double s = 1.0 + std::norm(w);
        double ds = 2.0 * (std::conj(w) * dw).real();
        Vec3 du;
        du(1) = 2.0 * dw.real() / s - 2.0 * w.real() * ds / (s * s);
        double dim = 2.0 * dw.imag() / s - 2.0 * w.imag() * ds / (s * s);
        if (v.chart[i] == 0) {
            du(0) = -2.0 * ds / (s * s);
            du(2) = -dim;
        } else {
            du(0) = 2.0 * ds / (s * s);
            du(2) = dim;
        }
        acc += 0.5 * M.weights()[i] * du;
    }
    return acc;
}

double lambda_of(const ModelManifold& M, const ManifoldPoint& m) { return moment_map(M, m).norm(); }

double lambda_differential(const ModelManifold& M, const ManifoldPoint& m, const TangentVector& v) {
    Vec3 phi = moment_map(M, m);
    return moment_differential(M, m, v).dot(phi) / phi.norm();
}

MomentDiagonalization diagonalize_moment(const Vec3& value) {
    double lam = value.norm();
    if (!(lam > 1e-14)) throw DegenerateInput("diagonalize_moment: zero moment value");
    Vec3 u = value / lam;
    Vec3 e0(1.0, 0.0, 0.0);
    Vec3 axis = e0.cross(u);
    double s = axis.norm();
    double gamma = std::atan2(s, e0.dot(u));
    if (s < 1e-15) axis = Vec3(0.0, 1.0, 0.0);
    else axis /= s;
    MomentDiagonalization out;
    out.lambda = lam;
    for (double sign : {1.0, -1.0}) {
        GroupElement h = GroupElement::exp(AlgebraElement(sign * 0.5 * gamma * axis));
        if ((adjoint(h, AlgebraElement::beta()).c - u).norm() < 1e-9) {
            out.h = h;
            return out;
        }
    }
    throw ConvergenceError("diagonalize_moment: rotation construction failed");
}

LocusClassification classify_locus(const ModelManifold& M, const ManifoldPoint& m, double nu,
                                   double tol) {
    LocusClassification out;
    out.signed_distance = lambda_of(M, m) - nu;
    if (std::abs(out.signed_distance) <= tol) out.locus = Locus::On;
    else out.locus = out.signed_distance < 0.0 ? Locus::Inside : Locus::Outside;
    for (double c : M.critical_values())
        if (std::abs(c - nu) < 1e-6) out.near_critical = true;
    return out;
}

const char* locus_name(Locus l) {
    switch (l) {
        case Locus::Inside: return "inside";
        case Locus::On: return "on";
        default: return "outside";
    }
}

TangentVector hamiltonian_field(const ModelManifold& M, const AlgebraElement& xi,
                                const ManifoldPoint& m) {
    TangentVector v = zero_tangent(m);
    Mat2 X = xi.matrix();
    for (int i = 0; i < M.factors(); ++i) {
        const Eigen::Vector2cd& z = m.z[i];
        Eigen::Vector2cd zd = -X * z;  // d/dt exp(-t xi) z
        if (v.chart[i] == 0)
            v.dw[i] = (zd(1) * z(0) - z(1) * zd(0)) / (z(0) * z(0));
        else
            v.dw[i] = (zd(0) * z(1) - z(0) * zd(1)) / (z(1) * z(1));
    }
    return v;
}

TangentVector upsilon(const ModelManifold& M, const ManifoldPoint& m) {
    return complex_structure(hamiltonian_field(M, AlgebraElement(moment_map(M, m)), m));
}

FieldNorm field_norm(const ModelManifold& M, const ManifoldPoint& m, double tol) {
    Vec3 phi = moment_map(M, m);
    TangentVector v = hamiltonian_field(M, AlgebraElement(phi.normalized()), m);
    FieldNorm out;
    out.value = std::sqrt(std::max(metric(M, m, v, v), 0.0));
    out.singular = out.value <= tol;
    return out;
}

double vertical_weight(const ModelManifold& M, const AlgebraElement& xi, const ManifoldPoint& m) {
    return moment_map(M, m).dot(xi.c);
}

ManifoldPoint point_on_level(const ModelManifold& M, double lambda, Rng& rng, int max_attempts) {
    const auto& p = M.weights();
    int n = M.factors();
    if (lambda < M.lambda_min() - 1e-12 || lambda > M.lambda_max() + 1e-12)
        throw DomainError("point_on_level: level outside the moment image");
    if (n == 1) return ManifoldPoint::random(M, rng);
    auto random_dir = [&rng]() {
        Vec3 v;
        do v = Vec3(rng.normal(), rng.normal(), rng.normal());
        while (v.norm() < 1e-12);
        return Vec3(v.normalized());
    };
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        std::vector<Vec3> u(n);
        u[0] = Vec3(1.0, 0.0, 0.0);
        Vec3 P = 0.5 * p[0] * u[0];
        for (int i = 1; i + 1 < n; ++i) {
            u[i] = random_dir();
            P += 0.5 * p[i] * u[i];
        }
        double half = 0.5 * p[n - 1], pn = P.norm();
        if (pn < 1e-12) continue;
        double c = (lambda * lambda - pn * pn - half * half) / (2.0 * half * pn);
        if (std::abs(c) > 1.0) continue;
        Vec3 e = P / pn;
        Vec3 t = random_dir();
        t -= t.dot(e) * e;
        if (t.norm() < 1e-8) continue;
        t.normalize();
        u[n - 1] = c * e + std::sqrt(1.0 - c * c) * t;
        return ManifoldPoint::from_directions(u);
    }
    throw ConvergenceError("point_on_level: no configuration found");
}

ManifoldPoint bending_point(const ModelManifold& M, double nu, double diagonal, double bend) {
    if (M.factors() != 3) throw DomainError("bending_point: needs three factors");
    const auto& p = M.weights();
    double h1 = 0.5 * p[0], h2 = 0.5 * p[1], h3 = 0.5 * p[2], s = diagonal;
    if (!(s > std::abs(h1 - h2) && s < h1 + h2)) throw DomainError("bending_point: diagonal out of range");
    double ca = (nu * nu - s * s - h3 * h3) / (2.0 * s * h3);
    if (!(std::abs(ca) < 1.0)) throw DomainError("bending_point: no configuration on this level");
    double sa = std::sqrt(1.0 - ca * ca);
    Vec3 e0(1, 0, 0), e1(0, 1, 0), e2(0, 0, 1);
    Vec3 ah = ca * e0 + sa * e1, perp = -sa * e0 + ca * e1;
    Vec3 n = std::cos(bend) * perp + std::sin(bend) * e2;
    double along = (s * s + h1 * h1 - h2 * h2) / (2.0 * s);
    double h = std::sqrt(std::max(0.0, h1 * h1 - along * along));
    Vec3 v1 = along * ah + h * n, v2 = (s - along) * ah - h * n;
    return ManifoldPoint::from_directions({v1 / h1, v2 / h2, e0});
}

double orbit_gram_determinant(const ModelManifold& M, const ManifoldPoint& m) {
    TangentVector f[3] = {hamiltonian_field(M, AlgebraElement::beta(), m),
                          hamiltonian_field(M, AlgebraElement::xi1(), m),
                          hamiltonian_field(M, AlgebraElement::xi2(), m)};
    Eigen::Matrix3d G;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) G(a, b) = metric(M, m, f[a], f[b]);
    return G.determinant();
}

}  // namespace szego
