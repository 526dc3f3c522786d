#pragma once

#include <array>
#include <functional>
#include <vector>

#include "szego/common.hpp"
#include "szego/quadrature.hpp"

namespace szego {

using Mat2 = Eigen::Matrix2cd;

/// Element of the Lie algebra su(2) in the orthonormal basis
/// (beta, xi1, xi2) for the pairing <X, Y> = -tr(XY)/2.
struct AlgebraElement {
    Vec3 c = Vec3::Zero();

    AlgebraElement() = default;
    explicit AlgebraElement(const Vec3& v) : c(v) {}
    AlgebraElement(double b, double x1, double x2) : c(b, x1, x2) {}

    Mat2 matrix() const;
    static AlgebraElement from_matrix(const Mat2& X);
    static AlgebraElement beta() { return {1.0, 0.0, 0.0}; }
    static AlgebraElement xi1() { return {0.0, 1.0, 0.0}; }
    static AlgebraElement xi2() { return {0.0, 0.0, 1.0}; }

    double norm() const { return c.norm(); }
    double pair(const AlgebraElement& o) const { return c.dot(o.c); }
};

/// SU(2) element [[a, -conj(b)], [b, conj(a)]] with |a|^2 + |b|^2 = 1.
class GroupElement {
public:
    GroupElement() : a_(1.0, 0.0), b_(0.0, 0.0) {}
    GroupElement(Complex a, Complex b);

    static GroupElement identity() { return {}; }
    static GroupElement torus(double phi);
    static GroupElement exp(const AlgebraElement& X);
    static GroupElement from_matrix(const Mat2& U);
    static GroupElement random(Rng& rng);

    Complex a() const { return a_; }
    Complex b() const { return b_; }
    Mat2 matrix() const;
    GroupElement inverse() const { return {std::conj(a_), -b_}; }
    GroupElement operator*(const GroupElement& o) const;
    Eigen::Vector2cd act(const Eigen::Vector2cd& z) const { return matrix() * z; }

    // Class angle phi with g conjugate to diag(e^{i phi}, e^{-i phi}).
    double class_angle() const;
    // Rotation matrix of Ad_g in the (beta, xi1, xi2) coordinates.
    Eigen::Matrix3d rotation() const;

private:
    Complex a_, b_;
};

AlgebraElement adjoint(const GroupElement& g, const AlgebraElement& X);

/// Character of the irreducible representation V_n at class angle phi.
double character(int n, double phi);
double character(int n, const GroupElement& g);

/// Matrix of V_n (homogeneous polynomials of degree n in C^2, acted on by
/// (g.P)(z) = P(g^{-1} z)) in the orthonormal monomial basis.
Eigen::MatrixXcd irrep_matrix(int n, const GroupElement& g);

/// Haar quadrature rule on SU(2) = S^3 with normalized weights.
struct HaarRule {
    std::vector<GroupElement> nodes;
    std::vector<double> weights;

    // Exact for matrix coefficients of total polynomial degree <= degree.
    static HaarRule for_degree(int degree);
    static HaarRule product(int n_radial, int n_angle);
};

Complex haar_integrate(const std::function<Complex(const GroupElement&)>& f, int degree);

/// Integral of f against Haar measure with a convergence check: the rule for
/// `degree` is compared with the rule for `degree + step`.
Complex haar_integrate_checked(const std::function<Complex(const GroupElement&)>& f,
                               int degree, double tol, int step = 4);

/// Integral of a class function given by its values on the maximal torus.
Complex haar_integrate_class(const std::function<Complex(double)>& f, int degree);

/// Quadrature realisation of the isotypic projector
/// P_n = (n+1) * integral of conj(chi_n(g)) rho(g) dg.
struct ProjectionRule {
    int n = 0;
    std::vector<GroupElement> nodes;
    std::vector<double> weights;  // already include (n+1) conj(chi_n)

    // Order covers representations with highest label <= max_label. The rule
    // is validated on the direct sum of V_0..V_max_label.
    static ProjectionRule make(int n, int max_label, double tol = 1e-10);
    static ProjectionRule make_unchecked(int n, int degree);

    Eigen::MatrixXcd apply(const std::function<Eigen::MatrixXcd(const GroupElement&)>& rho) const;
    // Largest idempotency/self-adjointness residual over V_0..V_max_label.
    double residual(int max_label) const;
};

/// Coordinates on G/T: r = |2 a conj(b)| in the unit-sphere chart.
double kappa(double r);

/// Riemannian volume of the unit 3-sphere measured by quadrature.
double unit_s3_volume();
/// 2 pi / vol(S^3).
double d_gt();

/// Normalized G/T measure density with respect to dx1 dx2 in the chart
/// f(gT) = (2 a conj(b), |a|^2 - |b|^2), restricted to the upper hemisphere.
/// Computed from the quotient metric of S^3; independent of the angle delta.
double coset_density(double r, double delta = 0.0);

/// Group element whose coset has chart value (r e^{i delta}, kappa(r)).
GroupElement coset_representative(double r, double delta);

}  // namespace szego
