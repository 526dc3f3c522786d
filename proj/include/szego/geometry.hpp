#pragma once

#include <optional>
#include <vector>

#include "szego/common.hpp"
#include "szego/liegroup.hpp"

namespace szego {

/// Product of projective lines with weights p_i and the diagonal SU(2) action.
class ModelManifold {
public:
    explicit ModelManifold(std::vector<int> weights);

    const std::vector<int>& weights() const { return weights_; }
    int factors() const { return static_cast<int>(weights_.size()); }
    int d() const { return factors(); }
    int total_weight() const;

    double lambda_min() const;
    double lambda_max() const;
    /// Values of |Phi| at configurations with all directions collinear.
    std::vector<double> critical_values() const;
    /// Riemannian volume computed factor by factor by quadrature.
    double volume() const;

private:
    std::vector<int> weights_;
};

/// Point of the model manifold: one unit vector of C^2 per factor, plus an
/// angle used when the point is regarded as a point of the circle bundle.
struct ManifoldPoint {
    std::vector<Eigen::Vector2cd> z;
    double theta = 0.0;

    ManifoldPoint() = default;
    explicit ManifoldPoint(std::vector<Eigen::Vector2cd> coords, double angle = 0.0);

    static ManifoldPoint random(const ModelManifold& M, Rng& rng);
    static ManifoldPoint from_directions(const std::vector<Vec3>& u, double angle = 0.0);

    ManifoldPoint act(const GroupElement& g) const;
    ManifoldPoint rotate_fiber(double angle) const;
    /// Unit vector of S^2 for factor i.
    Vec3 direction(int i) const;
};

/// Unit vector z of C^2 with the given direction in S^2.
Eigen::Vector2cd pair_from_direction(const Vec3& u);

/// Tangent vector expressed factorwise in affine charts. Chart 0 uses
/// w = z1/z0, chart 1 uses w = z0/z1; charts are fixed by the base point.
struct TangentVector {
    std::vector<int> chart;
    std::vector<Complex> dw;

    TangentVector operator+(const TangentVector& o) const;
    TangentVector operator*(double s) const;
};

std::vector<int> charts_for(const ManifoldPoint& m);
TangentVector zero_tangent(const ManifoldPoint& m);
TangentVector random_tangent(const ManifoldPoint& m, Rng& rng);
double metric(const ModelManifold& M, const ManifoldPoint& m, const TangentVector& a,
              const TangentVector& b);
TangentVector complex_structure(const TangentVector& v);
double symplectic(const ModelManifold& M, const ManifoldPoint& m, const TangentVector& a,
                  const TangentVector& b);
/// Point reached by moving t along v in the charts of m.
ManifoldPoint chart_step(const ManifoldPoint& m, const TangentVector& v, double t);

Vec3 moment_map(const ModelManifold& M, const ManifoldPoint& m);
Vec3 moment_differential(const ModelManifold& M, const ManifoldPoint& m, const TangentVector& v);
double lambda_of(const ModelManifold& M, const ManifoldPoint& m);
double lambda_differential(const ModelManifold& M, const ManifoldPoint& m, const TangentVector& v);

struct MomentDiagonalization {
    double lambda = 0.0;
    GroupElement h;  // Ad_h(beta) is the unit vector along the moment value
};

/// Writes a moment value as Ad_h(lambda beta) with lambda > 0.
MomentDiagonalization diagonalize_moment(const Vec3& value);

enum class Locus { Inside, On, Outside };

struct LocusClassification {
    Locus locus = Locus::On;
    double signed_distance = 0.0;  // lambda - nu
    bool near_critical = false;    // nu is close to a critical value of lambda
};

LocusClassification classify_locus(const ModelManifold& M, const ManifoldPoint& m, double nu,
                                   double tol = 1e-10);
const char* locus_name(Locus l);

/// Fundamental vector field of xi, normalised so that Phi is a moment map for
/// the form omega(a, b) = g(J a, b).
TangentVector hamiltonian_field(const ModelManifold& M, const AlgebraElement& xi,
                                const ManifoldPoint& m);
/// J applied to the field of the moment value itself.
TangentVector upsilon(const ModelManifold& M, const ManifoldPoint& m);

struct FieldNorm {
    double value = 0.0;
    bool singular = false;
};

/// Norm of the field generated by the unit vector along Phi(m).
FieldNorm field_norm(const ModelManifold& M, const ManifoldPoint& m, double tol = 1e-12);

double vertical_weight(const ModelManifold& M, const AlgebraElement& xi, const ManifoldPoint& m);

/// Point with |Phi| = lambda. The first factor is pinned to the north pole,
/// the others are random. Throws DomainError when lambda is out of range.
ManifoldPoint point_on_level(const ModelManifold& M, double lambda, Rng& rng,
                             int max_attempts = 10000);

/// Three-factor point on the level |Phi| = nu with the third direction at the
/// north pole: `diagonal` is |p1 u1 + p2 u2| / 2 and `bend` rotates the pair
/// (u1, u2) about their sum.
ManifoldPoint bending_point(const ModelManifold& M, double nu, double diagonal, double bend);

/// Gram determinant of the fields of (beta, xi1, xi2) at m.
double orbit_gram_determinant(const ModelManifold& M, const ManifoldPoint& m);

}  // namespace szego
