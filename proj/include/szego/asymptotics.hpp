#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "szego/geometry.hpp"
#include "szego/hardy.hpp"

namespace szego {

struct KGridEntry {
    int k = 0;
    int n = 0;
    std::uint64_t multiplicity = 0;
};

/// Levels k in [k_min, k_max] with label n = nu k / scale. With the filter on,
/// k is kept only when n is an integer of the right parity and the isotype is
/// nonempty; with it off, any such failure is an error.
std::vector<KGridEntry> make_k_grid(const ModelManifold& M, double nu, int k_min, int k_max,
                                    double scale = 0.5, bool filter = true, int step = 1);

struct PowerLawFit {
    double exponent = 0.0;
    double log_constant = 0.0;
    double constant = 0.0;
    double residual_rms = 0.0;
    double loo_spread = 0.0;  // max - min of leave-one-out exponents
    int samples = 0;
};

PowerLawFit fit_power_law(const std::vector<double>& k, const std::vector<double>& values,
                          double max_rms = std::numeric_limits<double>::infinity());

enum class DecayVerdict { Superpolynomial, Polynomial, Inconclusive };
const char* decay_verdict_name(DecayVerdict v);

struct DecayReport {
    int largest_order = -1;  // largest N with value * k^N decreasing on the tail
    int max_order = 0;
    DecayVerdict verdict = DecayVerdict::Inconclusive;
    std::vector<int> tail;  // indices of the tail samples
};

/// Tail = the top `tail_fraction` of the samples (at least min_tail points).
DecayReport check_decay(const std::vector<double>& k, const std::vector<double>& values,
                        int max_order = 4, double tail_fraction = 0.5, int min_tail = 3);

/// Diagonal of the isotypic kernel for the measure used in the asymptotic
/// formulas (normalized kernel divided by the volume of M).
std::vector<double> diagonal_series(const ModelManifold& M, const std::vector<KGridEntry>& grid,
                                    const ManifoldPoint& x);
/// |Pi(x,y)|^2 / (Pi(x,x) Pi(y,y)) along the grid.
std::vector<double> pair_series(const ModelManifold& M, const std::vector<KGridEntry>& grid,
                                const ManifoldPoint& x, const ManifoldPoint& y);

/// sqrt(2) D_{G/T} (k/pi)^{d-1/2} / field_norm at a point of the level set.
double predict_diagonal(const ModelManifold& M, double nu, const ManifoldPoint& x, double k,
                        double level_tol = 1e-8);

struct ReducedVolumeOptions {
    int strata = 256;        // cells for the stratified middle factor
    int replicas = 8;
    int circle_points = 64;  // trapezoid nodes on the solved circle
    std::uint64_t seed = 1;
};

struct ReducedVolume {
    double value = 0.0;
    double error = 0.0;
    long samples = 0;
};

/// Volume of the reduced space at the coadjoint orbit of radius nu, from the
/// quotient of the level set by G. The orbit carries the metric that makes
/// it a Kahler quotient of M x (orbit).
ReducedVolume reduced_volume(const ModelManifold& M, double nu,
                             const ReducedVolumeOptions& opts = {});

/// Integrand pieces at a point of the level set, exposed for testing.
struct LevelSetDensity {
    double jacobian = 0.0;      // sqrt det(I + dPhi^T dPhi / (2 nu)) on T(level set)
    double gradient = 0.0;      // |grad lambda|
    double orbit_volume = 0.0;  // pi^2 sqrt det(Gram)
};
LevelSetDensity level_set_density(const ModelManifold& M, double nu, const ManifoldPoint& m);

enum class DimensionReading { Weyl, Actual };

/// C (k/pi)^{d-1} dim(V) vol, where dim(V) = 2 nu (Weyl) or 2 nu + 1 (Actual).
double predict_dimension(const ModelManifold& M, double nu, double k, double reduced_vol,
                         double normalization, DimensionReading reading = DimensionReading::Weyl);

/// Normalization C fixed on the reference model (1,2), nu = 1, by
/// Richardson extrapolation of exact dimensions at k_ref and 2 k_ref.
double calibrate_volume_normalization(DimensionReading reading, int k_ref = 2000);

}  // namespace szego
