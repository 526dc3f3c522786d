#pragma once

#include <utility>
#include <vector>

#include "szego/geometry.hpp"

namespace szego {

struct CalibrationEntry {
    int k = 0;
    int n = 0;
    double lambda_star = 0.0;  // level where the isotypic diagonal peaks
    double scale = 0.0;        // lambda_star k / n
};

struct CalibrationResult {
    std::vector<CalibrationEntry> entries;
    double scale = 0.0;      // mean over entries
    double spread = 0.0;     // max relative deviation from the mean
    double snapped = 0.0;    // nearest of {1/2, 1}
};

struct CalibrationOptions {
    int levels = 81;          // lambda grid points
    int samples_per_level = 4;
    std::uint64_t seed = 11;
};

/// Measures the scale s relating an isotype label n at level k to the level
/// lambda = s n / k where the isotypic diagonal concentrates.
CalibrationResult calibrate_convention(const ModelManifold& M,
                                       const std::vector<std::pair<int, int>>& pairs,
                                       const CalibrationOptions& opts = {});

}  // namespace szego
