#include "szego/calibration.hpp"

#include <algorithm>
#include <cmath>

#include "szego/hardy.hpp"

namespace szego {

CalibrationResult calibrate_convention(const ModelManifold& M,
                                       const std::vector<std::pair<int, int>>& pairs,
                                       const CalibrationOptions& opts) {
    if (pairs.empty()) throw DomainError("calibrate_convention: no (k, n) pairs");
    CalibrationResult out;
    Rng rng(opts.seed);
    const double lo = M.lambda_min(), hi = M.lambda_max();
    for (auto [k, n] : pairs) {
        if (multiplicity(M, k, n) == 0)
            throw DomainError("calibrate_convention: empty isotype for the given (k, n)");
        SectionSpace S(M, k);
        IsotypeBasis B = isotype_basis(S, n);
        CalibrationEntry e{k, n, 0.0, 0.0};
        if (hi - lo < 1e-12) {
            e.lambda_star = hi;
        } else {
            std::vector<double> lam, val;
            for (int i = 0; i < opts.levels; ++i) {
                double l = lo + (hi - lo) * (i + 0.5) / opts.levels;
                double acc = 0.0;
                for (int s = 0; s < opts.samples_per_level; ++s) {
                    ManifoldPoint x = point_on_level(M, l, rng);
                    acc += equivariant_kernel(S, B, x, x).real();
                }
                lam.push_back(l);
                val.push_back(acc / opts.samples_per_level);
            }
            auto it = std::max_element(val.begin(), val.end());
            std::size_t j = static_cast<std::size_t>(it - val.begin());
            e.lambda_star = lam[j];
            if (j > 0 && j + 1 < val.size()) {
                // Parabolic refinement through the three largest samples.
                double a = val[j - 1], b = val[j], c = val[j + 1];
                double den = a - 2.0 * b + c;
                if (den < 0.0) e.lambda_star += 0.5 * (a - c) / den * (lam[j + 1] - lam[j]);
            }
        }
        e.scale = e.lambda_star * k / n;
        out.entries.push_back(e);
    }
    for (const auto& e : out.entries) out.scale += e.scale;
    out.scale /= static_cast<double>(out.entries.size());
    for (const auto& e : out.entries)
        out.spread = std::max(out.spread, std::abs(e.scale - out.scale) / out.scale);
    out.snapped = std::abs(out.scale - 0.5) < std::abs(out.scale - 1.0) ? 0.5 : 1.0;
    return out;
}

}  // namespace szego
