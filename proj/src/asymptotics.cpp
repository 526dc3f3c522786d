#include "szego/asymptotics.hpp"

#include <algorithm>
#include <cmath>

namespace szego {

std::vector<KGridEntry> make_k_grid(const ModelManifold& M, double nu, int k_min, int k_max,
                                    double scale, bool filter, int step) {
    if (!(nu > 0.0)) throw DomainError("make_k_grid: nu must be positive");
    if (!(scale > 0.0)) throw DomainError("make_k_grid: scale must be positive");
    if (k_min < 1 || k_max < k_min || step < 1) throw DomainError("make_k_grid: bad k range");
    std::vector<KGridEntry> out;
    for (int k = k_min; k <= k_max; k += step) {
        double nr = nu * k / scale;
        long n = std::lround(nr);
        std::uint64_t mult = 0;
        bool integral = std::abs(nr - static_cast<double>(n)) < 1e-9;
        if (integral) mult = multiplicity(M, k, static_cast<int>(n));
        if (mult == 0) {
            if (filter) continue;
            throw DomainError("make_k_grid: level k = " + std::to_string(k) +
                              " has no isotype with label nu k / s");
        }
        out.push_back({k, static_cast<int>(n), mult});
    }
    if (out.empty()) throw DomainError("make_k_grid: no admissible levels in range");
    return out;
}

namespace {

struct LineFit {
    double slope, intercept, rms;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw DomainError("fit_power_law: all k values coincide");
    double slope = sxy / sxx, icpt = my - slope * mx, ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double r = y[i] - (icpt + slope * x[i]);
        ss += r * r;
    }
    return {slope, icpt, std::sqrt(ss / n)};
}

}  // namespace

PowerLawFit fit_power_law(const std::vector<double>& k, const std::vector<double>& values,
                          double max_rms) {
    if (k.size() != values.size()) throw DomainError("fit_power_law: size mismatch");
    if (k.size() < 3) throw DomainError("fit_power_law: need at least 3 samples");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (!(k[i] > 0.0) || !(values[i] > 0.0))
            throw DomainError("fit_power_law: samples must be positive");
        lx.push_back(std::log(k[i]));
        ly.push_back(std::log(values[i]));
    }
    LineFit f = least_squares(lx, ly);
    PowerLawFit out;
    out.exponent = f.slope;
    out.log_constant = f.intercept;
    out.constant = std::exp(f.intercept);
    out.residual_rms = f.rms;
    out.samples = static_cast<int>(k.size());
    double lo = f.slope, hi = f.slope;
    for (std::size_t skip = 0; skip < lx.size(); ++skip) {
        std::vector<double> x2, y2;
        for (std::size_t i = 0; i < lx.size(); ++i)
            if (i != skip) {
                x2.push_back(lx[i]);
                y2.push_back(ly[i]);
            }
        double s = least_squares(x2, y2).slope;
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    out.loo_spread = hi - lo;
    if (f.rms > max_rms) throw NonPowerLaw("fit_power_law: residual rms exceeds bound");
    return out;
}

const char* decay_verdict_name(DecayVerdict v) {
    switch (v) {
        case DecayVerdict::Superpolynomial: return "superpolynomial";
        case DecayVerdict::Polynomial: return "polynomial";
        default: return "inconclusive";
    }
}

DecayReport check_decay(const std::vector<double>& k, const std::vector<double>& values,
                        int max_order, double tail_fraction, int min_tail) {
    if (k.size() != values.size()) throw DomainError("check_decay: size mismatch");
    DecayReport rep;
    rep.max_order = max_order;
    int total = static_cast<int>(k.size());
    int t = std::max(min_tail, static_cast<int>(std::ceil(tail_fraction * total)));
    if (total < min_tail || t > total || t < 2) return rep;
    for (int i = total - t; i < total; ++i) rep.tail.push_back(i);
    for (int N = 0; N <= max_order; ++N) {
        bool dec = true;
        for (std::size_t j = 1; j < rep.tail.size(); ++j) {
            int a = rep.tail[j - 1], b = rep.tail[j];
            if (!(values[b] * std::pow(k[b], N) < values[a] * std::pow(k[a], N))) dec = false;
        }
        if (!dec) break;
        rep.largest_order = N;
    }
    rep.verdict = rep.largest_order == max_order ? DecayVerdict::Superpolynomial
                                                 : DecayVerdict::Polynomial;
    return rep;
}

std::vector<double> diagonal_series(const ModelManifold& M, const std::vector<KGridEntry>& grid,
                                    const ManifoldPoint& x) {
    double vol = M.volume();
    std::vector<double> out;
    for (const auto& e : grid) {
        SectionSpace S(M, e.k);
        IsotypeBasis B = isotype_basis(S, e.n);
        out.push_back(equivariant_kernel(S, B, x, x).real() / vol);
    }
    return out;
}

std::vector<double> pair_series(const ModelManifold& M, const std::vector<KGridEntry>& grid,
                                const ManifoldPoint& x, const ManifoldPoint& y) {
    std::vector<double> out;
    for (const auto& e : grid) {
        SectionSpace S(M, e.k);
        IsotypeBasis B = isotype_basis(S, e.n);
        double xx = equivariant_kernel(S, B, x, x).real();
        double yy = equivariant_kernel(S, B, y, y).real();
        out.push_back(std::norm(equivariant_kernel(S, B, x, y)) / (xx * yy));
    }
    return out;
}

double predict_diagonal(const ModelManifold& M, double nu, const ManifoldPoint& x, double k,
                        double level_tol) {
    if (std::abs(lambda_of(M, x) - nu) > level_tol)
        throw DomainError("predict_diagonal: point is not on the level set");
    FieldNorm fn = field_norm(M, x);
    if (fn.singular) throw SingularPrediction("predict_diagonal: vanishing field norm");
    return std::sqrt(2.0) * d_gt() * std::pow(k / kPi, M.d() - 0.5) / fn.value;
}

namespace {

TangentVector from_coefficients(const ManifoldPoint& m, const Eigen::VectorXd& c) {
    TangentVector v = zero_tangent(m);
    for (std::size_t i = 0; i < v.dw.size(); ++i) v.dw[i] = Complex(c(2 * i), c(2 * i + 1));
    return v;
}

}  // namespace

LevelSetDensity level_set_density(const ModelManifold& M, double nu, const ManifoldPoint& m) {
    const int dim = 2 * M.factors();
    std::vector<TangentVector> basis;
    for (int j = 0; j < dim; ++j) {
        Eigen::VectorXd c = Eigen::VectorXd::Zero(dim);
        c(j) = 1.0;
        basis.push_back(from_coefficients(m, c));
    }
    Eigen::MatrixXd G(dim, dim), D(3, dim);
    Eigen::VectorXd ell(dim);
    for (int a = 0; a < dim; ++a) {
        for (int b = 0; b < dim; ++b) G(a, b) = metric(M, m, basis[a], basis[b]);
        D.col(a) = moment_differential(M, m, basis[a]);
        ell(a) = lambda_differential(M, m, basis[a]);
    }
    Eigen::LLT<Eigen::MatrixXd> llt(G);
    Eigen::MatrixXd C = llt.matrixL().transpose().solve(Eigen::MatrixXd::Identity(dim, dim));
    Eigen::VectorXd ello = C.transpose() * ell;
    Eigen::MatrixXd Do = D * C;
    LevelSetDensity out;
    out.gradient = ello.norm();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(ello);
    Eigen::MatrixXd Q = qr.householderQ();
    Eigen::MatrixXd K = Q.rightCols(dim - 1);
    Eigen::MatrixXd DK = Do * K;
    out.jacobian = std::sqrt((Eigen::Matrix3d::Identity() + DK * DK.transpose() / (2.0 * nu)).determinant());

    AlgebraElement gens[3] = {AlgebraElement::beta(), AlgebraElement::xi1(), AlgebraElement::xi2()};
    TangentVector f[3];
    Vec3 df[3];
    for (int a = 0; a < 3; ++a) {
        f[a] = hamiltonian_field(M, gens[a], m);
        df[a] = moment_differential(M, m, f[a]);
    }
    Eigen::Matrix3d gram;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            gram(a, b) = metric(M, m, f[a], f[b]) + df[a].dot(df[b]) / (2.0 * nu);
    // -1 acts trivially on every factor, so orbits are copies of SU(2)/{+-1}.
    out.orbit_volume = kPi * kPi * std::sqrt(std::max(gram.determinant(), 0.0));
    return out;
}

namespace {

void orthonormal_frame(const Vec3& e, Vec3& a, Vec3& b) {
    Vec3 t = std::abs(e(0)) < 0.9 ? Vec3(1, 0, 0) : Vec3(0, 1, 0);
    a = (t - t.dot(e) * e).normalized();
    b = e.cross(a);
}

// Integral over the circle of last-factor directions keeping |Phi| = nu,
// given the directions of all other factors.
double circle_integral(const ModelManifold& M, double nu, std::vector<Vec3> u, int points) {
    const auto& p = M.weights();
    int n = M.factors();
    Vec3 P = Vec3::Zero();
    for (int i = 0; i + 1 < n; ++i) P += 0.5 * p[i] * u[i];
    double pn = P.norm();
    if (pn < 1e-12) return 0.0;
    double c = (nu * nu - pn * pn - 0.25 * p[n - 1] * p[n - 1]) / (p[n - 1] * pn);
    if (std::abs(c) >= 1.0) return 0.0;
    double s = std::sqrt(1.0 - c * c);
    Vec3 e = P / pn, a, b;
    orthonormal_frame(e, a, b);
    double acc = 0.0;
    for (int j = 0; j < points; ++j) {
        double phi = 2.0 * kPi * j / points;
        u[n - 1] = c * e + s * (std::cos(phi) * a + std::sin(phi) * b);
        ManifoldPoint m = ManifoldPoint::from_directions(u);
        LevelSetDensity dens = level_set_density(M, nu, m);
        acc += dens.jacobian * dens.gradient / dens.orbit_volume;
    }
    return acc * (2.0 * kPi / points) * nu / (2.0 * pn);
}

}  // namespace

ReducedVolume reduced_volume(const ModelManifold& M, double nu, const ReducedVolumeOptions& opts) {
    int n = M.factors();
    if (n < 2) throw DomainError("reduced_volume: need at least two factors");
    if (!(nu > M.lambda_min() && nu < M.lambda_max()))
        throw DomainError("reduced_volume: nu outside the interior of the moment image");
    for (double c : M.critical_values())
        if (std::abs(c - nu) < 1e-6) throw DomainError("reduced_volume: nu is a critical value");
    const auto& p = M.weights();
    std::vector<Vec3> u(n);
    u[0] = Vec3(1, 0, 0);
    ReducedVolume out;
    double front = kPi * p[0];
    if (n == 2) {
        double full = circle_integral(M, nu, u, opts.circle_points);
        double half = circle_integral(M, nu, u, std::max(4, opts.circle_points / 2));
        out.value = front * full;
        out.error = front * std::abs(full - half);
        out.samples = opts.circle_points;
        return out;
    }
    for (int i = 1; i + 1 < n; ++i) front *= kPi * p[i];
    int side = std::max(1, static_cast<int>(std::lround(std::sqrt(opts.strata))));
    Rng rng(opts.seed);
    auto random_dir = [&rng]() {
        double z = rng.uniform(-1.0, 1.0), ph = rng.uniform(0.0, 2.0 * kPi);
        double s = std::sqrt(1.0 - z * z);
        return Vec3(z, s * std::cos(ph), s * std::sin(ph));
    };
    std::vector<double> reps;
    for (int r = 0; r < std::max(1, opts.replicas); ++r) {
        double acc = 0.0;
        for (int a = 0; a < side; ++a)
            for (int b = 0; b < side; ++b) {
                double z = -1.0 + 2.0 * (a + rng.uniform()) / side;
                double ph = 2.0 * kPi * (b + rng.uniform()) / side;
                double s = std::sqrt(std::max(0.0, 1.0 - z * z));
                u[1] = Vec3(z, s * std::cos(ph), s * std::sin(ph));
                for (int i = 2; i + 1 < n; ++i) u[i] = random_dir();
                acc += circle_integral(M, nu, u, opts.circle_points);
                ++out.samples;
            }
        reps.push_back(front * acc / (side * side));
    }
    double mean = 0.0;
    for (double v : reps) mean += v;
    mean /= reps.size();
    double var = 0.0;
    for (double v : reps) var += (v - mean) * (v - mean);
    out.value = mean;
    out.error = reps.size() > 1 ? 2.0 * std::sqrt(var / (reps.size() - 1) / reps.size()) : 0.0;
    return out;
}

double predict_dimension(const ModelManifold& M, double nu, double k, double reduced_vol,
                         double normalization, DimensionReading reading) {
    if (k <= 0.0) return 0.0;
    double dimv = reading == DimensionReading::Weyl ? 2.0 * nu : 2.0 * nu + 1.0;
    return normalization * std::pow(k / kPi, M.d() - 1) * dimv * reduced_vol;
}

double calibrate_volume_normalization(DimensionReading reading, int k_ref) {
    ModelManifold ref({1, 2});
    const double nu = 1.0;
    if (k_ref % 2) ++k_ref;
    double vol = reduced_volume(ref, nu).value;
    auto ratio = [&](int k) {
        double exact = static_cast<double>(isotype_dimension(ref, k, 2 * k));
        return exact / predict_dimension(ref, nu, k, vol, 1.0, reading);
    };
    return 2.0 * ratio(2 * k_ref) - ratio(k_ref);
}

}  // namespace szego
