#include "szego/oscillatory.hpp"

#include <cmath>

#include "szego/liegroup.hpp"
#include "szego/quadrature.hpp"

namespace szego {

namespace {
const Complex I(0.0, 1.0);
}

ModelParams model_params_at(const ModelManifold& M, const ManifoldPoint& x, double tau) {
    ModelParams p;
    p.nu = lambda_of(M, x);
    p.d = M.d();
    FieldNorm fn = field_norm(M, x);
    if (fn.singular) throw SingularPrediction("model_params_at: vanishing field norm");
    p.field_norm = fn.value;
    p.tau = tau;
    GroupElement h = diagonalize_moment(moment_map(M, x)).h;
    auto field = [M, x, h](double r, double delta) {
        GroupElement g = h * coset_representative(r, delta);
        return hamiltonian_field(M, adjoint(g, AlgebraElement::beta()), x);
    };
    p.lambda_tau = [M, x, field](double r, double delta) {
        TangentVector v = field(r, delta);
        return metric(M, x, v, v);
    };
    TangentVector ups = upsilon(M, x);
    p.omega = [M, x, field, ups](double r, double delta) {
        return symplectic(M, x, field(r, delta), ups);
    };
    return p;
}

double lambda_tau(const ModelParams& p, double r, double delta) {
    return p.lambda_tau ? p.lambda_tau(r, delta) : p.field_norm * p.field_norm;
}

double omega_pairing(const ModelParams& p, double r, double delta) {
    return p.omega ? p.omega(r, delta) : 0.0;
}

double s_of_r(double r) { return kappa(r) - 1.0; }

double xi_tau(const ModelParams& p, double k, double r, double delta) {
    return 2.0 * p.tau * omega_pairing(p, r, delta) - std::sqrt(k) * p.nu * s_of_r(r);
}

Complex b_tau(const ModelParams& p, double vartheta, double r, double delta) {
    return -0.5 * vartheta * vartheta * lambda_tau(p, r, delta) +
           2.0 * I * p.tau * vartheta * omega_pairing(p, r, delta);
}

double amplitude_a(const ModelParams& p, double theta, double vartheta, double r) {
    return theta + vartheta * p.nu * kappa(r);
}

double phase_gamma(const ModelParams& p, double u, double theta, double vartheta, double r) {
    return theta * (u - 1.0) + p.nu * vartheta * kappa(r) * u;
}

Complex phase_d(const ModelParams& p, double u, double theta, double vartheta, double r,
                double delta) {
    double a = amplitude_a(p, theta, vartheta, r);
    return 0.5 * I * u * (a * a + vartheta * vartheta * lambda_tau(p, r, delta)) +
           2.0 * p.tau * vartheta * omega_pairing(p, r, delta);
}

Complex gaussian_J(double lambda, double xi) {
    if (!(lambda > 0.0)) throw DomainError("gaussian_J: lambda must be positive");
    return std::sqrt(2.0 * kPi) * (-I) * xi * std::pow(lambda, -1.5) *
           std::exp(-xi * xi / (2.0 * lambda));
}

Complex gaussian_J_quadrature(double lambda, double xi, double tol) {
    if (!(lambda > 0.0)) throw DomainError("gaussian_J_quadrature: lambda must be positive");
    double L = std::sqrt(2.0 * 80.0 / lambda);
    auto f = [&](double t) { return t * std::exp(Complex(-0.5 * lambda * t * t, -xi * t)); };
    return integrate(f, -L, L, tol, tol, 4000).value;
}

double u_cutoff(double u, double D) {
    if (!(D > 2.0)) throw DomainError("u_cutoff: D must exceed 2");
    double lu = std::abs(std::log(u)), ld = std::log(D), l2 = std::log(2.0);
    if (lu <= l2) return 1.0;
    if (lu >= ld) return 0.0;
    auto f = [](double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; };
    double x = (ld - lu) / (ld - l2);
    return f(x) / (f(x) + f(1.0 - x));
}

namespace {

Complex inner_quadrature(double k, double vartheta, double r, double delta, const ModelParams& p,
                         double D, double tol) {
    const double sk = std::sqrt(k);
    const double lam = lambda_tau(p, r, delta);
    const double om = omega_pairing(p, r, delta);
    const double theta0 = -p.nu * kappa(r) * vartheta;
    const double window = 9.5;
    auto outer = [&](double u) -> Complex {
        double rho = u_cutoff(u, D);
        if (rho == 0.0) return 0.0;
        auto inner = [&](double th) -> Complex {
            double a = amplitude_a(p, th, vartheta, r);
            double mag = -0.5 * u * (a * a + vartheta * vartheta * lam);
            double ph = sk * phase_gamma(p, u, th, vartheta, r) + 2.0 * p.tau * vartheta * om;
            return std::exp(Complex(mag, ph));
        };
        double w = window / std::sqrt(u);
        auto res = integrate(inner, theta0 - w, theta0 + w, 1e-3 * tol, 0.0, 8000);
        return rho * std::pow(u, p.d) * res.value;
    };
    double scale = 2.0 * kPi / sk;
    // Split at u = 1 where the outer integrand concentrates.
    auto a = integrate(outer, 1.0 / D, 1.0, tol * scale, 0.0, 4000);
    auto b = integrate(outer, 1.0, D, tol * scale, 0.0, 4000);
    return a.value + b.value;
}

}  // namespace

InnerIntegral inner_integral_I(double k, double vartheta, double r, double delta,
                               const ModelParams& p, const InnerOptions& opts) {
    if (!(k > 0.0)) throw DomainError("inner_integral_I: k must be positive");
    InnerIntegral out;
    out.quadrature = inner_quadrature(k, vartheta, r, delta, p, opts.D, opts.tol);
    Complex fine = inner_quadrature(k, vartheta, r, delta, p, opts.D, 1e-2 * opts.tol);
    out.error = std::abs(out.quadrature - fine);
    out.quadrature = fine;
    out.leading = std::exp(I * std::sqrt(k) * p.nu * vartheta * kappa(r)) * (2.0 * kPi / std::sqrt(k)) *
                  std::exp(b_tau(p, vartheta, r, delta));
    double disc = std::abs(out.quadrature - out.leading);
    out.deviation = disc / std::abs(out.leading);
    out.resolution_flag = out.error > 0.1 * disc;
    return out;
}

double final_pi_integrand(double r, double delta, double k, const ModelParams& p, bool literal) {
    double lam = lambda_tau(p, r, delta);
    double xi = xi_tau(p, k, r, delta);
    double dens = literal ? d_gt() / kappa(r) : coset_density(r, delta);
    return r * dens * xi * std::pow(lam, -1.5) * std::exp(-xi * xi / (2.0 * lam));
}

double leading_closed_form(double k, const ModelParams& p) {
    if (!(p.field_norm > 0.0)) throw SingularPrediction("leading_closed_form: zero field norm");
    return std::sqrt(2.0) * d_gt() * std::pow(k / kPi, p.d - 0.5) / p.field_norm;
}

ChainResult radial_leading_term(double k, const ModelParams& p, double tol) {
    ChainResult out;
    out.closed_form = leading_closed_form(k, p);
    // Window where the Gaussian factor exceeds e^{-60}, for the largest lambda.
    double lam = 4.0 * p.field_norm * p.field_norm;
    double t = std::sqrt(120.0 * lam) / (std::sqrt(k) * p.nu);
    double rmax = t >= 1.0 ? 1.0 - 1e-12 : std::min(1.0 - 1e-12, std::sqrt(1.0 - (1.0 - t) * (1.0 - t)));
    const bool angular = static_cast<bool>(p.lambda_tau) || static_cast<bool>(p.omega);
    const int nd = angular ? 32 : 1;
    auto radial = [&](bool literal) {
        double acc = 0.0, err = 0.0;
        for (int j = 0; j < nd; ++j) {
            double delta = 2.0 * kPi * j / nd;
            auto f = [&](double r) { return final_pi_integrand(r, delta, k, p, literal); };
            auto res = integrate(f, 0.0, rmax, 0.0, tol, 4000);
            acc += res.value * 2.0 * kPi / nd;
            err += res.error * 2.0 * kPi / nd;
        }
        return std::pair<double, double>{acc, err};
    };
    const double base = std::sqrt(2.0 / kPi) * std::pow(k / kPi, p.d);
    // Projector prefactor dim V_n with n = 2 k nu.
    const double dimv = 2.0 * k * p.nu + 1.0;
    auto [v, e] = radial(false);
    out.assembled = base * (dimv / k) * v;
    out.error = base * (dimv / k) * e;
    out.ratio = out.assembled / out.closed_form;
    auto [vl, el] = radial(true);
    (void)el;
    out.literal_assembled = base * p.nu * vl;
    out.literal_ratio = out.literal_assembled / out.closed_form;
    return out;
}

double radial_moment(double a, double tol) {
    if (!(a > 0.0)) throw DomainError("radial_moment: a must be positive");
    double R = std::pow(80.0 / a, 0.25);
    auto f = [a](double r) { return r * r * r * std::exp(-a * r * r * r * r); };
    return integrate(f, 0.0, R, 0.0, tol, 4000).value;
}

}  // namespace szego
