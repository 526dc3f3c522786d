#pragma once

#include <functional>

#include "szego/geometry.hpp"

namespace szego {

struct ModelParams {
    double nu = 1.0;
    int d = 2;
    double field_norm = 1.0;  // lambda_0
    double tau = 0.0;
    // Optional (r, delta) dependence; when empty, lambda_tau = field_norm^2
    // and the symplectic pairing vanishes.
    std::function<double(double, double)> lambda_tau;
    std::function<double(double, double)> omega;
};

/// Parameters derived from the geometry of a point on the level set.
ModelParams model_params_at(const ModelManifold& M, const ManifoldPoint& x, double tau = 0.0);

double lambda_tau(const ModelParams& p, double r, double delta);
double omega_pairing(const ModelParams& p, double r, double delta);
double s_of_r(double r);  // kappa(r) - 1
double xi_tau(const ModelParams& p, double k, double r, double delta);
Complex b_tau(const ModelParams& p, double vartheta, double r, double delta);

/// A = theta + vartheta <Phi, Ad_{h g} beta> with <Phi, Ad_{h g} beta> = nu kappa(r).
double amplitude_a(const ModelParams& p, double theta, double vartheta, double r);
/// Phase theta (u - 1) + nu vartheta kappa(r) u.
double phase_gamma(const ModelParams& p, double u, double theta, double vartheta, double r);
Complex phase_d(const ModelParams& p, double u, double theta, double vartheta, double r, double delta);

/// sqrt(2 pi) (-i) xi lambda^{-3/2} exp(-xi^2 / (2 lambda)).
Complex gaussian_J(double lambda, double xi);
/// Direct quadrature of the integral of t exp(-lambda t^2 / 2 - i xi t) over R.
Complex gaussian_J_quadrature(double lambda, double xi, double tol = 1e-14);

struct InnerOptions {
    double D = 10.0;
    double tol = 1e-11;
};

struct InnerIntegral {
    Complex quadrature;
    Complex leading;
    double error = 0.0;      // Richardson-style estimate from two tolerances
    double deviation = 0.0;  // |quadrature - leading| / |leading|
    bool resolution_flag = false;
};

/// Smooth cutoff equal to 1 on [1/2, 2], supported in (1/D, D).
double u_cutoff(double u, double D);

InnerIntegral inner_integral_I(double k, double vartheta, double r, double delta,
                               const ModelParams& p, const InnerOptions& opts = {});

/// Integrand r V(r) xi / lambda^{3/2} exp(-xi^2 / (2 lambda)).
double final_pi_integrand(double r, double delta, double k, const ModelParams& p,
                          bool literal = false);

struct ChainResult {
    double assembled = 0.0;
    double closed_form = 0.0;
    double ratio = 0.0;
    // Same chain with the series density D_{G/T} S(r) and prefactor k nu.
    double literal_assembled = 0.0;
    double literal_ratio = 0.0;
    double error = 0.0;
};

ChainResult radial_leading_term(double k, const ModelParams& p, double tol = 1e-11);

/// Closed-form leading diagonal value sqrt(2) D_{G/T} (k/pi)^{d-1/2} / lambda_0.
double leading_closed_form(double k, const ModelParams& p);

/// Quadrature of the integral of r^3 exp(-a r^4) over [0, inf).
double radial_moment(double a, double tol = 1e-15);

}  // namespace szego
