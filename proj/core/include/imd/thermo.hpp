#pragma once

// Closed-form thermodynamics of the imitative monomer-dimer model in the
// thermodynamic limit. Everything here is a pure function of its arguments.

#include "imd/model.hpp"

namespace imd::thermo {

/// Limiting monomer density of the pure hard-core model at field h: the root
/// in (0, 1) of g^2 = e^{2h} (1 - g). Strictly increasing in h.
double g(double h);

/// 1 - g(h), evaluated without cancellation for large positive h.
double one_minus_g(double h);

/// k-th derivative of g for k in {1, 2, 3}, from the closed form
/// g' = 2 g (1 - g) / (2 - g) and the chain rule.
double g_derivative(double h, int k);

/// Pressure of the pure hard-core model, -(1-g)/2 - log(1-g)/2.
/// d/dh p0 = g.
double p0(double h);

// The two printed expressions of p0, kept separate so that their agreement
// can be checked. p0() is the numerically careful evaluation of the first.
double p0_log_form(double h);    // -(1-g)/2 - log(1-g)/2
double p0_field_form(double h);  // -(1-g)/2 - log(g) + h

/// Variational pressure -J m^2 + p0((2m-1)J + h) and its m-derivatives up to
/// order 4. Throws DomainError for m outside [0,1] or order outside 0..4.
double tilde_p(double m, const ModelParams& params, int derivative_order = 0);

/// Rate function z log z + (1-z)/2 log(1-z) + (1-z)/2 on [0,1], without an
/// additive constant. Its minimum is -p0(0), attained at z = g(0).
double rate_function(double z);

/// The additive constant that appears in the printed form of the rate
/// function, -p0(0).
double rate_function_constant();

/// rate_function(z) + rate_function_constant().
double rate_function_printed(double z);

/// Limiting pressure sup_{m in [0,1]} tilde_p(m).
double variational_pressure(const ModelParams& params);

/// Same limit through the large-deviation route
/// sup_z ((h - J) z + J z^2 - rate_function(z)).
double variational_pressure_rate_route(const ModelParams& params);

}  // namespace imd::thermo
