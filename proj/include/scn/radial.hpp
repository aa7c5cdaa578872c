#pragma once

#include <vector>

#include "scn/grid.hpp"

namespace scn {

/// Far-field model U(r) ~ amplitude * r^power * exp(-rate * r).
struct TailFit {
    double amplitude = 0.0;
    double rate = 0.0;
    double power = 0.0;

    double value(double r) const;
    double log_derivative(double r) const;  // d/dr log value
};

/// Radial ground state of -Delta U + U = (W * U^2) U together with its own
/// Newtonian potential Phi = W * U^2 and a fitted exponential tail.
struct RadialProfile {
    RadialGrid grid;
    std::vector<double> values;            // U(r_i), strictly positive, decreasing
    std::vector<double> potential_values;  // Phi(r_i)
    TailFit tail;
    double mass_parameter = 0.0;  // a in -Delta U + a U = (W*U^2) U; 1 for the base state
    double solve_tol = 0.0;
};

/// C^4 quintic B-spline interpolant over the profile grid (data mirrored
/// through r = 0, where radial functions continue evenly) with tail
/// extrapolation beyond r_max; the tail is rescaled so the seam is exact.
class RadialInterp {
public:
    explicit RadialInterp(const RadialGrid& grid, const std::vector<double>& samples,
                          const TailFit& tail);

    double value(double r) const;
    double derivative(double r) const;

private:
    double r_max_, h_;
    static constexpr int ghosts_ = 16;  // mirrored nodes prepended below r = 0
    std::vector<double> coef_;          // B-spline coefficients, index offset 2
    TailFit tail_;
    double seam_scale_;
};

RadialInterp profile_interp(const RadialProfile& p);
RadialInterp potential_interp(const RadialProfile& p);

/// Newtonian potential of a radial density: (W * rho)(r) with W = 1/(4 pi |x|),
/// i.e. (1/r) int_0^r s^2 rho ds + int_r^inf s rho ds, by endpoint-corrected
/// composite trapezoid quadrature (4th order for smooth rho).
std::vector<double> radial_newton_potential(const std::vector<double>& rho, const RadialGrid& grid);

/// Solves the radial ground-state system by one-parameter shooting plus a
/// Newton polish of the discretized system (6th-order stencils on v = r U).
RadialProfile solve_ground_state(const RadialGrid& grid, double tol);

/// Profile of U_a(x) = a U(sqrt(a) x); exact composition of the stored state.
RadialProfile scale_profile(const RadialProfile& p, double a);

double evaluate_profile(const RadialProfile& p, double r);

struct ResidualReport {
    double u_equation = 0.0;    // sup_i |-U'' - (2/r)U' + aU - Phi U| with Phi recomputed
    double phi_equation = 0.0;  // sup_i |-Phi'' - (2/r)Phi' - U^2|
};

/// Recomputes Phi by radial_newton_potential and measures both equations with
/// the solver's own stencils; the u_equation entry is the contractual residual.
ResidualReport residual(const RadialProfile& p);

/// Spectrum of one angular sector of the nonlocal linearization.
struct SectorSpectrum {
    int ell = 0;
    std::vector<double> eigenvalues;                 // ascending
    std::vector<std::vector<double>> eigenvectors;   // phi(r_i), normalized in r^2 dr
    std::vector<double> radii;                       // interior eigenproblem nodes
};

struct SpectrumParams {
    double r_max = 30.0;  // eigenproblem grid (profile is resampled)
    int n = 2400;
};

/// For each sector ell = 0..ell_max, the k lowest eigenpairs of
///   L_ell phi = -phi'' - (2/r)phi' + ell(ell+1)phi/r^2 + a phi - Phi phi - 2 U N_ell[U phi],
/// with N_ell the multipole reduction of the Coulomb kernel. Symmetric 3-point
/// discretization in v = r phi coordinates, dense eigensolve.
std::vector<SectorSpectrum> linearized_spectrum(const RadialProfile& p, int ell_max, int k,
                                                const SpectrumParams& params = {});

/// 4th-order cumulative integrals used by the radial machinery:
/// out[i] = int_{x_0}^{x_i} f dx on a uniform grid with spacing h.
std::vector<double> cumulative_integral(const std::vector<double>& f, double h);

}  // namespace scn
