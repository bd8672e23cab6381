#pragma once
#include <array>
#include <complex>
#include <vector>

#include "duetherm/params.hpp"

namespace duetherm {

using cplx = std::complex<double>;

// Mass-stripped position response of the damped pair, 2x2 symmetric.
// The broadband damping enters as a constant gamma2 here; the finite-cutoff
// kernel matters only for the covariance integrals in the entangle module.
struct Chi {
  cplx aa, ab, bb;
};

// Entries of Im chi; exactly rank one for the joint topology.
struct ChiIm {
  double aa, ab, bb;
};

// D(w) = (w^2-wa^2)(w^2-wb^2) + i w gamma2 (2w^2-wa^2-wb^2), for complex w
cplx denominator(const EngineParams& p, cplx omega);

Chi chi(const EngineParams& p, double omega);
ChiIm chi_im(const EngineParams& p, double omega);
// chi_im entries divided by omega; rational in omega^2, finite everywhere
ChiIm chi_im_over_omega(const EngineParams& p, double omega);

// trace of Im chi (the non-null eigenvalue; the other is identically zero)
double finite_eigenvalue(const EngineParams& p, double omega);

// aa + bb + 2*cos(phi)*ab (joint); aa + bb (independent, phi ignored)
double chi_eff_im(const EngineParams& p, double omega, double phi);
double chi_eff_im_over_omega(const EngineParams& p, double omega, double phi);

// Complex normal-mode frequencies (two reflected pairs {z, -conj z}),
// sorted by descending real part, then descending imaginary part.
std::array<cplx, 4> normal_modes(const EngineParams& p);

enum class DampingRegime { Weak, Strong };

// Closed-form limiting Im chi evaluated at omega: weak damping gives the
// two isolated-oscillator Lorentzians; strong damping gives the shared-mode
// peaks at +-omega_bar plus the low-frequency dissipative feature.
ChiIm chi_asymptotic(const EngineParams& p, double omega, DampingRegime regime);

}  // namespace duetherm
