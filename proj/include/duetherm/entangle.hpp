#pragma once
#include <array>
#include <stdexcept>

#include "duetherm/params.hpp"

namespace duetherm {

// Steady-state Gaussian state of the pair under the broadband bath alone.
// Covariance ordering (x_A, p_A, x_B, p_B); x-p blocks vanish identically.
struct GaussianState {
  std::array<std::array<double, 4>, 4> cov{};
  double nu_tilde = 0.0;
  double log_negativity = 0.0;
  double cutoff = 0.0;
};

class NonPhysical : public std::runtime_error {
 public:
  NonPhysical() : std::runtime_error("covariance matrix violates the symplectic bound") {}
};

class NoRoot : public std::runtime_error {
 public:
  explicit NoRoot(const char* what) : std::runtime_error(what) {}
};

class NonPositiveWork : public std::invalid_argument {
 public:
  NonPositiveWork() : std::invalid_argument("both work combinations must be positive") {}
};

// Position/momentum correlators by quadrature (finite cutoff required:
// momenta diverge logarithmically otherwise).  nu fields left unset.
GaussianState covariance(const EngineParams& p);

struct SymplecticResult {
  double nu_tilde;
  double log_negativity;
};

// Partial-transpose symplectic eigenvalue and E_n = max(0, -ln(2 nu)).
SymplecticResult symplectic_nu(const GaussianState& state);

// covariance + symplectic_nu with the result fields filled in
GaussianState gaussian_state(const EngineParams& p);

// strong-damping closed form for nu_tilde
double nu_strong_closed(const EngineParams& p);

enum class CriticalMode { Exact, StrongLimit };

// Temperature where nu_tilde crosses 1/2, bisected to 1e-6 in (0, 2 omega_a].
double critical_temperature(const EngineParams& p, CriticalMode mode);

// nu_tilde^2 estimated from the two work combinations
double nu_from_works(double delta_w_0, double delta_w_pi, double t2, double hybrid);

}  // namespace duetherm
