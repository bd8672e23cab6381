#pragma once
#include <array>
#include <stdexcept>
#include <vector>

#include "duetherm/thermo.hpp"

namespace duetherm {

// 2x2 real symmetric block
struct Sym2 {
  double aa, ab, bb;
};

// Power and entropy rate as block-diagonal quadratic forms over the drive
// coefficients: P(g) = sum_n g_n . Ip_n . g_n, sigma(g) likewise.
struct QuadraticForms {
  EngineParams params;
  double fundamental;
  int n_max;
  std::vector<Sym2> ip_blocks;
  std::vector<Sym2> isigma_blocks;
};

class FundamentalMismatch : public std::invalid_argument {
 public:
  FundamentalMismatch() : std::invalid_argument("drive fundamental does not match forms") {}
};

// allow_wide_band lifts the default n_max*Omega <= omega_a/2 band limit
QuadraticForms build_forms(const EngineParams& p, double omega_drive, int n_max,
                           bool allow_wide_band = false, int threads = 1);

struct PowerSigma {
  double power, sigma;
};
PowerSigma evaluate(const QuadraticForms& forms, const DriveSpectrum& g);

struct OptimizeResult {
  DriveSpectrum drive;
  double power;
  double sigma;
  bool converged;
};

// Penalty-method maximization of -P at fixed entropy rate: norm-projected
// coefficients driven by Adam, Lagrange multiplier exp(beta) driven by the
// log-ratio of achieved to target entropy.
OptimizeResult optimize_point(const QuadraticForms& forms, double sigma_target,
                              const std::array<double, 2>& norms, unsigned long seed);

// Same machinery without the entropy constraint (max -P / min sigma).
OptimizeResult optimize_power(const QuadraticForms& forms,
                              const std::array<double, 2>& norms, unsigned long seed);
double estimate_sigma_min(const QuadraticForms& forms, const std::array<double, 2>& norms,
                          unsigned long seed);

// Log-spaced entropy targets ending at the max-power entropy rate, floored
// just above the reachable minimum.
std::vector<double> sigma_ladder(const QuadraticForms& forms,
                                 const std::array<double, 2>& norms, unsigned long seed,
                                 int rungs = 24);

struct FrontPoint {
  double sigma;
  double neg_power;
  double eta;  // NaN unless engine
  DriveSpectrum drive;
  bool converged;
};

struct ParetoFront {
  std::vector<FrontPoint> all_points;  // best-of-seeds per rung, sorted by sigma
  std::vector<FrontPoint> points;      // converged, dominance-filtered in (sigma, -P)
  std::vector<FrontPoint> eta_points;  // engine subset re-filtered in (eta, -P)
};

ParetoFront pareto_front(const QuadraticForms& forms, const std::vector<double>& sigma_ladder,
                         const std::array<double, 2>& norms, int seeds,
                         unsigned long base_seed = 42, int threads = 1);

struct SupportReport {
  int count;
  std::vector<double> frequencies;  // mass-weighted cluster centres, in omega units
};

// Smallest harmonic set carrying mass_fraction of the squared norm, with
// harmonics at most 3 grid steps apart merged into one cluster.
SupportReport spectral_support(const DriveSpectrum& g, double mass_fraction);

}  // namespace duetherm
