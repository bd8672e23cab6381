#pragma once
#include <array>
#include <numbers>
#include <vector>

#include "duetherm/integrate.hpp"
#include "duetherm/params.hpp"

namespace duetherm {

// Periodic coupling modulation c_l(t) = sum_n g_n^(l) exp(i n Omega t) with
// real coefficients, stored one-sided (n >= 1, g_{-n} = g_n, g_0 = 0).
// Norm targets follow the two-sided count: sum_{n != 0} |g_n^(l)|^2 = norm_l^2.
struct DriveSpectrum {
  double fundamental = 0.0;
  std::vector<std::array<double, 2>> coeffs;  // [n-1][l], l: 0 = A, 1 = B
  std::array<double, 2> norms{0.0, 0.0};
};

// g_1^(l) = 1/2 for both oscillators; antiphase flips the sign on B.
DriveSpectrum monochromatic_drive(double omega_drive, bool antiphase = false);
// two-sided norm actually carried by the coefficients of oscillator l
double drive_norm(const DriveSpectrum& d, int l);

struct HeatCurrents {
  double j1, j2;
};

struct ThermoReport {
  double power;
  double j1, j2;
  double sigma;
  double eta;       // NaN unless engine
  double eta_ratio;  // eta / (1 - t2/t1)
  bool engine;       // P < 0 and J1 > 0
};

double average_power(const EngineParams& p, const DriveSpectrum& d);
HeatCurrents heat_currents(const EngineParams& p, const DriveSpectrum& d);
ThermoReport report(const EngineParams& p, const DriveSpectrum& d);

double power_monochromatic(const EngineParams& p, double omega_drive, double phi);

// closed forms in the limiting damping regimes
double power_weak_limit(const EngineParams& p, double omega_drive);
double power_strong_pi(const EngineParams& p, double omega_drive);
double power_strong_zero(const EngineParams& p, double omega_drive);

struct WorksReport {
  double w1, w2, w3;      // cycle works at Omega = wbar-w1*, w1*, wbar+w1*
  double delta_w;         // w2 + w3 - w1, by quadrature
  double delta_w_closed;  // analytic strong-damping combination
};
WorksReport works_and_delta(const EngineParams& p, double omega1_star, double phi);

struct GridSpec {
  double omega_drive_max = 1.2;
  int omega_drive_points = 200;
  double omega1_max = 2.0;
  int omega1_points = 200;
};

struct MapPoint {
  double omega1, omega_drive;
  double p_tilde;  // P * omega_a^2 / d1, minimized over the phase set
  double phi_star;
};

// Dense (omega1, Omega) sweep; at each cell keeps the most negative power
// over the phase set.  Rows are split across threads; cells are pure.
std::vector<MapPoint> power_map(const EngineParams& p, const GridSpec& grid,
                                const std::vector<double>& phi_set = {0.0, std::numbers::pi},
                                int threads = 1);

}  // namespace duetherm
