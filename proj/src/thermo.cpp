#include "duetherm/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "duetherm/response.hpp"

namespace duetherm {

namespace {

constexpr double kPi = std::numbers::pi;

// J1(w+s) * N(w,s) * profile(w), written so that every factor stays finite:
// the coth poles at w = 0 and w = -s are absorbed into x*coth(x) products
// with the rational J1(x)/x and profile(w)/w forms.
struct SafeBracket {
  const EngineParams& p;
  double shift;

  template <typename Profile, typename ProfileOverW>
  double operator()(double w, const Profile& q, const ProfileOverW& q_over) const {
    double hot = 2.0 * p.t1 * xcoth((w + shift) / (2.0 * p.t1)) *
                 spectral_density_1_over_w(p, w + shift) * q(w);
    double cold = 2.0 * p.t2 * xcoth(w / (2.0 * p.t2)) *
                  spectral_density_1(p, w + shift) * q_over(w);
    return hot - cold;
  }
};

struct HarmonicIntegrals {
  double plain;     // int J1 N q
  double weighted;  // int w J1 N q
};

HarmonicIntegrals harmonic_integrals(const EngineParams& p, double shift,
                                     const std::array<double, 2>& g) {
  double ga = g[0], gb = g[1];
  auto q = [&](double w) {
    ChiIm c = chi_im(p, w);
    return ga * ga * c.aa + 2.0 * ga * gb * c.ab + gb * gb * c.bb;
  };
  auto q_over = [&](double w) {
    ChiIm c = chi_im_over_omega(p, w);
    return ga * ga * c.aa + 2.0 * ga * gb * c.ab + gb * gb * c.bb;
  };
  SafeBracket bracket{p, shift};
  auto peaks = peak_breakpoints(p, shift);
  double plain = integrate_line([&](double w) { return bracket(w, q, q_over); }, peaks).value;
  double weighted =
      integrate_line([&](double w) { return w * bracket(w, q, q_over); }, peaks).value;
  return {plain, weighted};
}

}  // namespace

DriveSpectrum monochromatic_drive(double omega_drive, bool antiphase) {
  DriveSpectrum d;
  d.fundamental = omega_drive;
  d.coeffs = {{0.5, antiphase ? -0.5 : 0.5}};
  d.norms = {std::sqrt(0.5), std::sqrt(0.5)};
  return d;
}

double drive_norm(const DriveSpectrum& d, int l) {
  double s = 0.0;
  for (const auto& g : d.coeffs) s += g[l] * g[l];
  return std::sqrt(2.0 * s);
}

double average_power(const EngineParams& p, const DriveSpectrum& d) {
  double total = 0.0;
  for (size_t i = 0; i < d.coeffs.size(); ++i) {
    const auto& g = d.coeffs[i];
    if (g[0] == 0.0 && g[1] == 0.0) continue;
    double s = (double)(i + 1) * d.fundamental;
    total += -(s / (kPi * p.m)) * harmonic_integrals(p, s, g).plain;
  }
  return total;
}

HeatCurrents heat_currents(const EngineParams& p, const DriveSpectrum& d) {
  double j1 = 0.0, j2 = 0.0;
  for (size_t i = 0; i < d.coeffs.size(); ++i) {
    const auto& g = d.coeffs[i];
    if (g[0] == 0.0 && g[1] == 0.0) continue;
    double s = (double)(i + 1) * d.fundamental;
    HarmonicIntegrals h = harmonic_integrals(p, s, g);
    j1 += (1.0 / (kPi * p.m)) * (h.weighted + s * h.plain);
    j2 += -(1.0 / (kPi * p.m)) * h.weighted;
  }
  return {j1, j2};
}

ThermoReport report(const EngineParams& p, const DriveSpectrum& d) {
  ThermoReport r{};
  r.power = average_power(p, d);
  HeatCurrents j = heat_currents(p, d);
  r.j1 = j.j1;
  r.j2 = j.j2;
  r.sigma = -r.j1 / p.t1 - r.j2 / p.t2;
  r.engine = r.power < 0.0 && r.j1 > 0.0;
  double eta_c = p.carnot();
  if (r.engine) {
    r.eta = -r.power / r.j1;
    r.eta_ratio = r.eta / eta_c;
  } else {
    r.eta = std::numeric_limits<double>::quiet_NaN();
    r.eta_ratio = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

double power_monochromatic(const EngineParams& p, double omega_drive, double phi) {
  double s = omega_drive;
  auto q = [&](double w) { return chi_eff_im(p, w, phi); };
  auto q_over = [&](double w) { return chi_eff_im_over_omega(p, w, phi); };
  SafeBracket bracket{p, s};
  auto peaks = peak_breakpoints(p, s);
  double integral =
      integrate_line([&](double w) { return bracket(w, q, q_over); }, peaks).value;
  return -omega_drive / (4.0 * kPi * p.m) * integral;
}

double power_weak_limit(const EngineParams& p, double omega_drive) {
  double total = 0.0;
  for (double wl : {p.omega_a, p.omega_b}) {
    for (double sgn : {1.0, -1.0}) {
      total += sgn * spectral_density_1(p, sgn * wl + omega_drive) *
               thermal_factor(sgn * wl, omega_drive, p.t1, p.t2) / wl;
    }
  }
  return -omega_drive / (8.0 * p.m) * total;
}

double power_strong_zero(const EngineParams& p, double omega_drive) {
  double wa2 = p.omega_a * p.omega_a, wb2 = p.omega_b * p.omega_b;
  return omega_drive * p.t2 * spectral_density_1(p, omega_drive) *
         (1.0 / wa2 + 1.0 / wb2) / (2.0 * p.m);
}

double power_strong_pi(const EngineParams& p, double omega_drive) {
  double wa2 = p.omega_a * p.omega_a, wb2 = p.omega_b * p.omega_b;
  double wbar = p.omega_bar();
  double diff = wb2 - wa2;
  double even = p.t2 * diff * diff / (wbar * wa2 * wb2) *
                spectral_density_1(p, omega_drive);
  double odd = 0.0;
  for (double sgn : {1.0, -1.0})
    odd += sgn * spectral_density_1(p, sgn * wbar + omega_drive) *
           thermal_factor(sgn * wbar, omega_drive, p.t1, p.t2);
  return omega_drive / (4.0 * p.m * wbar) * (even - odd);
}

WorksReport works_and_delta(const EngineParams& p, double omega1_star, double phi) {
  EngineParams q = p;
  q.omega1 = omega1_star;
  double wbar = q.omega_bar();
  double omegas[3] = {wbar - omega1_star, omega1_star, wbar + omega1_star};
  double w[3];
  for (int i = 0; i < 3; ++i)
    w[i] = (2.0 * kPi / omegas[i]) * power_monochromatic(q, omegas[i], phi);
  WorksReport out{};
  out.w1 = w[0];
  out.w2 = w[1];
  out.w3 = w[2];
  out.delta_w = w[1] + w[2] - w[0];
  double d4 = q.delta4();
  double wbar4 = wbar * wbar * wbar * wbar;
  double j1s = spectral_density_1(q, omega1_star);
  if (std::cos(phi) >= 0.0) {
    out.delta_w_closed = (2.0 * kPi * q.t2 / q.m) * wbar * wbar / (wbar4 - d4) * j1s;
  } else {
    out.delta_w_closed = kPi / (q.m * wbar) *
                         (coth(wbar / (2.0 * q.t2)) +
                          2.0 * q.t2 * d4 / (wbar * (wbar4 - d4))) *
                         j1s;
  }
  return out;
}

std::vector<MapPoint> power_map(const EngineParams& p, const GridSpec& grid,
                                const std::vector<double>& phi_set, int threads) {
  int ni = grid.omega1_points, nj = grid.omega_drive_points;
  std::vector<MapPoint> table((size_t)ni * nj);
  std::vector<double> phis = phi_set;
  if (p.topology == Topology::Independent) phis = {0.0};
  double scale = p.omega_a * p.omega_a / p.d1;
  auto run_rows = [&](int tid, int nthreads) {
    for (int i = tid; i < ni; i += nthreads) {
      double omega1 = grid.omega1_max * (i + 1) / ni;
      EngineParams q = p;
      q.omega1 = omega1;
      for (int j = 0; j < nj; ++j) {
        double omega_drive = grid.omega_drive_max * (j + 1) / nj;
        double best = std::numeric_limits<double>::infinity();
        double best_phi = phis.front();
        for (double phi : phis) {
          double val = power_monochromatic(q, omega_drive, phi);
          if (val < best) {
            best = val;
            best_phi = phi;
          }
        }
        table[(size_t)i * nj + j] = {omega1, omega_drive, best * scale, best_phi};
      }
    }
  };
  int nthreads = std::max(1, std::min(threads, ni));
  if (nthreads == 1) {
    run_rows(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(run_rows, t, nthreads);
    for (auto& th : pool) th.join();
  }
  return table;
}

}  // namespace duetherm
