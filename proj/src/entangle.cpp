#include "duetherm/entangle.hpp"

#include <cmath>

#include "duetherm/integrate.hpp"
#include "duetherm/response.hpp"

namespace duetherm {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Peak> covariance_peaks(const EngineParams& p) {
  std::vector<Peak> peaks = peak_breakpoints(p, 0.0);
  peaks.push_back({p.omega_c, p.omega_c});
  peaks.push_back({-p.omega_c, p.omega_c});
  return peaks;
}

// Im chi / omega with the finite-cutoff kernel gamma2/(1 - i w/w_c) kept
// inside the denominator; regularizes the momentum correlators.
ChiIm drude_chi_im_over_omega(const EngineParams& p, double omega) {
  double wa2 = p.omega_a * p.omega_a, wb2 = p.omega_b * p.omega_b;
  double w2 = omega * omega;
  double a = w2 - wa2;
  double b = w2 - wb2;
  double u = omega / p.omega_c;
  double gp = p.gamma2 / (1.0 + u * u);
  if (p.topology == Topology::Independent) {
    double shift = gp * w2 / p.omega_c;
    double da = a - shift, db = b - shift;
    double dim = omega * gp;
    return {gp / (da * da + dim * dim), 0.0, gp / (db * db + dim * dim)};
  }
  double s = a + b;
  double dre = a * b - gp * w2 * s / p.omega_c;
  double dim = omega * gp * s;
  double inv = gp / (dre * dre + dim * dim);
  return {inv * b * b, inv * a * b, inv * a * a};
}

}  // namespace

GaussianState covariance(const EngineParams& p) {
  if (!std::isfinite(p.omega_c))
    throw std::invalid_argument("momentum correlators need a finite cutoff");
  GaussianState st;
  st.cutoff = p.omega_c;
  auto peaks = covariance_peaks(p);
  auto entry = [&](int e) {
    return [&, e](double w) {
      ChiIm c = drude_chi_im_over_omega(p, w);
      double ce = e == 0 ? c.aa : e == 1 ? c.ab : c.bb;
      return 2.0 * p.t2 * xcoth(w / (2.0 * p.t2)) * ce;
    };
  };
  double xs[3], ps[3];
  for (int e = 0; e < 3; ++e) {
    auto f = entry(e);
    if (p.topology == Topology::Independent && e == 1) {
      xs[e] = ps[e] = 0.0;
      continue;
    }
    xs[e] = integrate_line(f, peaks).value / (2.0 * kPi * p.m);
    ps[e] = integrate_line([&](double w) { return w * w * f(w); }, peaks).value * p.m /
            (2.0 * kPi);
  }
  st.cov[0][0] = xs[0];
  st.cov[0][2] = st.cov[2][0] = xs[1];
  st.cov[2][2] = xs[2];
  st.cov[1][1] = ps[0];
  st.cov[1][3] = st.cov[3][1] = ps[1];
  st.cov[3][3] = ps[2];
  return st;
}

SymplecticResult symplectic_nu(const GaussianState& state) {
  const auto& c = state.cov;
  double det_a = c[0][0] * c[1][1] - c[0][1] * c[1][0];
  double det_b = c[2][2] * c[3][3] - c[2][3] * c[3][2];
  double det_g = c[0][2] * c[1][3] - c[0][3] * c[1][2];
  double det_x = c[0][0] * c[2][2] - c[0][2] * c[0][2];
  double det_p = c[1][1] * c[3][3] - c[1][3] * c[1][3];
  double det_sigma = det_x * det_p;
  double delta = det_a + det_b - 2.0 * det_g;
  double disc = delta * delta - 4.0 * det_sigma;
  if (disc < -1e-10) throw NonPhysical();
  // smaller root of nu^4 - delta nu^2 + det = 0, in the cancellation-free form
  double nu2 = 2.0 * det_sigma / (delta + std::sqrt(std::max(disc, 0.0)));
  double nu = std::sqrt(nu2);
  return {nu, std::max(0.0, -std::log(2.0 * nu))};
}

GaussianState gaussian_state(const EngineParams& p) {
  GaussianState st = covariance(p);
  SymplecticResult r = symplectic_nu(st);
  st.nu_tilde = r.nu_tilde;
  st.log_negativity = r.log_negativity;
  return st;
}

double nu_strong_closed(const EngineParams& p) {
  double wbar = p.omega_bar();
  double d4 = p.delta4();
  double wbar4 = wbar * wbar * wbar * wbar;
  double ct = coth(wbar / (2.0 * p.t2));
  double num = wbar * wbar * wbar * p.t2 * ct * ct / (2.0 * (wbar4 - d4));
  double den = ct + 2.0 * p.t2 * d4 / (wbar * (wbar4 - d4));
  return std::sqrt(num / den);
}

double critical_temperature(const EngineParams& p, CriticalMode mode) {
  auto nu_at = [&](double t) {
    EngineParams q = p;
    q.t2 = t;
    return mode == CriticalMode::Exact ? symplectic_nu(covariance(q)).nu_tilde
                                       : nu_strong_closed(q);
  };
  double lo = 1e-6, hi = 2.0 * p.omega_a;
  if (nu_at(lo) >= 0.5) throw NoRoot("no entanglement down to T = 1e-6");
  if (nu_at(hi) < 0.5) throw NoRoot("still entangled at T = 2 omega_a");
  while (hi - lo > 1e-6) {
    double mid = 0.5 * (lo + hi);
    (nu_at(mid) < 0.5 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double nu_from_works(double delta_w_0, double delta_w_pi, double t2, double hybrid) {
  if (!(delta_w_0 > 0.0) || !(delta_w_pi > 0.0)) throw NonPositiveWork();
  double ct = coth(hybrid / (2.0 * t2));
  return 0.25 * ct * ct * delta_w_0 / delta_w_pi;
}

}  // namespace duetherm
