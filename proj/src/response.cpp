#include "duetherm/response.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>

namespace duetherm {

cplx denominator(const EngineParams& p, cplx omega) {
  double wa2 = p.omega_a * p.omega_a, wb2 = p.omega_b * p.omega_b;
  cplx w2 = omega * omega;
  return (w2 - wa2) * (w2 - wb2) +
         cplx(0.0, 1.0) * omega * p.gamma2 * (2.0 * w2 - wa2 - wb2);
}

Chi chi(const EngineParams& p, double omega) {
  double wa2 = p.omega_a * p.omega_a, wb2 = p.omega_b * p.omega_b;
  cplx igw(0.0, omega * p.gamma2);
  double a = omega * omega - wa2;
  double b = omega * omega - wb2;
  if (p.topology == Topology::Independent)
    return {-1.0 / (a + igw), cplx(0.0, 0.0), -1.0 / (b + igw)};
  cplx d = a * b + igw * (a + b);
  return {-(b + igw) / d, igw / d, -(a + igw) / d};
}

ChiIm chi_im_over_omega(const EngineParams& p, double omega) {
  double wa2 = p.omega_a * p.omega_a, wb2 = p.omega_b * p.omega_b;
  double w2 = omega * omega;
  double a = w2 - wa2;
  double b = w2 - wb2;
  double g2 = p.gamma2;
  if (p.topology == Topology::Independent) {
    double gw = omega * g2;
    return {g2 / (a * a + gw * gw), 0.0, g2 / (b * b + gw * gw)};
  }
  double s = a + b;
  double dre = a * b;
  double dim = omega * g2 * s;
  double inv = g2 / (dre * dre + dim * dim);
  return {inv * b * b, inv * a * b, inv * a * a};
}

ChiIm chi_im(const EngineParams& p, double omega) {
  ChiIm r = chi_im_over_omega(p, omega);
  return {omega * r.aa, omega * r.ab, omega * r.bb};
}

double finite_eigenvalue(const EngineParams& p, double omega) {
  ChiIm r = chi_im(p, omega);
  return r.aa + r.bb;
}

double chi_eff_im(const EngineParams& p, double omega, double phi) {
  ChiIm r = chi_im(p, omega);
  if (p.topology == Topology::Independent) return r.aa + r.bb;
  return r.aa + r.bb + 2.0 * std::cos(phi) * r.ab;
}

double chi_eff_im_over_omega(const EngineParams& p, double omega, double phi) {
  ChiIm r = chi_im_over_omega(p, omega);
  if (p.topology == Topology::Independent) return r.aa + r.bb;
  return r.aa + r.bb + 2.0 * std::cos(phi) * r.ab;
}

std::array<cplx, 4> normal_modes(const EngineParams& p) {
  std::array<cplx, 4> roots;
  double wa2 = p.omega_a * p.omega_a, wb2 = p.omega_b * p.omega_b;
  if (p.topology == Topology::Independent) {
    int k = 0;
    for (double wl2 : {wa2, wb2}) {
      cplx s = std::sqrt(cplx(wl2 - 0.25 * p.gamma2 * p.gamma2, 0.0));
      roots[k++] = s - cplx(0.0, 0.5 * p.gamma2);
      roots[k++] = -s - cplx(0.0, 0.5 * p.gamma2);
    }
  } else {
    // z^4 + 2i g2 z^3 - (wa2+wb2) z^2 - i g2 (wa2+wb2) z + wa2 wb2 = 0
    Eigen::Matrix4cd comp = Eigen::Matrix4cd::Zero();
    comp(0, 3) = -cplx(wa2 * wb2, 0.0);
    comp(1, 3) = -cplx(0.0, -p.gamma2 * (wa2 + wb2));
    comp(2, 3) = -cplx(-(wa2 + wb2), 0.0);
    comp(3, 3) = -cplx(0.0, 2.0 * p.gamma2);
    comp(1, 0) = comp(2, 1) = comp(3, 2) = 1.0;
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(comp, false);
    for (int i = 0; i < 4; ++i) roots[i] = es.eigenvalues()(i);
  }
  std::sort(roots.begin(), roots.end(), [](const cplx& x, const cplx& y) {
    double tol = 1e-12 * std::max(1.0, std::max(std::abs(x), std::abs(y)));
    if (std::abs(x.real() - y.real()) > tol) return x.real() > y.real();
    return x.imag() > y.imag();
  });
  return roots;
}

ChiIm chi_asymptotic(const EngineParams& p, double omega, DampingRegime regime) {
  double wa = p.omega_a, wb = p.omega_b, g2 = p.gamma2;
  double wa2 = wa * wa, wb2 = wb * wb;
  if (regime == DampingRegime::Weak || p.topology == Topology::Independent) {
    auto lor = [&](double wl2) {
      double a = omega * omega - wl2;
      double gw = g2 * omega;
      return g2 * omega / (a * a + gw * gw);
    };
    if (regime == DampingRegime::Weak) return {lor(wa2), 0.0, lor(wb2)};
    // overdamped independent pair: slow poles at -i wl^2/gamma2
    auto slow = [&](double wl2) {
      double w = wl2 / g2;
      return (g2 / (wl2 * wl2)) * omega * w * w / (omega * omega + w * w);
    };
    return {slow(wa2), 0.0, slow(wb2)};
  }
  double wbar = p.omega_bar();
  double d4 = p.delta4();
  double w1 = d4 / (4.0 * g2 * wbar * wbar);       // |z1''|
  double w2 = wa2 * wb2 / (2.0 * g2 * wbar * wbar);  // |z2''|
  double height = g2 * wbar / d4;
  auto lor = [&](double c) {
    double d = omega - c;
    return w1 * w1 / (d * d + w1 * w1);
  };
  double shared = height * (lor(wbar) - lor(-wbar));
  double zero = omega * w2 * w2 / (omega * omega + w2 * w2);
  return {shared + zero * g2 / (wa2 * wa2), -shared + zero * g2 / (wa2 * wb2),
          shared + zero * g2 / (wb2 * wb2)};
}

}  // namespace duetherm
