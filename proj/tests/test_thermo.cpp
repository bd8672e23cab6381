#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "duetherm/params.hpp"
#include "duetherm/thermo.hpp"

using namespace duetherm;

namespace {

constexpr double kPi = std::numbers::pi;

double rel_diff(double a, double b) {
  double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

EngineParams joint(double gamma2, double omega1) {
  EngineParams p;
  p.gamma2 = gamma2;
  p.omega1 = omega1;
  return p;
}

EngineParams indep(double gamma2, double omega1) {
  EngineParams p = joint(gamma2, omega1);
  p.topology = Topology::Independent;
  return p;
}

DriveSpectrum harmonics(double fundamental,
                        std::vector<std::array<double, 2>> coeffs) {
  DriveSpectrum d;
  d.fundamental = fundamental;
  d.coeffs = std::move(coeffs);
  d.norms = {drive_norm(d, 0), drive_norm(d, 1)};
  return d;
}

}  // namespace

TEST_CASE("monochromatic drive layout and norms") {
  DriveSpectrum d = monochromatic_drive(0.3);
  CHECK(d.fundamental == 0.3);
  REQUIRE(d.coeffs.size() == 1);
  CHECK(d.coeffs[0][0] == 0.5);
  CHECK(d.coeffs[0][1] == 0.5);
  CHECK(d.norms[0] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(drive_norm(d, 0) == doctest::Approx(d.norms[0]).epsilon(1e-15));
  CHECK(drive_norm(d, 1) == doctest::Approx(d.norms[1]).epsilon(1e-15));

  DriveSpectrum a = monochromatic_drive(0.3, true);
  CHECK(a.coeffs[0][1] == -0.5);
  CHECK(drive_norm(a, 1) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
}

TEST_CASE("pinned power values across damping regimes") {
  // moderate damping, in-phase drive, engine operating point
  CHECK(rel_diff(power_monochromatic(joint(0.1, 1.2), 0.2, 0.0),
                 -0.023168902615) <= 5e-6);

  // strong damping, antiphase drive on the shared-mode ridge
  {
    EngineParams p = joint(100.0, 0.0);
    p.omega1 = p.omega_bar() + 0.15;
    CHECK(rel_diff(power_monochromatic(p, 0.15, kPi), -0.863265446) <= 5e-6);
  }

  // separate baths, moderate damping
  CHECK(rel_diff(power_monochromatic(indep(0.1, 1.2), 0.2, 0.0),
                 -0.024771052248) <= 5e-6);

  // nearly undamped
  CHECK(rel_diff(power_monochromatic(joint(1e-4, 0.9), 0.25, 0.0),
                 -0.00071572770) <= 5e-6);
}

TEST_CASE("general drive reproduces the single-frequency result") {
  EngineParams p = joint(0.1, 1.2);
  double w = 0.2;
  CHECK(rel_diff(average_power(p, monochromatic_drive(w)),
                 power_monochromatic(p, w, 0.0)) <= 1e-10);
  CHECK(rel_diff(average_power(p, monochromatic_drive(w, true)),
                 power_monochromatic(p, w, kPi)) <= 1e-10);

  // a single populated third harmonic is the same as driving at 3x the base
  DriveSpectrum d = harmonics(w / 3.0, {{0.0, 0.0}, {0.0, 0.0}, {0.5, -0.5}});
  CHECK(rel_diff(average_power(p, d), power_monochromatic(p, w, kPi)) <= 1e-10);

  EngineParams q = indep(0.1, 1.2);
  CHECK(rel_diff(average_power(q, monochromatic_drive(w)),
                 power_monochromatic(q, w, 1.234)) <= 1e-10);
}

TEST_CASE("zero drive produces no power and no heat") {
  EngineParams p = joint(0.1, 1.2);
  DriveSpectrum d = harmonics(0.3, {{0.0, 0.0}, {0.0, 0.0}});
  CHECK(average_power(p, d) == 0.0);
  HeatCurrents h = heat_currents(p, d);
  CHECK(h.j1 == 0.0);
  CHECK(h.j2 == 0.0);
  ThermoReport r = report(p, d);
  CHECK_FALSE(r.engine);
  CHECK(std::isnan(r.eta));
}

TEST_CASE("engine operating point: current directions and efficiency") {
  EngineParams p = joint(0.1, 1.2);
  DriveSpectrum d = monochromatic_drive(0.2);
  ThermoReport r = report(p, d);
  CHECK(r.power < 0.0);
  CHECK(r.j1 > 0.0);
  CHECK(r.j2 < 0.0);
  CHECK(r.engine);
  CHECK(r.sigma > 0.0);
  CHECK(r.sigma ==
        doctest::Approx(-r.j1 / p.t1 - r.j2 / p.t2).epsilon(1e-12));
  double etac = p.carnot();
  CHECK(etac == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(r.eta > 0.0);
  CHECK(r.eta <= etac + 1e-12);
  CHECK(r.eta == doctest::Approx(-r.power / r.j1).epsilon(1e-12));
  CHECK(r.eta_ratio == doctest::Approx(r.eta / etac).epsilon(1e-12));
  // efficiency, dissipation, and power tie together
  CHECK(r.eta ==
        doctest::Approx(etac / (1.0 - r.sigma * p.t2 / r.power)).epsilon(1e-10));
}

TEST_CASE("energy balance and positive dissipation for random drives") {
  std::mt19937 gen(23);
  std::uniform_real_distribution<double> uw(0.05, 0.5);
  std::uniform_real_distribution<double> ug(-0.8, 0.8);
  std::uniform_int_distribution<int> upick(0, 2);
  double g2set[3] = {0.1, 1.0, 10.0};

  auto check_one = [&](const EngineParams& p, const DriveSpectrum& d) {
    double power = average_power(p, d);
    HeatCurrents h = heat_currents(p, d);
    double scale =
        std::abs(power) + std::abs(h.j1) + std::abs(h.j2) + 1e-18;
    CHECK(std::abs(power + h.j1 + h.j2) <= 1e-9 * scale);
    double sigma = -h.j1 / p.t1 - h.j2 / p.t2;
    double sscale = std::abs(h.j1 / p.t1) + std::abs(h.j2 / p.t2) + 1e-18;
    CHECK(sigma >= -1e-10 * sscale);
    if (power < 0.0 && h.j1 > 0.0)
      CHECK(-power / h.j1 <= p.carnot() + 1e-12);
  };

  for (int i = 0; i < 40; ++i) {
    EngineParams p = joint(g2set[upick(gen)], 1.2);
    if (i % 3 == 0) p.topology = Topology::Independent;
    check_one(p, monochromatic_drive(uw(gen), i % 2 == 1));
  }
  for (int i = 0; i < 15; ++i) {
    EngineParams p = joint(g2set[upick(gen)], 1.2);
    DriveSpectrum d = harmonics(
        uw(gen) * 0.5,
        {{ug(gen), ug(gen)}, {ug(gen), ug(gen)}, {ug(gen), ug(gen)}});
    check_one(p, d);
  }
}

TEST_CASE("drive sign flip and phase symmetries leave power unchanged") {
  EngineParams p = joint(0.1, 1.2);
  DriveSpectrum d = harmonics(0.15, {{0.4, -0.3}, {0.2, 0.5}});
  DriveSpectrum flipped = d;
  for (auto& c : flipped.coeffs) {
    c[0] = -c[0];
    c[1] = -c[1];
  }
  CHECK(average_power(p, d) == average_power(p, flipped));

  double w = 0.22, phi = 0.8;
  CHECK(power_monochromatic(p, w, phi) ==
        doctest::Approx(power_monochromatic(p, w, phi + 2.0 * kPi))
            .epsilon(1e-13));
  CHECK(power_monochromatic(p, w, phi) ==
        doctest::Approx(power_monochromatic(p, w, -phi)).epsilon(1e-13));

  // power is linear in cos(phi): interior phases interpolate the extremes
  double p0 = power_monochromatic(p, w, 0.0);
  double pmid = power_monochromatic(p, w, kPi / 2);
  double pthird = power_monochromatic(p, w, kPi / 3);
  CHECK(pthird ==
        doctest::Approx(pmid + 0.5 * (p0 - pmid)).epsilon(1e-10));
}

TEST_CASE("weak-damping closed form") {
  EngineParams p = joint(1e-4, 0.9);
  double w = 0.25;
  double closed = power_weak_limit(p, w);
  CHECK(rel_diff(closed, -0.00070931252) <= 1e-6);
  CHECK(rel_diff(power_monochromatic(p, w, 0.0), closed) <= 1e-2);
  // the cross response decays linearly in gamma2 with a large prefactor:
  // pin the measured in/antiphase gap here, and its vanishing further down
  double gap4 = rel_diff(power_monochromatic(p, w, 0.0),
                         power_monochromatic(p, w, kPi));
  CHECK(gap4 >= 0.03);
  CHECK(gap4 <= 0.10);
  EngineParams p6 = joint(1e-6, 0.9);
  CHECK(rel_diff(power_monochromatic(p6, w, 0.0),
                 power_monochromatic(p6, w, kPi)) <= 1e-3);

  CHECK(power_weak_limit(p, 0.0) == 0.0);

  // equal temperatures: only heating is possible
  EngineParams q = joint(1e-4, 0.9);
  q.t1 = q.t2 = 0.5;
  for (int k = 1; k <= 12; ++k) {
    double v = power_weak_limit(q, 0.05 * k);
    CHECK(v >= -1e-12 * std::abs(v == 0.0 ? 1.0 : v));
  }
}

TEST_CASE("strong-damping closed forms") {
  // in-phase / separate-bath limit is always heating
  {
    EngineParams p = indep(1e4, 0.9);
    for (int k = 1; k <= 12; ++k) CHECK(power_strong_zero(p, 0.05 * k) > 0.0);
    double quad = power_monochromatic(p, 0.45, 0.0);
    CHECK(rel_diff(quad, 0.0041608831) <= 5e-6);
    CHECK(rel_diff(quad, power_strong_zero(p, 0.45)) <= 1e-2);
  }

  // antiphase limit on the shared-mode ridge extracts work
  {
    EngineParams p = joint(1e4, 0.0);
    p.omega1 = p.omega_bar() + 0.3;
    double quad = power_monochromatic(p, 0.3, kPi);
    CHECK(rel_diff(quad, -0.572388389) <= 5e-6);
    double closed = power_strong_pi(p, 0.3);
    CHECK(closed < 0.0);
    CHECK(rel_diff(quad, closed) <= 5e-3);
  }

  // at gamma2 = 100 the limiting forms are still far from the quadrature:
  // pin the measured deviation bands so silent drift is caught either way
  {
    EngineParams p = indep(100.0, 1.3);
    double dev = rel_diff(power_monochromatic(p, 0.2, 0.0),
                          power_strong_zero(p, 0.2));
    CHECK(dev >= 0.05);
    CHECK(dev <= 0.20);
  }
  {
    EngineParams p = joint(100.0, 1.3);
    double dev = rel_diff(power_monochromatic(p, 0.2, 0.0),
                          power_strong_zero(p, 0.2));
    CHECK(dev >= 0.02);
    CHECK(dev <= 0.10);
  }
}

TEST_CASE("three-cycle works and their closed combination") {
  EngineParams p = joint(1e4, 0.4);
  p.gamma1 = 1e-3;
  double w1s = 0.4;
  double wbar = p.omega_bar();
  double j1_peak = p.d1 / (p.gamma1 * w1s);  // filter evaluated on its peak
  double denom = wbar * wbar * wbar * wbar - p.delta4();

  WorksReport rpi = works_and_delta(p, w1s, kPi);
  CHECK(rpi.delta_w == doctest::Approx(rpi.w2 + rpi.w3 - rpi.w1).epsilon(1e-12));
  double closed_pi = (kPi / (p.m * wbar)) *
                     (1.0 / std::tanh(wbar / (2.0 * p.t2)) +
                      2.0 * p.t2 * p.delta4() / (wbar * denom)) *
                     j1_peak;
  CHECK(rpi.delta_w_closed == doctest::Approx(closed_pi).epsilon(1e-12));
  CHECK(rel_diff(rpi.delta_w, rpi.delta_w_closed) <= 2e-2);

  WorksReport r0 = works_and_delta(p, w1s, 0.0);
  double closed_0 = (2.0 * kPi * p.t2 / p.m) * wbar * wbar / denom * j1_peak;
  CHECK(r0.delta_w_closed == doctest::Approx(closed_0).epsilon(1e-12));
  // in-phase: the sideband cycles die out, the central cycle carries it all
  CHECK(std::abs(r0.w1) <= 0.08 * std::abs(r0.w2));
  CHECK(std::abs(r0.w3) <= 0.08 * std::abs(r0.w2));
  // measured gap of the quadrature against the limiting form, pinned as a band
  double dev0 = rel_diff(r0.delta_w, r0.delta_w_closed);
  CHECK(dev0 >= 0.03);
  CHECK(dev0 <= 0.07);
}

TEST_CASE("power map geometry, phase choice, and determinism") {
  GridSpec grid;
  grid.omega_drive_max = 0.45;
  grid.omega_drive_points = 9;
  grid.omega1_max = 1.8;
  grid.omega1_points = 9;

  EngineParams p = joint(0.1, 1.2);
  auto map = power_map(p, grid);
  REQUIRE(map.size() == 81);
  // half-open grid: no zero row/column, maxima included
  double w1_max = 0.0, wd_max = 0.0;
  for (const auto& c : map) {
    CHECK(c.omega1 > 0.0);
    CHECK(c.omega_drive > 0.0);
    w1_max = std::max(w1_max, c.omega1);
    wd_max = std::max(wd_max, c.omega_drive);
  }
  CHECK(w1_max == doctest::Approx(1.8).epsilon(1e-12));
  CHECK(wd_max == doctest::Approx(0.45).epsilon(1e-12));

  const MapPoint* best = &map[0];
  for (const auto& c : map)
    if (c.p_tilde < best->p_tilde) best = &c;
  CHECK(best->p_tilde < 0.0);
  double direct = power_monochromatic(joint(0.1, best->omega1),
                                      best->omega_drive, best->phi_star) *
                  p.omega_a * p.omega_a / p.d1;
  CHECK(best->p_tilde == doctest::Approx(direct).epsilon(1e-12));

  // the moderate-damping optimum is in phase, on the omega_b + Omega ridge;
  // this needs cells within ~2 gamma1 of the ridge, hence the finer sweep
  GridSpec ridge;
  ridge.omega1_max = 1.2;
  ridge.omega1_points = 24;
  ridge.omega_drive_max = 0.3;
  ridge.omega_drive_points = 6;
  auto mr = power_map(p, ridge);
  const MapPoint* rbest = &mr[0];
  for (const auto& c : mr)
    if (c.p_tilde < rbest->p_tilde) rbest = &c;
  CHECK(rbest->p_tilde < 0.0);
  CHECK(rbest->phi_star == 0.0);
  CHECK(std::abs(rbest->omega1 - rbest->omega_drive - p.omega_b) <=
        2.0 * p.gamma1 + 1e-12);

  EngineParams ps = joint(100.0, 1.2);
  auto maps = power_map(ps, grid);
  const MapPoint* bests = &maps[0];
  for (const auto& c : maps)
    if (c.p_tilde < bests->p_tilde) bests = &c;
  CHECK(bests->p_tilde < 0.0);
  CHECK(bests->phi_star == doctest::Approx(kPi).epsilon(1e-15));

  GridSpec small;
  small.omega_drive_points = 4;
  small.omega1_points = 4;
  small.omega_drive_max = 0.4;
  small.omega1_max = 1.6;
  EngineParams pi_ = indep(0.1, 1.2);
  auto mi = power_map(pi_, small);
  for (const auto& c : mi) CHECK(c.phi_star == 0.0);  // phase is moot

  auto m1 = power_map(p, small, {0.0, kPi}, 1);
  auto m2 = power_map(p, small, {0.0, kPi}, 2);
  REQUIRE(m1.size() == m2.size());
  for (size_t i = 0; i < m1.size(); ++i) {
    CHECK(m1[i].p_tilde == m2[i].p_tilde);
    CHECK(m1[i].phi_star == m2[i].phi_star);
  }
}
