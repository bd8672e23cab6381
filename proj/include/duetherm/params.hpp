#pragma once
#include <cmath>
#include <string>
#include <vector>

namespace duetherm {

enum class Topology { Joint, Independent };

// Two oscillators A, B damped by a broadband bath (strength gamma2, Drude
// cutoff omega_c) and probed through a narrow Lorentzian filter centred at
// omega1 (weight d1, width gamma1).  Units: omega_a = m = 1.
struct EngineParams {
  double omega_a = 1.0;
  double omega_b = 0.6;
  double gamma2 = 0.1;
  double omega_c = 1e3;
  double t1 = 0.6;
  double t2 = 0.4;
  double d1 = 1.0;
  double gamma1 = 0.01;
  double omega1 = 0.9;
  double m = 1.0;
  Topology topology = Topology::Joint;

  // sqrt((omega_a^2 + omega_b^2)/2): shared mode frequency at strong damping
  double omega_bar() const { return std::sqrt(0.5 * (omega_a * omega_a + omega_b * omega_b)); }
  // (omega_a^2 - omega_b^2)/2: detuning scale; delta4() is its square
  double delta_sq() const { return 0.5 * (omega_a * omega_a - omega_b * omega_b); }
  double delta4() const { double d = delta_sq(); return d * d; }
  double carnot() const { return 1.0 - t2 / t1; }
};

// Pick a Drude cutoff that keeps it well above every other scale.
double default_omega_c(double omega_a, double gamma2);

// Every violated constraint produces one diagnostic; empty means valid.
std::vector<std::string> validate_params(const EngineParams& p);

// Parse a JSON object with keys omega_b, gamma2, omega_c, t1, t2, d1,
// gamma1, omega1, topology (all optional; missing ones keep defaults,
// omega_c defaults from gamma2).  Unknown keys and malformed input are
// reported through `errors`.
EngineParams params_from_json(const std::string& text, std::vector<std::string>& errors);
std::string params_to_json(const EngineParams& p);

double coth(double x);
// x*coth(x), series near 0 so products with vanishing factors stay finite
double xcoth(double x);

// coth((omega+shift)/2T1) - coth(omega/2T2); sign selects engine vs heater
double thermal_factor(double omega, double shift, double t1, double t2);

// filter bath: J1(w) = d1*gamma1*w / ((w^2-omega1^2)^2 + gamma1^2 w^2)
double spectral_density_1(const EngineParams& p, double w);
double spectral_density_1_over_w(const EngineParams& p, double w);
// broadband bath: J2(w) = m*gamma2*w / (1 + (w/omega_c)^2)
double spectral_density_2(const EngineParams& p, double w);

}  // namespace duetherm
