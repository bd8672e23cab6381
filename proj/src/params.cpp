#include "duetherm/params.hpp"

#include <json.hpp>

#include <limits>

namespace duetherm {

double default_omega_c(double omega_a, double gamma2) {
  return std::max(1e3, 100.0 * std::max(omega_a, gamma2));
}

std::vector<std::string> validate_params(const EngineParams& p) {
  std::vector<std::string> errs;
  auto positive = [&](double v, const char* name) {
    if (!(v > 0.0)) errs.push_back(std::string(name) + " must be positive");
  };
  positive(p.omega_a, "omega_a");
  positive(p.omega_b, "omega_b");
  positive(p.gamma2, "gamma2");
  positive(p.t1, "t1");
  positive(p.t2, "t2");
  positive(p.d1, "d1");
  positive(p.gamma1, "gamma1");
  positive(p.omega1, "omega1");
  positive(p.m, "m");
  if (p.omega_b > 0.0 && p.omega_a > 0.0 && std::abs(p.omega_a - p.omega_b) < 1e-9)
    errs.push_back("omega_a and omega_b are resonant (|omega_a - omega_b| < 1e-9)");
  if (!(p.omega_c > 0.0))
    errs.push_back("omega_c must be positive");
  else if (std::isfinite(p.omega_c) && p.omega_c < 100.0 * std::max(p.omega_a, p.gamma2))
    errs.push_back("omega_c must be at least 100*max(omega_a, gamma2)");
  return errs;
}

EngineParams params_from_json(const std::string& text, std::vector<std::string>& errors) {
  EngineParams p;
  static const char* kKeys[] = {"omega_b", "gamma2", "omega_c", "t1",
                                "t2",      "d1",     "gamma1",  "omega1",
                                "topology"};
  auto parsed = nlohmann::json::parse(text, nullptr, false);
  if (parsed.is_discarded() || !parsed.is_object() || parsed.empty()) {
    for (const char* k : kKeys) errors.push_back(std::string("missing key: ") + k);
    return p;
  }
  bool has_omega_c = false;
  for (auto it = parsed.begin(); it != parsed.end(); ++it) {
    const std::string& k = it.key();
    const auto& v = it.value();
    auto num = [&](double* dst) {
      if (v.is_number())
        *dst = v.get<double>();
      else
        errors.push_back("key " + k + " must be a number");
    };
    if (k == "omega_b")
      num(&p.omega_b);
    else if (k == "gamma2")
      num(&p.gamma2);
    else if (k == "omega_c") {
      num(&p.omega_c);
      has_omega_c = true;
    } else if (k == "t1")
      num(&p.t1);
    else if (k == "t2")
      num(&p.t2);
    else if (k == "d1")
      num(&p.d1);
    else if (k == "gamma1")
      num(&p.gamma1);
    else if (k == "omega1")
      num(&p.omega1);
    else if (k == "topology") {
      if (v.is_string() && v.get<std::string>() == "joint")
        p.topology = Topology::Joint;
      else if (v.is_string() && v.get<std::string>() == "independent")
        p.topology = Topology::Independent;
      else
        errors.push_back("key topology must be \"joint\" or \"independent\"");
    } else {
      errors.push_back("unknown key: " + k);
    }
  }
  if (!has_omega_c) p.omega_c = default_omega_c(p.omega_a, p.gamma2);
  return p;
}

std::string params_to_json(const EngineParams& p) {
  nlohmann::json j;
  j["omega_b"] = p.omega_b;
  j["gamma2"] = p.gamma2;
  j["omega_c"] = p.omega_c;
  j["t1"] = p.t1;
  j["t2"] = p.t2;
  j["d1"] = p.d1;
  j["gamma1"] = p.gamma1;
  j["omega1"] = p.omega1;
  j["topology"] = p.topology == Topology::Joint ? "joint" : "independent";
  return j.dump();
}

double coth(double x) {
  if (x == 0.0) return std::numeric_limits<double>::infinity();
  double a = std::abs(x);
  if (a < 1e-3) return 1.0 / x + x / 3.0 - x * x * x / 45.0;
  if (a > 20.0) return x > 0 ? 1.0 : -1.0;
  return 1.0 / std::tanh(x);
}

double xcoth(double x) {
  double a = std::abs(x);
  if (a < 1e-3) {
    double x2 = x * x;
    return 1.0 + x2 / 3.0 - x2 * x2 / 45.0;
  }
  if (a > 20.0) return a;
  return x / std::tanh(x);
}

double thermal_factor(double omega, double shift, double t1, double t2) {
  return coth((omega + shift) / (2.0 * t1)) - coth(omega / (2.0 * t2));
}

double spectral_density_1(const EngineParams& p, double w) {
  return w * spectral_density_1_over_w(p, w);
}

double spectral_density_1_over_w(const EngineParams& p, double w) {
  double a = w * w - p.omega1 * p.omega1;
  return p.d1 * p.gamma1 / (a * a + p.gamma1 * p.gamma1 * w * w);
}

double spectral_density_2(const EngineParams& p, double w) {
  double r = std::isfinite(p.omega_c) ? w / p.omega_c : 0.0;
  return p.m * p.gamma2 * w / (1.0 + r * r);
}

}  // namespace duetherm
