#pragma once
#include <functional>
#include <stdexcept>
#include <vector>

#include "duetherm/params.hpp"

namespace duetherm {

// Marks a feature of the integrand: panel edges go at c-5w, c, c+5w.
struct Peak {
  double center;
  double width;
};

struct QuadControl {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  long max_panels = 100000;
  double tail_scale = 10.0;  // tail map length L = tail_scale * outermost edge
};

struct QuadResult {
  double value;
  double error;
  long panels;
};

class NoConvergence : public std::runtime_error {
 public:
  explicit NoConvergence(long panels)
      : std::runtime_error("quadrature did not converge within " +
                           std::to_string(panels) + " panels"),
        panels(panels) {}
  long panels;
  int block = -1;  // harmonic block index when raised from a form build
};

// Whole-line quadrature: Gauss-Kronrod 15 on the panels between the peak
// edges, two tail panels under the map w = L t/(1-t^2), then repeated
// bisection of whichever panel reports the largest error.
QuadResult integrate_line(const std::function<double(double)>& f,
                          const std::vector<Peak>& peaks,
                          const QuadControl& ctl = {});

// Filter resonances at +-omega1 - shift, normal-mode poles, and the thermal
// feature at zero, deduplicated when centres coincide within half a width.
std::vector<Peak> peak_breakpoints(const EngineParams& p, double shift);

// Cumulative panel count across all integrate_line calls (for run manifests).
long panel_count();
void reset_panel_count();

}  // namespace duetherm
