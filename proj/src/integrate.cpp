#include "duetherm/integrate.hpp"

#include <algorithm>
#include <atomic>
#include <cfloat>
#include <cmath>
#include <queue>

#include "duetherm/response.hpp"

namespace duetherm {

namespace {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule
constexpr double kXgk[8] = {
    0.99145537112081263920685469752633, 0.94910791234275852452618968404785,
    0.86486442335976907278971278864093, 0.74153118559939443986386477328079,
    0.58608723546769113029414483825873, 0.40584515137739716690660641207696,
    0.20778495500789846760068940377324, 0.0};
constexpr double kWgk[8] = {
    0.02293532201052922496373200805897, 0.06309209262997855329070066318851,
    0.10479001032225018383987632254152, 0.14065325971552591874518959051024,
    0.16900472663926790282658342659855, 0.19035057806478540991325640242101,
    0.20443294007529889241416199923465, 0.20948214108472782801299917489171};
constexpr double kWg[4] = {
    0.12948496616886969327061143267908, 0.27970539148927666790146777142378,
    0.38183005050511894495036977548898, 0.41795918367346938775510204081633};

std::atomic<long> g_panels{0};

struct Panel {
  double a, b;
  double value, error;
  bool tail;  // integrated in t-space through the rational map
};

struct WorsePanel {
  bool operator()(const Panel& x, const Panel& y) const { return x.error < y.error; }
};

template <typename F>
void gk15(const F& g, Panel& p) {
  double h = 0.5 * (p.b - p.a);
  double c = 0.5 * (p.a + p.b);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = g(c - h * kXgk[i]);
    fv[14 - i] = g(c + h * kXgk[i]);
  }
  fv[7] = g(c);
  double resk = kWgk[7] * fv[7];
  double resg = kWg[3] * fv[7];
  for (int i = 0; i < 7; ++i) resk += kWgk[i] * (fv[i] + fv[14 - i]);
  for (int i = 0; i < 3; ++i) resg += kWg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
  double mean = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fv[7] - mean);
  for (int i = 0; i < 7; ++i)
    resasc += kWgk[i] * (std::abs(fv[i] - mean) + std::abs(fv[14 - i] - mean));
  p.value = resk * h;
  double e0 = std::abs((resk - resg) * h);
  double asc = resasc * std::abs(h);
  double err = e0;
  if (asc > 0.0 && e0 > 0.0) err = asc * std::min(1.0, std::pow(200.0 * e0 / asc, 1.5));
  p.error = std::max(err, 50.0 * DBL_EPSILON * std::abs(p.value));
  g_panels.fetch_add(1, std::memory_order_relaxed);
}

}  // namespace

long panel_count() { return g_panels.load(); }
void reset_panel_count() { g_panels.store(0); }

QuadResult integrate_line(const std::function<double(double)>& f,
                          const std::vector<Peak>& peaks, const QuadControl& ctl) {
  std::vector<double> edges;
  for (const Peak& pk : peaks) {
    double w = std::max(pk.width, 1e-8);
    edges.push_back(pk.center - 5.0 * w);
    edges.push_back(pk.center);
    edges.push_back(pk.center + 5.0 * w);
  }
  if (edges.empty()) edges = {-1.0, 0.0, 1.0};
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](double x, double y) {
                            return y - x <= 1e-12 * std::max({1.0, std::abs(x), std::abs(y)});
                          }),
              edges.end());

  double outer = std::max(std::abs(edges.front()), std::abs(edges.back()));
  double big = ctl.tail_scale * std::max(outer, 1e-3);
  auto to_t = [big](double w) { return 2.0 * w / (big + std::hypot(big, 2.0 * w)); };
  auto from_t = [big](double t) { return big * t / (1.0 - t * t); };
  auto tail_g = [&](double t) {
    double om = from_t(t);
    double d = 1.0 - t * t;
    return f(om) * big * (1.0 + t * t) / (d * d);
  };

  long used = 0;
  auto eval = [&](Panel& p) {
    if (p.tail)
      gk15(tail_g, p);
    else
      gk15(f, p);
    ++used;
  };

  std::priority_queue<Panel, std::vector<Panel>, WorsePanel> heap;
  double total = 0.0, toterr = 0.0;
  auto push = [&](Panel p) {
    eval(p);
    total += p.value;
    toterr += p.error;
    heap.push(p);
  };

  for (size_t i = 0; i + 1 < edges.size(); ++i)
    push({edges[i], edges[i + 1], 0.0, 0.0, false});
  push({-1.0, to_t(edges.front()), 0.0, 0.0, true});
  push({to_t(edges.back()), 1.0, 0.0, 0.0, true});

  auto done = [&] {
    return toterr <= std::max(ctl.rel_tol * std::abs(total), ctl.abs_tol);
  };
  while (!done() && !heap.empty()) {
    if (used >= ctl.max_panels) throw NoConvergence(used);
    Panel worst = heap.top();
    heap.pop();
    double scale = std::max({1.0, std::abs(worst.a), std::abs(worst.b)});
    if (worst.b - worst.a <= 1e-15 * scale) continue;  // roundoff-limited
    double mid = 0.5 * (worst.a + worst.b);
    total -= worst.value;
    toterr -= worst.error;
    push({worst.a, mid, 0.0, 0.0, worst.tail});
    push({mid, worst.b, 0.0, 0.0, worst.tail});
  }
  return {total, toterr, used};
}

std::vector<Peak> peak_breakpoints(const EngineParams& p, double shift) {
  std::vector<Peak> peaks;
  peaks.push_back({p.omega1 - shift, 0.5 * p.gamma1});
  peaks.push_back({-p.omega1 - shift, 0.5 * p.gamma1});
  for (const cplx& z : normal_modes(p))
    peaks.push_back({z.real(), std::max(std::abs(z.imag()), 1e-8)});
  peaks.push_back({0.0, std::min(p.t1, p.t2)});
  std::sort(peaks.begin(), peaks.end(),
            [](const Peak& a, const Peak& b) { return a.center < b.center; });
  std::vector<Peak> out;
  for (const Peak& pk : peaks) {
    if (!out.empty() &&
        pk.center - out.back().center <= 0.5 * std::min(pk.width, out.back().width)) {
      out.back().width = std::min(out.back().width, pk.width);  // keep the sharper one
      continue;
    }
    out.push_back(pk);
  }
  return out;
}

}  // namespace duetherm
