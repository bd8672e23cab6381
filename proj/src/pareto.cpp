#include "duetherm/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <thread>

#include "duetherm/response.hpp"

namespace duetherm {

namespace {

constexpr double kPi = std::numbers::pi;

struct EntryKernels {
  const EngineParams& p;
  double shift;
  int entry;  // 0 aa, 1 ab, 2 bb

  double pick(const ChiIm& c) const { return entry == 0 ? c.aa : entry == 1 ? c.ab : c.bb; }
  double bracket(double w) const {
    double hot = 2.0 * p.t1 * xcoth((w + shift) / (2.0 * p.t1)) *
                 spectral_density_1_over_w(p, w + shift) * pick(chi_im(p, w));
    double cold = 2.0 * p.t2 * xcoth(w / (2.0 * p.t2)) *
                  spectral_density_1(p, w + shift) * pick(chi_im_over_omega(p, w));
    return hot - cold;
  }
};

void forms_for_block(const EngineParams& p, double omega_drive, int n, Sym2* ip, Sym2* is) {
  double s = n * omega_drive;
  std::vector<Peak> peaks = peak_breakpoints(p, s);
  double plain[3], weighted[3];
  for (int e = 0; e < 3; ++e) {
    if (p.topology == Topology::Independent && e == 1) {
      plain[e] = weighted[e] = 0.0;
      continue;
    }
    EntryKernels k{p, s, e};
    plain[e] = integrate_line([&](double w) { return k.bracket(w); }, peaks).value;
    weighted[e] = integrate_line([&](double w) { return w * k.bracket(w); }, peaks).value;
  }
  double pf = -s / (kPi * p.m);
  double kf = 1.0 / (kPi * p.m);
  double tfac = 1.0 / p.t2 - 1.0 / p.t1;
  *ip = {pf * plain[0], pf * plain[1], pf * plain[2]};
  *is = {ip->aa / p.t1 + tfac * kf * weighted[0], ip->ab / p.t1 + tfac * kf * weighted[1],
         ip->bb / p.t1 + tfac * kf * weighted[2]};
}

}  // namespace

QuadraticForms build_forms(const EngineParams& p, double omega_drive, int n_max,
                           bool allow_wide_band, int threads) {
  if (!allow_wide_band && n_max * omega_drive > 0.5 * p.omega_a + 1e-12)
    throw std::invalid_argument("drive band exceeds omega_a/2; pass allow_wide_band to override");
  QuadraticForms forms;
  forms.params = p;
  forms.fundamental = omega_drive;
  forms.n_max = n_max;
  forms.ip_blocks.resize(n_max);
  forms.isigma_blocks.resize(n_max);
  std::vector<std::pair<int, long>> failed(std::max(1, threads), {0, 0});
  auto run = [&](int tid, int nthreads) {
    for (int n = 1 + tid; n <= n_max; n += nthreads) {
      try {
        forms_for_block(p, omega_drive, n, &forms.ip_blocks[n - 1],
                        &forms.isigma_blocks[n - 1]);
      } catch (const NoConvergence& e) {
        failed[tid] = {n, e.panels};
        return;
      }
    }
  };
  int nthreads = std::max(1, std::min(threads, n_max));
  if (nthreads == 1) {
    run(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(run, t, nthreads);
    for (auto& th : pool) th.join();
  }
  for (auto [block, panels] : failed)
    if (block > 0) {
      NoConvergence e(panels);
      e.block = block;
      throw e;
    }
  return forms;
}

PowerSigma evaluate(const QuadraticForms& forms, const DriveSpectrum& g) {
  if (std::abs(g.fundamental - forms.fundamental) >
      1e-12 * std::max(1.0, std::abs(forms.fundamental)))
    throw FundamentalMismatch();
  if ((int)g.coeffs.size() > forms.n_max)
    throw std::out_of_range("drive has more harmonics than the forms");
  double power = 0.0, sigma = 0.0;
  for (size_t i = 0; i < g.coeffs.size(); ++i) {
    double ga = g.coeffs[i][0], gb = g.coeffs[i][1];
    const Sym2& P = forms.ip_blocks[i];
    const Sym2& S = forms.isigma_blocks[i];
    power += ga * ga * P.aa + 2.0 * ga * gb * P.ab + gb * gb * P.bb;
    sigma += ga * ga * S.aa + 2.0 * ga * gb * S.ab + gb * gb * S.bb;
  }
  return {power, sigma};
}

namespace {

enum class OptMode { Constrained, MaxPower, MinSigma };

OptimizeResult run_optimizer(const QuadraticForms& forms, double sigma_target,
                             const std::array<double, 2>& norms, unsigned long seed,
                             OptMode mode) {
  const int n = forms.n_max;
  const double lr = 0.01, b1 = 0.9, b2 = 0.999, eps = 1e-8;
  const int iters = 16000;
  std::vector<double> x(2 * n), g(2 * n), grad_g(2 * n), grad_x(2 * n);
  std::vector<double> m(2 * n, 0.0), v(2 * n, 0.0);
  std::mt19937_64 rng(seed);
  for (double& xi : x) xi = (double)(rng() >> 11) * 0x1.0p-53;
  double radius[2] = {norms[0] / std::sqrt(2.0), norms[1] / std::sqrt(2.0)};
  double beta = 0.0, power = 0.0, sigma = 0.0;

  auto project_and_eval = [&] {
    for (int l = 0; l < 2; ++l) {
      double nrm = 0.0;
      for (int i = 0; i < n; ++i) nrm += x[l * n + i] * x[l * n + i];
      nrm = std::sqrt(nrm);
      double scale = (radius[l] == 0.0 || nrm == 0.0) ? 0.0 : radius[l] / nrm;
      for (int i = 0; i < n; ++i) g[l * n + i] = scale * x[l * n + i];
    }
    power = sigma = 0.0;
    for (int i = 0; i < n; ++i) {
      double ga = g[i], gb = g[n + i];
      const Sym2& P = forms.ip_blocks[i];
      const Sym2& S = forms.isigma_blocks[i];
      power += ga * ga * P.aa + 2.0 * ga * gb * P.ab + gb * gb * P.bb;
      sigma += ga * ga * S.aa + 2.0 * ga * gb * S.ab + gb * gb * S.bb;
    }
  };

  for (int it = 1; it <= iters; ++it) {
    project_and_eval();
    double c = 0.0;  // dL/dsigma
    bool power_term = true;
    if (mode == OptMode::Constrained)
      c = std::exp(beta) + 2.0 * (sigma - sigma_target);
    else if (mode == OptMode::MinSigma) {
      c = 1.0;
      power_term = false;
    }
    for (int i = 0; i < n; ++i) {
      double ga = g[i], gb = g[n + i];
      const Sym2& P = forms.ip_blocks[i];
      const Sym2& S = forms.isigma_blocks[i];
      double pa = 2.0 * (P.aa * ga + P.ab * gb), pb = 2.0 * (P.ab * ga + P.bb * gb);
      double sa = 2.0 * (S.aa * ga + S.ab * gb), sb = 2.0 * (S.ab * ga + S.bb * gb);
      grad_g[i] = (power_term ? pa : 0.0) + c * sa;
      grad_g[n + i] = (power_term ? pb : 0.0) + c * sb;
    }
    for (int l = 0; l < 2; ++l) {
      double nrm = 0.0, dot = 0.0;
      for (int i = 0; i < n; ++i) nrm += x[l * n + i] * x[l * n + i];
      nrm = std::sqrt(nrm);
      if (radius[l] == 0.0 || nrm == 0.0) {
        for (int i = 0; i < n; ++i) grad_x[l * n + i] = 0.0;
        continue;
      }
      for (int i = 0; i < n; ++i) dot += (x[l * n + i] / nrm) * grad_g[l * n + i];
      for (int i = 0; i < n; ++i) {
        double u = x[l * n + i] / nrm;
        grad_x[l * n + i] = (radius[l] / nrm) * (grad_g[l * n + i] - u * dot);
      }
    }
    double bc1 = 1.0 - std::pow(b1, it), bc2 = 1.0 - std::pow(b2, it);
    for (int i = 0; i < 2 * n; ++i) {
      m[i] = b1 * m[i] + (1.0 - b1) * grad_x[i];
      v[i] = b2 * v[i] + (1.0 - b2) * grad_x[i] * grad_x[i];
      x[i] -= lr * (m[i] / bc1) / (std::sqrt(v[i] / bc2) + eps);
    }
    if (mode == OptMode::Constrained) {
      double ratio = std::log(std::max(sigma, 1e-300) / sigma_target);
      beta = std::clamp(beta + 0.003 * std::clamp(ratio, -50.0, 50.0), -50.0, 50.0);
    }
  }
  project_and_eval();

  OptimizeResult out;
  out.drive.fundamental = forms.fundamental;
  out.drive.coeffs.resize(n);
  for (int i = 0; i < n; ++i) out.drive.coeffs[i] = {g[i], g[n + i]};
  out.drive.norms = norms;
  out.power = power;
  out.sigma = sigma;
  out.converged = mode != OptMode::Constrained ||
                  std::abs(sigma - sigma_target) <= 1e-3 * std::abs(sigma_target);
  return out;
}

}  // namespace

OptimizeResult optimize_point(const QuadraticForms& forms, double sigma_target,
                              const std::array<double, 2>& norms, unsigned long seed) {
  return run_optimizer(forms, sigma_target, norms, seed, OptMode::Constrained);
}

OptimizeResult optimize_power(const QuadraticForms& forms,
                              const std::array<double, 2>& norms, unsigned long seed) {
  return run_optimizer(forms, 0.0, norms, seed, OptMode::MaxPower);
}

double estimate_sigma_min(const QuadraticForms& forms, const std::array<double, 2>& norms,
                          unsigned long seed) {
  return run_optimizer(forms, 0.0, norms, seed, OptMode::MinSigma).sigma;
}

std::vector<double> sigma_ladder(const QuadraticForms& forms,
                                 const std::array<double, 2>& norms, unsigned long seed,
                                 int rungs) {
  double sigma_star = optimize_power(forms, norms, seed).sigma;
  double sigma_min = estimate_sigma_min(forms, norms, seed + 1);
  double lo = std::max(0.02 * sigma_star, 1.02 * sigma_min);
  double hi = sigma_star;
  std::vector<double> ladder(rungs);
  for (int i = 0; i < rungs; ++i)
    ladder[i] = lo * std::pow(hi / lo, rungs == 1 ? 0.0 : (double)i / (rungs - 1));
  return ladder;
}

namespace {

double eta_from_transform(const EngineParams& p, double sigma, double power) {
  if (!(power < 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return p.carnot() / (1.0 - sigma * p.t2 / power);
}

// non-dominated subset when both coordinates are better-is-larger on (-x, y)
std::vector<FrontPoint> filter_dominated(std::vector<FrontPoint> pts,
                                         bool eta_plane) {
  std::vector<FrontPoint> keep;
  for (size_t i = 0; i < pts.size(); ++i) {
    bool dominated = false;
    double xi = eta_plane ? pts[i].eta : -pts[i].sigma;
    for (size_t j = 0; j < pts.size() && !dominated; ++j) {
      if (j == i) continue;
      double xj = eta_plane ? pts[j].eta : -pts[j].sigma;
      bool geq = xj >= xi && pts[j].neg_power >= pts[i].neg_power;
      bool strict = xj > xi || pts[j].neg_power > pts[i].neg_power;
      if (geq && strict) dominated = true;
    }
    if (!dominated) keep.push_back(pts[i]);
  }
  return keep;
}

}  // namespace

ParetoFront pareto_front(const QuadraticForms& forms, const std::vector<double>& ladder,
                         const std::array<double, 2>& norms, int seeds,
                         unsigned long base_seed, int threads) {
  const int rungs = (int)ladder.size();
  std::vector<OptimizeResult> results((size_t)rungs * seeds);
  auto run = [&](int tid, int nthreads) {
    for (int k = tid; k < rungs * seeds; k += nthreads) {
      int rung = k / seeds, s = k % seeds;
      results[k] = optimize_point(forms, ladder[rung], norms,
                                  base_seed + (unsigned long)rung * seeds + s);
    }
  };
  int nthreads = std::max(1, std::min(threads, rungs * seeds));
  if (nthreads == 1) {
    run(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(run, t, nthreads);
    for (auto& th : pool) th.join();
  }

  ParetoFront front;
  for (int rung = 0; rung < rungs; ++rung) {
    const OptimizeResult* best = nullptr;
    for (int s = 0; s < seeds; ++s) {
      const OptimizeResult& r = results[(size_t)rung * seeds + s];
      if (!best || (r.converged && !best->converged) ||
          (r.converged == best->converged && r.power < best->power))
        best = &r;
    }
    FrontPoint pt;
    pt.sigma = best->sigma;
    pt.neg_power = -best->power;
    pt.eta = eta_from_transform(forms.params, best->sigma, best->power);
    pt.drive = best->drive;
    pt.converged = best->converged;
    front.all_points.push_back(std::move(pt));
  }
  std::sort(front.all_points.begin(), front.all_points.end(),
            [](const FrontPoint& a, const FrontPoint& b) { return a.sigma < b.sigma; });

  std::vector<FrontPoint> converged;
  for (const FrontPoint& pt : front.all_points)
    if (pt.converged) converged.push_back(pt);
  front.points = filter_dominated(std::move(converged), false);
  std::sort(front.points.begin(), front.points.end(),
            [](const FrontPoint& a, const FrontPoint& b) { return a.sigma < b.sigma; });

  std::vector<FrontPoint> engine;
  for (const FrontPoint& pt : front.points)
    if (std::isfinite(pt.eta)) engine.push_back(pt);
  front.eta_points = filter_dominated(std::move(engine), true);
  std::sort(front.eta_points.begin(), front.eta_points.end(),
            [](const FrontPoint& a, const FrontPoint& b) { return a.eta < b.eta; });
  return front;
}

SupportReport spectral_support(const DriveSpectrum& g, double mass_fraction) {
  const int n = (int)g.coeffs.size();
  std::vector<double> mass(n);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    mass[i] = g.coeffs[i][0] * g.coeffs[i][0] + g.coeffs[i][1] * g.coeffs[i][1];
    total += mass[i];
  }
  SupportReport rep{0, {}};
  if (total <= 0.0) return rep;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return mass[a] > mass[b]; });
  std::vector<int> selected;
  double acc = 0.0;
  for (int idx : order) {
    selected.push_back(idx);
    acc += mass[idx];
    if (acc >= mass_fraction * total) break;
  }
  std::sort(selected.begin(), selected.end());
  size_t i = 0;
  while (i < selected.size()) {
    size_t j = i;
    while (j + 1 < selected.size() && selected[j + 1] - selected[j] <= 3) ++j;
    double msum = 0.0, wsum = 0.0;
    for (size_t k = i; k <= j; ++k) {
      msum += mass[selected[k]];
      wsum += mass[selected[k]] * (selected[k] + 1) * g.fundamental;
    }
    rep.count += 1;
    rep.frequencies.push_back(wsum / msum);
    i = j + 1;
  }
  return rep;
}

}  // namespace duetherm
