#include <algorithm>
#include <cmath>

#include "lpmhd/error.hpp"
#include "lpmhd/fft.hpp"
#include "lpmhd/littlewood_paley.hpp"
#include "lpmhd/spectral.hpp"

namespace lpmhd {

namespace {

void multi_indices(int dim, int order, std::vector<int>& current,
                   std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == dim - 1) {
    current.push_back(order);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (int a = order; a >= 0; --a) {
    current.push_back(a);
    multi_indices(dim, order - a, current, out);
    current.pop_back();
  }
}

Field apply_derivative(const SpectralField& F, const std::vector<int>& alpha) {
  const auto& kd = F.grid().lattice().k_deriv;
  SpectralField D = F;
  for (int c = 0; c < D.components(); ++c) {
    auto G = D.component(c);
    for (std::size_t i = 0; i < G.size(); ++i) {
      Complex factor{1.0, 0.0};
      for (std::size_t a = 0; a < alpha.size(); ++a) {
        for (int n = 0; n < alpha[a]; ++n) factor *= Complex{0.0, kd[i][a]};
      }
      G[i] *= factor;
    }
  }
  return to_physical(D);
}

}  // namespace

BernsteinReport bernstein_ratios(const Field& f, double lambda, int order, double p, double q,
                                 SupportKind support, BernsteinWindow window,
                                 double support_tolerance) {
  if (!(lambda > 0.0)) throw InvalidArgument("bernstein_ratios: lambda must be positive");
  if (order < 0) throw InvalidArgument("bernstein_ratios: derivative order must be >= 0");
  if (!(p >= 1.0) || !(q >= 1.0)) throw InvalidArgument("bernstein_ratios: p, q must be >= 1");
  if (support == SupportKind::Ring && q < p) {
    throw InvalidArgument("bernstein_ratios: q must be >= p");
  }

  const SpectralField F = to_spectral(f);
  const auto& kn = f.grid().lattice().k_norm;
  double peak = 0.0;
  for (const auto& v : F.coefficients()) peak = std::max(peak, std::abs(v));
  const double lo = support == SupportKind::Ring ? lambda * kAnnulusInner : 0.0;
  const double hi = lambda * kAnnulusOuter;
  for (int c = 0; c < F.components(); ++c) {
    auto G = F.component(c);
    for (std::size_t i = 0; i < G.size(); ++i) {
      if ((kn[i] < lo || kn[i] > hi) && std::abs(G[i]) > support_tolerance * peak) {
        throw InvalidArgument("bernstein_ratios: spectral support check failed at |k| = " +
                              std::to_string(kn[i]));
      }
    }
  }

  const double base_p = lp_norm(f, p);
  BernsteinReport report;
  if (base_p == 0.0) return report;

  std::vector<std::vector<int>> alphas;
  std::vector<int> scratch;
  multi_indices(f.grid().dim(), order, scratch, alphas);
  double sup_q = 0.0;
  double sup_p = 0.0;
  for (const auto& alpha : alphas) {
    const Field d = apply_derivative(F, alpha);
    sup_q = std::max(sup_q, lp_norm(d, q));
    sup_p = std::max(sup_p, lp_norm(d, p));
  }
  const int dim = f.grid().dim();
  const double inv_p = 1.0 / p;
  const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
  report.upper_ratio = sup_q / (std::pow(lambda, order + dim * (inv_p - inv_q)) * base_p);
  if (support == SupportKind::Ring) report.lower_ratio = sup_p / (std::pow(lambda, order) * base_p);

  auto inside = [&](double v) { return v >= window.low && v <= window.high; };
  report.in_window = inside(report.upper_ratio) && (!report.lower_ratio || inside(*report.lower_ratio));
  return report;
}

}  // namespace lpmhd
