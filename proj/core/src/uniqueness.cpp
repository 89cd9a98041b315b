#include <algorithm>
#include <cmath>

#include "lpmhd/error.hpp"
#include "lpmhd/mhd_iteration.hpp"
#include "lpmhd/random_fields.hpp"
#include "lpmhd/spectral.hpp"

namespace lpmhd {

OsgoodVerdict osgood_check(const std::vector<double>& times, const std::vector<double>& rho,
                           double A_T, double C_T, double offset) {
  if (times.size() != rho.size() || times.empty()) {
    throw InvalidArgument("osgood_check: times and rho must be nonempty and of equal length");
  }
  if (std::any_of(rho.begin(), rho.end(), [](double r) { return !(r >= 0.0); })) {
    throw InvalidArgument("osgood_check: rho must be nonnegative");
  }
  auto integrand = [&](double r) { return r > 0.0 ? r * std::log(std::exp(1.0) + C_T / r) : 0.0; };
  OsgoodVerdict out;
  out.worst_margin = offset - rho[0];
  double integral = 0.0;
  for (std::size_t i = 1; i < rho.size(); ++i) {
    integral += 0.5 * (times[i] - times[i - 1]) * (integrand(rho[i]) + integrand(rho[i - 1]));
    out.worst_margin = std::min(out.worst_margin, offset + A_T * integral - rho[i]);
  }
  out.pass = out.worst_margin >= 0.0;
  return out;
}

MhdInitialData uniqueness_perturbation(const FrequencyGrid& grid, double size, std::uint64_t seed) {
  if (!(size >= 0.0) || !std::isfinite(size)) {
    throw InvalidArgument("perturbation size must be finite and >= 0");
  }
  Rng rng(seed);
  const double k0 = grid.k0();
  MhdInitialData out{random_divergence_free(grid, k0, 8.0 * k0, rng),
                     random_divergence_free(grid, k0, 8.0 * k0, rng)};
  out.u0 *= size;
  out.B0 *= size;
  return out;
}

UniquenessReport twin_run_uniqueness(const MhdInitialData& data, const IterationConfig& config,
                                     double perturbation_size) {
  config.validate();
  const IterationDiagnostics reference = run_iteration(data, config);
  if (reference.status != "converged" && reference.status != "max_iterations") {
    throw Error("twin run (reference): " + reference.status);
  }
  const IterationState& one = reference.final_state;

  IterationConfig twin_config = config;
  twin_config.horizon = one.T;
  MhdInitialData perturbed = data;
  if (perturbation_size > 0.0) {
    const MhdInitialData delta = uniqueness_perturbation(data.u0.grid(), perturbation_size, config.seed);
    perturbed.u0 += delta.u0;
    perturbed.B0 += delta.B0;
  } else if (!(perturbation_size == 0.0)) {
    throw InvalidArgument("perturbation size must be >= 0");
  }
  const IterationDiagnostics twin = run_iteration(perturbed, twin_config);
  if (twin.status != "converged" && twin.status != "max_iterations") {
    throw Error("twin run (perturbed): " + twin.status);
  }
  const IterationState& two = twin.final_state;

  const double d = data.u0.grid().dim();
  const double p = config.p;
  const double C = config.estimate_constant;
  const FilterBank& bank = one.bank;
  const BlockNormTable du(difference(one.u, two.u), p, bank);
  const BlockNormTable dB(difference(one.B, two.B), p, bank);

  UniquenessReport out;
  out.perturbation_size = perturbation_size;
  out.seed = config.seed;
  out.T = one.T;
  out.times = one.u.times;
  out.rho = du.cumulative_chemin_lerner(d / p, 1.0, kInfinity);
  out.delta_B = dB.cumulative_chemin_lerner(d / p - 1.0, kInfinity, kInfinity);

  const BlockNormTable u1(one.u, p, bank);
  const double B1 = BlockNormTable(one.B, p, bank).chemin_lerner(d / p, kInfinity, 1.0);
  const double B2 = BlockNormTable(two.B, p, bank).chemin_lerner(d / p, kInfinity, 1.0);
  out.A_T = C * std::exp(C * u1.bochner(d / p + 1.0, 1.0, 1.0)) * B2 * (B1 + B2);
  out.C_T = du.chemin_lerner(d / p - 1.0, 1.0, kInfinity) + du.chemin_lerner(d / p + 1.0, 1.0, kInfinity);
  out.offset = C * (besov_norm(perturbed.u0 - data.u0, {d / p - 2.0, p, kInfinity, {}}, bank) +
                    besov_norm(perturbed.B0 - data.B0, {d / p - 1.0, p, kInfinity, {}}, bank));

  const double rho_T = out.rho.back();
  if (rho_T > 0.0) {
    out.bridge_ratio = du.chemin_lerner(d / p, 1.0, 1.0) /
                       (rho_T * std::log(std::exp(1.0) + out.C_T / rho_T));
  }
  for (const Field& u : one.u.snapshots) out.solution_scale = std::max(out.solution_scale, lp_norm(u, 2.0));

  const OsgoodVerdict verdict = osgood_check(out.times, out.rho, out.A_T, out.C_T, out.offset);
  out.verdict = verdict.pass;
  out.worst_margin = verdict.worst_margin;
  return out;
}

}  // namespace lpmhd
