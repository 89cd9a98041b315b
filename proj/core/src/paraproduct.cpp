#include "lpmhd/paraproduct.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lpmhd/error.hpp"
#include "lpmhd/fft.hpp"
#include "lpmhd/spectral.hpp"

namespace lpmhd {

namespace {

int product_components(const Field& u, const Field& v) {
  if (u.components() != 1 && v.components() != 1 && u.components() != v.components()) {
    throw InvalidArgument("paraproduct: incompatible component counts");
  }
  return std::max(u.components(), v.components());
}

// acc += x * y with scalar broadcasting.
void multiply_accumulate(Field& acc, const Field& x, const Field& y) {
  for (int c = 0; c < acc.components(); ++c) {
    auto a = x.component(x.components() == 1 ? 0 : c);
    auto b = y.component(y.components() == 1 ? 0 : c);
    auto out = acc.component(c);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += a[i] * b[i];
  }
}

// acc += x * y + z * w, each pointwise sum formed before accumulation so the
// result is invariant under (x, y, z, w) -> (y, x, w, z).
void multiply_accumulate_pair(Field& acc, const Field& x, const Field& y, const Field& z,
                              const Field& w) {
  for (int c = 0; c < acc.components(); ++c) {
    auto a = x.component(x.components() == 1 ? 0 : c);
    auto b = y.component(y.components() == 1 ? 0 : c);
    auto e = z.component(z.components() == 1 ? 0 : c);
    auto f = w.component(w.components() == 1 ? 0 : c);
    auto out = acc.component(c);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += a[i] * b[i] + e[i] * f[i];
  }
}

std::vector<Field> physical_blocks(const FilterBank& bank, const SpectralField& F) {
  std::vector<Field> out;
  out.reserve(static_cast<std::size_t>(bank.count()));
  for (int j = bank.j_min(); j <= bank.j_max(); ++j) out.push_back(to_physical(bank.block(j, F)));
  return out;
}

Field finish(const Field& acc) { return to_physical(dealias(to_spectral(acc))); }

}  // namespace

Field paraproduct(const FilterBank& bank, const Field& u, const Field& v) {
  require_same_grid(u.grid(), v.grid(), "paraproduct");
  require_same_grid(u.grid(), bank.grid(), "paraproduct");
  const int comps = product_components(u, v);
  const SpectralField U = dealias(to_spectral(u));
  const SpectralField V = dealias(to_spectral(v));
  Field acc(u.grid(), comps);
  for (int j = bank.j_min(); j <= bank.j_max(); ++j) {
    const Field low = to_physical(bank.low_pass(std::max(j - 1, bank.j_min()), U));
    const Field high = to_physical(bank.block(j, V));
    multiply_accumulate(acc, low, high);
  }
  return finish(acc);
}

Field remainder(const FilterBank& bank, const Field& u, const Field& v) {
  require_same_grid(u.grid(), v.grid(), "remainder");
  require_same_grid(u.grid(), bank.grid(), "remainder");
  const int comps = product_components(u, v);
  const SpectralField U = dealias(to_spectral(u));
  const SpectralField V = dealias(to_spectral(v));
  const auto a = physical_blocks(bank, U);
  const auto b = physical_blocks(bank, V);
  Field acc(u.grid(), comps);
  for (std::size_t j = 0; j < a.size(); ++j) multiply_accumulate(acc, a[j], b[j]);
  for (std::size_t j = 0; j + 1 < a.size(); ++j) {
    multiply_accumulate_pair(acc, a[j], b[j + 1], a[j + 1], b[j]);
  }
  // mean(u) mean(v): the k = 0 coefficients divided by N^d.
  const double scale = 1.0 / static_cast<double>(u.grid().size());
  for (int c = 0; c < comps; ++c) {
    const double mu = U.component(u.components() == 1 ? 0 : c)[0].real() * scale;
    const double mv = V.component(v.components() == 1 ? 0 : c)[0].real() * scale;
    const double m = mu * mv;
    for (double& x : acc.component(c)) x += m;
  }
  return finish(acc);
}

BonyParts bony_decompose(const FilterBank& bank, const Field& u, const Field& v) {
  return {paraproduct(bank, u, v), paraproduct(bank, v, u), remainder(bank, u, v)};
}

std::string_view to_string(ProductVariant v) noexcept {
  switch (v) {
    case ProductVariant::Paraproduct: return "T";
    case ProductVariant::Remainder: return "R";
    case ProductVariant::Full: return "full";
    case ProductVariant::Mixed: return "mixed";
  }
  return "?";
}

ProductVariant parse_product_variant(std::string_view name) {
  if (name == "T") return ProductVariant::Paraproduct;
  if (name == "R") return ProductVariant::Remainder;
  if (name == "full") return ProductVariant::Full;
  if (name == "mixed") return ProductVariant::Mixed;
  throw InvalidArgument("unknown product variant '" + std::string(name) +
                        "' (expected T, R, full or mixed)");
}

void check_product_indices(ProductVariant variant, int dim, double s1, double s2, double p) {
  if (!(p >= 1.0)) throw IndexConditionError("product law: p must be >= 1");
  const double critical = dim / p;
  const double sum_floor = dim * std::max(0.0, 2.0 / p - 1.0);
  auto fail = [&](const std::string& law, const std::string& condition) {
    throw IndexConditionError("product law " + law + ": requires " + condition + " (s1 = " +
                              format_double(s1) + ", s2 = " + format_double(s2) +
                              ", d/p = " + format_double(critical) + ")");
  };
  switch (variant) {
    case ProductVariant::Paraproduct:
      if (!(s2 <= critical)) fail("(paraproduct T_g f)", "s2 <= d/p");
      break;
    case ProductVariant::Remainder:
      if (!(s1 + s2 > sum_floor)) fail("(remainder R(f,g))", "s1 + s2 > d max(0, 2/p - 1)");
      break;
    case ProductVariant::Full:
      if (!(s1 <= critical)) fail("(full product)", "s1 <= d/p");
      if (!(s2 <= critical)) fail("(full product)", "s2 <= d/p");
      if (!(s1 + s2 > sum_floor)) fail("(full product)", "s1 + s2 > d max(0, 2/p - 1)");
      break;
    case ProductVariant::Mixed:
      if (!(s1 <= critical)) fail("(mixed l1 x l-inf product)", "s1 <= d/p");
      if (!(s2 < critical)) fail("(mixed l1 x l-inf product)", "s2 < d/p");
      if (!(s1 + s2 >= sum_floor)) fail("(mixed l1 x l-inf product)", "s1 + s2 >= d max(0, 2/p - 1)");
      break;
  }
}

EstimateReport product_law_ratio(const FilterBank& bank, const Field& f, const Field& g, double s1,
                                 double s2, double p, ProductVariant variant,
                                 std::uint64_t seed) {
  require_same_grid(f.grid(), g.grid(), "product_law_ratio");
  const int dim = f.grid().dim();
  check_product_indices(variant, dim, s1, s2, p);
  const double target = s1 + s2 - dim / p;

  Field object;
  switch (variant) {
    case ProductVariant::Paraproduct: object = paraproduct(bank, g, f); break;
    case ProductVariant::Remainder: object = remainder(bank, f, g); break;
    case ProductVariant::Full:
    case ProductVariant::Mixed: object = dealiased_product(f, g); break;
  }
  const bool mixed = variant == ProductVariant::Mixed;
  const double lhs = besov_norm(object, {target, p, mixed ? kInfinity : 1.0, {}}, bank);
  const double nf = besov_norm(f, {s1, p, 1.0, {}}, bank);
  const double ng = besov_norm(g, {s2, p, mixed ? kInfinity : 1.0, {}}, bank);
  return make_estimate_report(
      std::string(to_string(variant)),
      {{"d", dim}, {"p", p}, {"s1", s1}, {"s2", s2}},
      lhs,
      {{"f_B^s1_p1", nf}, {mixed ? "g_B^s2_pinf" : "g_B^s2_p1", ng}},
      seed);
}

EstimateReport log_interpolation_ratio(const FilterBank& bank, const TimeSeriesField& series,
                                       double s, double p, double q, double eps,
                                       std::uint64_t seed) {
  if (!(eps > 0.0 && eps <= 1.0)) throw InvalidArgument("log_interpolation_ratio: need 0 < eps <= 1");
  const BlockNormTable table(series, p, bank);
  const double lhs = table.chemin_lerner(s, q, 1.0);
  const double sup = table.chemin_lerner(s, q, kInfinity);
  const std::vector<std::pair<std::string, double>> indices{
      {"s", s}, {"p", p}, {"q", q}, {"eps", eps}};
  if (sup == 0.0) {
    return make_estimate_report("loginterp", indices, lhs, {{"Binf/eps", 0.0}}, seed);
  }
  const double below = table.chemin_lerner(s - eps, q, kInfinity);
  const double above = table.chemin_lerner(s + eps, q, kInfinity);
  const double log_factor = std::log(std::numbers::e + (below + above) / sup);
  return make_estimate_report("loginterp", indices, lhs,
                              {{"Binf/eps", sup / eps}, {"log", log_factor}}, seed);
}

}  // namespace lpmhd
