#include "lpmhd/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "lpmhd/error.hpp"

namespace lpmhd {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_vector(int components, const FrequencyGrid& g, const char* what) {
  if (components != g.dim()) {
    throw InvalidArgument(std::string(what) + ": expected a " + std::to_string(g.dim()) +
                          "-component vector field");
  }
}

void require_axis(int axis, const FrequencyGrid& g) {
  if (axis < 0 || axis >= g.dim()) throw InvalidArgument("spectral_derivative: axis out of range");
}

}  // namespace

SpectralField spectral_derivative(const SpectralField& F, int axis) {
  require_axis(axis, F.grid());
  const auto& kd = F.grid().lattice().k_deriv;
  SpectralField out = F;
  for (int c = 0; c < out.components(); ++c) {
    auto G = out.component(c);
    for (std::size_t i = 0; i < G.size(); ++i) G[i] *= kI * kd[i][axis];
  }
  return out;
}

Field spectral_derivative(const Field& f, int axis) {
  return to_physical(spectral_derivative(to_spectral(f), axis));
}

Field gradient(const Field& scalar) {
  if (scalar.components() != 1) throw InvalidArgument("gradient: expected a scalar field");
  const auto& g = scalar.grid();
  const SpectralField F = to_spectral(scalar);
  SpectralField G(g, g.dim());
  const auto& kd = g.lattice().k_deriv;
  auto src = F.component(0);
  for (int a = 0; a < g.dim(); ++a) {
    auto dst = G.component(a);
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = kI * kd[i][a] * src[i];
  }
  return to_physical(G);
}

TensorField vector_gradient(const Field& v) {
  const auto& g = v.grid();
  require_vector(v.components(), g, "vector_gradient");
  const SpectralField V = to_spectral(v);
  TensorField T{g, g.dim(), {}};
  T.entries.reserve(static_cast<std::size_t>(g.dim() * g.dim()));
  const auto& kd = g.lattice().k_deriv;
  for (int i = 0; i < g.dim(); ++i) {
    auto src = V.component(i);
    for (int j = 0; j < g.dim(); ++j) {
      SpectralField D(g, 1);
      auto dst = D.component(0);
      for (std::size_t m = 0; m < dst.size(); ++m) dst[m] = kI * kd[m][j] * src[m];
      T.entries.push_back(to_physical(D));
    }
  }
  return T;
}

SpectralField divergence(const SpectralField& F) {
  const auto& g = F.grid();
  require_vector(F.components(), g, "divergence");
  SpectralField D(g, 1);
  auto dst = D.component(0);
  const auto& kd = g.lattice().k_deriv;
  for (int a = 0; a < g.dim(); ++a) {
    auto src = F.component(a);
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += kI * kd[i][a] * src[i];
  }
  return D;
}

Field divergence(const Field& v) { return to_physical(divergence(to_spectral(v))); }

SpectralField leray_project(const SpectralField& F) {
  const auto& g = F.grid();
  require_vector(F.components(), g, "leray_project");
  SpectralField out = F;
  const auto& kd = g.lattice().k_deriv;
  const int d = g.dim();
  for (std::size_t i = 0; i < g.size(); ++i) {
    double kk = 0.0;
    for (int a = 0; a < d; ++a) kk += kd[i][a] * kd[i][a];
    if (kk == 0.0) continue;
    Complex kdotf{0.0, 0.0};
    for (int a = 0; a < d; ++a) kdotf += kd[i][a] * F.component(a)[i];
    for (int a = 0; a < d; ++a) out.component(a)[i] -= kd[i][a] * kdotf / kk;
  }
  return out;
}

Field leray_project(const Field& f) { return to_physical(leray_project(to_spectral(f))); }

SpectralField heat_semigroup(const SpectralField& F, double t) {
  if (!(t >= 0.0)) throw InvalidArgument("heat_semigroup: time must be >= 0");
  SpectralField out = F;
  if (t == 0.0) return out;
  const auto& ksq = F.grid().lattice().k_squared;
  for (int c = 0; c < out.components(); ++c) {
    auto G = out.component(c);
    for (std::size_t i = 0; i < G.size(); ++i) G[i] *= std::exp(-ksq[i] * t);
  }
  return out;
}

Field heat_semigroup(const Field& f, double t) {
  return to_physical(heat_semigroup(to_spectral(f), t));
}

SpectralField dealias(const SpectralField& F) {
  SpectralField out = F;
  const auto& keep = F.grid().lattice().retained;
  for (int c = 0; c < out.components(); ++c) {
    auto G = out.component(c);
    for (std::size_t i = 0; i < G.size(); ++i) {
      if (!keep[i]) G[i] = Complex{0.0, 0.0};
    }
  }
  return out;
}

Field dealias(const Field& f) { return to_physical(dealias(to_spectral(f))); }

double lp_norm(const Field& f, double p) {
  if (!(p >= 1.0)) throw InvalidArgument("lp_norm: p must be >= 1");
  const std::size_t n = f.grid().size();
  const int comps = f.components();
  auto magnitude = [&](std::size_t i) {
    if (comps == 1) return std::abs(f.component(0)[i]);
    double s = 0.0;
    for (int c = 0; c < comps; ++c) s += f.component(c)[i] * f.component(c)[i];
    return std::sqrt(s);
  };
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, magnitude(i));
    return m;
  }
  double sum = 0.0;
  if (p == 2.0) {
    for (std::size_t i = 0; i < n; ++i) {
      const double a = magnitude(i);
      sum += a * a;
    }
    return std::sqrt(sum / static_cast<double>(n));
  }
  for (std::size_t i = 0; i < n; ++i) sum += std::pow(magnitude(i), p);
  return std::pow(sum / static_cast<double>(n), 1.0 / p);
}

double inner_product(const Field& a, const Field& b) {
  require_same_grid(a.grid(), b.grid(), "inner_product");
  if (a.components() != b.components()) throw InvalidArgument("inner_product: component mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.samples().size(); ++i) s += a.samples()[i] * b.samples()[i];
  return s / static_cast<double>(a.grid().size());
}

std::vector<double> mean(const Field& f) {
  std::vector<double> out(static_cast<std::size_t>(f.components()), 0.0);
  for (int c = 0; c < f.components(); ++c) {
    double s = 0.0;
    for (double v : f.component(c)) s += v;
    out[static_cast<std::size_t>(c)] = s / static_cast<double>(f.grid().size());
  }
  return out;
}

SpectralField dealiased_product(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a.grid(), b.grid(), "dealiased_product");
  if (a.components() != 1 && b.components() != 1 && a.components() != b.components()) {
    throw InvalidArgument("dealiased_product: incompatible component counts");
  }
  const Field pa = to_physical(dealias(a));
  const Field pb = to_physical(dealias(b));
  const int comps = std::max(a.components(), b.components());
  Field prod(a.grid(), comps);
  for (int c = 0; c < comps; ++c) {
    auto x = pa.component(a.components() == 1 ? 0 : c);
    auto y = pb.component(b.components() == 1 ? 0 : c);
    auto z = prod.component(c);
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = x[i] * y[i];
  }
  return dealias(to_spectral(prod));
}

Field dealiased_product(const Field& a, const Field& b) {
  return to_physical(dealiased_product(to_spectral(a), to_spectral(b)));
}

SpectralField tensor_divergence(const SpectralField& a, const SpectralField& b) {
  const auto& g = a.grid();
  require_same_grid(g, b.grid(), "tensor_divergence");
  require_vector(a.components(), g, "tensor_divergence");
  require_vector(b.components(), g, "tensor_divergence");
  const int d = g.dim();
  const Field pa = to_physical(dealias(a));
  const Field pb = to_physical(dealias(b));
  const auto& kd = g.lattice().k_deriv;
  const auto& keep = g.lattice().retained;
  SpectralField out(g, d);
  Field prod(g, 1);
  for (int i = 0; i < d; ++i) {
    auto dst = out.component(i);
    for (int j = 0; j < d; ++j) {
      auto x = pa.component(i);
      auto y = pb.component(j);
      auto z = prod.component(0);
      for (std::size_t m = 0; m < z.size(); ++m) z[m] = x[m] * y[m];
      const SpectralField P = to_spectral(prod);
      auto src = P.component(0);
      for (std::size_t m = 0; m < dst.size(); ++m) {
        if (keep[m]) dst[m] += kI * kd[m][j] * src[m];
      }
    }
  }
  return out;
}

Field tensor_divergence(const Field& a, const Field& b) {
  return to_physical(tensor_divergence(to_spectral(a), to_spectral(b)));
}

SpectralField advective_derivative(const SpectralField& b, const SpectralField& f) {
  const auto& g = b.grid();
  require_same_grid(g, f.grid(), "advective_derivative");
  require_vector(b.components(), g, "advective_derivative");
  const int d = g.dim();
  const Field pb = to_physical(dealias(b));
  const auto& kd = g.lattice().k_deriv;
  const auto& keep = g.lattice().retained;
  SpectralField out(g, f.components());
  SpectralField df(g, 1);
  Field prod(g, 1);
  for (int c = 0; c < f.components(); ++c) {
    auto fc = f.component(c);
    for (int j = 0; j < d; ++j) {
      auto dst = df.component(0);
      for (std::size_t m = 0; m < dst.size(); ++m) {
        dst[m] = keep[m] ? kI * kd[m][j] * fc[m] : Complex{0.0, 0.0};
      }
      const Field pdf = to_physical(df);
      auto x = pb.component(j);
      auto y = pdf.component(0);
      auto z = prod.component(0);
      for (std::size_t m = 0; m < z.size(); ++m) z[m] = x[m] * y[m];
      const SpectralField P = to_spectral(prod);
      auto src = P.component(0);
      auto out_c = out.component(c);
      for (std::size_t m = 0; m < out_c.size(); ++m) {
        if (keep[m]) out_c[m] += src[m];
      }
    }
  }
  return out;
}

double spectral_radius(const SpectralField& F, double relative_tolerance) {
  double peak = 0.0;
  for (const auto& v : F.coefficients()) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return 0.0;
  const auto& kn = F.grid().lattice().k_norm;
  double radius = 0.0;
  for (int c = 0; c < F.components(); ++c) {
    auto G = F.component(c);
    for (std::size_t i = 0; i < G.size(); ++i) {
      if (std::abs(G[i]) > relative_tolerance * peak) radius = std::max(radius, kn[i]);
    }
  }
  return radius;
}

}  // namespace lpmhd
