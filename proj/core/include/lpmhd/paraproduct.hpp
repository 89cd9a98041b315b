#pragma once

#include <cstdint>
#include <string_view>

#include "lpmhd/estimate_report.hpp"
#include "lpmhd/littlewood_paley.hpp"

namespace lpmhd {

// Bony decomposition uv = T_u v + T_v u + R(u, v) on the bank's band:
//   T_u v  = sum_{j=j_min}^{j_max} S_{j-1}u Delta_j v   (S_{j_min-1} u = mean u)
//   R(u,v) = sum_{|j-k|<=1} Delta_j u Delta_k v + mean(u) mean(v)
// All products are dealiased. For fields supported in the partition band the
// three parts add up to the dealiased product uv. Scalar-vector and
// componentwise vector-vector products are supported.

Field paraproduct(const FilterBank& bank, const Field& u, const Field& v);

/// Symmetric in (u, v) bit for bit.
Field remainder(const FilterBank& bank, const Field& u, const Field& v);

struct BonyParts {
  Field T_uv;  // T_u v
  Field T_vu;  // T_v u
  Field R_uv;  // R(u, v)
};

BonyParts bony_decompose(const FilterBank& bank, const Field& u, const Field& v);

enum class ProductVariant {
  Paraproduct,  // ||T_g f||_{B^{s1+s2-d/p}_{p,1}} <= C ||f||_{B^{s1}_{p,1}} ||g||_{B^{s2}_{p,1}}, s2 <= d/p
  Remainder,    // ||R(f,g)||_{B^{s1+s2-d/p}_{p,1}}, s1 + s2 > d max(0, 2/p - 1)
  Full,         // ||fg||_{B^{s1+s2-d/p}_{p,1}}, s1, s2 <= d/p, s1 + s2 > d max(0, 2/p - 1)
  Mixed,        // ||fg||_{B^{s1+s2-d/p}_{p,inf}} <= C ||f||_{B^{s1}_{p,1}} ||g||_{B^{s2}_{p,inf}}
                // s1 <= d/p, s2 < d/p, s1 + s2 >= d max(0, 2/p - 1)
};

std::string_view to_string(ProductVariant v) noexcept;
ProductVariant parse_product_variant(std::string_view name);

/// Throws IndexConditionError naming the violated hypothesis.
void check_product_indices(ProductVariant variant, int dim, double s1, double s2, double p);

EstimateReport product_law_ratio(const FilterBank& bank, const Field& f, const Field& g, double s1,
                                 double s2, double p, ProductVariant variant,
                                 std::uint64_t seed = 0);

/// ||f||_{L~^q(B^s_{p,1})} against
/// (||f||_{L~^q(B^s_{p,inf})} / eps) log(e + (||f||_{L~^q(B^{s-eps}_{p,inf})} +
/// ||f||_{L~^q(B^{s+eps}_{p,inf})}) / ||f||_{L~^q(B^s_{p,inf})}).
/// A vanishing l^inf norm yields a degenerate report.
EstimateReport log_interpolation_ratio(const FilterBank& bank, const TimeSeriesField& series,
                                       double s, double p, double q, double eps,
                                       std::uint64_t seed = 0);

}  // namespace lpmhd
