#pragma once

#include <cstdint>
#include <span>

#include "treecount/interval.hpp"

namespace treecount {

/// A double value with an absolute error bound.
struct ScaledValue {
  double value = 0.0;
  double error = 0.0;
};

/// e^{-x} I_ν(x) for x >= 0. Power series below the switchover
/// x = 30 + ν²/2, asymptotic expansion in 1/x above it.
ScaledValue bessel_i_scaled(unsigned order, double x);

/// Enclosure of I_ν(x).
Interval bessel_i(unsigned order, double x);

/// (I_0(2t) - 1)/t by its power series; intended for 0 <= t <= 2.
double bessel_i0_deficit_over_t(double t);

enum class BesselForm { integral, series };

struct MultidimOptions {
  /// Relative tolerance for the series truncation and the angular quadrature.
  double tolerance = 1e-14;
  /// Largest admissible truncation box (number of lattice points).
  std::size_t max_terms = 2'000'000;
};

/// I_0^{1,γ_1,...,γ_m}(2t, ..., 2t) scaled by e^{-2(m+1)t}: the heat kernel
/// at time t of the circulant with generators (1, γ...).
ScaledValue multidim_bessel_scaled(std::span<const std::uint64_t> gammas, double t, BesselForm form,
                                   const MultidimOptions& options = {});

/// Enclosure of I_0^{1,γ_1,...,γ_m}(2t, ..., 2t) = (1/2π)∫ e^{2t(cos w + Σ cos γ_m w)} dw.
Interval multidim_bessel(std::span<const std::uint64_t> gammas, double t, BesselForm form,
                         const MultidimOptions& options = {});

/// Heat kernel (1/π)∫_0^π e^{-tλ(w)} dw of the circulant with the given full
/// generator list, where λ(w) = Σ_g 4 sin²(g w/2). The list must contain 1.
ScaledValue circulant_heat_kernel(std::span<const std::uint64_t> generators, double t, double tolerance = 1e-14);

/// (H(t) - 1)/t for the same kernel, accurate as t -> 0 (limit -2·|generators|).
ScaledValue circulant_heat_kernel_deficit(std::span<const std::uint64_t> generators, double t,
                                          double tolerance = 1e-14);

}  // namespace treecount
