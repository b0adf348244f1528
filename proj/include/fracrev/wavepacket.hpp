// Zero-momentum Gaussian wave packets on the chain.
//
//   position form:  psi_j = exp(-alpha^2 (j - N0)^2 / 2) / sqrt(Omega1)
//   spectral form:  c_n   = sin(k_n N0) exp(-k_n^2 / (2 alpha^2)) / sqrt(Omega2)
//   half width (FWHM of |psi|^2):  Delta = 2 sqrt(ln 2) / alpha
#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "chain_model.hpp"

namespace fracrev {

class GaussianSpec {
 public:
  static double alpha_for_half_width(double half_width) {
    return 2.0 * std::sqrt(std::log(2.0)) / half_width;
  }

  static GaussianSpec from_alpha(double center, double alpha) { return GaussianSpec(center, alpha); }
  static GaussianSpec from_half_width(double center, double half_width) {
    if (!(half_width > 0.0)) throw std::invalid_argument("half width must be positive");
    return GaussianSpec(center, alpha_for_half_width(half_width));
  }

  double center() const noexcept { return center_; }
  double alpha() const noexcept { return alpha_; }
  double half_width() const noexcept { return 2.0 * std::sqrt(std::log(2.0)) / alpha_; }

  /// Same width, different center.
  GaussianSpec at(double center) const { return GaussianSpec(center, alpha_); }
  GaussianSpec mirrored(const ChainSpec& chain) const { return at(chain.mirror(center_)); }

  /// 1 + Delta/2 < N0 < N - Delta/2: the packet sits inside the chain.
  bool contained_in(const ChainSpec& chain) const noexcept {
    const double h = half_width() / 2.0;
    return 1.0 + h < center_ && center_ < static_cast<double>(chain.sites()) - h;
  }

 private:
  GaussianSpec(double center, double alpha) : center_(center), alpha_(alpha) {
    if (!(alpha_ > 0.0) || !std::isfinite(alpha_)) throw std::invalid_argument("alpha must be positive");
    if (!std::isfinite(center_)) throw std::invalid_argument("center must be finite");
  }

  double center_;
  double alpha_;
};

/// Position-form packet. Containment is not enforced; callers that care check
/// GaussianSpec::contained_in and warn.
inline PositionState build_gwp(const ChainSpec& chain, const GaussianSpec& spec) {
  const std::size_t n = chain.sites();
  PositionState psi(n);
  const double a2 = spec.alpha() * spec.alpha();
  for (std::size_t j = 1; j <= n; ++j) {
    const double d = static_cast<double>(j) - spec.center();
    psi(j) = std::exp(-a2 * d * d / 2.0);
  }
  return psi.normalize();
}

/// Unnormalized spectral envelope sin(k x) exp(-k^2/2alpha^2) for an arbitrary
/// real center x. Odd and 2(N+1)-periodic in x.
inline SpectralState gwp_spectral_envelope(const ChainSpec& chain, double center, double alpha) {
  const std::size_t n = chain.sites();
  SpectralState c(n);
  const double inv2a2 = 1.0 / (2.0 * alpha * alpha);
  for (std::size_t m = 1; m <= n; ++m) {
    const double k = chain.wavenumber(m);
    c(m) = std::sin(k * center) * std::exp(-k * k * inv2a2);
  }
  return c;
}

inline SpectralState build_gwp_spectral(const ChainSpec& chain, const GaussianSpec& spec) {
  return gwp_spectral_envelope(chain, spec.center(), spec.alpha()).normalize();
}

struct SuperpositionSpec {
  std::vector<std::pair<double, cplx>> components;  // (center, weight)
  double alpha;
};

/// Weighted sum of packets, renormalized exactly.
inline PositionState build_superposition(const ChainSpec& chain, const SuperpositionSpec& spec) {
  if (spec.components.empty()) throw std::invalid_argument("superposition needs at least one center");
  PositionState sum(chain.sites());
  for (const auto& [center, weight] : spec.components)
    sum += weight * build_gwp(chain, GaussianSpec::from_alpha(center, spec.alpha));
  if (!(sum.norm() > 0.0)) throw std::domain_error("superposition weights cancel to zero");
  return sum.normalize();
}

/// f(N_A, N_B) = <psi(N_A)|psi(N_B)>; real for real envelopes.
inline double packet_overlap(const ChainSpec& chain, const GaussianSpec& a, const GaussianSpec& b) {
  if (a.alpha() != b.alpha()) throw std::invalid_argument("packet_overlap needs equal widths");
  return inner_product(build_gwp(chain, a), build_gwp(chain, b)).real();
}

/// Modes n with |c_n| >= rel_tol * max |c|.
inline std::vector<std::size_t> surviving_levels(const SpectralState& c, double rel_tol = 1e-8) {
  double peak = 0.0;
  for (const auto& v : c.values()) peak = std::max(peak, std::abs(v));
  std::vector<std::size_t> out;
  for (std::size_t n = 1; n <= c.size(); ++n)
    if (peak > 0.0 && std::abs(c(n)) >= rel_tol * peak) out.push_back(n);
  return out;
}

inline std::vector<std::size_t> vanishing_levels(const SpectralState& c, double rel_tol = 1e-8) {
  const auto keep = surviving_levels(c, rel_tol);
  std::vector<std::size_t> out;
  std::size_t i = 0;
  for (std::size_t n = 1; n <= c.size(); ++n) {
    if (i < keep.size() && keep[i] == n) {
      ++i;
      continue;
    }
    out.push_back(n);
  }
  return out;
}

}  // namespace fracrev
