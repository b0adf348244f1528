// Spectral time evolution: transform to eigenmodes, multiply by phases,
// transform back. Exact to rounding, O(N^2) per state.
#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "chain_model.hpp"

namespace fracrev {

/// Small-k level spacing and the mirror revival time.
///
/// Near the band bottom eps_n = -2J cos k_n = -2J + J k_n^2 + O(k^4), so the
/// quadratic levels are n^2 * delta_E with delta_E = J pi^2 / (N+1)^2. At
/// t_rev = pi / delta_E every phase is exp(-i pi n^2) = (-1)^n, which maps a
/// low-energy state onto its mirror image.
struct RevivalClock {
  double delta_E;
  double t_rev;
};

inline RevivalClock revival_clock(const ChainSpec& chain) {
  const double l = chain.span_length();
  const double de = chain.hopping() * std::numbers::pi * std::numbers::pi / (l * l);
  return {de, std::numbers::pi / de};
}

enum class Dispersion {
  exact,      // -2J cos k
  quadratic,  // J k^2, constant -2J offset dropped
};

inline double mode_energy(const ChainSpec& chain, std::size_t n, Dispersion d) {
  if (d == Dispersion::exact) return chain.energy(n);
  const double k = chain.wavenumber(n);
  return chain.hopping() * k * k;
}

inline std::vector<double> mode_energies(const ChainSpec& chain, Dispersion d) {
  std::vector<double> e(chain.sites());
  for (std::size_t n = 1; n <= chain.sites(); ++n) e[n - 1] = mode_energy(chain, n, d);
  return e;
}

/// exp(-i eps_n t) applied to spectral coefficients.
inline SpectralState evolve_spectral(const ChainSpec& chain, const SpectralState& c, double t,
                                     Dispersion d = Dispersion::exact) {
  if (c.size() != chain.sites()) throw dimension_error("spectral state does not match chain length");
  SpectralState out(c.size());
  for (std::size_t n = 1; n <= c.size(); ++n) out(n) = c(n) * std::polar(1.0, -mode_energy(chain, n, d) * t);
  return out;
}

inline PositionState evolve(const ChainSpec& chain, const PositionState& state, double t, Dispersion d) {
  return to_position(chain, evolve_spectral(chain, to_spectral(chain, state), t, d));
}

inline PositionState evolve_exact(const ChainSpec& chain, const PositionState& state, double t) {
  return evolve(chain, state, t, Dispersion::exact);
}

inline PositionState evolve_quadratic(const ChainSpec& chain, const PositionState& state, double t) {
  return evolve(chain, state, t, Dispersion::quadratic);
}

/// Repeated evaluation of one initial state: caches its spectral coefficients
/// and the mode energies, so each time point costs O(N) in the eigenbasis.
class SpectralPropagator {
 public:
  SpectralPropagator(const ChainSpec& chain, const PositionState& initial, Dispersion d = Dispersion::exact)
      : chain_(chain), coeffs_(to_spectral(chain, initial)), energies_(mode_energies(chain, d)) {}

  const ChainSpec& chain() const noexcept { return chain_; }
  const SpectralState& initial() const noexcept { return coeffs_; }

  SpectralState at(double t) const {
    SpectralState out(coeffs_.size());
    for (std::size_t n = 1; n <= coeffs_.size(); ++n)
      out(n) = coeffs_(n) * std::polar(1.0, -energies_[n - 1] * t);
    return out;
  }
  PositionState position_at(double t) const { return to_position(chain_, at(t)); }

 private:
  ChainSpec chain_;
  SpectralState coeffs_;
  std::vector<double> energies_;
};

/// |<i|phi>| for every site.
inline std::vector<double> profile(const PositionState& state) {
  std::vector<double> out;
  out.reserve(state.size());
  for (const auto& a : state.values()) out.push_back(std::abs(a));
  return out;
}

}  // namespace fracrev
