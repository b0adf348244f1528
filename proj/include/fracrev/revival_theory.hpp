// Closed-form fractional revivals under the quadratic spectrum n^2 delta_E.
//
// At tau = p t_rev / q the phase exp(-i pi p n^2 / q) is l-periodic in n
// (l = 2q for odd q, q for even q) and expands as
//   exp(-i pi p n^2/q) = sum_{r=0}^{l-1} b_r exp(-2 pi i n r / l),
//   b_r = (1/l) sum_{n=0}^{l-1} exp(i (2 pi n r / l - pi p n^2 / q)).
// Each term shifts the packet center by 2(N+1) r / l, so the evolved packet is
// a coherent sum of l weighted clones, folded back into the chain by the odd
// 2(N+1)-periodic extension of the sine basis.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "chain_model.hpp"
#include "propagator.hpp"
#include "wavepacket.hpp"

namespace fracrev {

/// Reduced fraction p/q of the revival time.
class RevivalFraction {
 public:
  RevivalFraction(std::int64_t p, std::int64_t q) : p_(p), q_(q) {
    if (p_ < 1 || q_ < 1) throw std::invalid_argument("revival fraction needs p >= 1 and q >= 1");
    if (std::gcd(p_, q_) != 1) throw std::invalid_argument("revival fraction must be reduced");
  }
  static RevivalFraction reduced(std::int64_t p, std::int64_t q) {
    if (p < 1 || q < 1) throw std::invalid_argument("revival fraction needs p >= 1 and q >= 1");
    const auto g = std::gcd(p, q);
    return {p / g, q / g};
  }

  std::int64_t p() const noexcept { return p_; }
  std::int64_t q() const noexcept { return q_; }
  double value() const noexcept { return static_cast<double>(p_) / static_cast<double>(q_); }

  friend bool operator==(const RevivalFraction&, const RevivalFraction&) = default;

 private:
  std::int64_t p_, q_;
};

inline std::int64_t fourier_period(std::int64_t q) {
  if (q < 1) throw std::invalid_argument("fourier_period needs q >= 1");
  return q % 2 == 1 ? 2 * q : q;
}

struct GaussCoefficients {
  std::int64_t l;
  std::vector<cplx> b;  // index r = 0..l-1
};

/// One Gauss-sum coefficient summed over the window n = first..first+l-1.
/// The summand is l-periodic, so the window origin does not matter.
inline cplx gauss_coefficient(const RevivalFraction& f, std::int64_t r, std::int64_t first = 0) {
  const std::int64_t p = f.p(), q = f.q(), l = fourier_period(q);
  // angle = pi * (2 n r q - p n^2 l) / (l q); reduce the integer numerator mod 2lq.
  const std::int64_t mod = 2 * l * q;
  const double unit = std::numbers::pi / static_cast<double>(l * q);
  cplx s{0.0, 0.0};
  for (std::int64_t n = first; n < first + l; ++n) {
    const std::int64_t nm = ((n % mod) + mod) % mod;
    std::int64_t num = (2 * nm % mod) * (r % mod) % mod * q % mod;
    num -= (p % mod) * (nm * nm % mod) % mod * l % mod;
    num = ((num % mod) + mod) % mod;
    s += std::polar(1.0, unit * static_cast<double>(num));
  }
  return s / static_cast<double>(l);
}

inline GaussCoefficients gauss_coefficients(const RevivalFraction& f) {
  GaussCoefficients g{fourier_period(f.q()), {}};
  g.b.reserve(static_cast<std::size_t>(g.l));
  for (std::int64_t r = 0; r < g.l; ++r) g.b.push_back(gauss_coefficient(f, r));
  return g;
}

/// Image of a (possibly out-of-chain) center under the odd 2(N+1)-periodic
/// extension: psi(x) = sign * psi(position) with position in [0, N+1].
struct FoldedCenter {
  double position;
  double sign;
  bool vanishes;  // lands on 0 or N+1, where the odd image cancels itself
};

inline FoldedCenter fold_center(const ChainSpec& chain, double x) {
  const double span = chain.span_length();
  const double period = 2.0 * span;
  double y = std::fmod(x, period);
  if (y < 0.0) y += period;
  double sign = 1.0;
  if (y > span) {
    y = period - y;
    sign = -1.0;
  }
  const double eps = 1e-9 * span;
  const bool vanishes = y < eps || std::abs(y - span) < eps || std::abs(y - period) < eps;
  return {y, sign, vanishes};
}

struct SubPacket {
  std::int64_t r;
  double center;  // folded into [0, N+1]
  cplx weight;    // b_r times the folding sign
  bool reflected;
};

struct SubPacketPrediction {
  RevivalFraction fraction;
  std::vector<SubPacket> packets;
  PositionState state;

  /// Packets merged when their centers lie within `merge_distance` sites,
  /// with weights summed coherently; zero-weight entries dropped.
  std::vector<SubPacket> resolved(double merge_distance, double min_weight = 1e-9) const {
    std::vector<SubPacket> sorted;
    for (const auto& pk : packets)
      if (std::abs(pk.weight) > 1e-12) sorted.push_back(pk);
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.center < b.center; });
    std::vector<SubPacket> out;
    for (const auto& pk : sorted) {
      if (!out.empty() && pk.center - out.back().center <= merge_distance) {
        out.back().weight += pk.weight;
      } else {
        out.push_back(pk);
      }
    }
    std::erase_if(out, [&](const auto& pk) { return std::abs(pk.weight) < min_weight; });
    return out;
  }
};

/// Clone list for tau = p t_rev / q: r = 0..l/2 shifted by +2(N+1)r/l and,
/// for 0 < r < l/2, by -2(N+1)r/l; every center folded into the chain.
/// The r = l/2 image folds onto N + 1 - N0 with weight -b_{l/2}.
inline std::vector<SubPacket> predict_clones(const ChainSpec& chain, const GaussianSpec& spec,
                                             const RevivalFraction& frac) {
  const auto g = gauss_coefficients(frac);
  const double shift = 2.0 * chain.span_length() / static_cast<double>(g.l);
  std::vector<SubPacket> packets;
  auto add = [&](std::int64_t r, double raw) {
    const auto f = fold_center(chain, raw);
    const cplx w = f.vanishes ? cplx{0.0, 0.0} : f.sign * g.b[static_cast<std::size_t>(r)];
    packets.push_back({r, f.position, w, f.sign < 0.0});
  };
  for (std::int64_t r = 0; r <= g.l / 2; ++r) {
    add(r, spec.center() + shift * static_cast<double>(r));
    if (r != 0 && 2 * r != g.l) add(g.l - r, spec.center() - shift * static_cast<double>(r));
  }
  return packets;
}

/// Analytic state at tau = p t_rev / q. Clones are assembled in the spectral
/// form with the initial packet's normalization, then the sum is normalized.
inline SubPacketPrediction predict_state(const ChainSpec& chain, const GaussianSpec& spec,
                                         const RevivalFraction& frac) {
  SubPacketPrediction pred{frac, predict_clones(chain, spec, frac), PositionState{}};
  const double norm0 = gwp_spectral_envelope(chain, spec.center(), spec.alpha()).norm();
  SpectralState sum(chain.sites());
  for (const auto& pk : pred.packets) {
    if (std::abs(pk.weight) == 0.0) continue;
    sum += pk.weight * gwp_spectral_envelope(chain, pk.center, spec.alpha());
  }
  sum *= 1.0 / norm0;
  pred.state = to_position(chain, sum).normalize();
  return pred;
}

/// Coherent weight of the clones that land exactly on the mirror site
/// N + 1 - N0. Reduces to -b_{l/2} when no other clone coincides with it.
inline cplx mirror_clone_amplitude(const ChainSpec& chain, const std::vector<SubPacket>& packets, double center,
                                   double tol = 1e-6) {
  const double target = chain.mirror(center);
  cplx a{0.0, 0.0};
  for (const auto& pk : packets)
    if (std::abs(pk.center - target) <= tol) a += pk.weight;
  return a;
}

struct SpmcReport {
  std::vector<std::size_t> support;  // modes holding >= 1 - 1e-6 of the weight
  double max_relative_deviation;     // max |(eps_n + 2J) - J k_n^2| / (J k_n^2)
  bool parity_alternates;            // measured mirror parity == (-1)^(n+1)
  bool within_tolerance;
};

inline SpmcReport spmc_check(const ChainSpec& chain, const SpectralState& c, double tolerance) {
  if (c.size() != chain.sites()) throw dimension_error("spectral state does not match chain length");
  std::vector<std::size_t> order(c.size());
  std::iota(order.begin(), order.end(), 1);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return std::norm(c(a)) > std::norm(c(b)); });
  const double total = c.norm_sq();
  SpmcReport rep{{}, 0.0, true, false};
  double acc = 0.0;
  for (std::size_t n : order) {
    if (acc >= (1.0 - 1e-6) * total) break;
    acc += std::norm(c(n));
    rep.support.push_back(n);
  }
  std::sort(rep.support.begin(), rep.support.end());

  const auto kernel = sine_kernel(chain.sites());
  const double twoJ = 2.0 * chain.hopping();
  for (std::size_t n : rep.support) {
    const double quad = mode_energy(chain, n, Dispersion::quadratic);
    const double exact = chain.energy(n) + twoJ;
    rep.max_relative_deviation = std::max(rep.max_relative_deviation, std::abs(exact - quad) / quad);
    const int measured = ((*kernel)(n, chain.sites()) / (*kernel)(n, 1)) > 0.0 ? 1 : -1;
    if (measured != (n % 2 == 1 ? 1 : -1)) rep.parity_alternates = false;
  }
  rep.within_tolerance = rep.parity_alternates && rep.max_relative_deviation <= tolerance;
  return rep;
}

inline SpmcReport spmc_check(const ChainSpec& chain, const GaussianSpec& spec, double tolerance) {
  return spmc_check(chain, to_spectral(chain, build_gwp(chain, spec)), tolerance);
}

struct EffectivePeriod {
  std::uint64_t spacing_multiplier;
  double t_rev_eff;
};

/// gcd of n_i^2 - n_j^2 over the surviving levels, and t_rev divided by it.
inline EffectivePeriod effective_period(const ChainSpec& chain, const SpectralState& c, double rel_tol = 1e-8) {
  const auto levels = surviving_levels(c, rel_tol);
  if (levels.size() < 2) throw std::domain_error("effective_period needs at least two surviving levels");
  const std::uint64_t base = static_cast<std::uint64_t>(levels.front()) * levels.front();
  std::uint64_t g = 0;
  for (std::size_t n : levels) g = std::gcd(g, static_cast<std::uint64_t>(n) * n - base);
  return {g, revival_clock(chain).t_rev / static_cast<double>(g)};
}

/// (N + 1 - 2 N0) l is an integer multiple of 2(N+1).
inline bool is_commensurate(const ChainSpec& chain, double center, std::int64_t l) {
  if (l < 1) throw std::invalid_argument("is_commensurate needs l >= 1");
  const double span = chain.span_length();
  const double ratio = (span - 2.0 * center) * static_cast<double>(l) / (2.0 * span);
  return std::abs(ratio - std::round(ratio)) <= 1e-9 * std::max(1.0, std::abs(ratio));
}

}  // namespace fracrev
