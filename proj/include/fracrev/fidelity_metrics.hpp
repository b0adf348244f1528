// Scalar diagnostics of the exact dynamics: autocorrelation A(t), mirror
// fidelity F(t), fractional fidelity F_f, and traces over time grids.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "chain_model.hpp"
#include "propagator.hpp"
#include "revival_theory.hpp"
#include "wavepacket.hpp"

namespace fracrev {

/// Thrown when no clone is predicted at the mirror site for a fraction.
class undefined_fraction_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A(t) = <phi(0)|phi(t)>.
inline cplx autocorrelation(const ChainSpec& chain, const PositionState& initial, double t) {
  return inner_product(initial, evolve_exact(chain, initial, t));
}

/// <P phi(0)|phi(t)> for an arbitrary initial state.
inline cplx mirror_fidelity(const ChainSpec& chain, const PositionState& initial, double t) {
  return inner_product(reflect(chain, initial), evolve_exact(chain, initial, t));
}

/// F(t) = <psi(N+1-N0)|phi(N0, t)>.
inline cplx mirror_fidelity(const ChainSpec& chain, const GaussianSpec& spec, double t) {
  const auto target = build_gwp(chain, spec.mirrored(chain));
  return inner_product(target, evolve_exact(chain, build_gwp(chain, spec), t));
}

struct FractionalFidelity {
  double value;             // |F(tau)| / |mirror clone amplitude|
  double gauss_value;       // |F(tau)| / |b_{l/2}|, NaN when b_{l/2} = 0
  cplx mirror_fidelity;     // F(tau)
  cplx mirror_amplitude;    // coherent weight predicted at N + 1 - N0
  bool breakdown;           // value > 1 + 1e-6: clone picture fails
};

namespace detail {

inline FractionalFidelity fractional_from(const ChainSpec& chain, const GaussianSpec& spec,
                                          const RevivalFraction& frac, cplx f) {
  const auto g = gauss_coefficients(frac);
  const auto amp = mirror_clone_amplitude(chain, predict_clones(chain, spec, frac), spec.center());
  if (std::abs(amp) < 1e-12)
    throw undefined_fraction_error("no mirror clone predicted at " + std::to_string(frac.p()) + "/" +
                                   std::to_string(frac.q()));
  const double bh = std::abs(g.b[static_cast<std::size_t>(g.l / 2)]);
  FractionalFidelity out{};
  out.value = std::abs(f) / std::abs(amp);
  out.gauss_value = bh < 1e-12 ? std::numeric_limits<double>::quiet_NaN() : std::abs(f) / bh;
  out.mirror_fidelity = f;
  out.mirror_amplitude = amp;
  out.breakdown = out.value > 1.0 + 1e-6;
  return out;
}

}  // namespace detail

/// |F(tau)| at tau = p t_rev / q renormalized by the predicted mirror clone.
/// When no other clone lands on the mirror site this is |F| / |b_{l/2}| = sqrt(q) |F|.
inline FractionalFidelity fractional_fidelity(const ChainSpec& chain, const GaussianSpec& spec,
                                              const RevivalFraction& frac) {
  const double tau = revival_clock(chain).t_rev * frac.value();
  return detail::fractional_from(chain, spec, frac, mirror_fidelity(chain, spec, tau));
}

/// Smallest-denominator fraction p/q (q <= max_q, p >= 1) equal to x within 1e-9.
inline std::optional<RevivalFraction> rational_time(double x, std::int64_t max_q) {
  for (std::int64_t q = 1; q <= max_q; ++q) {
    const double pq = x * static_cast<double>(q);
    const double p = std::round(pq);
    if (p >= 1.0 && std::abs(pq - p) <= 1e-9 * static_cast<double>(q))
      return RevivalFraction::reduced(static_cast<std::int64_t>(p), q);
  }
  return std::nullopt;
}

struct TracePoint {
  double t_over_trev;
  double abs_F_sq;
  double abs_Ff_sq;  // NaN off rational grid points or without a packet spec
  double abs_A_sq;
  std::optional<std::vector<double>> profile;
};

struct FidelityTrace {
  std::vector<TracePoint> points;

  std::vector<double> grid() const {
    std::vector<double> g;
    for (const auto& p : points) g.push_back(p.t_over_trev);
    return g;
  }
  std::vector<double> column(double TracePoint::*field) const {
    std::vector<double> v;
    for (const auto& p : points) v.push_back(p.*field);
    return v;
  }
};

struct TraceOptions {
  std::optional<GaussianSpec> packet;  // enables F_f at rational times
  std::int64_t max_denominator = 64;
  bool keep_profiles = false;
  unsigned threads = 1;
};

/// Samples |F|^2, |F_f|^2 and |A|^2 on a grid given in units of t_rev. The
/// mirror reference is P|initial>. Points are independent; output order is
/// the grid order for any thread count.
inline FidelityTrace trace(const ChainSpec& chain, const PositionState& initial, std::span<const double> grid,
                           const TraceOptions& opt = {}) {
  if (grid.empty()) throw std::invalid_argument("trace grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("trace grid must be strictly increasing");

  const double t_rev = revival_clock(chain).t_rev;
  const SpectralPropagator prop(chain, initial);
  const auto& c0 = prop.initial();
  const auto mirror = to_spectral(chain, reflect(chain, initial));

  // Mirror amplitudes depend only on the fraction; resolve them up front.
  std::vector<std::optional<cplx>> amps(grid.size());
  if (opt.packet) {
    std::map<std::pair<std::int64_t, std::int64_t>, std::optional<cplx>> cache;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto frac = rational_time(grid[i], opt.max_denominator);
      if (!frac) continue;
      auto [it, fresh] = cache.try_emplace({frac->p(), frac->q()});
      if (fresh) {
        const auto a = mirror_clone_amplitude(chain, predict_clones(chain, *opt.packet, *frac), opt.packet->center());
        if (std::abs(a) >= 1e-12) it->second = a;
      }
      amps[i] = it->second;
    }
  }

  FidelityTrace out;
  out.points.resize(grid.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto ct = prop.at(grid[i] * t_rev);
      const cplx a = inner_product(c0, ct);
      const cplx f = inner_product(mirror, ct);
      auto& pt = out.points[i];
      pt.t_over_trev = grid[i];
      pt.abs_A_sq = std::norm(a);
      pt.abs_F_sq = std::norm(f);
      pt.abs_Ff_sq = amps[i] ? std::norm(f) / std::norm(*amps[i]) : std::numeric_limits<double>::quiet_NaN();
      if (opt.keep_profiles) pt.profile = profile(to_position(chain, ct));
    }
  };

  const std::size_t nthreads = std::clamp<std::size_t>(opt.threads, 1, grid.size());
  if (nthreads == 1) {
    work(0, grid.size());
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (grid.size() + nthreads - 1) / nthreads;
    for (std::size_t b = 0; b < grid.size(); b += chunk) pool.emplace_back(work, b, std::min(grid.size(), b + chunk));
  }
  return out;
}

struct Peak {
  double t;
  double value;
};

/// Interior local maxima with value >= min_height, thinned so that kept peaks
/// are more than min_separation apart (taller first, earlier on ties).
/// Plateaus report their first sample. Result is sorted by t.
inline std::vector<Peak> find_peaks(std::span<const double> grid, std::span<const double> values,
                                    double min_height, double min_separation) {
  if (grid.size() != values.size()) throw dimension_error("find_peaks: grid and values differ in length");
  std::vector<Peak> cand;
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    if (values[i] < min_height || !(values[i] > values[i - 1])) continue;
    std::size_t j = i;
    while (j + 1 < values.size() && values[j + 1] == values[i]) ++j;
    if (j + 1 < values.size() && values[j + 1] < values[i]) cand.push_back({grid[i], values[i]});
  }
  std::stable_sort(cand.begin(), cand.end(), [](const Peak& a, const Peak& b) {
    return a.value != b.value ? a.value > b.value : a.t < b.t;
  });
  std::vector<Peak> kept;
  for (const auto& c : cand) {
    const bool clear = std::all_of(kept.begin(), kept.end(),
                                   [&](const Peak& k) { return std::abs(k.t - c.t) > min_separation; });
    if (clear) kept.push_back(c);
  }
  std::sort(kept.begin(), kept.end(), [](const Peak& a, const Peak& b) { return a.t < b.t; });
  return kept;
}

inline std::vector<Peak> find_peaks(const FidelityTrace& tr, double TracePoint::*field, double min_height,
                                    double min_separation) {
  const auto g = tr.grid();
  const auto v = tr.column(field);
  return find_peaks(g, v, min_height, min_separation);
}

}  // namespace fracrev
