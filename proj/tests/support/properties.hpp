// Randomized invariant checks shared by the property tests and the acceptance
// gate. Each check returns the number of failing cases out of `cases`.
#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "fracrev/fidelity_metrics.hpp"
#include "oracles.hpp"

namespace fracrev::testing {

struct PropertyResult {
  std::string name;
  std::size_t sites;
  int cases;
  int failures;
};

inline const std::vector<std::size_t>& property_sizes() {
  static const std::vector<std::size_t> sizes{2, 3, 17, 128};
  return sizes;
}

/// <S x|S y> = <x|y> and S S = 1.
inline int check_transform_unitarity(std::size_t n, int cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const ChainSpec chain(n);
  int bad = 0;
  for (int i = 0; i < cases; ++i) {
    const auto x = random_state<PositionTag>(n, rng);
    const auto y = random_state<PositionTag>(n, rng);
    const auto sx = to_spectral(chain, x);
    const auto sy = to_spectral(chain, y);
    const cplx lhs(inner_product(sx, sy)), rhs(inner_product(x, y));
    if (std::abs(lhs - rhs) > 1e-12 || max_abs_diff(to_position(chain, sx), x) > 1e-12) ++bad;
  }
  return bad;
}

/// ||U(t) x|| = 1 under both dispersions, random t and J.
inline int check_norm_conservation(std::size_t n, int cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ut(-1e5, 1e5), uj(0.1, 5.0);
  int bad = 0;
  for (int i = 0; i < cases; ++i) {
    const ChainSpec chain(n, uj(rng));
    const auto x = random_state<PositionTag>(n, rng);
    const double t = ut(rng);
    if (std::abs(evolve_exact(chain, x, t).norm_sq() - 1.0) > 1e-10 ||
        std::abs(evolve_quadratic(chain, x, t).norm_sq() - 1.0) > 1e-10)
      ++bad;
  }
  return bad;
}

/// P H x = H P x and P U(t) x = U(t) P x.
inline int check_mirror_commutation(std::size_t n, int cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ut(0.0, 1e4), uj(0.1, 5.0);
  int bad = 0;
  for (int i = 0; i < cases; ++i) {
    const ChainSpec chain(n, uj(rng));
    const auto x = random_state<PositionTag>(n, rng);
    const double t = ut(rng);
    const double dh = max_abs_diff(reflect(chain, apply_hamiltonian(chain, x)), apply_hamiltonian(chain, reflect(chain, x)));
    const double du = max_abs_diff(reflect(chain, evolve_exact(chain, x, t)), evolve_exact(chain, reflect(chain, x), t));
    if (dh > 1e-12 || du > 1e-10) ++bad;
  }
  return bad;
}

/// P psi(N0) = psi(N+1-N0) for random centers and widths.
inline int check_gwp_reflect_covariance(std::size_t n, int cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const ChainSpec chain(n);
  std::uniform_real_distribution<double> uc(0.0, static_cast<double>(n) + 1.0);
  std::uniform_real_distribution<double> uw(0.3, std::max(1.0, static_cast<double>(n) / 4));
  int bad = 0;
  for (int i = 0; i < cases; ++i) {
    const auto g = GaussianSpec::from_half_width(uc(rng), uw(rng));
    if (max_abs_diff(reflect(chain, build_gwp(chain, g)), build_gwp(chain, g.mirrored(chain))) > 1e-12) ++bad;
  }
  return bad;
}

/// 0 <= |F|^2, |A|^2 <= 1 and |F(t)|^2 = |<x|P U(t)|x>|^2 from the dense oracle.
inline int check_fidelity_bounds(std::size_t n, int cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const ChainSpec chain(n);
  const DenseChainOracle oracle(chain);
  std::uniform_real_distribution<double> ut(0.0, 1e4);
  int bad = 0;
  for (int i = 0; i < cases; ++i) {
    const auto x = random_state<PositionTag>(n, rng);
    const double t = ut(rng);
    const double f = std::norm(mirror_fidelity(chain, x, t));
    const double a = std::norm(autocorrelation(chain, x, t));
    const double f_dense = std::norm(inner_product(reflect(chain, x), oracle.evolve(x, t)));
    if (!(f >= 0.0 && f <= 1.0 + 1e-12 && a >= 0.0 && a <= 1.0 + 1e-12) || std::abs(f - f_dense) > 1e-9) ++bad;
  }
  return bad;
}

inline std::vector<PropertyResult> run_property_suites(int cases = 100, std::uint64_t seed = 2024) {
  std::vector<PropertyResult> out;
  for (std::size_t n : property_sizes()) {
    out.push_back({"transform_unitarity", n, cases, check_transform_unitarity(n, cases, seed + n)});
    out.push_back({"norm_conservation", n, cases, check_norm_conservation(n, cases, seed + 10 * n)});
    out.push_back({"mirror_commutation", n, cases, check_mirror_commutation(n, cases, seed + 100 * n)});
    out.push_back({"gwp_reflect_covariance", n, cases, check_gwp_reflect_covariance(n, cases, seed + 1000 * n)});
    out.push_back({"fidelity_bounds", n, cases, check_fidelity_bounds(n, cases, seed + 10000 * n)});
  }
  return out;
}

}  // namespace fracrev::testing
