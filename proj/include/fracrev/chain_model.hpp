// Open uniform tight-binding chain: eigenstructure and the sine transform
// between site (position) and eigenmode (spectral) representations.
//
//   H = -J sum_{j=1}^{N-1} (|j><j+1| + h.c.)
//   k_n = n pi / (N+1),  eps_n = -2J cos k_n,  n = 1..N
//   <j|k_n> = sqrt(2/(N+1)) sin(k_n j)
//
// Sites and modes are 1-based on every interface. Units: hbar = 1, time in 1/J.
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fracrev {

using cplx = std::complex<double>;

/// Thrown when two states (or a state and a chain) disagree on length.
class dimension_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ChainSpec {
 public:
  explicit ChainSpec(std::size_t sites, double hopping = 1.0) : sites_(sites), hopping_(hopping) {
    if (sites_ < 2) throw std::invalid_argument("chain needs at least 2 sites");
    if (!(hopping_ > 0.0) || !std::isfinite(hopping_))
      throw std::invalid_argument("hopping must be positive and finite");
  }

  std::size_t sites() const noexcept { return sites_; }
  double hopping() const noexcept { return hopping_; }
  /// N + 1, the length that sets k_n and the image period 2(N+1).
  double span_length() const noexcept { return static_cast<double>(sites_ + 1); }
  double wavenumber(std::size_t n) const noexcept {
    return std::numbers::pi * static_cast<double>(n) / span_length();
  }
  double energy(std::size_t n) const noexcept { return -2.0 * hopping_ * std::cos(wavenumber(n)); }
  /// Site index of the mirror image, N + 1 - x (x may be fractional).
  double mirror(double x) const noexcept { return span_length() - x; }

  friend bool operator==(const ChainSpec&, const ChainSpec&) = default;

 private:
  std::size_t sites_;
  double hopping_;
};

struct EigenMode {
  std::size_t n;
  double k;
  double energy;
  int parity;
};

inline std::vector<EigenMode> eigen_modes(const ChainSpec& chain) {
  std::vector<EigenMode> modes;
  modes.reserve(chain.sites());
  for (std::size_t n = 1; n <= chain.sites(); ++n)
    modes.push_back({n, chain.wavenumber(n), chain.energy(n), n % 2 == 1 ? 1 : -1});
  return modes;
}

struct PositionTag {};
struct SpectralTag {};

/// Complex amplitude vector tagged by representation. Index operator is 1-based.
template <class Tag>
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(std::size_t n) : amp_(n) {}
  explicit StateVector(std::vector<cplx> amplitudes) : amp_(std::move(amplitudes)) {}

  std::size_t size() const noexcept { return amp_.size(); }
  bool empty() const noexcept { return amp_.empty(); }

  cplx& operator()(std::size_t i) { return amp_.at(i - 1); }
  const cplx& operator()(std::size_t i) const { return amp_.at(i - 1); }

  std::span<cplx> values() noexcept { return amp_; }
  std::span<const cplx> values() const noexcept { return amp_; }

  double norm_sq() const noexcept {
    double s = 0.0;
    for (const auto& a : amp_) s += std::norm(a);
    return s;
  }
  double norm() const noexcept { return std::sqrt(norm_sq()); }

  /// Scales to unit norm. Throws on the zero vector.
  StateVector& normalize() {
    const double nrm = norm();
    if (!(nrm > 0.0)) throw std::domain_error("cannot normalize a zero state");
    for (auto& a : amp_) a /= nrm;
    return *this;
  }

  StateVector& operator+=(const StateVector& o) {
    check_same_size(o);
    for (std::size_t i = 0; i < amp_.size(); ++i) amp_[i] += o.amp_[i];
    return *this;
  }
  StateVector& operator-=(const StateVector& o) {
    check_same_size(o);
    for (std::size_t i = 0; i < amp_.size(); ++i) amp_[i] -= o.amp_[i];
    return *this;
  }
  StateVector& operator*=(cplx s) noexcept {
    for (auto& a : amp_) a *= s;
    return *this;
  }
  friend StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
  friend StateVector operator-(StateVector a, const StateVector& b) { return a -= b; }
  friend StateVector operator*(cplx s, StateVector a) { return a *= s; }

  void check_same_size(const StateVector& o) const {
    if (o.size() != size())
      throw dimension_error("state length mismatch: " + std::to_string(size()) + " vs " +
                            std::to_string(o.size()));
  }

 private:
  std::vector<cplx> amp_;
};

using PositionState = StateVector<PositionTag>;
using SpectralState = StateVector<SpectralTag>;

/// <a|b>, conjugate-linear in a.
template <class Tag>
cplx inner_product(const StateVector<Tag>& a, const StateVector<Tag>& b) {
  a.check_same_size(b);
  cplx s{0.0, 0.0};
  const auto av = a.values();
  const auto bv = b.values();
  for (std::size_t i = 0; i < av.size(); ++i) s += std::conj(av[i]) * bv[i];
  return s;
}

/// Dense real kernel S[n][j] = sqrt(2/(N+1)) sin(n j pi/(N+1)). S is symmetric
/// and orthogonal, so the same matrix maps both directions. O(N^2) per apply.
class SineKernel {
 public:
  explicit SineKernel(std::size_t sites) : n_(sites), m_(sites * sites) {
    // sin(pi m/(N+1)) depends only on m mod 2(N+1); tabulate once.
    const std::size_t period = 2 * (n_ + 1);
    std::vector<double> table(period);
    const double scale = std::sqrt(2.0 / static_cast<double>(n_ + 1));
    for (std::size_t m = 0; m < period; ++m)
      table[m] = scale * std::sin(std::numbers::pi * static_cast<double>(m) / static_cast<double>(n_ + 1));
    for (std::size_t a = 1; a <= n_; ++a)
      for (std::size_t b = 1; b <= n_; ++b) m_[(a - 1) * n_ + (b - 1)] = table[(a * b) % period];
  }

  std::size_t sites() const noexcept { return n_; }
  double operator()(std::size_t n, std::size_t j) const { return m_[(n - 1) * n_ + (j - 1)]; }

  void apply(std::span<const cplx> in, std::span<cplx> out) const {
    if (in.size() != n_ || out.size() != n_) throw dimension_error("sine transform length mismatch");
    for (std::size_t r = 0; r < n_; ++r) {
      const double* row = m_.data() + r * n_;
      double re = 0.0, im = 0.0;
      for (std::size_t c = 0; c < n_; ++c) {
        re += row[c] * in[c].real();
        im += row[c] * in[c].imag();
      }
      out[r] = {re, im};
    }
  }

 private:
  std::size_t n_;
  std::vector<double> m_;
};

/// Shared, immutable kernel per chain length. Thread-safe.
inline std::shared_ptr<const SineKernel> sine_kernel(std::size_t sites) {
  static std::mutex mu;
  static std::map<std::size_t, std::shared_ptr<const SineKernel>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[sites];
  if (!slot) slot = std::make_shared<const SineKernel>(sites);
  return slot;
}

inline SpectralState to_spectral(const ChainSpec& chain, const PositionState& state) {
  if (state.size() != chain.sites()) throw dimension_error("position state does not match chain length");
  SpectralState out(chain.sites());
  sine_kernel(chain.sites())->apply(state.values(), out.values());
  return out;
}

inline PositionState to_position(const ChainSpec& chain, const SpectralState& state) {
  if (state.size() != chain.sites()) throw dimension_error("spectral state does not match chain length");
  PositionState out(chain.sites());
  sine_kernel(chain.sites())->apply(state.values(), out.values());
  return out;
}

/// Mirror operator P|j> = |N+1-j>.
inline PositionState reflect(const ChainSpec& chain, const PositionState& state) {
  if (state.size() != chain.sites()) throw dimension_error("position state does not match chain length");
  const auto v = state.values();
  return PositionState(std::vector<cplx>(v.rbegin(), v.rend()));
}

/// Position-space standing wave of mode n.
inline PositionState eigenvector(const ChainSpec& chain, std::size_t n) {
  if (n < 1 || n > chain.sites()) throw std::out_of_range("mode index out of range");
  SpectralState unit(chain.sites());
  unit(n) = 1.0;
  return to_position(chain, unit);
}

/// H|x> by direct tridiagonal multiply.
inline PositionState apply_hamiltonian(const ChainSpec& chain, const PositionState& state) {
  if (state.size() != chain.sites()) throw dimension_error("position state does not match chain length");
  const std::size_t n = chain.sites();
  const double j = chain.hopping();
  PositionState out(n);
  const auto in = state.values();
  auto o = out.values();
  for (std::size_t i = 0; i < n; ++i) {
    cplx s{0.0, 0.0};
    if (i > 0) s += in[i - 1];
    if (i + 1 < n) s += in[i + 1];
    o[i] = -j * s;
  }
  return out;
}

}  // namespace fracrev
