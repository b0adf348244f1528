// Revival period against a decoherence time for a physical chain.
//
// The quoted scaling T_rev ~ 1.6e-11 N^2 ms holds for J = 10 meV and is
// rescaled as 1/J for other couplings. The two closed forms
// (N+1)^2 hbar/(pi J) and (N+1)^2 hbar/(2 pi J) are reported next to it; they
// differ from the quoted coefficient and from each other, and are shown so the
// discrepancy stays visible.
#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "csv.hpp"

namespace fracrev::harness {

inline constexpr double kHbarEvSeconds = 6.582119569e-16;
inline constexpr double kQuotedCoefficientMs = 1.6e-11;  // per N^2, at J = 10 meV
inline constexpr double kQuotedHoppingMeV = 10.0;

struct BudgetReport {
  std::size_t sites;
  double hopping_meV;
  double decoherence_ms;
  double revivals;
  double t_rev_ms_quoted;
  double t_rev_ms_pi;
  double t_rev_ms_two_pi;
  double ratio_to_decoherence;         // t_rev / tau (quoted convention)
  double revivals_within_decoherence;  // tau / t_rev
  double max_sites;                    // largest N with `revivals` full revivals inside tau
};

inline BudgetReport estimate_budget(std::size_t sites, double hopping_meV, double decoherence_ms, double revivals) {
  if (sites < 1 || !(hopping_meV > 0.0) || !(decoherence_ms > 0.0) || !(revivals > 0.0))
    throw std::invalid_argument("budget inputs must be positive");
  BudgetReport r{sites, hopping_meV, decoherence_ms, revivals, 0, 0, 0, 0, 0, 0};
  const double n2 = static_cast<double>(sites) * static_cast<double>(sites);
  const double coeff = kQuotedCoefficientMs * kQuotedHoppingMeV / hopping_meV;
  r.t_rev_ms_quoted = coeff * n2;

  const double hbar_over_j_ms = kHbarEvSeconds / (hopping_meV * 1e-3) * 1e3;
  const double l2 = static_cast<double>(sites + 1) * static_cast<double>(sites + 1);
  r.t_rev_ms_pi = l2 / std::numbers::pi * hbar_over_j_ms;
  r.t_rev_ms_two_pi = r.t_rev_ms_pi / 2.0;

  r.ratio_to_decoherence = r.t_rev_ms_quoted / decoherence_ms;
  r.revivals_within_decoherence = decoherence_ms / r.t_rev_ms_quoted;
  r.max_sites = std::sqrt(decoherence_ms / (coeff * revivals));
  return r;
}

inline void print_budget(const BudgetReport& r, std::ostream& os) {
  os << "sites = " << r.sites << '\n'
     << "hopping_meV = " << format_float(r.hopping_meV) << '\n'
     << "decoherence_ms = " << format_float(r.decoherence_ms) << '\n'
     << "revivals = " << format_float(r.revivals) << '\n'
     << "t_rev_ms_quoted = " << format_float(r.t_rev_ms_quoted) << "   # 1.6e-11 N^2 ms at 10 meV\n"
     << "t_rev_ms_pi = " << format_float(r.t_rev_ms_pi) << "   # (N+1)^2 hbar/(pi J)\n"
     << "t_rev_ms_two_pi = " << format_float(r.t_rev_ms_two_pi) << "   # (N+1)^2 hbar/(2 pi J)\n"
     << "ratio_to_decoherence = " << format_float(r.ratio_to_decoherence) << '\n'
     << "revivals_within_decoherence = " << format_float(r.revivals_within_decoherence) << '\n'
     << "max_sites = " << format_float(r.max_sites) << '\n';
}

}  // namespace fracrev::harness
