// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Defaults: N = 500, J = 1, half width 24, center 50.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "fracrev/fracrev.hpp"
#include "fracrev/harness/budget.hpp"
#include "support/properties.hpp"

using namespace fracrev;

namespace {

const ChainSpec kChain(500, 1.0);
const double kHalfWidth = 24.0;
const double kAlpha = GaussianSpec::alpha_for_half_width(kHalfWidth);
const double kTrev = revival_clock(kChain).t_rev;
const GaussianSpec kPacket = GaussianSpec::from_alpha(50.0, kAlpha);

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string g6(double v) { return fmt("%.6g", v); }

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return g;
}

double window_max_F(const PositionState& psi, double centre) {
  const auto g = linspace(0.98 * centre, 1.02 * centre, 801);
  const auto tr = trace(kChain, psi, g);
  double m = 0.0;
  for (const auto& p : tr.points) m = std::max(m, p.abs_F_sq);
  return m;
}

double max_in(const std::vector<double>& prof, double lo, double hi) {
  double m = 0.0;
  for (std::size_t j = 1; j <= prof.size(); ++j)
    if (static_cast<double>(j) >= lo && static_cast<double>(j) <= hi) m = std::max(m, prof[j - 1]);
  return m;
}

// Full revival at t_rev; "comparable" later peaks taken as >= 0.9.
Outcome c1() {
  const auto psi = build_gwp(kChain, kPacket);
  const double m1 = window_max_F(psi, 1.0), m3 = window_max_F(psi, 3.0), m5 = window_max_F(psi, 5.0);
  const bool pass = m1 >= 0.98 && m3 >= 0.9 && m5 >= 0.9;
  return {pass, "max|F|^2 near 1,3,5 t_rev = " + g6(m1) + ", " + g6(m3) + ", " + g6(m5) + " (need >= 0.98, 0.9, 0.9)"};
}

Outcome c2() {
  const auto psi = build_gwp(kChain, kPacket);
  bool pass = true;
  std::string d = "|F(t_rev/q)|^2 q=2..5:";
  for (int q = 2; q <= 5; ++q) {
    const double f = std::norm(mirror_fidelity(kChain, psi, kTrev / q));
    pass = pass && std::abs(f - 1.0 / q) <= 0.02;
    d += " " + g6(f);
  }
  return {pass, d + " (target 1/q +- 0.02)"};
}

Outcome c3() {
  const auto psi = build_gwp(kChain, kPacket);
  const SpectralPropagator prop(kChain, psi);
  const std::vector<std::pair<int, double>> cases{{5, 0.089}, {4, 0.099}, {3, 0.114}, {2, 0.140}, {1, 0.198}};
  bool pass = true;
  std::string d = "peak |phi| at 1/5,1/4,1/3,1/2,1:";
  std::string counts = " clones:";
  for (const auto& [q, target] : cases) {
    const auto prof = profile(prop.position_at(kTrev / q));
    const double peak = *std::max_element(prof.begin(), prof.end());
    std::vector<double> sites(prof.size());
    for (std::size_t j = 0; j < sites.size(); ++j) sites[j] = static_cast<double>(j + 1);
    const auto humps = find_peaks(sites, prof, 0.5 * 0.198 / std::sqrt(static_cast<double>(q)), kHalfWidth);
    pass = pass && std::abs(peak - target) <= 0.005 && static_cast<int>(humps.size()) == q;
    d += " " + fmt("%.4f", peak);
    counts += " " + std::to_string(humps.size()) + "/" + std::to_string(q);
  }
  return {pass, d + " (targets 0.089 0.099 0.114 0.140 0.198 +- 0.005);" + counts};
}

Outcome c4() {
  const auto spec = GaussianSpec::from_alpha(501.0 / 3.0, kAlpha);
  const auto psi = build_gwp(kChain, spec);
  const double f = std::norm(mirror_fidelity(kChain, psi, kTrev / 3));
  const auto c = to_spectral(kChain, psi);
  const auto period = effective_period(kChain, c);
  double worst = 0.0;
  for (std::size_t n = 3; n <= 500; n += 3) worst = std::max(worst, std::abs(c(n)));
  const double f_lit = std::norm(mirror_fidelity(kChain, GaussianSpec::from_alpha(500.0 / 3.0, kAlpha), kTrev / 3));
  const bool pass = f >= 0.99 && period.spacing_multiplier == 3 && worst < 1e-8;
  return {pass, "|F(t_rev/3)|^2 = " + g6(f) + " (need >= 0.99; literal N/3: " + g6(f_lit) + "), multiplier " +
                    std::to_string(period.spacing_multiplier) + ", max|c_3m| = " + fmt("%.2e", worst)};
}

Outcome c5() {
  const auto psi = build_gwp(kChain, GaussianSpec::from_alpha(250.5, kAlpha));
  const auto period = effective_period(kChain, to_spectral(kChain, psi));
  const double a8 = std::norm(autocorrelation(kChain, psi, kTrev / 8));
  const double a4 = std::norm(autocorrelation(kChain, psi, kTrev / 4));
  const bool pass = period.spacing_multiplier == 8 && a8 >= 0.98;
  return {pass, "multiplier " + std::to_string(period.spacing_multiplier) + ", |A(t_rev/8)|^2 = " + fmt("%.3e", a8) +
                    " (need >= 0.98); |A(t_rev/4)|^2 = " + g6(a4)};
}

// A "fidelity peak" is a local maximum of |F|^2 of at least 0.9.
Outcome c6() {
  const auto psi = build_superposition(kChain, {{{167.0, 1.0}, {334.0, 1.0}}, kAlpha});
  const auto period = effective_period(kChain, to_spectral(kChain, psi));
  const auto g = linspace(0.0, 0.25, 2401);
  const auto tr = trace(kChain, psi, g);
  const auto peaks = find_peaks(tr, &TracePoint::abs_F_sq, 0.9, 0.005);
  const auto any = find_peaks(tr, &TracePoint::abs_F_sq, 0.1, 0.005);
  const double want = 1.0 / 24.0;
  const bool hit = !peaks.empty() && std::abs(peaks.front().t - want) <= 0.02 * want;
  const bool pass = period.spacing_multiplier == 24 && hit;
  std::string d = "multiplier " + std::to_string(period.spacing_multiplier) + ", earliest peak >= 0.9 at t/t_rev = " +
                  (peaks.empty() ? std::string("none") : g6(peaks.front().t) + " (|F|^2 " + g6(peaks.front().value) + ")");
  if (!any.empty()) d += "; earliest peak >= 0.1 at " + g6(any.front().t) + " (|F|^2 " + g6(any.front().value) + ")";
  return {pass, d + "; target " + g6(want) + " +- 2%"};
}

Outcome c7() {
  const double n0 = 501.0 / 4.0;
  const auto spec = GaussianSpec::from_alpha(n0, kAlpha);
  const auto psi = build_gwp(kChain, spec);
  const double f = std::norm(mirror_fidelity(kChain, psi, kTrev / 4));
  const auto prof = profile(evolve_exact(kChain, psi, kTrev / 4));
  const double hi = max_in(prof, 3 * n0 - kHalfWidth, 3 * n0 + kHalfWidth);
  const double lo = max_in(prof, n0 - kHalfWidth, n0 + kHalfWidth);
  const auto b = gauss_coefficients(RevivalFraction(1, 4)).b;
  const double w_minus = std::norm(b[0] - b[1]), w_plus = std::norm(b[1] - b[2]);
  const bool weights = std::abs(w_minus - (2 - std::sqrt(2.0)) / 4) <= 1e-12 &&
                       std::abs(w_plus - (2 + std::sqrt(2.0)) / 4) <= 1e-12;
  const bool pass = std::abs(f - 0.854) <= 0.01 && std::abs(hi - 0.183) <= 0.005 && std::abs(lo - 0.076) <= 0.005 &&
                    weights;
  return {pass, "|F(t_rev/4)|^2 = " + g6(f) + " (0.854 +- 0.01), max|phi| near 3N/4 = " + fmt("%.4f", hi) +
                    " (0.183 +- 0.005), near N/4 = " + fmt("%.4f", lo) + " (0.076 +- 0.005), weights " +
                    (weights ? "exact" : "off")};
}

// |b_r|^2 = 1/q is checked on the nonzero coefficients; for odd q exactly q of
// the 2q coefficients are nonzero and the rest vanish.
Outcome c8() {
  int fractions = 0, bad = 0;
  for (std::int64_t q = 1; q <= 20; ++q) {
    for (std::int64_t p = 1; p <= 2 * q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      ++fractions;
      const auto g = gauss_coefficients(RevivalFraction(p, q));
      bool ok = g.l == (q % 2 ? 2 * q : q);
      std::int64_t nonzero = 0;
      for (std::int64_t r = 0; r < g.l; ++r) {
        const cplx br = g.b[static_cast<std::size_t>(r)];
        const double w = std::norm(br);
        if (w > 1e-12) {
          ++nonzero;
          ok = ok && std::abs(w - 1.0 / static_cast<double>(q)) <= 1e-12;
        }
        ok = ok && std::abs(br - g.b[static_cast<std::size_t>((g.l - r) % g.l)]) <= 1e-12;
      }
      ok = ok && nonzero == q;
      if (!ok) ++bad;
    }
  }
  return {bad == 0, std::to_string(fractions) + " fractions with q <= 20, " + std::to_string(bad) +
                        " violating l(q), b_r = b_{l-r} or |b_r|^2 = 1/q on nonzero terms"};
}

Outcome c9() {
  const std::vector<std::pair<int, int>> fracs{{1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 5}, {3, 4}};
  double worst = 1.0;
  std::string where;
  for (double centre : {50.0, 125.0, 250.0}) {
    const auto spec = GaussianSpec::from_alpha(centre, kAlpha);
    const auto psi = build_gwp(kChain, spec);
    for (const auto& [p, q] : fracs) {
      const RevivalFraction f(p, q);
      const double o = std::norm(inner_product(evolve_exact(kChain, psi, kTrev * f.value()), predict_state(kChain, spec, f).state));
      if (o < worst) {
        worst = o;
        where = std::to_string(p) + "/" + std::to_string(q) + " at " + g6(centre);
      }
    }
  }
  return {worst >= 0.95, "min overlap = " + g6(worst) + " (" + where + "), need >= 0.95"};
}

Outcome c10() {
  bool pass = true;
  std::string d;
  for (const auto& [m, l] : {std::pair{6, 12}, std::pair{10, 10}}) {
    const double centre = 501.0 / m;
    const auto spec = GaussianSpec::from_alpha(centre, kAlpha);
    const bool comm = is_commensurate(kChain, centre, l);
    d += "(N+1)/" + std::to_string(m) + " commensurate=" + (comm ? "yes" : "no") + " |F_f|^2:";
    int agree = 0;
    for (int p = 1; p < l; ++p) {
      const auto ff = fractional_fidelity(kChain, spec, RevivalFraction::reduced(p, l));
      const double v = ff.value * ff.value;
      pass = pass && v >= 0.95;
      if ((v >= 0.95) == comm) ++agree;
      d += " " + fmt("%.3f", v);
    }
    pass = pass && agree == l - 1;
    d += " (agree " + std::to_string(agree) + "/" + std::to_string(l - 1) + "); ";
  }
  return {pass, d + "need all >= 0.95"};
}

Outcome c11() {
  bool pass = true;
  std::string d;
  for (std::size_t n : {300u, 500u, 700u}) {
    const ChainSpec chain(n);
    std::vector<double> vals;
    for (double w : {8.0, 12.0, 16.0, 20.0, 24.0}) {
      const auto ff = fractional_fidelity(chain, GaussianSpec::from_half_width(50.0, w), RevivalFraction(1, 2));
      vals.push_back(ff.value * ff.value);
    }
    const bool mono = std::is_sorted(vals.begin(), vals.end());
    pass = pass && mono && vals.back() >= 0.98;
    d += "N=" + std::to_string(n) + ":";
    for (double v : vals) d += " " + fmt("%.4f", v);
    d += std::string(mono ? " (monotone)" : " (not monotone)") + "; ";
  }
  return {pass, d + "need monotone and >= 0.98 at width 24"};
}

Outcome c12() {
  const auto r = harness::estimate_budget(500, 10.0, 1.0, 1.0);
  const auto r4 = harness::estimate_budget(500, 10.0, 1.0, 1e4);
  const bool pass = std::abs(r.t_rev_ms_quoted - 4e-6) <= 0.05 * 4e-6 && std::abs(r4.max_sites - 2500.0) <= 1e-9;
  return {pass, "t_rev = " + g6(r.t_rev_ms_quoted) + " ms quoted (" + g6(r.t_rev_ms_pi) + " via (N+1)^2 hbar/(pi J), " +
                    g6(r.t_rev_ms_two_pi) + " via 2 pi), max N(n=1e4) = " + g6(r4.max_sites)};
}

Outcome c13() {
  const auto results = fracrev::testing::run_property_suites(100);
  int failing = 0, total = 0;
  std::string bad;
  for (const auto& r : results) {
    total += r.cases;
    if (r.failures) {
      failing += r.failures;
      bad += " " + r.name + "@N=" + std::to_string(r.sites);
    }
  }
  return {failing == 0, std::to_string(results.size()) + " suites, " + std::to_string(total) + " cases, " +
                            std::to_string(failing) + " failures" + bad};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"C1 full revival", c1},
      {"C2 fractional ladder", c2},
      {"C3 sub-packet profiles", c3},
      {"C4 third-point center", c4},
      {"C5 midpoint center", c5},
      {"C6 superposition revival", c6},
      {"C7 quarter-point center", c7},
      {"C8 Gauss-sum identities", c8},
      {"C9 prediction oracle", c9},
      {"C10 commensurate fractional fidelity", c10},
      {"C11 width sweep", c11},
      {"C12 budget arithmetic", c12},
      {"C13 property suites", c13},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
