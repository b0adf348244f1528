// Built-in scenarios for the figure reproductions. Each preset is one or more
// configs in the regular file format; `reproduce <id>` runs them all.
#pragma once

#include <map>
#include <string>
#include <vector>

namespace fracrev::harness {

namespace detail {

inline std::string gaussian_chain(const std::string& prefix, const std::string& centers, const std::string& extra,
                                  int sites = 500, const std::string& half_width = "24") {
  return "[chain]\nsites = " + std::to_string(sites) + "\nhopping = 1\n" +
         "[initial]\nkind = gaussian\ncenters = " + centers + "\nhalf_width = " + half_width + "\n" +
         "[output]\nprefix = " + prefix + "\n" + extra;
}

// Grid spacing 1/2400 puts every p/q with q | 2400 (q <= 12, 24, ...) on a node.
inline const char* kUnitGrid = "[time]\nstart = 0\nstop = 1\npoints = 2401\n";

}  // namespace detail

inline const std::map<std::string, std::vector<std::string>>& presets() {
  using detail::gaussian_chain;
  using detail::kUnitGrid;
  static const std::map<std::string, std::vector<std::string>> table{
      {"fig2a", {gaussian_chain("fig2a", "50", "[time]\nstart = 0\nstop = 6\npoints = 14401\n")}},
      {"fig2b", {gaussian_chain("fig2b", "50", std::string(kUnitGrid) + "[metrics]\nmax_denominator = 12\n")}},
      {"fig3",
       {gaussian_chain("fig3", "50", "[metrics]\ntrace = false\nprofiles = 0, 1/5, 1/4, 1/3, 1/2, 1\n")}},
      {"fig4a", {gaussian_chain("fig4a", "N/3", std::string(kUnitGrid) + "[metrics]\nmax_denominator = 12\n")}},
      {"fig4b",
       {"[chain]\nsites = 500\nhopping = 1\n"
        "[initial]\nkind = superposition\ncenters = N/3, 2N/3\nweights = 1, 1\nhalf_width = 24\n"
        "[time]\nstart = 0\nstop = 0.25\npoints = 601\n"
        "[output]\nprefix = fig4b\n"}},
      {"fig5a", {gaussian_chain("fig5a", "N/4", std::string(kUnitGrid) + "[metrics]\nmax_denominator = 12\n")}},
      {"fig5b", {gaussian_chain("fig5b", "N/4", "[metrics]\ntrace = false\nprofiles = 1/4\n")}},
      {"fig6a", {gaussian_chain("fig6a", "N/6", std::string(kUnitGrid) + "[metrics]\nmax_denominator = 12\n")}},
      {"fig6b", {gaussian_chain("fig6b", "N/10", std::string(kUnitGrid) + "[metrics]\nmax_denominator = 10\n")}},
      {"fig7",
       [] {
         std::vector<std::string> v;
         for (int n : {300, 400, 500, 600, 700})
           v.push_back(gaussian_chain("fig7_N" + std::to_string(n), "50",
                                      "[sweep]\nvariable = half_width\nvalues = 8, 12, 16, 20, 24\n"
                                      "metric = abs_Ff_sq\nat = 1/2\n",
                                      n));
         return v;
       }()},
  };
  return table;
}

}  // namespace fracrev::harness
