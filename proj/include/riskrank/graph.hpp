#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "riskrank/errors.hpp"
#include "riskrank/stats.hpp"

namespace riskrank {

struct FirmSeries {
  std::string firm;
  std::vector<double> returns;  // chronological
};

// Undirected weighted firm graph. Edges are stored once with a < b by node
// index; weights may be negative (anticorrelated firms).
struct FirmGraph {
  struct Node {
    std::string firm;
    std::string sector;
  };
  struct Edge {
    size_t a = 0;
    size_t b = 0;
    double weight = 0.0;
  };
  std::vector<Node> nodes;
  std::vector<Edge> edges;
};

// Complete correlation graph over firms: weight = Pearson correlation of the
// last `window` returns, boosted multiplicatively by (1 + beta) when both
// firms share a sector. Firms absent from the sector map get no boost.
inline FirmGraph build_correlation_graph(std::span<const FirmSeries> series, int window,
                                         const std::map<std::string, std::string>& sectors,
                                         double beta = 0.5) {
  require(series.size() >= 2, errc::empty_input, "graph needs at least two firms");
  require(window >= 2, errc::bad_argument, "correlation window must be at least 2");
  require(beta >= 0.0, errc::bad_argument, "sector boost must be non-negative");

  FirmGraph g;
  std::vector<std::vector<double>> tails;
  for (const auto& s : series) {
    require(s.returns.size() >= static_cast<size_t>(window) + 1, errc::too_short_series,
            "firm \"" + s.firm + "\" has " + std::to_string(s.returns.size()) +
                " returns; need at least window + 1 = " + std::to_string(window + 1));
    for (size_t i = 0; i < g.nodes.size(); ++i)
      require(g.nodes[i].firm != s.firm, errc::schema_error,
              "duplicate firm \"" + s.firm + "\"");
    auto it = sectors.find(s.firm);
    g.nodes.push_back({s.firm, it == sectors.end() ? std::string() : it->second});
    tails.emplace_back(s.returns.end() - window, s.returns.end());
  }
  for (size_t a = 0; a < g.nodes.size(); ++a) {
    for (size_t b = a + 1; b < g.nodes.size(); ++b) {
      double r;
      try {
        r = pearson_correlation(tails[a], tails[b]);
      } catch (const Error& e) {
        if (e.code() != errc::zero_variance_series) throw;
        raise(errc::zero_variance_series,
              "constant returns inside the window for \"" + g.nodes[a].firm + "\" or \"" +
                  g.nodes[b].firm + "\"");
      }
      bool same_sector = !g.nodes[a].sector.empty() && g.nodes[a].sector == g.nodes[b].sector;
      g.edges.push_back({a, b, r * (same_sector ? 1.0 + beta : 1.0)});
    }
  }
  return g;
}

}  // namespace riskrank
