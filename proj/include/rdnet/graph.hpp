#pragma once

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rdnet/ingest.hpp"

namespace rdnet {

// Undirected weighted simple graph in CSR form. Nodes are densely indexed;
// canonical_ids maps a dense index back to the firm registry. Immutable
// after construction and safe to share across threads.
struct GraphSnapshot {
  int n = 0;
  std::vector<int> canonical_ids;        // dense index -> canonical firm id
  std::unordered_map<int, int> dense_of; // canonical firm id -> dense index
  std::vector<int> offsets;              // size n+1
  std::vector<int> neighbors;            // sorted within each node
  std::vector<long long> weights;        // accumulated alliance counts, >= 1
  int as_of_year = 0;
  std::optional<std::pair<int, int>> window;  // (start, end] years

  int degree(int v) const { return offsets[v + 1] - offsets[v]; }
  long long strength(int v) const {
    long long s = 0;
    for (int e = offsets[v]; e < offsets[v + 1]; ++e) s += weights[e];
    return s;
  }
  std::span<const int> neigh(int v) const {
    return {neighbors.data() + offsets[v],
            static_cast<std::size_t>(degree(v))};
  }
  std::span<const long long> neigh_weights(int v) const {
    return {weights.data() + offsets[v], static_cast<std::size_t>(degree(v))};
  }
  bool has_edge(int u, int v) const;
  long long total_weight() const;  // sum of w over unordered pairs
  long long edge_count() const { return static_cast<long long>(neighbors.size()) / 2; }
};

// Accumulates alliances into pair weights; clique expansion for consortia.
class GraphBuilder {
 public:
  // registry_size bounds the valid canonical ids; pass the firm table size.
  explicit GraphBuilder(int registry_size) : registry_size_(registry_size) {}

  // Increments w_ij for every unordered participant pair. Throws
  // std::out_of_range naming the id when a participant is outside the
  // registry.
  void add_alliance(const AllianceEvent& event);

  GraphSnapshot snapshot(int as_of_year,
                         std::optional<std::pair<int, int>> window = {}) const;

 private:
  int registry_size_;
  std::unordered_map<long long, long long> pair_weight_;
};

// Graph of all alliances with year <= t.
GraphSnapshot cumulative_snapshot(std::span<const AllianceEvent> events, int t,
                                  int registry_size);

// Graph of alliances with year in (window_end - width, window_end]. Firms
// with no alliance in the window are absent.
GraphSnapshot window_snapshot(std::span<const AllianceEvent> events,
                              int window_end, int width, int registry_size);

// Edge list `firm_a,firm_b,weight` and node attributes
// `firm,degree,strength` for external visualization.
void export_graph(const GraphSnapshot& g, const FirmTable& firms,
                  const std::string& edges_path,
                  const std::string& nodes_path);

}  // namespace rdnet
