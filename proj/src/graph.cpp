#include "rdnet/graph.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "rdnet/csv.hpp"

namespace rdnet {

namespace {

long long pair_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<long long>(a) << 32) | static_cast<unsigned int>(b);
}

}  // namespace

bool GraphSnapshot::has_edge(int u, int v) const {
  auto nb = neigh(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

long long GraphSnapshot::total_weight() const {
  long long s = 0;
  for (long long w : weights) s += w;
  return s / 2;
}

void GraphBuilder::add_alliance(const AllianceEvent& event) {
  for (int p : event.participants) {
    if (p < 0 || p >= registry_size_)
      throw std::out_of_range("participant not in firm registry: id " +
                              std::to_string(p));
  }
  const auto& ps = event.participants;
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      if (ps[i] == ps[j]) continue;  // no self-loops
      ++pair_weight_[pair_key(ps[i], ps[j])];
    }
}

GraphSnapshot GraphBuilder::snapshot(
    int as_of_year, std::optional<std::pair<int, int>> window) const {
  GraphSnapshot g;
  g.as_of_year = as_of_year;
  g.window = window;

  // Dense re-indexing in ascending canonical id order, so the snapshot is
  // deterministic regardless of insertion order.
  std::vector<int> touched;
  touched.reserve(pair_weight_.size() * 2);
  for (const auto& [key, w] : pair_weight_) {
    touched.push_back(static_cast<int>(key >> 32));
    touched.push_back(static_cast<int>(key & 0xffffffffLL));
  }
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());

  g.n = static_cast<int>(touched.size());
  g.canonical_ids = std::move(touched);
  g.dense_of.reserve(g.n);
  for (int i = 0; i < g.n; ++i) g.dense_of.emplace(g.canonical_ids[i], i);

  std::vector<int> deg(g.n, 0);
  for (const auto& [key, w] : pair_weight_) {
    int a = g.dense_of.at(static_cast<int>(key >> 32));
    int b = g.dense_of.at(static_cast<int>(key & 0xffffffffLL));
    ++deg[a];
    ++deg[b];
  }
  g.offsets.assign(g.n + 1, 0);
  for (int i = 0; i < g.n; ++i) g.offsets[i + 1] = g.offsets[i] + deg[i];
  g.neighbors.assign(g.offsets[g.n], 0);
  g.weights.assign(g.offsets[g.n], 0);

  std::vector<int> cursor(g.offsets.begin(), g.offsets.end() - 1);
  for (const auto& [key, w] : pair_weight_) {
    int a = g.dense_of.at(static_cast<int>(key >> 32));
    int b = g.dense_of.at(static_cast<int>(key & 0xffffffffLL));
    g.neighbors[cursor[a]] = b;
    g.weights[cursor[a]++] = w;
    g.neighbors[cursor[b]] = a;
    g.weights[cursor[b]++] = w;
  }
  // Sort each adjacency slice by neighbor index, weights in lockstep.
  for (int v = 0; v < g.n; ++v) {
    int lo = g.offsets[v], hi = g.offsets[v + 1];
    std::vector<std::pair<int, long long>> row;
    row.reserve(hi - lo);
    for (int e = lo; e < hi; ++e) row.emplace_back(g.neighbors[e], g.weights[e]);
    std::sort(row.begin(), row.end());
    for (int e = lo; e < hi; ++e) {
      g.neighbors[e] = row[e - lo].first;
      g.weights[e] = row[e - lo].second;
    }
  }
  return g;
}

GraphSnapshot cumulative_snapshot(std::span<const AllianceEvent> events, int t,
                                  int registry_size) {
  GraphBuilder builder(registry_size);
  for (const auto& ev : events)
    if (ev.year <= t) builder.add_alliance(ev);
  return builder.snapshot(t);
}

GraphSnapshot window_snapshot(std::span<const AllianceEvent> events,
                              int window_end, int width, int registry_size) {
  if (width < 1) throw std::invalid_argument("window width must be >= 1");
  GraphBuilder builder(registry_size);
  for (const auto& ev : events)
    if (ev.year > window_end - width && ev.year <= window_end)
      builder.add_alliance(ev);
  return builder.snapshot(window_end,
                          std::make_pair(window_end - width, window_end));
}

void export_graph(const GraphSnapshot& g, const FirmTable& firms,
                  const std::string& edges_path,
                  const std::string& nodes_path) {
  std::ofstream edges(edges_path);
  if (!edges.is_open())
    throw IngestError("cannot write edge list: " + edges_path);
  edges << "firm_a,firm_b,weight\n";
  for (int v = 0; v < g.n; ++v) {
    auto nb = g.neigh(v);
    auto wt = g.neigh_weights(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (nb[i] <= v) continue;  // each undirected edge once
      edges << firms.names[g.canonical_ids[v]] << ','
            << firms.names[g.canonical_ids[nb[i]]] << ',' << wt[i] << '\n';
    }
  }

  std::ofstream nodes(nodes_path);
  if (!nodes.is_open())
    throw IngestError("cannot write node attributes: " + nodes_path);
  nodes << "firm,degree,strength\n";
  for (int v = 0; v < g.n; ++v)
    nodes << firms.names[g.canonical_ids[v]] << ',' << g.degree(v) << ','
          << g.strength(v) << '\n';
}

}  // namespace rdnet
