#pragma once

// Network graphs with self-inclusive neighbourhoods, Metropolis combiners,
// and a plain edge-list text format.

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dcg {

using Edge = std::pair<int, int>;

class Topology {
 public:
  Topology() = default;

  /// Builds a graph from undirected edges. Self-loops in `edges` are
  /// ignored (every node is its own neighbour anyway); duplicates collapse.
  /// Throws if an index is out of range or the graph is disconnected.
  Topology(int n, const std::vector<Edge>& edges) : n_(n), adj_(static_cast<std::size_t>(n) * n, 0) {
    if (n < 1) throw std::invalid_argument("topology: node count must be >= 1");
    for (int k = 0; k < n; ++k) set(k, k);
    for (const auto& [u, v] : edges) {
      if (u < 0 || v < 0 || u >= n || v >= n) {
        throw std::invalid_argument("topology: edge (" + std::to_string(u) + ", " +
                                    std::to_string(v) + ") out of range for " +
                                    std::to_string(n) + " nodes");
      }
      set(u, v);
      set(v, u);
    }
    if (!connected()) throw std::invalid_argument("topology: graph is not connected");
  }

  int size() const { return n_; }

  bool linked(int k, int l) const { return adj_[index(k, l)] != 0; }

  /// |N_k|, counting k itself.
  int degree(int k) const {
    int d = 0;
    for (int l = 0; l < n_; ++l) d += linked(k, l) ? 1 : 0;
    return d;
  }

  /// Undirected edges u < v, sorted.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (int u = 0; u < n_; ++u) {
      for (int v = u + 1; v < n_; ++v) {
        if (linked(u, v)) out.emplace_back(u, v);
      }
    }
    return out;
  }

  std::size_t edge_count() const { return edges().size(); }

  bool connected() const {
    if (n_ == 0) return false;
    std::vector<char> seen(n_, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int visited = 1;
    while (!stack.empty()) {
      const int k = stack.back();
      stack.pop_back();
      for (int l = 0; l < n_; ++l) {
        if (!seen[l] && linked(k, l)) {
          seen[l] = 1;
          ++visited;
          stack.push_back(l);
        }
      }
    }
    return visited == n_;
  }

  bool operator==(const Topology&) const = default;

 private:
  std::size_t index(int k, int l) const { return static_cast<std::size_t>(k) * n_ + l; }
  void set(int k, int l) { adj_[index(k, l)] = 1; }

  int n_ = 0;
  std::vector<char> adj_;
};

namespace detail {

inline std::vector<Edge> ring_edges(int n) {
  std::vector<Edge> ring;
  if (n == 2) ring.emplace_back(0, 1);
  if (n >= 3) {
    for (int k = 0; k < n; ++k) {
      const int l = (k + 1) % n;
      ring.emplace_back(std::min(k, l), std::max(k, l));
    }
  }
  return ring;
}

}  // namespace detail

/// Ring backbone plus `extra_edges` distinct random chords.
inline Topology build_topology(int n, int extra_edges, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("build_topology: node count must be >= 1");
  if (extra_edges < 0) throw std::invalid_argument("build_topology: extra_edges must be >= 0");

  std::vector<Edge> edges = detail::ring_edges(n);
  std::vector<Edge> candidates;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (std::find(edges.begin(), edges.end(), Edge{u, v}) == edges.end()) {
        candidates.emplace_back(u, v);
      }
    }
  }
  if (static_cast<std::size_t>(extra_edges) > candidates.size()) {
    throw std::invalid_argument("build_topology: " + std::to_string(extra_edges) +
                                " extra edges requested but only " +
                                std::to_string(candidates.size()) + " non-ring pairs exist");
  }
  // partial Fisher-Yates over the candidate chords
  std::mt19937_64 gen(seed);
  for (int i = 0; i < extra_edges; ++i) {
    std::uniform_int_distribution<std::size_t> pick(static_cast<std::size_t>(i),
                                                    candidates.size() - 1);
    std::swap(candidates[static_cast<std::size_t>(i)], candidates[pick(gen)]);
    edges.push_back(candidates[static_cast<std::size_t>(i)]);
  }
  return Topology(n, edges);
}

/// Column-stochastic combination weights; a(l, k) is the weight node k gives
/// to node l.
struct CombinerMatrix {
  Eigen::MatrixXd a;

  int size() const { return static_cast<int>(a.cols()); }

  static CombinerMatrix identity(int n) { return {Eigen::MatrixXd::Identity(n, n)}; }

  static CombinerMatrix uniform(const Topology& t) {
    const int n = t.size();
    CombinerMatrix c{Eigen::MatrixXd::Zero(n, n)};
    for (int k = 0; k < n; ++k) {
      const double w = 1.0 / t.degree(k);
      for (int l = 0; l < n; ++l) {
        if (t.linked(l, k)) c.a(l, k) = w;
      }
    }
    return c;
  }
};

/// Metropolis rule: 1/max(|N_k|, |N_l|) on links, remainder on the diagonal.
inline CombinerMatrix metropolis_weights(const Topology& t) {
  const int n = t.size();
  CombinerMatrix c{Eigen::MatrixXd::Zero(n, n)};
  for (int k = 0; k < n; ++k) {
    double off = 0.0;
    for (int l = 0; l < n; ++l) {
      if (l == k || !t.linked(k, l)) continue;
      const double w = 1.0 / std::max(t.degree(k), t.degree(l));
      c.a(l, k) = w;
      off += w;
    }
    c.a(k, k) = 1.0 - off;
  }
  return c;
}

/// Writes "# nodes N" followed by one "u v" line per undirected edge.
inline void write_edge_list(std::ostream& os, const Topology& t) {
  os << "# nodes " << t.size() << '\n';
  for (const auto& [u, v] : t.edges()) os << u << ' ' << v << '\n';
}

/// Reads the format written by write_edge_list. Without a "# nodes" line the
/// node count is one past the largest index seen.
inline Topology read_edge_list(std::istream& is) {
  std::vector<Edge> edges;
  int declared = -1;
  int largest = -1;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      std::istringstream hs(line.substr(first + 1));
      std::string key;
      int n = 0;
      if (hs >> key >> n && key == "nodes") declared = n;
      continue;
    }
    std::istringstream ls(line);
    int u = 0;
    int v = 0;
    std::string rest;
    if (!(ls >> u >> v) || (ls >> rest)) {
      throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                  ": expected \"u v\", got \"" + line + "\"");
    }
    if (u < 0 || v < 0) {
      throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                  ": negative node index");
    }
    largest = std::max({largest, u, v});
    edges.emplace_back(u, v);
  }
  const int n = declared > 0 ? declared : largest + 1;
  if (n < 1) throw std::invalid_argument("edge list: no nodes");
  return Topology(n, edges);
}

}  // namespace dcg
