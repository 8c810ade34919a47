#include "mclab/oig.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>

namespace mclab {

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

OneInclusionGraph::OneInclusionGraph(ConceptClass cls) : cls_(std::move(cls)) {
  if (cls_.empty()) {
    throw precondition_error("one-inclusion graph of an empty class");
  }
  const int n = cls_.domain_size();
  const int v_count = cls_.size();
  incidence_.assign(static_cast<std::size_t>(v_count), std::vector<int>(static_cast<std::size_t>(n), -1));

  for (int dir = 0; dir < n; ++dir) {
    // Group vertices by their word with coordinate `dir` removed.  Words are
    // stored sorted, so groups come out ordered by off-pattern.
    std::map<Word, std::vector<int>> groups;
    for (int v = 0; v < v_count; ++v) {
      Word off = cls_.word(v);
      off.erase(off.begin() + dir);
      groups[std::move(off)].push_back(v);
    }
    for (auto& [off, members] : groups) {
      int id = static_cast<int>(edges_.size());
      std::sort(members.begin(), members.end());
      for (int v : members) incidence_[static_cast<std::size_t>(v)][static_cast<std::size_t>(dir)] = id;
      edges_.push_back({dir, std::move(members)});
    }
  }
}

// ---------------------------------------------------------------------------
// Degree statistics
// ---------------------------------------------------------------------------

int out_degree(const OneInclusionGraph& g, const Orientation& sigma, int v) {
  int out = 0;
  for (int dir = 0; dir < g.direction_count(); ++dir) {
    int e = g.edge_at(v, dir);
    if (sigma.chosen(e) != v) ++out;
  }
  return out;
}

int max_out_degree(const OneInclusionGraph& g, const Orientation& sigma) {
  if (sigma.size() != static_cast<std::size_t>(g.edge_count())) {
    throw precondition_error("orientation covers " + std::to_string(sigma.size()) +
                             " edges, graph has " + std::to_string(g.edge_count()));
  }
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto& members = g.edge(e).members;
    if (!std::binary_search(members.begin(), members.end(), sigma.chosen(e))) {
      throw precondition_error("orientation picks vertex " + std::to_string(sigma.chosen(e)) +
                               " outside edge " + std::to_string(e));
    }
  }
  int best = 0;
  for (int v = 0; v < g.vertex_count(); ++v) best = std::max(best, out_degree(g, sigma, v));
  return best;
}

Rational avg_degree(const OneInclusionGraph& g) {
  long long sum = 0;
  for (const OigEdge& e : g.edges()) {
    if (e.members.size() > 1) sum += static_cast<long long>(e.members.size());
  }
  return Rational(sum, g.vertex_count());
}

Rational shifting_avg_degree(const OneInclusionGraph& g) {
  long long sum = 0;
  for (const OigEdge& e : g.edges()) sum += static_cast<long long>(e.members.size()) - 1;
  return Rational(sum, g.vertex_count());
}

// ---------------------------------------------------------------------------
// Greedy peeling
// ---------------------------------------------------------------------------

GreedyResult greedy_orientation(const OneInclusionGraph& g, int degree_bound) {
  const int v_count = g.vertex_count();
  const int e_count = g.edge_count();

  std::vector<int> edge_size(static_cast<std::size_t>(e_count));
  for (int e = 0; e < e_count; ++e) edge_size[static_cast<std::size_t>(e)] = static_cast<int>(g.edge(e).members.size());

  // Non-singleton incident edge count per live vertex.
  std::vector<int> heavy(static_cast<std::size_t>(v_count), 0);
  for (int v = 0; v < v_count; ++v) {
    for (int dir = 0; dir < g.direction_count(); ++dir) {
      if (edge_size[static_cast<std::size_t>(g.edge_at(v, dir))] > 1) ++heavy[static_cast<std::size_t>(v)];
    }
  }

  std::vector<char> alive(static_cast<std::size_t>(v_count), 1);
  std::vector<int> chosen(static_cast<std::size_t>(e_count), -1);
  int remaining = v_count;

  while (remaining > 0) {
    int pick = -1;
    for (int v = 0; v < v_count; ++v) {
      if (alive[static_cast<std::size_t>(v)] && heavy[static_cast<std::size_t>(v)] <= degree_bound) {
        pick = v;
        break;
      }
    }
    if (pick < 0) {
      return {false, Orientation{}, remaining};
    }
    for (int dir = 0; dir < g.direction_count(); ++dir) {
      int e = g.edge_at(pick, dir);
      auto& sz = edge_size[static_cast<std::size_t>(e)];
      if (sz == 1) {
        chosen[static_cast<std::size_t>(e)] = pick;
      } else {
        --sz;
        if (sz == 1) {
          // The edge just became a singleton; its survivor sheds a heavy edge.
          for (int u : g.edge(e).members) {
            if (alive[static_cast<std::size_t>(u)] && u != pick) {
              --heavy[static_cast<std::size_t>(u)];
              break;
            }
          }
        }
      }
    }
    alive[static_cast<std::size_t>(pick)] = 0;
    --remaining;
  }
  return {true, Orientation(std::move(chosen)), 0};
}

// ---------------------------------------------------------------------------
// Exact optimum via max-flow with intake lower bounds
// ---------------------------------------------------------------------------

namespace {

// Dinic max-flow on a small dense-ish graph.
struct Dinic {
  struct Arc {
    int to;
    int cap;
    int rev;
  };
  std::vector<std::vector<Arc>> adj;
  std::vector<int> level, iter;

  explicit Dinic(int nodes) : adj(static_cast<std::size_t>(nodes)) {}

  void add_arc(int from, int to, int cap) {
    adj[static_cast<std::size_t>(from)].push_back({to, cap, static_cast<int>(adj[static_cast<std::size_t>(to)].size())});
    adj[static_cast<std::size_t>(to)].push_back({from, 0, static_cast<int>(adj[static_cast<std::size_t>(from)].size()) - 1});
  }

  bool bfs(int s, int t) {
    level.assign(adj.size(), -1);
    std::queue<int> q;
    level[static_cast<std::size_t>(s)] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (const Arc& a : adj[static_cast<std::size_t>(u)]) {
        if (a.cap > 0 && level[static_cast<std::size_t>(a.to)] < 0) {
          level[static_cast<std::size_t>(a.to)] = level[static_cast<std::size_t>(u)] + 1;
          q.push(a.to);
        }
      }
    }
    return level[static_cast<std::size_t>(t)] >= 0;
  }

  int dfs(int u, int t, int f) {
    if (u == t) return f;
    for (int& i = iter[static_cast<std::size_t>(u)]; i < static_cast<int>(adj[static_cast<std::size_t>(u)].size()); ++i) {
      Arc& a = adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(i)];
      if (a.cap > 0 && level[static_cast<std::size_t>(a.to)] == level[static_cast<std::size_t>(u)] + 1) {
        int d = dfs(a.to, t, std::min(f, a.cap));
        if (d > 0) {
          a.cap -= d;
          adj[static_cast<std::size_t>(a.to)][static_cast<std::size_t>(a.rev)].cap += d;
          return d;
        }
      }
    }
    return 0;
  }

  int run(int s, int t) {
    int flow = 0;
    while (bfs(s, t)) {
      iter.assign(adj.size(), 0);
      int f;
      while ((f = dfs(s, t, 1 << 30)) > 0) flow += f;
    }
    return flow;
  }
};

// Tries to find an edge-to-vertex assignment where every vertex receives at
// least `need` intake units.  Returns the assignment on success.
std::optional<std::vector<int>> feasible_assignment(const OneInclusionGraph& g, int k) {
  const int v_count = g.vertex_count();
  const int e_count = g.edge_count();
  const int need = std::max(0, g.direction_count() - k);

  // Nodes: 0 = source, 1..E = edges, E+1..E+V = vertices, E+V+1 = sink.
  const int source = 0;
  const int sink = e_count + v_count + 1;
  Dinic flow(sink + 1);
  std::vector<std::pair<int, int>> vertex_sink_arc(static_cast<std::size_t>(v_count));

  for (int e = 0; e < e_count; ++e) {
    flow.add_arc(source, 1 + e, 1);
    for (int v : g.edge(e).members) flow.add_arc(1 + e, 1 + e_count + v, 1);
  }
  for (int v = 0; v < v_count; ++v) {
    vertex_sink_arc[static_cast<std::size_t>(v)] = {1 + e_count + v,
                                                    static_cast<int>(flow.adj[static_cast<std::size_t>(1 + e_count + v)].size())};
    flow.add_arc(1 + e_count + v, sink, need);
  }

  // Phase 1: meet every lower bound.
  int met = flow.run(source, sink);
  if (met != need * v_count) return std::nullopt;

  // Phase 2: relax the sink arcs and route the remaining edges.  Augmenting
  // paths terminate at the sink, so no vertex drops below its phase-1 intake.
  for (int v = 0; v < v_count; ++v) {
    auto [node, idx] = vertex_sink_arc[static_cast<std::size_t>(v)];
    flow.adj[static_cast<std::size_t>(node)][static_cast<std::size_t>(idx)].cap += e_count;
  }
  met += flow.run(source, sink);
  if (met != e_count) return std::nullopt;

  std::vector<int> assign(static_cast<std::size_t>(e_count), -1);
  for (int e = 0; e < e_count; ++e) {
    for (const Dinic::Arc& a : flow.adj[static_cast<std::size_t>(1 + e)]) {
      if (a.to != source && a.cap == 0 && a.to >= 1 + e_count) {
        assign[static_cast<std::size_t>(e)] = a.to - 1 - e_count;
        break;
      }
    }
  }
  return assign;
}

// Lexicographic canonicalization: walk edges in id order and move each to its
// smallest member for which a completion still exists.  A completion exists
// iff a unit can be pulled back to the deficient vertex along unfrozen edges.
void canonicalize(const OneInclusionGraph& g, int k, std::vector<int>& assign) {
  const int v_count = g.vertex_count();
  const int e_count = g.edge_count();
  const int need = std::max(0, g.direction_count() - k);

  std::vector<int> intake(static_cast<std::size_t>(v_count), 0);
  for (int e = 0; e < e_count; ++e) ++intake[static_cast<std::size_t>(assign[static_cast<std::size_t>(e)])];

  // Unfrozen incident edges per vertex (by edge id).
  std::vector<std::vector<int>> pending(static_cast<std::size_t>(v_count));
  for (int e = 0; e < e_count; ++e) {
    for (int v : g.edge(e).members) pending[static_cast<std::size_t>(v)].push_back(e);
  }
  std::vector<char> frozen(static_cast<std::size_t>(e_count), 0);

  // Moves one intake unit to `deficit` by relocating unfrozen edges along an
  // alternating chain ending at a vertex with slack; returns false and leaves
  // the assignment untouched when no such chain exists (flow maximality makes
  // that a certificate of infeasibility).
  auto pull_unit = [&](int deficit, int skip_edge) -> bool {
    std::vector<int> via_edge(static_cast<std::size_t>(v_count), -1);
    std::vector<int> via_from(static_cast<std::size_t>(v_count), -1);
    std::vector<char> visited(static_cast<std::size_t>(v_count), 0);
    std::queue<int> q;
    visited[static_cast<std::size_t>(deficit)] = 1;
    q.push(deficit);
    int slack_vertex = -1;
    while (!q.empty() && slack_vertex < 0) {
      int u = q.front();
      q.pop();
      for (int e : pending[static_cast<std::size_t>(u)]) {
        if (frozen[static_cast<std::size_t>(e)] || e == skip_edge) continue;
        int w = assign[static_cast<std::size_t>(e)];
        if (w == u || visited[static_cast<std::size_t>(w)]) continue;
        visited[static_cast<std::size_t>(w)] = 1;
        via_edge[static_cast<std::size_t>(w)] = e;
        via_from[static_cast<std::size_t>(w)] = u;
        if (intake[static_cast<std::size_t>(w)] > need) {
          slack_vertex = w;
          break;
        }
        q.push(w);
      }
    }
    if (slack_vertex < 0) return false;
    for (int w = slack_vertex; w != deficit;) {
      int e = via_edge[static_cast<std::size_t>(w)];
      int u = via_from[static_cast<std::size_t>(w)];
      assign[static_cast<std::size_t>(e)] = u;
      --intake[static_cast<std::size_t>(w)];
      ++intake[static_cast<std::size_t>(u)];
      w = u;
    }
    return true;
  };

  for (int e = 0; e < e_count; ++e) {
    for (int v : g.edge(e).members) {
      int current = assign[static_cast<std::size_t>(e)];
      if (v == current) break;  // already the best reachable member
      // Tentatively move e from `current` to v.
      assign[static_cast<std::size_t>(e)] = v;
      ++intake[static_cast<std::size_t>(v)];
      --intake[static_cast<std::size_t>(current)];
      if (intake[static_cast<std::size_t>(current)] >= need || pull_unit(current, e)) {
        break;  // feasible with e -> v
      }
      // Revert.
      assign[static_cast<std::size_t>(e)] = current;
      --intake[static_cast<std::size_t>(v)];
      ++intake[static_cast<std::size_t>(current)];
    }
    frozen[static_cast<std::size_t>(e)] = 1;
  }
}

}  // namespace

OptimalOrientation optimal_orientation(const OneInclusionGraph& g) {
  // Binary search the smallest feasible k.
  int lo = 0, hi = g.direction_count();
  std::optional<std::vector<int>> best = feasible_assignment(g, hi);
  if (!best) {
    throw precondition_error("no orientation at k = direction count; graph invariant violated");
  }
  while (lo < hi) {
    int mid = lo + (hi - lo) / 2;
    if (auto assign = feasible_assignment(g, mid)) {
      best = std::move(assign);
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  canonicalize(g, lo, *best);
  Orientation sigma(std::move(*best));
  return {sigma, lo};
}

}  // namespace mclab
