#include "krental/offline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace krental {

OptResult opt_bruteforce(const Instance& inst) {
  const size_t n = inst.requests.size();
  if (n > 22) throw std::invalid_argument("too many requests for brute force");

  OptResult best;
  std::vector<int> chosen;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double value = 0.0;
    bool ok = true;
    for (size_t i = 0; i < n && ok; ++i) {
      // Occupancy at request i's arrival counts every selected j active there.
      int occ = 0;
      for (size_t j = 0; j < n; ++j) {
        if (!(mask & (1u << j))) continue;
        const auto& rj = inst.requests[j];
        if (rj.arrival <= inst.requests[i].arrival &&
            rj.arrival + rj.duration > inst.requests[i].arrival)
          ++occ;
      }
      if (occ > inst.k) ok = false;
    }
    if (!ok) continue;
    chosen.clear();
    for (size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        value += inst.requests[i].valuation;
        chosen.push_back(static_cast<int>(i) + 1);
      }
    }
    if (value > best.value + 1e-12 ||
        (std::abs(value - best.value) <= 1e-12 && chosen < best.accepted &&
         !best.accepted.empty())) {
      best.value = value;
      best.accepted = chosen;
    }
  }
  return best;
}

namespace {

struct Arc {
  int to;
  int cap;
  double cost;
  int rev;          // index of the reverse arc in graph[to]
  int request = 0;  // 1-based request id for bypass arcs, 0 otherwise
};

class MinCostFlow {
 public:
  explicit MinCostFlow(int n) : graph_(n) {}

  void add_arc(int from, int to, int cap, double cost, int request = 0) {
    graph_[from].push_back(
        {to, cap, cost, static_cast<int>(graph_[to].size()), request});
    graph_[to].push_back(
        {from, 0, -cost, static_cast<int>(graph_[from].size()) - 1, 0});
  }

  // Sends up to max_flow units from s to t, stopping once the shortest
  // augmenting path has non-negative cost.  Bellman-Ford establishes initial
  // potentials (bypass arcs have negative cost); Dijkstra on reduced costs
  // afterwards.
  void solve(int s, int t, int max_flow) {
    const int n = static_cast<int>(graph_.size());
    std::vector<double> pot(n, 0.0);
    for (int round = 0; round < n; ++round) {
      bool changed = false;
      for (int u = 0; u < n; ++u) {
        for (const auto& a : graph_[u]) {
          if (a.cap > 0 && pot[u] + a.cost < pot[a.to] - 1e-15) {
            pot[a.to] = pot[u] + a.cost;
            changed = true;
          }
        }
      }
      if (!changed) break;
    }

    int flow = 0;
    while (flow < max_flow) {
      const double inf = std::numeric_limits<double>::infinity();
      std::vector<double> dist(n, inf);
      std::vector<int> prev_node(n, -1), prev_arc(n, -1);
      using Item = std::pair<double, int>;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
      dist[s] = 0.0;
      heap.push({0.0, s});
      while (!heap.empty()) {
        auto [du, u] = heap.top();
        heap.pop();
        if (du > dist[u] + 1e-15) continue;
        for (int ai = 0; ai < static_cast<int>(graph_[u].size()); ++ai) {
          const auto& a = graph_[u][ai];
          if (a.cap <= 0) continue;
          const double nd = dist[u] + a.cost + pot[u] - pot[a.to];
          if (nd < dist[a.to] - 1e-15) {
            dist[a.to] = nd;
            prev_node[a.to] = u;
            prev_arc[a.to] = ai;
            heap.push({nd, a.to});
          }
        }
      }
      if (dist[t] == inf) break;
      const double path_cost = dist[t] + pot[t] - pot[s];
      if (path_cost >= -1e-12) break;  // remaining units ride for free

      int push = max_flow - flow;
      for (int v = t; v != s; v = prev_node[v])
        push = std::min(push, graph_[prev_node[v]][prev_arc[v]].cap);
      for (int v = t; v != s; v = prev_node[v]) {
        auto& a = graph_[prev_node[v]][prev_arc[v]];
        a.cap -= push;
        graph_[a.to][a.rev].cap += push;
      }
      flow += push;
      for (int u = 0; u < n; ++u)
        pot[u] += dist[u] < inf ? dist[u] : dist[t];
    }
  }

  // Requests whose bypass arc is saturated.
  std::vector<int> served() const {
    std::vector<int> out;
    for (const auto& node : graph_) {
      for (const auto& a : node) {
        if (a.request > 0 && a.cap == 0) out.push_back(a.request);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::vector<std::vector<Arc>> graph_;
};

}  // namespace

OptResult opt_flow(const Instance& inst) {
  const size_t n = inst.requests.size();
  OptResult result;
  if (n == 0) return result;

  std::vector<double> times;
  times.reserve(n);
  for (const auto& r : inst.requests) times.push_back(r.arrival);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  const int m = static_cast<int>(times.size());

  // Nodes: 0 = source, 1..m = arrival epochs, m+1 = sink.
  const int source = 0, sink = m + 1;
  MinCostFlow mcf(m + 2);
  mcf.add_arc(source, 1, inst.k, 0.0);
  for (int i = 1; i < m; ++i) mcf.add_arc(i, i + 1, inst.k, 0.0);
  mcf.add_arc(m, sink, inst.k, 0.0);

  for (size_t i = 0; i < n; ++i) {
    const auto& r = inst.requests[i];
    const int from = static_cast<int>(std::lower_bound(times.begin(),
                                                       times.end(), r.arrival) -
                                      times.begin()) +
                     1;
    // The unit becomes available again to the first arrival at or after the
    // return time a + d; if none, it rejoins at the sink.
    const auto it =
        std::lower_bound(times.begin(), times.end(), r.arrival + r.duration);
    const int to =
        it == times.end()
            ? sink
            : static_cast<int>(it - times.begin()) + 1;
    mcf.add_arc(from, to, 1, -r.valuation, static_cast<int>(i) + 1);
  }

  mcf.solve(source, sink, inst.k);
  result.accepted = mcf.served();
  for (int id : result.accepted)
    result.value += inst.requests[id - 1].valuation;
  return result;
}

double opt_fractional(const Instance& inst) { return opt_flow(inst).value; }

}  // namespace krental
