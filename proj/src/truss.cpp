#include "trussify/truss.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace trussify {

TrussMap::TrussMap(std::vector<EdgeKey> keys, std::vector<int> values)
    : keys_(std::move(keys)), values_(std::move(values)) {
  if (keys_.size() != values_.size())
    throw std::invalid_argument("trussness key/value size mismatch");
  if (!std::is_sorted(keys_.begin(), keys_.end()))
    throw std::invalid_argument("trussness keys must be sorted");
  for (int v : values_) {
    if (v < 2) throw std::invalid_argument("trussness below 2");
    max_k_ = std::max(max_k_, v);
  }
}

const int* TrussMap::find(EdgeKey e) const {
  auto it = std::lower_bound(keys_.begin(), keys_.end(), e);
  if (it == keys_.end() || *it != e) return nullptr;
  return values_.data() + (it - keys_.begin());
}

int TrussMap::at(EdgeKey e) const {
  const int* v = find(e);
  if (!v)
    throw std::out_of_range("edge (" + std::to_string(e.u) + "," +
                            std::to_string(e.v) + ") not in trussness map");
  return *v;
}

namespace detail {
namespace {

// Support restricted to alive edges: triangles count only when both co-edges
// are alive.
std::vector<int> masked_support(const Graph& g, const std::vector<char>& alive) {
  const EdgeId m = static_cast<EdgeId>(g.edge_count());
  std::vector<int> sup(m, 0);
#pragma omp parallel for schedule(dynamic, 256)
  for (EdgeId e = 0; e < m; ++e) {
    if (!alive[e]) continue;
    const EdgeKey k = g.edge_key(e);
    auto na = g.neighbors(k.u);
    auto ia = g.incident_edges(k.u);
    auto nb = g.neighbors(k.v);
    auto ib = g.incident_edges(k.v);
    int count = 0;
    std::size_t i = 0, j = 0;
    while (i < na.size() && j < nb.size()) {
      if (na[i] < nb[j]) {
        ++i;
      } else if (na[i] > nb[j]) {
        ++j;
      } else {
        if (alive[ia[i]] && alive[ib[j]]) ++count;
        ++i;
        ++j;
      }
    }
    sup[e] = count;
  }
  return sup;
}

}  // namespace

std::vector<int> peel_trussness(const Graph& g, const std::vector<char>& alive) {
  const EdgeId m = static_cast<EdgeId>(g.edge_count());
  std::vector<int> tau(m, 0);
  std::vector<int> sup = masked_support(g, alive);

  EdgeId live_count = 0;
  int max_sup = 0;
  for (EdgeId e = 0; e < m; ++e) {
    if (!alive[e]) continue;
    ++live_count;
    max_sup = std::max(max_sup, sup[e]);
  }
  if (live_count == 0) return tau;

  // bin sort by support; bin[s] = start of bucket s within vert
  std::vector<EdgeId> bin(max_sup + 2, 0);
  for (EdgeId e = 0; e < m; ++e)
    if (alive[e]) ++bin[sup[e] + 1];
  for (int s = 0; s <= max_sup; ++s) bin[s + 1] += bin[s];
  std::vector<EdgeId> vert(live_count);
  std::vector<EdgeId> pos(m, -1);
  {
    std::vector<EdgeId> cursor(bin.begin(), bin.end() - 1);
    for (EdgeId e = 0; e < m; ++e) {
      if (!alive[e]) continue;
      pos[e] = cursor[sup[e]];
      vert[pos[e]] = e;
      ++cursor[sup[e]];
    }
  }

  std::vector<char> live(alive.begin(), alive.end());

  // peel in ascending current-support order; supports are clamped at the
  // level of the edge being peeled, as in core decomposition
  auto bucket_decrement = [&](EdgeId f) {
    const int s = sup[f];
    const EdgeId first = bin[s];
    const EdgeId other = vert[first];
    if (other != f) {
      std::swap(vert[pos[f]], vert[first]);
      std::swap(pos[f], pos[other]);
    }
    ++bin[s];
    --sup[f];
  };

  for (EdgeId idx = 0; idx < live_count; ++idx) {
    const EdgeId e = vert[idx];
    const int s = sup[e];
    tau[e] = s + 2;
    live[e] = 0;
    const EdgeKey k = g.edge_key(e);
    auto na = g.neighbors(k.u);
    auto ia = g.incident_edges(k.u);
    auto nb = g.neighbors(k.v);
    auto ib = g.incident_edges(k.v);
    std::size_t i = 0, j = 0;
    while (i < na.size() && j < nb.size()) {
      if (na[i] < nb[j]) {
        ++i;
      } else if (na[i] > nb[j]) {
        ++j;
      } else {
        const EdgeId e1 = ia[i];
        const EdgeId e2 = ib[j];
        if (live[e1] && live[e2]) {
          if (sup[e1] > s) bucket_decrement(e1);
          if (sup[e2] > s) bucket_decrement(e2);
        }
        ++i;
        ++j;
      }
    }
  }
  return tau;
}

bool update_after_removal(const Graph& g, std::vector<char>& alive,
                          std::vector<int>& tau, EdgeId removed,
                          double fallback_fraction) {
  const EdgeKey rk = g.edge_key(removed);
  const int removed_tau = tau[removed];
  alive[removed] = 0;

  std::size_t alive_count = 0;
  for (char a : alive) alive_count += a ? 1 : 0;
  const std::size_t touch_limit = std::max<std::size_t>(
      32, static_cast<std::size_t>(fallback_fraction * alive_count));

  const EdgeId m = static_cast<EdgeId>(g.edge_count());
  std::vector<char> queued(m, 0);
  std::vector<EdgeId> queue;
  auto enqueue = [&](EdgeId f) {
    if (!queued[f]) {
      queued[f] = 1;
      queue.push_back(f);
    }
  };

  // effective support of f at its own level: triangles whose other two edges
  // both sit at or above that level
  auto effective_support = [&](EdgeId f, int level) {
    const EdgeKey k = g.edge_key(f);
    auto na = g.neighbors(k.u);
    auto ia = g.incident_edges(k.u);
    auto nb = g.neighbors(k.v);
    auto ib = g.incident_edges(k.v);
    int es = 0;
    std::size_t i = 0, j = 0;
    while (i < na.size() && j < nb.size()) {
      if (na[i] < nb[j]) {
        ++i;
      } else if (na[i] > nb[j]) {
        ++j;
      } else {
        const EdgeId e1 = ia[i];
        const EdgeId e2 = ib[j];
        if (alive[e1] && alive[e2] && tau[e1] >= level && tau[e2] >= level) ++es;
        ++i;
        ++j;
      }
    }
    return es;
  };

  // seeds: edges of triangles through the removed edge whose level the lost
  // triangle was actually supporting
  {
    auto na = g.neighbors(rk.u);
    auto ia = g.incident_edges(rk.u);
    auto nb = g.neighbors(rk.v);
    auto ib = g.incident_edges(rk.v);
    std::size_t i = 0, j = 0;
    while (i < na.size() && j < nb.size()) {
      if (na[i] < nb[j]) {
        ++i;
      } else if (na[i] > nb[j]) {
        ++j;
      } else {
        const EdgeId e1 = ia[i];
        const EdgeId e2 = ib[j];
        if (alive[e1] && alive[e2]) {
          if (tau[e1] <= std::min(removed_tau, tau[e2])) enqueue(e1);
          if (tau[e2] <= std::min(removed_tau, tau[e1])) enqueue(e2);
        }
        ++i;
        ++j;
      }
    }
  }

  std::size_t touched = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const EdgeId f = queue[head];
    queued[f] = 0;
    if (!alive[f]) continue;
    const int level = tau[f];
    if (level <= 2) continue;
    if (++touched > touch_limit) {
      tau = peel_trussness(g, alive);
      return false;
    }
    if (effective_support(f, level) >= level - 2) continue;
    // trussness drops by exactly one on a single edge removal
    tau[f] = level - 1;
    const EdgeKey k = g.edge_key(f);
    auto na = g.neighbors(k.u);
    auto ia = g.incident_edges(k.u);
    auto nb = g.neighbors(k.v);
    auto ib = g.incident_edges(k.v);
    std::size_t i = 0, j = 0;
    while (i < na.size() && j < nb.size()) {
      if (na[i] < nb[j]) {
        ++i;
      } else if (na[i] > nb[j]) {
        ++j;
      } else {
        const EdgeId e1 = ia[i];
        const EdgeId e2 = ib[j];
        if (alive[e1] && alive[e2]) {
          if (tau[e1] == level && tau[e2] >= level) enqueue(e1);
          if (tau[e2] == level && tau[e1] >= level) enqueue(e2);
        }
        ++i;
        ++j;
      }
    }
  }
  tau[removed] = 0;
  return true;
}

}  // namespace detail

TrussMap truss_decompose(const Graph& g) {
  const std::vector<char> alive(g.edge_count(), 1);
  std::vector<int> tau = detail::peel_trussness(g, alive);
  return TrussMap(g.edges(), std::move(tau));
}

namespace {

void check_domain(const Graph& g, const TrussMap& t) {
  if (t.keys() != g.edges())
    throw std::invalid_argument("trussness map does not match graph edge set");
}

}  // namespace

Graph k_truss_subgraph(const Graph& g, const TrussMap& t, int k) {
  if (k < 2) throw std::invalid_argument("k-truss requires k >= 2");
  check_domain(g, t);
  std::vector<char> keep(g.edge_count(), 0);
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e)
    keep[e] = t.value(e) >= k ? 1 : 0;
  return edge_subgraph(g, keep, /*keep_all_nodes=*/false);
}

TrussMap update_trussness(const Graph& g, const TrussMap& t, EdgeKey removed) {
  check_domain(g, t);
  const EdgeId rid = g.find_edge(removed.u, removed.v);
  if (rid == kNoEdge)
    throw std::out_of_range("removed edge not present in graph");

  std::vector<char> alive(g.edge_count(), 1);
  std::vector<int> tau = t.values();
  detail::update_after_removal(g, alive, tau, rid);

  std::vector<EdgeKey> keys;
  std::vector<int> values;
  keys.reserve(g.edge_count() - 1);
  values.reserve(g.edge_count() - 1);
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e) {
    if (e == rid) continue;
    keys.push_back(g.edge_key(e));
    values.push_back(tau[e]);
  }
  return TrussMap(std::move(keys), std::move(values));
}

}  // namespace trussify
