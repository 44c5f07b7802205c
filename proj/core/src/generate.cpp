#include "dilator/generate.hpp"

#include <algorithm>
#include <functional>

namespace dilator {

Predilator random_predilator(Rng& rng, int max_terms, int max_arity, int min_terms) {
  int n = rng.between(min_terms, max_terms);
  Predilator p;
  std::vector<int> prev_e;
  int prev_arity = 0;
  for (int i = 0; i < n; ++i) {
    int arity = rng.between(0, max_arity);
    int m = i == 0 ? 0 : rng.between(0, std::min(arity, prev_arity));
    std::vector<int> e(arity);
    for (int k = 0; k < arity; ++k) e[k] = k < m ? prev_e[k] : rng.between(0, k);
    p.add_term({"t" + std::to_string(i), arity, sigma_from_ecodes(e)});
    if (i > 0) {
      p.set_dist(i - 1, i, m);
      for (int j = 0; j < i - 1; ++j) p.set_dist(j, i, std::min(p.dist(j, i - 1), m));
    }
    prev_e = e;
    prev_arity = arity;
  }
  return p;
}

Dendrogram random_dendrogram(Rng& rng, int max_nodes, int min_nodes) {
  int n = rng.between(std::max(1, min_nodes), std::max(1, max_nodes));
  std::vector<int> parent(n, -1);
  std::vector<int> rank(n);
  for (int x = 1; x < n; ++x) parent[x] = rng.below(x + 1) - 1;  // -1 makes a new root
  for (int x = 0; x < n; ++x) rank[x] = rng.below(1000);
  std::vector<int> depth(n, 0);
  std::vector<char> has_child(n, 0);
  for (int x = 0; x < n; ++x) {
    if (parent[x] >= 0) {
      depth[x] = depth[parent[x]] + 1;
      has_child[parent[x]] = 1;
    }
  }
  std::vector<std::optional<int>> ecode(n);
  for (int x = 0; x < n; ++x)
    if (has_child[x]) ecode[x] = rng.between(0, depth[x]);
  return Dendrogram::from_arrays(parent, ecode, rank);
}

Dendrogram random_trekkable(Rng& rng, int max_nodes, int min_nodes) {
  Dendrogram d = random_dendrogram(rng, max_nodes, min_nodes);
  int n = d.size();
  // A node becomes available once its parent and its left sibling are labelled.
  std::vector<int> label(n, -1);
  std::vector<int> avail;
  auto ready = [&](int x) {
    if (d.parent(x) >= 0 && label[d.parent(x)] < 0) return false;
    int k = d.sibling_rank(x);
    return k == 0 || label[d.siblings(x)[k - 1]] >= 0;
  };
  for (int next = 0; next < n; ++next) {
    avail.clear();
    for (int x = 0; x < n; ++x)
      if (label[x] < 0 && ready(x)) avail.push_back(x);
    label[avail[rng.below(static_cast<int>(avail.size()))]] = next;
  }
  std::vector<int> parent(n), rank(n);
  std::vector<std::optional<int>> ecode(n);
  for (int x = 0; x < n; ++x) {
    parent[label[x]] = d.parent(x) < 0 ? -1 : label[d.parent(x)];
    ecode[label[x]] = d.ecode(x);
    rank[label[x]] = label[x];
  }
  return Dendrogram::from_arrays(parent, ecode, rank);
}

}  // namespace dilator
