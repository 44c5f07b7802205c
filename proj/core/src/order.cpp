#include "dilator/order.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "dilator/error.hpp"

namespace dilator {

FiniteOrder::FiniteOrder(std::vector<std::string> labels) : labels_(std::move(labels)) {
  for (int i = 0; i < size(); ++i) {
    if (!rank_.emplace(labels_[i], i).second)
      throw LabelNotInCarrier("duplicate label '" + labels_[i] + "'");
  }
}

FiniteOrder FiniteOrder::of_size(int n) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return FiniteOrder(std::move(labels));
}

int FiniteOrder::rank(const std::string& label) const {
  auto it = rank_.find(label);
  if (it == rank_.end()) throw LabelNotInCarrier("'" + label + "'");
  return it->second;
}

IncreasingMap IncreasingMap::identity(int n) {
  IncreasingMap f{n, n, {}};
  for (int i = 0; i < n; ++i) f.values.push_back(i);
  return f;
}

IncreasingMap IncreasingMap::of(std::vector<int> values, int target) {
  IncreasingMap f{static_cast<int>(values.size()), target, std::move(values)};
  return f;
}

bool IncreasingMap::valid() const {
  if (static_cast<int>(values.size()) != source) return false;
  for (int i = 0; i < source; ++i) {
    if (values[i] < 0 || values[i] >= target) return false;
    if (i > 0 && values[i - 1] >= values[i]) return false;
  }
  return true;
}

IncreasingMap IncreasingMap::after(const IncreasingMap& first) const {
  IncreasingMap g{first.source, target, {}};
  for (int v : first.values) g.values.push_back(values.at(v));
  return g;
}

bool ArityDiagram::trivial() const {
  if (!(n_meet == n0 && n0 == n1 && n1 == n_join)) return false;
  auto id = IncreasingMap::identity(n0);
  return e0 == id && e1 == id && leg0 == id && leg1 == id;
}

ArityDiagram ArityDiagram::swapped() const {
  ArityDiagram d = *this;
  std::swap(d.n0, d.n1);
  std::swap(d.e0, d.e1);
  std::swap(d.leg0, d.leg1);
  return d;
}

bool ArityDiagram::well_formed() const {
  if (e0.source != n0 || e1.source != n1 || e0.target != n_join || e1.target != n_join) return false;
  if (!e0.valid() || !e1.valid() || !leg0.valid() || !leg1.valid()) return false;
  if (leg0.source != n_meet || leg1.source != n_meet || leg0.target != n0 || leg1.target != n1)
    return false;
  std::vector<char> hit(n_join, 0);
  for (int v : e0.values) hit[v] = 1;
  for (int v : e1.values) hit[v] = 1;
  if (std::count(hit.begin(), hit.end(), 0) != 0) return false;
  std::vector<int> meet;
  std::set_intersection(e0.values.begin(), e0.values.end(), e1.values.begin(), e1.values.end(),
                        std::back_inserter(meet));
  if (static_cast<int>(meet.size()) != n_meet) return false;
  return e0.after(leg0).values == meet && e1.after(leg1).values == meet;
}

ArityDiagram diagram_of(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> join;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(join));
  auto pos = [&](int v) {
    return static_cast<int>(std::lower_bound(join.begin(), join.end(), v) - join.begin());
  };
  ArityDiagram d;
  d.n0 = static_cast<int>(a.size());
  d.n1 = static_cast<int>(b.size());
  d.n_join = static_cast<int>(join.size());
  d.e0 = {d.n0, d.n_join, {}};
  d.e1 = {d.n1, d.n_join, {}};
  for (int v : a) d.e0.values.push_back(pos(v));
  for (int v : b) d.e1.values.push_back(pos(v));
  d.leg0 = {0, d.n0, {}};
  d.leg1 = {0, d.n1, {}};
  for (int i = 0, j = 0; i < d.n0 && j < d.n1;) {
    if (a[i] == b[j]) {
      d.leg0.values.push_back(i++);
      d.leg1.values.push_back(j++);
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  d.n_meet = d.leg0.source = d.leg1.source = static_cast<int>(d.leg0.values.size());
  return d;
}

namespace {

std::vector<int> ranks_of(const FiniteOrder& x, const std::vector<std::string>& labels) {
  std::vector<int> r;
  for (const auto& l : labels) r.push_back(x.rank(l));
  std::sort(r.begin(), r.end());
  if (std::adjacent_find(r.begin(), r.end()) != r.end())
    throw LabelNotInCarrier("repeated label in subset");
  return r;
}

// Calls f with every k-subset of 0..n-1 as an increasing vector.
template <class F>
void for_each_subset(int n, int k, F&& f) {
  if (k > n) return;
  std::vector<int> c(k);
  for (int i = 0; i < k; ++i) c[i] = i;
  while (true) {
    f(c);
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) return;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

}  // namespace

ArityDiagram diag(const FiniteOrder& x, const std::vector<std::string>& a,
                  const std::vector<std::string>& b) {
  return diagram_of(ranks_of(x, a), ranks_of(x, b));
}

std::vector<std::vector<ArityDiagram>> diag(const FiniteOrder& x,
                                            const std::vector<std::vector<std::string>>& subsets) {
  std::vector<std::vector<int>> r;
  for (const auto& s : subsets) r.push_back(ranks_of(x, s));
  std::vector<std::vector<ArityDiagram>> out(r.size());
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < r.size(); ++j) out[i].push_back(diagram_of(r[i], r[j]));
  return out;
}

const std::vector<ArityDiagram>& enum_arity_diagrams(int n0, int n1, int bound) {
  if (n0 < 0 || n1 < 0 || n0 > bound || n1 > bound)
    throw BoundExceeded("diagram arities (" + std::to_string(n0) + "," + std::to_string(n1) +
                        ") exceed bound " + std::to_string(bound));
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<ArityDiagram>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n0, n1);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<ArityDiagram> out;
  for (int nj = std::max(n0, n1); nj <= n0 + n1; ++nj) {
    for_each_subset(nj, n0, [&](const std::vector<int>& a) {
      // b must contain the complement of a; choose the rest from a.
      std::vector<int> rest;
      std::vector<int> forced;
      for (int v = 0, i = 0; v < nj; ++v) {
        if (i < n0 && a[i] == v) {
          rest.push_back(v);
          ++i;
        } else {
          forced.push_back(v);
        }
      }
      int extra = n1 - static_cast<int>(forced.size());
      if (extra < 0 || extra > n0) return;
      for_each_subset(n0, extra, [&](const std::vector<int>& pick) {
        std::vector<int> b = forced;
        for (int p : pick) b.push_back(rest[p]);
        std::sort(b.begin(), b.end());
        out.push_back(diagram_of(a, b));
      });
    });
  }
  return cache.emplace(key, std::move(out)).first->second;
}

std::strong_ordering kb_compare(std::span<const KbItem> a, std::span<const KbItem> b,
                                std::span<const SlotComparator> comparators) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].slot != b[i].slot)
      throw SlotMismatch("position " + std::to_string(i) + " carries slots " +
                         std::to_string(a[i].slot) + " and " + std::to_string(b[i].slot));
    if (a[i].slot < 0 || a[i].slot >= static_cast<int>(comparators.size()))
      throw SlotMismatch("no comparator for slot " + std::to_string(a[i].slot));
    auto c = comparators[a[i].slot](a[i].value, b[i].value);
    if (c != std::strong_ordering::equal) return c;
  }
  if (a.size() > b.size()) return std::strong_ordering::less;
  if (a.size() < b.size()) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::strong_ordering kb_compare(const Seq& a, const Seq& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != b[i]) return a[i] <=> b[i];
  return b.size() <=> a.size();
}

namespace {

__extension__ typedef unsigned __int128 u128;
constexpr u128 kLimit = static_cast<u128>(UINT64_MAX);

u128 checked_mul(u128 a, u128 b) {
  if (a != 0 && b > kLimit / a) throw BoundExceeded("sequence index overflows 64 bits");
  return a * b;
}
u128 checked_add(u128 a, u128 b) {
  if (a + b > kLimit) throw BoundExceeded("sequence index overflows 64 bits");
  return a + b;
}
u128 power(u128 base, int k) {
  u128 r = 1;
  for (int i = 0; i < k; ++i) r = checked_mul(r, base);
  return r;
}
// Number of sequences with length <= n-1 and entries < n-1, i.e. the first index of block n.
u128 block_offset(u128 n) {
  if (n == 0) return 0;
  u128 r = 0;
  for (u128 k = 0; k + 1 <= n; ++k) r = checked_add(r, power(n - 1, static_cast<int>(k)));
  return r;
}
// Sequences of length k over alphabet n that belong to block n.
u128 group_size(int n, int k) {
  if (k == n) return power(n, k);
  return power(n, k) - power(n - 1, k);
}
// Completions of a length-`rest` suffix over alphabet n, given whether the prefix already
// contains the top letter (or the group requires nothing).
u128 completions(int n, int rest, bool satisfied) {
  return satisfied ? power(n, rest) : power(n, rest) - power(n - 1, rest);
}

}  // namespace

Seq seq_at(std::uint64_t index) {
  if (index == 0) return {};
  u128 i = index;
  int n = 1;
  while (true) {
    u128 next = block_offset(n + 1);
    if (i < next) break;
    ++n;
  }
  i -= block_offset(n);
  int k = 0;
  while (true) {
    u128 g = group_size(n, k);
    if (i < g) break;
    i -= g;
    ++k;
  }
  Seq s;
  bool satisfied = (k == n);
  for (int p = 0; p < k; ++p) {
    for (int c = 0; c < n; ++c) {
      bool sat = satisfied || c == n - 1;
      u128 cnt = completions(n, k - p - 1, sat);
      if (i < cnt) {
        s.push_back(c);
        satisfied = sat;
        break;
      }
      i -= cnt;
    }
  }
  return s;
}

std::uint64_t seq_index(const Seq& s) {
  if (s.empty()) return 0;
  int n = static_cast<int>(s.size());
  for (int v : s) {
    if (v < 0) throw BoundExceeded("negative sequence entry");
    n = std::max(n, v + 1);
  }
  int k = static_cast<int>(s.size());
  u128 r = block_offset(n);
  for (int j = 0; j < k; ++j) r = checked_add(r, group_size(n, j));
  bool satisfied = (k == n);
  for (int p = 0; p < k; ++p) {
    for (int c = 0; c < s[p]; ++c) {
      bool sat = satisfied || c == n - 1;
      r = checked_add(r, completions(n, k - p - 1, sat));
    }
    satisfied = satisfied || s[p] == n - 1;
  }
  return static_cast<std::uint64_t>(r);
}

bool is_prefix(const Seq& a, const Seq& b) {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

std::string to_string(const Seq& s) {
  std::string out = "<";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + ">";
}

}  // namespace dilator
