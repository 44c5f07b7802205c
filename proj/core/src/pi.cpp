#include "dilator/pi.hpp"

#include <algorithm>
#include <limits>
#include <memory>
#include <numeric>
#include <set>

#include "dilator/error.hpp"

namespace dilator {

namespace {

std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t hash_pair(std::uint64_t key, const Seq& u, const Seq& v, std::size_t k) {
  std::uint64_t h = mix(key);
  for (std::size_t i = 0; i < k; ++i) {
    h = mix(h ^ static_cast<std::uint64_t>(u[i]));
    h = mix(h ^ (static_cast<std::uint64_t>(v[i]) << 1));
  }
  return h;
}

int parse_int(const std::string& spec, const std::string& text) {
  try {
    std::size_t used = 0;
    int v = std::stoi(text, &used);
    if (used != text.size() || v < 0) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ParseError(1, 1, "bad number in tree spec '" + spec + "'");
  }
}

Seq prefix(const Seq& s, std::size_t k) { return Seq(s.begin(), s.begin() + std::min(k, s.size())); }

}  // namespace

DecidableTree builtin_tree(const std::string& spec) {
  if (spec == "full") return {spec, [](const Seq&, const Seq&) { return true; }};
  if (spec == "empty") return {spec, [](const Seq&, const Seq&) { return false; }};
  if (spec == "descending-run") {
    // Strictly decreasing second coordinate, starting at most at the first entry of u.
    return {spec, [](const Seq& u, const Seq& v) {
              if (v.empty()) return true;
              if (v[0] > u[0]) return false;
              for (std::size_t i = 1; i < v.size(); ++i)
                if (v[i] >= v[i - 1]) return false;
              return true;
            }};
  }
  auto colon = spec.find(':');
  if (colon != std::string::npos) {
    std::string head = spec.substr(0, colon);
    int arg = parse_int(spec, spec.substr(colon + 1));
    if (head == "bounded") {
      return {spec, [arg](const Seq&, const Seq& v) {
                return std::all_of(v.begin(), v.end(), [arg](int x) { return x < arg; });
              }};
    }
    if (head == "seeded") {
      auto key = static_cast<std::uint64_t>(arg);
      return {spec, [key](const Seq& u, const Seq& v) {
                for (std::size_t k = 1; k <= v.size(); ++k)
                  if (hash_pair(key, u, v, k) % 4 == 0) return false;
                return true;
              }};
    }
  }
  throw ParseError(1, 1, "unknown tree spec '" + spec + "'");
}

DecidableTree table_tree(std::vector<std::pair<Seq, Seq>> members, std::string name) {
  auto table = std::make_shared<std::set<std::pair<Seq, Seq>>>(members.begin(), members.end());
  return {std::move(name), [table](const Seq& u, const Seq& v) { return table->count({u, v}) != 0; }};
}

std::vector<std::pair<Seq, Seq>> closure_violations(const DecidableTree& t, int depth, int alphabet) {
  std::vector<std::pair<Seq, Seq>> out;
  // Walk all pairs of equal length level by level.
  std::vector<std::pair<Seq, Seq>> level{{{}, {}}};
  for (int len = 0; len <= depth; ++len) {
    for (const auto& [u, v] : level) {
      if (!t.member(u, v)) continue;
      for (std::size_t k = 0; k < u.size(); ++k)
        if (!t.member(prefix(u, k), prefix(v, k))) {
          out.push_back({u, v});
          break;
        }
    }
    if (len == depth) break;
    std::vector<std::pair<Seq, Seq>> next;
    for (const auto& [u, v] : level)
      for (int a = 0; a < alphabet; ++a)
        for (int b = 0; b < alphabet; ++b) {
          Seq u2 = u, v2 = v;
          u2.push_back(a);
          v2.push_back(b);
          next.push_back({std::move(u2), std::move(v2)});
        }
    level = std::move(next);
  }
  return out;
}

std::uint64_t cantor_pair(std::uint64_t a, std::uint64_t b) { return (a + b) * (a + b + 1) / 2 + b; }

Seq pair_sequences(const Seq& s, const Seq& t) {
  if (s.size() != t.size()) throw ArityMismatch("paired sequences must have equal length");
  Seq out(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    auto v = cantor_pair(static_cast<std::uint64_t>(s[k]), static_cast<std::uint64_t>(t[k]));
    if (v > static_cast<std::uint64_t>(std::numeric_limits<int>::max()))
      throw BoundExceeded("paired entry too large");
    out[k] = static_cast<int>(v);
  }
  return out;
}

FiniteOrder StageOrder::as_finite_order() const {
  std::vector<std::string> labels;
  for (int i : sorted) labels.push_back(std::to_string(i));
  return FiniteOrder(std::move(labels));
}

bool code_in_tree(const DecidableTree& t, const Seq& s, int i) {
  Seq code = seq_at(static_cast<std::uint64_t>(i));
  if (code.size() > s.size()) return false;
  return t.member(prefix(s, code.size()), code);
}

StageOrder order_family_step(const DecidableTree& t, const Seq& s) {
  int n = static_cast<int>(s.size());
  std::vector<char> in(n);
  std::vector<Seq> code(n);
  for (int i = 0; i < n; ++i) {
    code[i] = seq_at(static_cast<std::uint64_t>(i));
    in[i] = code_in_tree(t, s, i);
  }
  StageOrder o;
  o.sorted.resize(n);
  std::iota(o.sorted.begin(), o.sorted.end(), 0);
  std::sort(o.sorted.begin(), o.sorted.end(), [&](int i, int j) {
    if (in[i] && in[j]) return kb_compare(code[i], code[j]) < 0;
    if (in[i] != in[j]) return !in[i];
    return i < j;
  });
  o.rank.assign(n, 0);
  for (int r = 0; r < n; ++r) o.rank[o.sorted[r]] = r;
  return o;
}

StageOrder paired_order_step(const DecidableTree& t, const Seq& s, const Seq& u) {
  return order_family_step(t, pair_sequences(s, u));
}

Predilator dilator_family_step(const DecidableTree& t, const Seq& s) {
  int n = static_cast<int>(s.size());
  std::vector<Seq> code(n);
  Predilator p;
  for (int i = 0; i < n; ++i) code[i] = seq_at(static_cast<std::uint64_t>(i) + 1);
  // Terms are listed in the order of their codes: extensions first, then first difference.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return kb_compare(code[i], code[j]) < 0; });
  // d_s keeps field 0..|s|-1 in index order; the term order is carried by position.
  std::vector<int> position(n);
  for (int r = 0; r < n; ++r) position[order[r]] = r;
  for (int r = 0; r < n; ++r) {
    int i = order[r];
    const Seq& c = code[i];
    auto rel = paired_order_step(t, prefix(s, c.size()), c);
    p.add_term({std::to_string(i), static_cast<int>(c.size()), rel.rank});
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Seq &a = code[i], &b = code[j];
      int m = 0;
      while (m < static_cast<int>(std::min(a.size(), b.size())) && a[m] == b[m]) ++m;
      p.set_dist(position[i], position[j], m);
    }
  auto report = validate_predilator(p);
  if (!report.ok())
    throw InconsistentSigma("stage " + to_string(s) + ": " + report.violations.front().detail);
  return p;
}

std::vector<Seq> shoenfield_truncation(const DecidableTree& t, const Seq& s, int n) {
  std::vector<Seq> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    Seq c = seq_at(i + 1);
    int len = static_cast<int>(c.size());
    if (len > n) continue;
    auto rel = paired_order_step(t, prefix(s, c.size()), c);
    std::vector<int> a(len);
    std::iota(a.begin(), a.end(), 0);
    while (true) {
      Seq e;
      for (int k = 0; k < len; ++k) {
        e.push_back(c[k]);
        e.push_back(a[rel.rank[k]]);
      }
      out.push_back(std::move(e));
      int k = len - 1;
      while (k >= 0 && a[k] == n - len + k) --k;
      if (k < 0) break;
      ++a[k];
      for (int j = k + 1; j < len; ++j) a[j] = a[j - 1] + 1;
    }
  }
  std::sort(out.begin(), out.end(), [](const Seq& a, const Seq& b) { return kb_compare(a, b) < 0; });
  return out;
}

CodedFunctor shoenfield_functor(const DecidableTree& t, const Seq& s) {
  CodedFunctor f;
  f.order_at = [t, s](int n) { return shoenfield_truncation(t, s, n); };
  f.map_at = [](const IncreasingMap& g, const CodedElement& e) {
    CodedElement out = e;
    for (std::size_t k = 1; k < out.size(); k += 2) out[k] = g(out[k]);
    return out;
  };
  f.supp_at = [](int, const CodedElement& e) {
    std::vector<int> out;
    for (std::size_t k = 1; k < e.size(); k += 2) out.push_back(e[k]);
    std::sort(out.begin(), out.end());
    return out;
  };
  return f;
}

namespace {

// Relation by the three clauses, evaluated pairwise without sorting.
bool clause_less(const DecidableTree& t, const Seq& s, int i, int j) {
  bool ii = code_in_tree(t, s, i), ij = code_in_tree(t, s, j);
  if (ii && ij) return kb_compare(seq_at(i), seq_at(j)) < 0;
  if (!ii && ij) return true;
  if (!ii && !ij) return i < j;
  return false;
}

void check_order(const DecidableTree& t, const Seq& s, FamilyReport& r) {
  int n = static_cast<int>(s.size());
  auto o = order_family_step(t, s);
  std::string at = " at " + to_string(s);
  if (o.size() != n) r.problems.push_back("carrier size differs from prefix length" + at);
  std::vector<int> seen = o.sorted;
  std::sort(seen.begin(), seen.end());
  for (int i = 0; i < static_cast<int>(seen.size()); ++i)
    if (seen[i] != i) {
      r.problems.push_back("order is not a permutation of the carrier" + at);
      return;
    }
  for (int i = 0; i < n; ++i) {
    if (clause_less(t, s, i, i)) r.problems.push_back("reflexive pair" + at);
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      bool a = clause_less(t, s, i, j), b = clause_less(t, s, j, i);
      if (a == b) r.problems.push_back("pair " + std::to_string(i) + "," + std::to_string(j) + " not comparable" + at);
      if (a != o.less(i, j)) r.problems.push_back("sorted order disagrees with clauses" + at);
      for (int k = 0; k < n; ++k)
        if (a && clause_less(t, s, j, k) && !clause_less(t, s, i, k))
          r.problems.push_back("transitivity fails" + at);
    }
  }
  for (int k = 0; k < n; ++k) {
    auto small = order_family_step(t, prefix(s, k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if (small.less(i, j) != o.less(i, j))
          r.problems.push_back("restriction to length " + std::to_string(k) + " differs" + at);
  }
}

void check_dilator(const DecidableTree& t, const Seq& s, FamilyReport& r) {
  std::string at = " at " + to_string(s);
  Predilator p;
  try {
    p = dilator_family_step(t, s);
  } catch (const Error& e) {
    r.problems.push_back(std::string(e.what()) + at);
    return;
  }
  if (p.size() != static_cast<int>(s.size())) r.problems.push_back("field size differs from prefix length" + at);
  auto rep = validate_predilator(p);
  for (const auto& v : rep.violations) r.problems.push_back(to_string(v.clause) + at);
  for (std::size_t k = 0; k < s.size(); ++k) {
    auto small = dilator_family_step(t, prefix(s, k));
    std::vector<int> keep;
    for (int pos = 0; pos < p.size(); ++pos)
      if (std::stoi(p.term(pos).name) < static_cast<int>(k)) keep.push_back(pos);
    if (!(small == p.restrict(keep)))
      r.problems.push_back("stage of length " + std::to_string(k) + " is not a restriction" + at);
  }
}

}  // namespace

FamilyReport family_check(const DecidableTree& t, FamilyKind kind, const std::vector<Seq>& prefixes,
                          int depth, int alphabet) {
  FamilyReport r;
  std::vector<Seq> todo = prefixes;
  if (todo.empty()) {
    std::vector<Seq> level{{}};
    for (int len = 0; len <= depth; ++len) {
      todo.insert(todo.end(), level.begin(), level.end());
      std::vector<Seq> next;
      for (const auto& s : level)
        for (int a = 0; a < alphabet; ++a) {
          Seq u = s;
          u.push_back(a);
          next.push_back(std::move(u));
        }
      level = std::move(next);
    }
  }
  for (const auto& s : todo) {
    ++r.prefixes_checked;
    if (kind == FamilyKind::order)
      check_order(t, s, r);
    else
      check_dilator(t, s, r);
  }
  for (const auto& [u, v] : closure_violations(t, depth, alphabet))
    r.problems.push_back("tree is not prefix closed at (" + to_string(u) + ", " + to_string(v) + ")");
  return r;
}

std::vector<int> ecodes_of_sigma(const std::vector<int>& sigma) {
  std::vector<int> e(sigma.size());
  for (std::size_t k = 0; k < sigma.size(); ++k)
    for (std::size_t j = 0; j < k; ++j) e[k] += sigma[j] < sigma[k];
  return e;
}

CodeTrie code_trie(int digits, int max_length) {
  if (digits < 1 || max_length < 0 || max_length > kDefaultDiagramBound)
    throw BoundExceeded("code trie bounds out of range");
  CodeTrie u;
  std::vector<std::pair<Seq, Seq>> terminal_key;
  // Depth-first build keeps sibling order: digit, then e-code, terminal last.
  std::function<void(int, const Seq&, const Seq&)> grow = [&](int parent, const Seq& c, const Seq& e) {
    int lvl = static_cast<int>(c.size());
    if (lvl < max_length) {
      for (int dgt = 0; dgt < digits; ++dgt)
        for (int ec = 0; ec <= lvl; ++ec) {
          Seq c2 = c, e2 = e;
          c2.push_back(dgt);
          e2.push_back(ec);
          int x = u.d.add_node(parent, ec);
          grow(x, c2, e2);
        }
    }
    u.d.add_node(parent, std::nullopt);
    terminal_key.push_back({c, e});
  };
  grow(-1, {}, {});
  auto dd = dec_with_nodes(u.d);
  u.p = dd.p;
  auto terms = u.d.terminals();
  // terminals() and the build order agree: both are left-to-right.
  for (std::size_t k = 0; k < terms.size(); ++k) {
    int pos = static_cast<int>(std::find(dd.node.begin(), dd.node.end(), terms[k]) - dd.node.begin());
    u.term_of[terminal_key[k]] = pos;
    auto& t = u.p.mutable_term(pos);
    t.name = to_string(terminal_key[k].first) + "/" + to_string(terminal_key[k].second);
  }
  return u;
}

TermMap code_trie_embedding(const CodeTrie& u, const Predilator& family_stage, const Seq& s) {
  (void)s;
  TermMap f(family_stage.size());
  for (int pos = 0; pos < family_stage.size(); ++pos) {
    const auto& t = family_stage.term(pos);
    Seq code = seq_at(static_cast<std::uint64_t>(std::stoi(t.name)) + 1);
    auto it = u.term_of.find({code, ecodes_of_sigma(t.sigma)});
    if (it == u.term_of.end()) throw BoundExceeded("code " + to_string(code) + " lies outside the trie");
    f[pos] = it->second;
  }
  return f;
}

}  // namespace dilator
