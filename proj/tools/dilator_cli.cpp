#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dilator/decompose.hpp"
#include "dilator/error.hpp"
#include "dilator/flower.hpp"
#include "dilator/game.hpp"
#include "dilator/generate.hpp"
#include "dilator/pi.hpp"
#include "dilator/text.hpp"

using namespace dilator;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kViolations = 1, kParse = 2, kBudget = 3, kPrecondition = 4 };

struct Report {
  std::vector<std::string> lines;
  json doc = json::object();
  int status = kOk;

  void line(std::string s) { lines.push_back(std::move(s)); }
  void text(const std::string& block) {
    std::istringstream in(block);
    for (std::string l; std::getline(in, l);) lines.push_back(l);
  }
};

class MissingInput : public Error {
public:
  explicit MissingInput(const std::string& what) : Error(ErrorClass::precondition, "MissingInput", what) {}
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MissingInput("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

enum class Format { predilator, dendrogram, trekkable };

Format detect(const std::string& text) {
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) {
    auto p = l.find_first_not_of(" \t\r");
    if (p == std::string::npos || l[p] == '#') continue;
    if (l.compare(p, 10, "predilator") == 0) return Format::predilator;
    if (l.compare(p, 9, "trekkable") == 0 || l.compare(p, 4, "node") == 0) return Format::trekkable;
    return Format::dendrogram;
  }
  return Format::dendrogram;
}

Dendrogram read_dendrogram(const std::string& path) {
  auto text = read_file(path);
  switch (detect(text)) {
    case Format::trekkable: return parse_trekkable(text);
    case Format::dendrogram: return parse_dendrogram(text);
    default: throw InvalidDendrogram("'" + path + "' holds a predilator, not a dendrogram");
  }
}

Predilator read_predilator(const std::string& path) { return parse_predilator(read_file(path)); }

// Builtin name, or a file holding `tree ...`.
DecidableTree read_tree(const std::string& spec) {
  if (std::filesystem::exists(spec)) return parse_tree_spec(read_file(spec));
  return builtin_tree(spec);
}

json predilator_json(const Predilator& p) {
  json terms = json::array();
  for (const auto& t : p.terms()) terms.push_back({{"name", t.name}, {"arity", t.arity}, {"sigma", t.sigma}});
  json dist = json::array();
  for (int i = 0; i < p.size(); ++i) {
    std::vector<int> row;
    for (int j = 0; j < p.size(); ++j) row.push_back(p.dist(i, j));
    dist.push_back(row);
  }
  return {{"terms", terms}, {"dist", dist}};
}

json dendrogram_json(const Dendrogram& d) {
  json nodes = json::array();
  for (int x = 0; x < d.size(); ++x) {
    json n = {{"id", x}, {"parent", d.parent(x)}, {"children", d.children(x)}};
    n["ecode"] = d.ecode(x) ? json(*d.ecode(x)) : json(nullptr);
    nodes.push_back(n);
  }
  return {{"roots", d.roots()}, {"nodes", nodes}, {"form", canonical_form(d)}};
}

std::string element_text(const DendroElement& e) {
  return std::to_string(e.node) + ":" + print_seq(e.xi);
}

DendroElement parse_element(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw ParseError(1, 1, "expected NODE:PARAMS, got '" + s + "'");
  Seq node = parse_seq(s.substr(0, colon));
  if (node.size() != 1) throw ParseError(1, 1, "expected a single node id in '" + s + "'");
  return {node[0], parse_seq(s.substr(colon + 1))};
}

Report do_check(const std::string& path) {
  Report r;
  auto text = read_file(path);
  auto fmt = detect(text);
  if (fmt == Format::predilator) {
    auto p = parse_predilator(text);
    auto rep = validate_predilator(p);
    json v = json::array();
    for (const auto& x : rep.violations) {
      r.line("violation " + to_string(x.clause) + ": " + x.detail);
      v.push_back({{"clause", to_string(x.clause)}, {"terms", x.terms}, {"detail", x.detail}});
    }
    r.doc["kind"] = "predilator";
    r.doc["valid"] = rep.ok();
    r.doc["violations"] = v;
    if (rep.ok()) {
      auto w = is_semiflower(p);
      r.doc["semiflower"] = w.verdict;
      r.line(std::string("valid predilator; semiflower: ") + (w.verdict ? "true" : "false"));
    } else {
      r.status = kViolations;
    }
    return r;
  }
  Dendrogram d = fmt == Format::trekkable ? parse_trekkable(text) : parse_dendrogram(text);
  r.doc["kind"] = "dendrogram";
  r.doc["valid"] = true;
  r.doc["nodes"] = d.size();
  r.doc["trekkable"] = is_trekkable(d);
  r.doc["flower"] = dendrogram_is_flower(d);
  r.line("valid dendrogram; nodes: " + std::to_string(d.size()) + "; trekkable: " +
         (is_trekkable(d) ? "true" : "false") + "; flower: " + (dendrogram_is_flower(d) ? "true" : "false"));
  return r;
}

Report do_apply(const std::string& path, int n) {
  Report r;
  auto p = read_predilator(path);
  if (applied_size(p, n) > kApplyBudget) throw BudgetExceeded("P(" + std::to_string(n) + ") is too large");
  json elems = json::array();
  for (const auto& e : apply_order(p, n)) {
    r.line(to_string(p, e));
    elems.push_back(to_string(p, e));
  }
  r.doc["n"] = n;
  r.doc["elements"] = elems;
  return r;
}

Report do_dec(const std::string& path, bool closure) {
  Report r;
  auto d = read_dendrogram(path);
  auto dd = closure ? dec_bullet_with_nodes(d) : dec_with_nodes(d);
  r.text(print_predilator(dd.p));
  r.doc["predilator"] = predilator_json(dd.p);
  r.doc["nodes"] = dd.node;
  return r;
}

Report do_cell(const std::string& path) {
  Report r;
  auto p = read_predilator(path);
  auto rep = validate_predilator(p);
  if (!rep.ok()) throw InvalidPredilator(rep.violations.front().detail);
  auto c = cell_with_classes(p);
  r.text(print_dendrogram(c.d));
  r.doc["dendrogram"] = dendrogram_json(c.d);
  json classes = json::array();
  for (std::size_t k = 0; k < c.members.size(); ++k) classes.push_back({{"level", c.level[k]}, {"terms", c.members[k]}});
  r.doc["classes"] = classes;
  return r;
}

Report do_bullet(const std::string& path) {
  Report r;
  auto b = bullet_with_origin(read_dendrogram(path));
  r.text(print_dendrogram(b.d));
  r.doc["dendrogram"] = dendrogram_json(b.d);
  r.doc["origin"] = b.origin;
  std::vector<int> bulleted(b.bulleted.begin(), b.bulleted.end());
  r.doc["bulleted"] = bulleted;
  return r;
}

Report do_sort(const std::string& path, const std::string& policy) {
  Report r;
  auto d = read_dendrogram(path);
  SwapPolicy pol;
  if (policy == "least")
    pol = SwapPolicy::least_first;
  else if (policy == "pass")
    pol = SwapPolicy::pass;
  else
    throw ParseError(1, 1, "unknown policy '" + policy + "'");
  auto [sorted, trace] = lv_sort(d, pol);
  r.line("inversions " + std::to_string(trace.inversions.front()));
  for (std::size_t k = 0; k < trace.swaps.size(); ++k)
    r.line("swap " + std::to_string(trace.swaps[k]) + " " + std::to_string(trace.swaps[k] + 1) +
           " inversions " + std::to_string(trace.inversions[k + 1]));
  r.text(print_trekkable(sorted));
  r.doc["swaps"] = trace.swaps;
  r.doc["inversions"] = trace.inversions;
  r.doc["sorted"] = dendrogram_json(sorted);
  return r;
}

Report do_calculus(const std::string& path, int times, bool integral) {
  Report r;
  auto p = read_predilator(path);
  for (int k = 0; k < times; ++k) p = integral ? integrate(p) : differentiate(p);
  r.text(print_predilator(p));
  r.doc["predilator"] = predilator_json(p);
  return r;
}

Report do_decompose_flower(const std::string& path) {
  Report r;
  auto p = read_predilator(path);
  auto fd = flower_decompose(p);
  std::string init;
  for (int t : fd.init) init += (init.empty() ? "" : " ") + p.term(t).name;
  r.line("init: " + (init.empty() ? std::string("-") : init));
  for (int t = 0; t < p.size(); ++t) r.line("map " + p.term(t).name + " -> " + fd.sum.term(fd.iso[t]).name);
  r.text(print_predilator(fd.sum));
  std::vector<std::string> names;
  for (int t : fd.init) names.push_back(p.term(t).name);
  r.doc["init"] = names;
  r.doc["iso"] = fd.iso;
  r.doc["sum"] = predilator_json(fd.sum);
  return r;
}

Report do_elem(const std::string& path, const std::string& x, const std::string& y) {
  Report r;
  auto d = read_dendrogram(path);
  auto c = elementary_decompose(d, parse_element(x), parse_element(y));
  bool ok = verify_chain(d, c);
  r.line("carrier " + std::to_string(c.carrier));
  r.line(element_text(c.elements[0]));
  json steps = json::array();
  for (std::size_t k = 0; k < c.steps.size(); ++k) {
    std::string kind(1, to_char(c.steps[k].type));
    if (c.steps[k].type == StepType::D && !c.steps[k].literal) kind += "'";
    r.line("< " + kind + " " + element_text(c.elements[k + 1]));
    steps.push_back({{"type", kind}, {"to", element_text(c.elements[k + 1])}});
  }
  r.line(std::string("verified: ") + (ok ? "true" : "false"));
  r.doc["carrier"] = c.carrier;
  r.doc["from"] = element_text(c.elements[0]);
  r.doc["steps"] = steps;
  r.doc["verified"] = ok;
  if (!ok) r.status = kViolations;
  return r;
}

Report do_family(const std::string& tree, const std::string& kind, const std::string& prefix,
                 const std::string& pair) {
  Report r;
  auto t = read_tree(tree);
  Seq s = parse_seq(prefix);
  if (kind == "order") {
    auto o = pair.empty() ? order_family_step(t, s) : paired_order_step(t, s, parse_seq(pair));
    std::string line;
    for (int i : o.sorted) line += (line.empty() ? "" : " < ") + std::to_string(i);
    r.line(line.empty() ? "(empty)" : line);
    r.doc["order"] = o.sorted;
  } else if (kind == "dilator") {
    auto p = dilator_family_step(t, s);
    r.text(print_predilator(p));
    r.doc["predilator"] = predilator_json(p);
  } else {
    throw ParseError(1, 1, "family kind must be 'order' or 'dilator'");
  }
  return r;
}

Report do_shoenfield(const std::string& tree, const std::string& prefix, int n) {
  Report r;
  auto elems = shoenfield_truncation(read_tree(tree), parse_seq(prefix), n);
  json arr = json::array();
  for (const auto& e : elems) {
    r.line("<" + print_seq(e) + ">");
    arr.push_back(e);
  }
  r.doc["elements"] = arr;
  return r;
}

Report do_family_check(const std::string& tree, const std::string& kind, int depth, int alphabet) {
  Report r;
  auto t = read_tree(tree);
  FamilyKind k;
  if (kind == "order")
    k = FamilyKind::order;
  else if (kind == "dilator")
    k = FamilyKind::dilator;
  else
    throw ParseError(1, 1, "family kind must be 'order' or 'dilator'");
  auto rep = family_check(t, k, {}, depth, alphabet);
  for (const auto& p : rep.problems) r.line("problem " + p);
  r.line("prefixes checked: " + std::to_string(rep.prefixes_checked) + "; problems: " +
         std::to_string(rep.problems.size()));
  r.doc["prefixes_checked"] = rep.prefixes_checked;
  r.doc["problems"] = rep.problems;
  if (!rep.ok()) r.status = kViolations;
  return r;
}

Report do_roundtrip(std::uint64_t seed, int count) {
  Report r;
  Rng rng(seed);
  int bad_dec = 0, bad_cell = 0, bad_calc = 0;
  for (int i = 0; i < count; ++i) {
    auto p = random_predilator(rng, 4, 3);
    if (!isomorphic(dec(cell(p)), p)) ++bad_dec;
    if (!isomorphic(differentiate(integrate(p)), p)) ++bad_calc;
    auto c = random_dendrogram(rng, 8);
    if (canonical_form(cell(dec(c))) != canonical_form(c)) ++bad_cell;
  }
  r.line("cases: " + std::to_string(count));
  r.line("Dec(Cell(P)) failures: " + std::to_string(bad_dec));
  r.line("Cell(Dec(C)) failures: " + std::to_string(bad_cell));
  r.line("derivative of integral failures: " + std::to_string(bad_calc));
  r.doc = {{"seed", seed}, {"cases", count}, {"dec_cell", bad_dec}, {"cell_dec", bad_cell}, {"calculus", bad_calc}};
  if (bad_dec + bad_cell + bad_calc) r.status = kViolations;
  return r;
}

Report do_probe(const std::string& path, bool column, int depth, int budget) {
  Report r;
  std::optional<std::vector<AppliedElement>> chain;
  Predilator shown;
  if (column) {
    chain = bad_sequence_probe(omega_star_column(), depth, budget);
    shown = omega_star_column().stage(budget + 1).p;
  } else {
    shown = read_predilator(path);
    chain = bad_sequence_probe(shown, depth, budget);
  }
  if (!chain) {
    r.line("no descending witness of length " + std::to_string(budget + 1));
    r.doc["witness"] = nullptr;
    return r;
  }
  json arr = json::array();
  for (const auto& e : *chain) {
    r.line(to_string(shown, e));
    arr.push_back(to_string(shown, e));
  }
  r.doc["witness"] = arr;
  r.status = kViolations;
  return r;
}

// Game configuration: key=value lines.
//   mode=ordinal|dilator  tree=SPEC  depth=N  alphabet=N
//   kappa=N (ordinal)  target=FILE|trie:D,L (dilator)
//   selector=first|majority|at-embedding:midpoint|at-embedding:code-trie|at-embedding:FILE
struct GameSetup {
  GameConfig cfg;
  std::optional<CodeTrie> trie;
  std::string selector = "first";
};

int int_value(const std::map<std::string, std::string>& kv, const std::string& key, int fallback) {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  Seq v = parse_seq(it->second);
  if (v.size() != 1) throw ParseError(1, 1, "key '" + key + "' needs one natural number");
  return v[0];
}

GameSetup read_game(const std::string& path) {
  auto kv = parse_key_values(read_file(path));
  static const std::set<std::string> known{"mode", "tree", "depth", "alphabet", "kappa", "target", "selector"};
  for (const auto& [k, v] : kv)
    if (!known.count(k)) throw ParseError(1, 1, "unknown key '" + k + "'");
  GameSetup g;
  std::string mode = kv.count("mode") ? kv.at("mode") : "ordinal";
  if (mode == "ordinal")
    g.cfg.mode = GameMode::ordinal;
  else if (mode == "dilator")
    g.cfg.mode = GameMode::dilator;
  else
    throw ParseError(1, 1, "mode must be 'ordinal' or 'dilator'");
  if (kv.count("tree")) g.cfg.tree = read_tree(kv.at("tree"));
  g.cfg.depth = int_value(kv, "depth", 2);
  g.cfg.alphabet = int_value(kv, "alphabet", 1);
  g.cfg.kappa = int_value(kv, "kappa", 0);
  if (kv.count("target")) {
    const auto& t = kv.at("target");
    if (t.rfind("trie:", 0) == 0) {
      Seq dl = parse_seq(t.substr(5));
      if (dl.size() != 2) throw ParseError(1, 1, "target trie:D,L needs two numbers");
      g.trie = code_trie(dl[0], dl[1]);
      g.cfg.omega = g.trie->p;
    } else {
      g.cfg.omega = read_predilator(t);
    }
  }
  if (kv.count("selector")) g.selector = kv.at("selector");
  validate_config(g.cfg);
  return g;
}

// `embed PLAY TARGETS` lines: targets for the first (|PLAY|+1)/2 indices of PLAY.
TargetFamily table_family(const std::string& path) {
  auto text = read_file(path);
  auto table = std::make_shared<std::map<Seq, std::vector<int>>>();
  std::istringstream in(text);
  int number = 0;
  for (std::string l; std::getline(in, l);) {
    ++number;
    std::istringstream ls(l);
    std::string kw, play, targets;
    if (!(ls >> kw) || kw[0] == '#') continue;
    if (kw != "embed" || !(ls >> play >> targets)) throw ParseError(number, 1, "expected: embed PLAY TARGETS");
    (*table)[parse_seq(play)] = parse_seq(targets);
  }
  return [table](const Seq& x, int n) {
    for (std::size_t len = x.size() + 1; len-- > 0;) {
      auto it = table->find(Seq(x.begin(), x.begin() + len));
      if (it != table->end() && static_cast<int>(it->second.size()) >= n)
        return std::vector<int>(it->second.begin(), it->second.begin() + n);
    }
    throw SelectorPartial("embedding table has no entry for " + to_string(x));
  };
}

Selector make_selector(const GameSetup& g) {
  const auto& s = g.selector;
  if (s == "first") return {SelectorKind::first, {}, {}};
  if (s == "majority") return {SelectorKind::majority, {}, {}};
  if (s.rfind("at-embedding:", 0) == 0) {
    auto arg = s.substr(13);
    if (arg == "midpoint") return {SelectorKind::at_embedding, midpoint_family(g.cfg), {}};
    if (arg == "code-trie") {
      if (!g.trie) throw SelectorPartial("at-embedding:code-trie needs target=trie:D,L");
      return {SelectorKind::at_embedding, code_trie_family(g.cfg, *g.trie), {}};
    }
    return {SelectorKind::at_embedding, table_family(arg), {}};
  }
  throw ParseError(1, 1, "unknown selector '" + s + "'");
}

std::string move_line(std::size_t k, const Move& m, const PlayState& st) {
  std::string who = k % 2 == 0 ? "I" : "II";
  std::string s = "move " + std::to_string(k) + " " + who + " x=" + std::to_string(m.x);
  if (k % 2 == 0) s += " target=" + std::to_string(m.target);
  return s + " status=" + to_string(st.status);
}

Report do_game_solve(const std::string& path) {
  Report r;
  auto g = read_game(path);
  auto sol = solve_truncated(g.cfg);
  bool ok = verify_strategy(g.cfg, sol.winner, sol.strategy);
  r.line("winner " + to_string(sol.winner));
  r.line("positions " + std::to_string(sol.nodes));
  r.line(std::string("verified ") + (ok ? "true" : "false"));
  // Principal line: the winner's moves against the opponent's first option.
  PlayState st;
  if (g.cfg.depth == 0) st.status = PlayStatus::complete;
  json line = json::array();
  while (st.status == PlayStatus::active) {
    std::optional<Move> m;
    if (st.to_move() == sol.winner) m = sol.strategy.at(st);
    else if (st.to_move() == Player::II) m = Move{0, -1};
    else {
      for (int t = 0; t < target_count(g.cfg) && !m; ++t) m = Move{0, t};
    }
    if (!m) break;
    std::size_t k = st.x.size();
    st = referee_step(g.cfg, st, *m);
    r.line(move_line(k, *m, st));
    line.push_back({{"x", m->x}, {"target", m->target}, {"status", to_string(st.status)}});
  }
  r.doc = {{"winner", to_string(sol.winner)}, {"positions", sol.nodes}, {"verified", ok}, {"line", line}};
  if (!ok) r.status = kViolations;
  return r;
}

Report do_game_play(const std::string& path, const std::string& xs, const std::string& ts, std::uint64_t seed) {
  Report r;
  auto g = read_game(path);
  PlayState st;
  if (g.cfg.depth == 0) st.status = PlayStatus::complete;
  json moves = json::array();
  auto step = [&](const Move& m) {
    std::size_t k = st.x.size();
    st = referee_step(g.cfg, st, m);
    r.line(move_line(k, m, st));
    moves.push_back({{"x", m.x}, {"target", m.target}, {"status", to_string(st.status)}});
  };
  if (!xs.empty() || !ts.empty()) {
    Seq x = parse_seq(xs), t = parse_seq(ts);
    for (std::size_t k = 0; k < x.size() && st.status == PlayStatus::active; ++k) {
      if (k % 2 == 0 && k / 2 >= t.size()) throw IllegalMove("missing target for move " + std::to_string(k));
      step({x[k], k % 2 == 0 ? t[k / 2] : -1});
    }
  } else {
    auto one = seeded_strategy(g.cfg, Player::I, seed);
    auto two = seeded_strategy(g.cfg, Player::II, seed + 1);
    while (st.status == PlayStatus::active) {
      auto m = (st.to_move() == Player::I ? one : two).at(st);
      if (!m) break;
      step(*m);
    }
  }
  r.line("result " + to_string(st.status));
  r.doc = {{"moves", moves}, {"status", to_string(st.status)}};
  return r;
}

Report do_game_project(const std::string& path, const std::string& i_moves, std::uint64_t seed) {
  Report r;
  auto g = read_game(path);
  auto sel = make_selector(g);
  auto sigma_prime = seeded_strategy(g.cfg, Player::II, seed);
  auto sigma = project_strategy(g.cfg, sigma_prime, sel);
  TargetFamily e = sel.embedding;
  if (!e) {
    // Without a supplied embedding the lift uses the first clean targets of each play.
    GameConfig cfg = g.cfg;
    e = [cfg](const Seq& x, int n) {
      auto c = clean_targets(cfg, x, n, 1);
      if (c.empty()) throw SelectorPartial("no clean targets for " + to_string(x));
      return c.front();
    };
  }
  auto res = lift_projected_play(g.cfg, sigma_prime, sigma, parse_seq(i_moves), e);
  r.line("selector " + to_string(sel.kind));
  r.line("play " + print_seq(res.lifted.x));
  r.line("targets " + print_seq(res.lifted.targets));
  r.line("status " + to_string(res.lifted.status));
  r.line(std::string("clean ") + (res.clean ? "true" : "false"));
  r.line(std::string("follows auxiliary strategy ") + (res.respects_sigma_prime ? "true" : "false"));
  if (!res.detail.empty()) r.line("detail " + res.detail);
  r.doc = {{"selector", to_string(sel.kind)},
           {"play", res.lifted.x},
           {"targets", res.lifted.targets},
           {"status", to_string(res.lifted.status)},
           {"clean", res.clean},
           {"follows", res.respects_sigma_prime}};
  if (!res.clean || !res.respects_sigma_prime) r.status = kViolations;
  return r;
}

int exit_code(const Error& e) {
  switch (e.error_class()) {
    case ErrorClass::parse: return kParse;
    case ErrorClass::budget: return kBudget;
    case ErrorClass::precondition: return kPrecondition;
  }
  return kPrecondition;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite predilators, dendrograms, flowers and truncated games"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  std::string output;
  std::uint64_t seed = 0;
  app.add_flag("--json", as_json, "Print one JSON document instead of text lines");
  app.add_option("-o,--output", output, "Write the report to a file");
  app.add_option("--seed", seed, "Seed for generated data and seeded strategies");

  std::string file, tree = "full", kind = "order", prefix, pair, policy = "least", x, y, targets;
  int n = 3, times = 1, depth = 3, alphabet = 2, budget = 5, count = 100;
  bool closure = false, column = false;
  std::function<Report()> run;

  auto need_file = [&](CLI::App* sub) { sub->add_option("file", file, "Input file")->required(); };

  auto* check = app.add_subcommand("check", "Validate a predilator or dendrogram file");
  need_file(check);
  check->callback([&] { run = [&] { return do_check(file); }; });

  auto* apply = app.add_subcommand("apply", "List P(n) in increasing order");
  need_file(apply);
  apply->add_option("-n", n, "Carrier size")->check(CLI::NonNegativeNumber);
  apply->callback([&] { run = [&] { return do_apply(file, n); }; });

  auto* decc = app.add_subcommand("dec", "Decode a dendrogram into a predilator");
  need_file(decc);
  decc->add_flag("--bullet", closure, "Include non-terminal nodes");
  decc->callback([&] { run = [&] { return do_dec(file, closure); }; });

  auto* cellc = app.add_subcommand("cell", "Dendrogram of a predilator");
  need_file(cellc);
  cellc->callback([&] { run = [&] { return do_cell(file); }; });

  auto* bul = app.add_subcommand("bullet", "Closure dendrogram exposing non-terminal nodes");
  need_file(bul);
  bul->callback([&] { run = [&] { return do_bullet(file); }; });

  auto* sortc = app.add_subcommand("sort", "Sort a trekkable dendrogram into level-then-value order");
  need_file(sortc);
  sortc->add_option("--policy", policy, "least (least m first) or pass (left-to-right passes)")
      ->check(CLI::IsMember({"least", "pass"}));
  sortc->callback([&] { run = [&] { return do_sort(file, policy); }; });

  auto* intc = app.add_subcommand("int", "Integrate a predilator");
  need_file(intc);
  intc->add_option("--times", times, "Repeat count")->check(CLI::NonNegativeNumber);
  intc->callback([&] { run = [&] { return do_calculus(file, times, true); }; });

  auto* diffc = app.add_subcommand("diff", "Differentiate a semiflower");
  need_file(diffc);
  diffc->add_option("--times", times, "Repeat count")->check(CLI::NonNegativeNumber);
  diffc->callback([&] { run = [&] { return do_calculus(file, times, false); }; });

  auto* dflower = app.add_subcommand("decompose-flower", "Split a semiflower into nullary part plus integral");
  need_file(dflower);
  dflower->callback([&] { run = [&] { return do_decompose_flower(file); }; });

  auto* elem = app.add_subcommand("elem-decompose", "Chain of elementary comparisons between two elements");
  need_file(elem);
  elem->add_option("--x", x, "Lower element NODE:PARAMS")->required();
  elem->add_option("--y", y, "Upper element NODE:PARAMS")->required();
  elem->callback([&] { run = [&] { return do_elem(file, x, y); }; });

  auto* fam = app.add_subcommand("family", "Order or dilator family at a prefix");
  fam->add_option("--tree", tree, "Builtin tree or tree file");
  fam->add_option("--kind", kind, "order or dilator");
  fam->add_option("--prefix", prefix, "Comma separated prefix");
  fam->add_option("--pair", pair, "Second sequence for the paired order family");
  fam->callback([&] { run = [&] { return do_family(tree, kind, prefix, pair); }; });

  auto* sho = app.add_subcommand("shoenfield", "Truncated functorial tree at a prefix");
  sho->add_option("--tree", tree, "Builtin tree or tree file");
  sho->add_option("--prefix", prefix, "Comma separated prefix");
  sho->add_option("-n", n, "Carrier size")->check(CLI::NonNegativeNumber);
  sho->callback([&] { run = [&] { return do_shoenfield(tree, prefix, n); }; });

  auto* fcheck = app.add_subcommand("family-check", "Check the family clauses on all short prefixes");
  fcheck->add_option("--tree", tree, "Builtin tree or tree file");
  fcheck->add_option("--kind", kind, "order or dilator");
  fcheck->add_option("--depth", depth, "Longest prefix")->check(CLI::Range(0, 8));
  fcheck->add_option("--alphabet", alphabet, "Entries below this bound")->check(CLI::Range(1, 8));
  fcheck->callback([&] { run = [&] { return do_family_check(tree, kind, depth, alphabet); }; });

  auto* game = app.add_subcommand("game", "Truncated games");
  game->require_subcommand(1);
  auto* gsolve = game->add_subcommand("solve", "Solve the truncated game");
  need_file(gsolve);
  gsolve->callback([&] { run = [&] { return do_game_solve(file); }; });
  auto* gplay = game->add_subcommand("play", "Referee a play, or play seeded strategies");
  need_file(gplay);
  gplay->add_option("--x", x, "Moves, comma separated");
  gplay->add_option("--targets", targets, "Player I targets, comma separated");
  gplay->callback([&] { run = [&] { return do_game_play(file, x, targets, seed); }; });
  auto* gproj = game->add_subcommand("project", "Project a seeded auxiliary strategy and lift a play");
  need_file(gproj);
  gproj->add_option("--i-moves", x, "Player I moves in the plain game");
  gproj->callback([&] { run = [&] { return do_game_project(file, x, seed); }; });

  auto* rt = app.add_subcommand("roundtrip", "Seeded Dec/Cell and derivative-of-integral suites");
  rt->add_option("--count", count, "Number of cases")->check(CLI::Range(0, 100000));
  rt->callback([&] { run = [&] { return do_roundtrip(seed, count); }; });

  auto* probe = app.add_subcommand("probe", "Search a descending chain with increasing term index");
  probe->add_option("file", file, "Predilator file");
  probe->add_flag("--column", column, "Use the descending column of nullary terms");
  probe->add_option("--depth", depth, "Carrier size for arguments")->check(CLI::NonNegativeNumber);
  probe->add_option("--budget", budget, "Chain length minus one")->check(CLI::NonNegativeNumber);
  probe->callback([&] {
    if (!column && file.empty()) throw CLI::ValidationError("probe", "needs a file or --column");
    run = [&] { return do_probe(file, column, depth, budget); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  Report r;
  int code = kOk;
  std::string error;
  try {
    r = run();
    code = r.status;
  } catch (const Error& e) {
    code = exit_code(e);
    error = e.what();
  }

  std::ostringstream out;
  if (as_json) {
    json doc = {{"status", code}};
    if (!error.empty())
      doc["error"] = error;
    else
      doc["report"] = r.doc;
    out << doc.dump(2) << "\n";
  } else if (error.empty()) {
    for (const auto& l : r.lines) out << l << "\n";
  }
  if (!error.empty() && !as_json) std::cerr << "error: " << error << "\n";
  if (output.empty()) {
    std::cout << out.str();
  } else {
    std::ofstream f(output);
    f << out.str();
  }
  return code;
}
