#include "dilator/text.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <optional>
#include <set>
#include <sstream>

#include "dilator/error.hpp"

namespace dilator {

namespace {

struct Token {
  std::string text;
  int column = 1;  // 1-based
};

struct Line {
  int number = 0;
  std::vector<Token> tokens;
};

// Splits into non-empty, non-comment lines of whitespace separated tokens.
std::vector<Line> lines_of(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      if (std::isspace(static_cast<unsigned char>(raw[i]))) {
        ++i;
        continue;
      }
      if (raw[i] == '#') break;
      std::size_t j = i;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
      line.tokens.push_back({raw.substr(i, j - i), static_cast<int>(i) + 1});
      i = j;
    }
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

int parse_nat(const std::string& s, int line, int column) {
  if (s.empty() || s.size() > 9 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw ParseError(line, column, "expected a natural number, got '" + s + "'");
  return std::stoi(s);
}

std::vector<int> parse_nat_list(const std::string& s, int line, int column) {
  std::vector<int> out;
  if (s.empty() || s == "-") return out;
  std::size_t start = 0;
  while (true) {
    auto comma = s.find(',', start);
    std::string part = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    out.push_back(parse_nat(part, line, column + static_cast<int>(start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string value_of(const Token& t, const std::string& key, int line) {
  std::string prefix = key + "=";
  if (t.text.rfind(prefix, 0) != 0) throw ParseError(line, t.column, "expected " + prefix);
  return t.text.substr(prefix.size());
}

std::string join(const std::vector<int>& v, const std::string& empty) {
  if (v.empty()) return empty;
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

}  // namespace

Predilator parse_predilator(const std::string& text) {
  auto lines = lines_of(text);
  if (lines.empty()) throw ParseError(1, 1, "missing 'predilator' header");
  const auto& head = lines.front();
  if (head.tokens.size() != 1 || head.tokens[0].text != "predilator")
    throw ParseError(head.number, head.tokens[0].column, "expected 'predilator' header");
  Predilator p;
  std::set<std::pair<int, int>> seen;
  bool in_dist = false;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& l = lines[k];
    const auto& kw = l.tokens[0];
    if (kw.text == "term") {
      if (in_dist) throw ParseError(l.number, kw.column, "term after dist lines");
      if (l.tokens.size() != 4) throw ParseError(l.number, kw.column, "expected: term NAME arity=K sigma=...");
      const auto& name = l.tokens[1].text;
      if (p.find(name) >= 0) throw ParseError(l.number, l.tokens[1].column, "duplicate term '" + name + "'");
      int arity = parse_nat(value_of(l.tokens[2], "arity", l.number), l.number, l.tokens[2].column + 6);
      auto sigma = parse_nat_list(value_of(l.tokens[3], "sigma", l.number), l.number, l.tokens[3].column + 6);
      if (static_cast<int>(sigma.size()) != arity)
        throw ParseError(l.number, l.tokens[3].column, "sigma length differs from arity");
      p.add_term({name, arity, sigma});
    } else if (kw.text == "dist") {
      in_dist = true;
      if (l.tokens.size() != 4) throw ParseError(l.number, kw.column, "expected: dist NAME NAME M");
      int a = p.find(l.tokens[1].text), b = p.find(l.tokens[2].text);
      if (a < 0) throw ParseError(l.number, l.tokens[1].column, "unknown term '" + l.tokens[1].text + "'");
      if (b < 0) throw ParseError(l.number, l.tokens[2].column, "unknown term '" + l.tokens[2].text + "'");
      int m = parse_nat(l.tokens[3].text, l.number, l.tokens[3].column);
      auto key = std::minmax(a, b);
      if (!seen.insert(key).second) throw ParseError(l.number, kw.column, "repeated dist pair");
      if (a == b)
        p.set_dist_entry(a, a, m);
      else
        p.set_dist(a, b, m);
    } else {
      throw ParseError(l.number, kw.column, "unknown keyword '" + kw.text + "'");
    }
  }
  for (int a = 0; a < p.size(); ++a)
    for (int b = a + 1; b < p.size(); ++b)
      if (!seen.count({a, b}))
        throw ParseError(lines.back().number + 1, 1,
                         "missing dist line for " + p.term(a).name + " " + p.term(b).name);
  return p;
}

std::string print_predilator(const Predilator& p) {
  std::string out = "predilator\n";
  for (const auto& t : p.terms())
    out += "term " + t.name + " arity=" + std::to_string(t.arity) + " sigma=" + join(t.sigma, "") + "\n";
  for (int a = 0; a < p.size(); ++a) {
    if (p.dist(a, a) != p.arity(a))
      out += "dist " + p.term(a).name + " " + p.term(a).name + " " + std::to_string(p.dist(a, a)) + "\n";
    for (int b = a + 1; b < p.size(); ++b)
      out += "dist " + p.term(a).name + " " + p.term(b).name + " " + std::to_string(p.dist(a, b)) + "\n";
  }
  return out;
}

namespace {

struct SexprReader {
  const std::string& text;
  std::size_t pos = 0;
  int line = 1, column = 1;
  Dendrogram d;

  void advance() {
    if (text[pos] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
    ++pos;
  }
  void skip() {
    while (pos < text.size()) {
      char c = text[pos];
      if (c == '#') {
        while (pos < text.size() && text[pos] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }
  bool at_end() {
    skip();
    return pos >= text.size();
  }
  void node(int parent) {
    skip();
    if (pos >= text.size()) throw ParseError(line, column, "unexpected end of input");
    char c = text[pos];
    if (c == '*') {
      advance();
      d.add_node(parent, std::nullopt);
      return;
    }
    if (c != '(') throw ParseError(line, column, std::string("expected '(' or '*', got '") + c + "'");
    advance();
    skip();
    int l0 = line, c0 = column;
    if (pos >= text.size() || text[pos] != 'e') throw ParseError(line, column, "expected e-code 'eN'");
    advance();
    std::string digits;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      digits += text[pos];
      advance();
    }
    int e = parse_nat(digits, l0, c0 + 1);
    int x = d.add_node(parent, e);
    int children = 0;
    while (true) {
      skip();
      if (pos >= text.size()) throw ParseError(line, column, "unclosed '('");
      if (text[pos] == ')') {
        advance();
        break;
      }
      node(x);
      ++children;
    }
    if (children == 0) throw ParseError(l0, c0, "non-terminal without children");
  }
};

}  // namespace

Dendrogram parse_dendrogram(const std::string& text) {
  SexprReader r{text, 0, 1, 1, {}};
  r.skip();
  if (text.compare(r.pos, 10, "dendrogram") == 0) {
    for (int i = 0; i < 10; ++i) r.advance();
  }
  while (!r.at_end()) r.node(-1);
  auto rep = validate_dendrogram(r.d);
  if (!rep.ok()) throw ParseError(r.line, r.column, rep.problems.front());
  return r.d;
}

std::string print_dendrogram(const Dendrogram& d) {
  std::string out = "dendrogram\n";
  for (int root : d.roots()) {
    Dendrogram single;
    std::function<void(int, int)> copy = [&](int x, int parent) {
      int y = single.add_node(parent, d.ecode(x));
      for (int c : d.children(x)) copy(c, y);
    };
    copy(root, -1);
    out += canonical_form(single) + "\n";
  }
  return out;
}

Dendrogram parse_trekkable(const std::string& text) {
  auto lines = lines_of(text);
  std::size_t k = 0;
  if (!lines.empty() && lines[0].tokens.size() == 1 && lines[0].tokens[0].text == "trekkable") k = 1;
  std::vector<int> parent;
  std::vector<std::optional<int>> ecode;
  std::vector<int> rank;
  for (; k < lines.size(); ++k) {
    const auto& l = lines[k];
    if (l.tokens[0].text != "node" || l.tokens.size() != 4)
      throw ParseError(l.number, l.tokens[0].column, "expected: node ID parent=ID|- e=N|-");
    int id = parse_nat(l.tokens[1].text, l.number, l.tokens[1].column);
    if (id != static_cast<int>(parent.size()))
      throw ParseError(l.number, l.tokens[1].column, "node ids must be listed as 0, 1, 2, ...");
    auto pv = value_of(l.tokens[2], "parent", l.number);
    auto ev = value_of(l.tokens[3], "e", l.number);
    int p = pv == "-" ? -1 : parse_nat(pv, l.number, l.tokens[2].column + 7);
    if (p >= id) throw ParseError(l.number, l.tokens[2].column, "parent must have a smaller id");
    parent.push_back(p);
    ecode.push_back(ev == "-" ? std::nullopt : std::optional<int>(parse_nat(ev, l.number, l.tokens[3].column + 2)));
    rank.push_back(id);
  }
  auto d = Dendrogram::from_arrays(parent, ecode, rank);
  auto rep = validate_dendrogram(d);
  if (!rep.ok()) throw ParseError(lines.empty() ? 1 : lines.back().number, 1, rep.problems.front());
  return d;
}

std::string print_trekkable(const Dendrogram& d) {
  std::string out = "trekkable\n";
  for (int x = 0; x < d.size(); ++x) {
    auto e = d.ecode(x);
    out += "node " + std::to_string(x) + " parent=" + (d.parent(x) < 0 ? "-" : std::to_string(d.parent(x))) +
           " e=" + (e ? std::to_string(*e) : "-") + "\n";
  }
  return out;
}

Seq parse_seq(const std::string& text) { return parse_nat_list(text, 1, 1); }

std::string print_seq(const Seq& s) { return join(s, "-"); }

DecidableTree parse_tree_spec(const std::string& text) {
  auto lines = lines_of(text);
  if (lines.empty() || lines[0].tokens[0].text != "tree" || lines[0].tokens.size() != 2)
    throw ParseError(lines.empty() ? 1 : lines[0].number, 1, "expected: tree SPEC");
  const auto& spec = lines[0].tokens[1];
  if (spec.text != "table") {
    if (lines.size() > 1) throw ParseError(lines[1].number, 1, "member lines need 'tree table'");
    try {
      return builtin_tree(spec.text);
    } catch (const ParseError& e) {
      throw ParseError(lines[0].number, spec.column, "unknown tree spec '" + spec.text + "'");
    }
  }
  std::vector<std::pair<Seq, Seq>> members;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& l = lines[k];
    if (l.tokens[0].text != "member" || l.tokens.size() != 3)
      throw ParseError(l.number, l.tokens[0].column, "expected: member U V");
    auto u = parse_nat_list(l.tokens[1].text, l.number, l.tokens[1].column);
    auto v = parse_nat_list(l.tokens[2].text, l.number, l.tokens[2].column);
    if (u.size() != v.size()) throw ParseError(l.number, l.tokens[2].column, "member sequences differ in length");
    members.push_back({u, v});
  }
  return table_tree(std::move(members));
}

std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> out;
  for (const auto& l : lines_of(text)) {
    if (l.tokens.size() != 1) throw ParseError(l.number, l.tokens[1].column, "expected a single key=value");
    const auto& t = l.tokens[0];
    auto eq = t.text.find('=');
    if (eq == std::string::npos || eq == 0) throw ParseError(l.number, t.column, "expected key=value");
    auto key = t.text.substr(0, eq);
    if (out.count(key)) throw ParseError(l.number, t.column, "repeated key '" + key + "'");
    out[key] = t.text.substr(eq + 1);
  }
  return out;
}

}  // namespace dilator
