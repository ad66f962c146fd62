#include "fcw/workspace.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <set>
#include <sstream>

namespace fcw {

namespace {

struct Token {
  enum Kind { Ident, Nat, Punct, End } kind = End;
  std::string text;
  int line = 1;
  int col = 1;
};

bool ident_start(char c) {
  return std::isalpha((unsigned char)c) || std::strchr("_<>=*+", c) != nullptr;
}
bool ident_char(char c) {
  return std::isalnum((unsigned char)c) || std::strchr("_<>=*+-", c) != nullptr;
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](char c) {
    if (c == '\n') { ++line; col = 1; } else { ++col; }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {  // comment to end of line
      while (i < text.size() && text[i] != '\n') { advance(text[i]); ++i; }
      continue;
    }
    if (std::isspace((unsigned char)c)) { advance(c); ++i; continue; }
    Token t;
    t.line = line;
    t.col = col;
    if (std::isdigit((unsigned char)c)) {
      t.kind = Token::Nat;
      while (i < text.size() && std::isdigit((unsigned char)text[i])) {
        t.text += text[i];
        advance(text[i]);
        ++i;
      }
    } else if (ident_start(c)) {
      t.kind = Token::Ident;
      while (i < text.size() && ident_char(text[i])) {
        t.text += text[i];
        advance(text[i]);
        ++i;
      }
    } else if (std::strchr("{};:/.,", c)) {
      t.kind = Token::Punct;
      t.text = c;
      advance(c);
      ++i;
    } else {
      throw error("line " + std::to_string(line) + ", col " + std::to_string(col) +
                  ": unexpected character '" + std::string(1, c) + "'");
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  Workspace parse() {
    Workspace ws;
    while (peek().kind != Token::End) {
      const Token& t = expect_ident("declaration keyword");
      if (t.text == "signature")
        parse_signature(ws);
      else if (t.text == "structure")
        parse_structure(ws);
      else if (t.text == "graph")
        parse_graph(ws);
      else if (t.text == "tree")
        parse_tree(ws);
      else if (t.text == "partition")
        parse_partition(ws);
      else
        fail(t, "unknown declaration '" + t.text + "'");
    }
    return ws;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  const Token& next() { return toks_[i_++]; }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw error("line " + std::to_string(t.line) + ", col " + std::to_string(t.col) +
                ": " + msg);
  }

  const Token& expect_ident(const char* what) {
    const Token& t = next();
    if (t.kind != Token::Ident) fail(t, std::string("expected ") + what);
    return t;
  }

  long long expect_nat(const char* what) {
    const Token& t = next();
    if (t.kind != Token::Nat) fail(t, std::string("expected ") + what);
    return std::stoll(t.text);
  }

  void expect_punct(char c) {
    const Token& t = next();
    if (t.kind != Token::Punct || t.text[0] != c)
      fail(t, std::string("expected '") + c + "'");
  }

  bool eat_punct(char c) {
    if (peek().kind == Token::Punct && peek().text[0] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  template <class M>
  void claim_name(M& map, const Token& name, const char* kind) {
    if (map.count(name.text))
      fail(name, std::string("duplicate ") + kind + " name '" + name.text + "'");
  }

  void parse_signature(Workspace& ws) {
    const Token& name = expect_ident("signature name");
    claim_name(ws.signatures, name, "signature");
    expect_punct('{');
    std::vector<Relation> rels;
    while (!eat_punct('}')) {
      const Token& rel = expect_ident("relation name");
      expect_punct('/');
      long long ar = expect_nat("arity");
      rels.push_back({rel.text, (int)ar});
    }
    try {
      ws.signatures[name.text] = Signature::make(std::move(rels));
    } catch (const error& e) {
      fail(name, e.what());
    }
  }

  void parse_structure(Workspace& ws) {
    const Token& name = expect_ident("structure name");
    claim_name(ws.structures, name, "structure");
    expect_punct(':');
    const Token& signame = expect_ident("signature name");
    auto sit = ws.signatures.find(signame.text);
    if (sit == ws.signatures.end())
      fail(signame, "unknown signature '" + signame.text + "'");
    const Signature& sig = sit->second;
    expect_punct('{');
    const Token& kw = expect_ident("'size'");
    if (kw.text != "size") fail(kw, "expected 'size'");
    long long size = expect_nat("structure size");
    std::vector<AtomicFact> facts;
    while (!eat_punct('}')) {
      expect_punct(';');
      if (eat_punct('}')) break;
      const Token& rel = expect_ident("relation name");
      int r = sig.index_of(rel.text);
      if (r < 0) fail(rel, "unknown relation '" + rel.text + "'");
      AtomicFact f;
      f.rel = rel.text;
      for (int a = 0; a < sig.relations[r].arity; ++a)
        f.args.push_back(expect_nat("element id"));
      facts.push_back(std::move(f));
    }
    try {
      ws.structures[name.text] = validate_structure(sig, (int)size, facts);
    } catch (const error& e) {
      fail(name, e.what());
    }
  }

  void parse_graph(Workspace& ws) {
    const Token& name = expect_ident("graph name");
    claim_name(ws.graphs, name, "graph");
    expect_punct('{');
    const Token& kw = expect_ident("'size'");
    if (kw.text != "size") fail(kw, "expected 'size'");
    long long size = expect_nat("graph size");
    std::vector<AtomicFact> facts;
    while (!eat_punct('}')) {
      expect_punct(';');
      if (eat_punct('}')) break;
      const Token& kw2 = expect_ident("'edge'");
      if (kw2.text != "edge") fail(kw2, "expected 'edge'");
      long long a = expect_nat("vertex");
      long long b = expect_nat("vertex");
      if (a == b) fail(kw2, "graph edges must join two distinct vertices");
      facts.push_back({"E", {a, b}, true});
      facts.push_back({"E", {b, a}, true});
    }
    try {
      ws.graphs[name.text] =
          validate_structure(Signature::make({{"E", 2}}), (int)size, facts);
    } catch (const error& e) {
      fail(name, e.what());
    }
  }

  void parse_tree(Workspace& ws) {
    const Token& name = expect_ident("tree name");
    claim_name(ws.trees, name, "tree");
    expect_punct('{');
    std::set<std::vector<int>> paths;
    bool first = true;
    while (!eat_punct('}')) {
      if (!first) {
        expect_punct(';');
        if (eat_punct('}')) break;
      }
      first = false;
      std::vector<int> path;
      if (eat_punct('.')) {
        // root
      } else {
        while (peek().kind == Token::Nat) path.push_back((int)expect_nat("coordinate"));
        if (path.empty()) fail(peek(), "expected a tree path ('.' or coordinates)");
      }
      // close under prefixes so every listed node has its ancestors
      for (size_t p = 0; p <= path.size(); ++p)
        paths.insert(std::vector<int>(path.begin(), path.begin() + p));
    }
    if (paths.empty()) fail(peek(), "tree must have at least the root");
    try {
      ws.trees[name.text] =
          FinTree::from_paths(std::vector<std::vector<int>>(paths.begin(), paths.end()));
    } catch (const error& e) {
      fail(name, e.what());
    }
  }

  void parse_partition(Workspace& ws) {
    const Token& name = expect_ident("partition name");
    claim_name(ws.partitions, name, "partition");
    expect_punct('{');
    const Token& kw = expect_ident("'p'");
    if (kw.text != "p") fail(kw, "expected 'p'");
    long long p = expect_nat("prime");
    expect_punct(';');
    const Token& kw2 = expect_ident("'parts'");
    if (kw2.text != "parts") fail(kw2, "expected 'parts'");
    std::vector<int> parts;
    while (peek().kind == Token::Nat) parts.push_back((int)expect_nat("part"));
    eat_punct(';');
    expect_punct('}');
    try {
      ws.partitions[name.text] = Partition::make(p, std::move(parts));
    } catch (const error& e) {
      fail(name, e.what());
    }
  }

  std::vector<Token> toks_;
  size_t i_ = 0;
};

}  // namespace

Workspace parse_workspace(const std::string& text) { return Parser(text).parse(); }

std::string print_workspace(const Workspace& ws) {
  std::ostringstream os;
  for (const auto& [name, sig] : ws.signatures) {
    os << "signature " << name << " {";
    for (const auto& r : sig.relations) os << ' ' << r.name << '/' << r.arity;
    os << " }\n";
  }
  for (const auto& [name, A] : ws.structures) {
    // the declaring signature is recoverable only by value; print it inline
    std::string signame;
    for (const auto& [sn, sig] : ws.signatures)
      if (sig == A.sig) { signame = sn; break; }
    os << "structure " << name << " : " << signame << " { size " << A.size;
    for (const auto& f : diagram(A))
      if (f.positive) {
        os << "; " << f.rel;
        for (long long a : f.args) os << ' ' << a;
      }
    os << " }\n";
  }
  for (const auto& [name, G] : ws.graphs) {
    os << "graph " << name << " { size " << G.size;
    int rel = G.sig.index_of("E");
    for (const auto& t : G.tables[rel])
      if (t[0] < t[1]) os << "; edge " << t[0] << ' ' << t[1];
    os << " }\n";
  }
  for (const auto& [name, T] : ws.trees) {
    os << "tree " << name << " {";
    bool first = true;
    for (const auto& n : T.nodes) {
      os << (first ? " " : "; ");
      first = false;
      if (n.empty()) {
        os << '.';
      } else {
        for (size_t i = 0; i < n.size(); ++i) os << (i ? " " : "") << n[i];
      }
    }
    os << " }\n";
  }
  for (const auto& [name, P] : ws.partitions) {
    os << "partition " << name << " { p " << P.p << "; parts";
    for (int part : P.parts) os << ' ' << part;
    os << " }\n";
  }
  return os.str();
}

const FinStructure* structure_named(const Workspace& ws, const std::string& name) {
  auto it = ws.structures.find(name);
  if (it != ws.structures.end()) return &it->second;
  auto jt = ws.graphs.find(name);
  if (jt != ws.graphs.end()) return &jt->second;
  return nullptr;
}

Ordinal parse_ordinal(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace((unsigned char)c)) s += c;
  if (s.empty()) throw error("empty ordinal");
  std::vector<std::pair<int, long long>> terms;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t plus = s.find('+', pos);
    std::string term = s.substr(pos, plus == std::string::npos ? plus : plus - pos);
    if (term.empty()) throw error("malformed ordinal '" + text + "'");
    int exp = 0;
    long long coef = 1;
    size_t p = 0;
    if (term[0] == 'w') {
      exp = 1;
      p = 1;
      if (p < term.size() && term[p] == '^') {
        ++p;
        size_t q = p;
        while (q < term.size() && std::isdigit((unsigned char)term[q])) ++q;
        if (q == p) throw error("malformed ordinal '" + text + "'");
        exp = std::stoi(term.substr(p, q - p));
        p = q;
      }
      if (p < term.size() && term[p] == '*') {
        ++p;
        size_t q = p;
        while (q < term.size() && std::isdigit((unsigned char)term[q])) ++q;
        if (q == p || q != term.size()) throw error("malformed ordinal '" + text + "'");
        coef = std::stoll(term.substr(p, q - p));
        p = q;
      }
      if (p != term.size()) throw error("malformed ordinal '" + text + "'");
    } else {
      size_t q = 0;
      while (q < term.size() && std::isdigit((unsigned char)term[q])) ++q;
      if (q != term.size()) throw error("malformed ordinal '" + text + "'");
      exp = 0;
      coef = std::stoll(term);
      if (coef == 0) {
        if (terms.empty() && plus == std::string::npos && pos == 0) return Ordinal{};
        throw error("malformed ordinal '" + text + "'");
      }
    }
    terms.push_back({exp, coef});
    if (plus == std::string::npos) break;
    pos = plus + 1;
  }
  return Ordinal::make(std::move(terms));
}

LevelRankProfile parse_profile(const std::string& text) {
  LevelRankProfile P;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    bool blank = true;
    for (char c : line)
      if (!std::isspace((unsigned char)c)) blank = false;
    if (blank) continue;
    std::vector<RankEntry> level;
    std::istringstream ls(line);
    std::string entry;
    while (std::getline(ls, entry, ';')) {
      std::istringstream es(entry);
      std::string rank, count, many;
      if (!(es >> rank >> count))
        throw error("profile entry needs 'rank count': '" + entry + "'");
      RankEntry e;
      e.rank = parse_ordinal(rank);
      e.count = std::stoll(count);
      if (es >> many) {
        if (many != "many") throw error("unexpected profile token '" + many + "'");
        e.many = true;
        if (es >> many) throw error("trailing profile token '" + many + "'");
      }
      level.push_back(std::move(e));
    }
    P.levels.push_back(std::move(level));
  }
  return P;
}

}  // namespace fcw
