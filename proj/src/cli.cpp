#include "fcw/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "fcw/backforth.hpp"
#include "fcw/operators.hpp"
#include "fcw/pgroups.hpp"
#include "fcw/trees.hpp"
#include "fcw/workspace.hpp"

namespace fcw {

namespace {

std::string tuple_str(const std::vector<int>& t) {
  std::string s = "(";
  for (size_t i = 0; i < t.size(); ++i) s += (i ? " " : "") + std::to_string(t[i]);
  return s + ")";
}

std::string path_label(const std::vector<int>& p) {
  if (p.empty()) return ".";
  std::string s;
  for (size_t i = 0; i < p.size(); ++i) s += (i ? "." : "") + std::to_string(p[i]);
  return s;
}

const FinStructure& need_structure(const Workspace& ws, const std::string& name) {
  const FinStructure* A = structure_named(ws, name);
  if (!A) throw error("unknown structure '" + name + "'");
  return *A;
}

const FinTree& need_tree(const Workspace& ws, const std::string& name) {
  auto it = ws.trees.find(name);
  if (it == ws.trees.end()) throw error("unknown tree '" + name + "'");
  return it->second;
}

long long kv_nat(const std::string& arg, const std::string& key) {
  if (arg.rfind(key + "=", 0) != 0)
    throw error("expected " + key + "=<value>, got '" + arg + "'");
  std::string v = arg.substr(key.size() + 1);
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
    throw error("bad value in '" + arg + "'");
  return std::stoll(v);
}

std::vector<int> kv_list(const std::string& arg, const std::string& key) {
  if (arg.rfind(key + "=", 0) != 0)
    throw error("expected " + key + "=<list>, got '" + arg + "'");
  std::string v = arg.substr(key.size() + 1);
  std::vector<int> out;
  std::istringstream is(v);
  std::string item;
  while (std::getline(is, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw error("bad value in '" + arg + "'");
    out.push_back(std::stoi(item));
  }
  return out;
}

void print_fragment(std::ostream& out, const FactSet& F) {
  for (const auto& f : F.facts) {
    out << (f.positive ? '+' : '-') << f.rel;
    for (long long a : f.args) out << ' ' << a;
    out << '\n';
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"workbench for classification of finite structures"};
  app.require_subcommand(1);
  app.fallthrough();

  std::vector<std::string> ws_files;
  app.add_option("-w,--workspace", ws_files, "workspace file(s) to load")
      ->check(CLI::ExistingFile);

  std::string name, name2, kind, file;
  long long i = 0, j = 0, maxsize = 0, k = 1;
  long long budget = 3, limit = 0;

  auto* c_rank = app.add_subcommand("rank", "Scott report for a structure");
  c_rank->add_option("structure", name)->required();

  auto* c_iso = app.add_subcommand("iso", "isomorphism test with witness");
  c_iso->add_option("a", name)->required();
  c_iso->add_option("b", name2)->required();

  auto* c_orbits = app.add_subcommand("orbits", "automorphism orbits of k-tuples");
  c_orbits->add_option("structure", name)->required();
  c_orbits->add_option("k", k)->required();

  auto* c_scott = app.add_subcommand("scott-sentence", "Scott sentence of a structure");
  c_scott->add_option("structure", name)->required();

  auto* c_enum = app.add_subcommand("enumerate", "duplicate-free listing up to a size");
  c_enum->add_option("signature", name)->required();
  c_enum->add_option("max-size", maxsize)->required();
  c_enum->add_option("--limit", limit, "stop after this many representatives");

  auto* c_embed = app.add_subcommand("embed", "image fragment under an embedding");
  c_embed->add_option("kind", kind)
      ->required()
      ->check(CLI::IsMember({"flo-fvs", "graph-field", "graph-lo", "tree-graph"}));
  c_embed->add_option("name", name)->required();
  c_embed->add_option("--budget", budget, "enumeration budget");

  auto* c_root = app.add_subcommand("edge-root", "square root of x_i+x_j in the field");
  c_root->add_option("graph", name)->required();
  c_root->add_option("i", i)->required();
  c_root->add_option("j", j)->required();
  c_root->add_option("--budget", budget, "search budget");

  auto* c_ulm = app.add_subcommand("ulm", "Ulm sequence of a partition");
  c_ulm->add_option("p", name)->required();       // p=<prime>
  c_ulm->add_option("parts", name2)->required();  // parts=<list>

  auto* c_ulmchk = app.add_subcommand("ulm-check", "Ulm classification at small scale");
  c_ulmchk->add_option("p", name)->required();        // p=<prime>
  c_ulmchk->add_option("max-log", name2)->required(); // max-log=<n>

  auto* c_kb = app.add_subcommand("kb", "Kleene-Brouwer order of a tree");
  c_kb->add_option("tree", name)->required();

  auto* c_trank = app.add_subcommand("tree-rank", "rank of a tree");
  c_trank->add_option("tree", name)->required();

  auto* c_thin = app.add_subcommand("thin", "thinness of a level rank profile");
  c_thin->add_option("profile-file", file)->required()->check(CLI::ExistingFile);

  auto* c_homog = app.add_subcommand("homog", "rank-homogeneity at parameter k");
  c_homog->add_option("tree", name)->required();
  c_homog->add_option("--k", k, "witness count")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    Workspace ws;
    {
      std::string text;
      for (const auto& f : ws_files) {
        std::ifstream in(f);
        std::stringstream buf;
        buf << in.rdbuf();
        text += buf.str();
        text += '\n';
      }
      ws = parse_workspace(text);
    }

    if (c_rank->parsed()) {
      const FinStructure& A = need_structure(ws, name);
      ScottReport r = scott_rank(A);
      out << "rank " << name << '\n';
      for (const auto& [t, rk] : r.tuple_ranks)
        out << "tuple " << tuple_str(t) << " rank " << rk << '\n';
      out << "structure rank " << r.structure_rank << '\n';
    } else if (c_iso->parsed()) {
      const FinStructure& A = need_structure(ws, name);
      const FinStructure& B = need_structure(ws, name2);
      auto w = iso(A, B);
      out << "iso " << name << ' ' << name2 << '\n';
      if (!w) {
        out << "not isomorphic\n";
        return 1;
      }
      out << "witness:";
      for (size_t a = 0; a < w->bijection.size(); ++a)
        out << ' ' << a << "->" << w->bijection[a];
      out << '\n';
    } else if (c_orbits->parsed()) {
      const FinStructure& A = need_structure(ws, name);
      out << "orbits " << name << " k=" << k << '\n';
      for (const auto& orb : orbits(A, (int)k)) {
        out << "orbit";
        for (const auto& t : orb) out << ' ' << tuple_str(t);
        out << '\n';
      }
    } else if (c_scott->parsed()) {
      const FinStructure& A = need_structure(ws, name);
      out << "scott-sentence " << name << '\n';
      out << format_formula(*scott_sentence(A)) << '\n';
    } else if (c_enum->parsed()) {
      auto it = ws.signatures.find(name);
      if (it == ws.signatures.end()) throw error("unknown signature '" + name + "'");
      if (maxsize < 0) throw error("max-size must be >= 0");
      std::vector<FinStructure> src;
      for (long long n = 0; n <= maxsize; ++n)
        for (auto& A : all_structures(it->second, (int)n)) src.push_back(std::move(A));
      size_t cap = limit > 0 ? (size_t)limit : src.size();
      auto reps = friedberg_enumerate(src, cap);
      out << "enumerate " << name << " max-size " << maxsize << '\n';
      for (size_t r = 0; r < reps.size(); ++r) {
        out << "rep " << r << " size " << reps[r].size << '\n';
        for (const auto& f : diagram(reps[r]))
          if (f.positive) {
            out << f.rel;
            for (long long a : f.args) out << ' ' << a;
            out << '\n';
          }
      }
    } else if (c_embed->parsed()) {
      EnumOperator op;
      FactSet F;
      if (kind == "flo-fvs") op = flo_to_fvs();
      if (kind == "graph-field") op = graph_to_field();
      if (kind == "graph-lo") op = graph_to_lo();
      if (kind == "tree-graph") op = tree_to_graph();
      if (kind == "tree-graph" && ws.trees.count(name))
        F = factset_of(tree_structure(need_tree(ws, name)));
      else
        F = factset_of(need_structure(ws, name));
      FactSet img = apply_operator(op, F, Budget{budget});
      out << "embed " << kind << ' ' << name << " budget " << budget << '\n';
      if (kind == "flo-fvs")
        out << "dimension " << fvs_dimension(img, Budget{budget}) << '\n';
      print_fragment(out, img);
    } else if (c_root->parsed()) {
      const FinStructure& G = need_structure(ws, name);
      bool has = field_has_edge_root(G, (int)i, (int)j, Budget{budget});
      out << "edge-root " << name << ' ' << i << ' ' << j << " budget " << budget
          << '\n';
      out << (has ? "yes" : "no") << '\n';
    } else if (c_ulm->parsed()) {
      Partition part = Partition::make(kv_nat(name, "p"), kv_list(name2, "parts"));
      UlmSequence u = ulm_from_partition(part);
      out << "u =";
      for (size_t q = 0; q < u.u.size(); ++q) out << (q ? "," : " ") << u.u[q];
      out << '\n';
    } else if (c_ulmchk->parsed()) {
      long long p = kv_nat(name, "p");
      long long maxlog = kv_nat(name2, "max-log");
      bool ok = ulm_theorem_check(p, (int)maxlog);
      out << "ulm-check p=" << p << " max-log=" << maxlog << '\n';
      out << (ok ? "pass" : "fail") << '\n';
      if (!ok) return 1;
    } else if (c_kb->parsed()) {
      const FinTree& T = need_tree(ws, name);
      auto [A, paths] = kb_order(T);
      std::vector<int> order(A.size);
      for (int x = 0; x < A.size; ++x) order[x] = x;
      const auto& table = A.tables[0];
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        return table.count({a, b}) > 0;
      });
      out << "kb " << name << '\n';
      for (size_t q = 0; q < order.size(); ++q)
        out << (q ? " < " : "") << path_label(paths[order[q]]);
      out << '\n';
    } else if (c_trank->parsed()) {
      const FinTree& T = need_tree(ws, name);
      out << "tree-rank " << name << '\n';
      out << "rank " << tree_rank(T) << '\n';
    } else if (c_thin->parsed()) {
      std::ifstream in(file);
      std::stringstream buf;
      buf << in.rdbuf();
      LevelRankProfile P = parse_profile(buf.str());
      out << "thin " << file << '\n';
      out << (is_thin_profile(P) ? "yes" : "no") << '\n';
    } else if (c_homog->parsed()) {
      const FinTree& T = need_tree(ws, name);
      out << "homog " << name << " k=" << k << '\n';
      out << (is_rank_homogeneous(T, (int)k) ? "yes" : "no") << '\n';
    }
  } catch (const error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace fcw
