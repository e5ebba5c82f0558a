#include <CLI11.hpp>

#include <fstream>
#include <future>
#include <iostream>
#include <iterator>
#include <sstream>

#include <nlohmann/json.hpp>

#include "clusterx/amalgamation.hpp"
#include "clusterx/cluster_map.hpp"
#include "clusterx/config_spaces.hpp"
#include "clusterx/explorer.hpp"
#include "clusterx/folding.hpp"
#include "clusterx/group_eval.hpp"
#include "clusterx/root_words.hpp"
#include "clusterx/seed.hpp"
#include "clusterx/verify.hpp"

using namespace cx;
using nlohmann::json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json read_json(const std::string& path) {
  if (path == "-") return json::parse(std::cin);
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return json::parse(in);
}

Seed load_seed(const std::string& path, const std::string& preset) {
  if (!preset.empty()) {
    if (preset == "g2-triple-flag") return g2_triple_flag_seed();
    throw UsageError("unknown preset '" + preset + "' (expected g2-triple-flag)");
  }
  if (path.empty()) throw UsageError("a seed is required: --seed FILE, --seed - or --preset NAME");
  return seed_from_json(read_json(path));
}

// A program is a JSON list of labels, inline or in a file.
std::vector<std::string> load_program(const std::string& text) {
  json j;
  if (!text.empty() && text.front() == '[')
    j = json::parse(text);
  else
    j = read_json(text);
  if (!j.is_array()) throw UsageError("a mutation program is a JSON list of vertex labels");
  return j.get<std::vector<std::string>>();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

Scalar parse_scalar(const std::string& s) {
  Scalar q;
  if (q.set_str(s, 10) != 0) throw UsageError("not a rational number: '" + s + "'");
  q.canonicalize();
  return q;
}

std::string type_name(const std::string& type, int rank) {
  if (rank <= 0) return type;
  if (type.size() > 1) throw UsageError("--rank goes with a one-letter --type");
  return type + std::to_string(rank);
}

void print_seed(const Seed& s, bool as_json) {
  if (as_json) {
    std::cout << seed_to_json(s).dump(2) << "\n";
    return;
  }
  std::cout << "vertices:";
  for (auto& v : s.vertices) std::cout << " " << v;
  std::cout << "\nfrozen:";
  for (auto& v : s.frozen_labels()) std::cout << " " << v;
  std::cout << "\nd:";
  for (auto x : s.d) std::cout << " " << x;
  std::cout << "\neps:\n" << matrix_str(s.eps);
}

int print_report(const std::string& title, const IdentityReport& r, bool details) {
  const bool ok = r.required_ok();
  std::cout << (ok ? "PASS " : "FAIL ") << title << "\n";
  if (details || !ok) std::cout << format_report(r);
  return ok ? 0 : 1;
}

IdentityReport only(const IdentityReport& r, const std::vector<std::string>& names, bool keep) {
  IdentityReport out;
  for (auto& c : r.checks)
    if ((std::find(names.begin(), names.end(), c.name) != names.end()) == keep) out.checks.push_back(c);
  return out;
}

const std::vector<std::string> kM0nChecks{"square flip",          "pentagon flip cycle",
                                          "snake seeds are A_n",  "hexagon flips (symbolic)",
                                          "octagon flips (rational points)", "cross-ratio via curve determinants"};

IdentityReport verify_fold(const std::string& type, const std::string& word) {
  IdentityReport r;
  const CartanFolding cf = cartan_folding_preset(type);
  const auto vf = validate(cf);
  r.checks.push_back({"Cartan folding is valid", vf.empty(), vf.empty() ? "" : vf.front()});
  const Word w = parse_word(cf.target, word);
  const SeedFolding f = word_folding(cf, w);
  const auto v = validate_folding(f);
  r.checks.push_back({"seed folding conditions", v.empty(), v.empty() ? "" : v.front()});
  for (auto& k : f.target.mutable_labels()) {
    FoldCheck c = check_intertwining(f, {k});
    c.name = "pi* intertwines the mutation at " + k;
    r.checks.push_back(c);
  }
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"clusterx: cluster X-variety seeds, mutations and identity checks"};
  app.require_subcommand(1);

  std::string seed_path, preset, program, gluing_path, type = "A", word, point, suite, export_format = "json",
                                                         export_what = "seed", triangulation, points;
  std::vector<std::string> defrost_labels;
  int rank = 0, criterion = 0, max_nodes = 1000, n_m0n = 3;
  bool as_json = false, as_dot = false, details = false, quick = false, pi1 = false, check_phi = false,
       check_flips = false;

  auto seed_opts = [&](CLI::App* c) {
    c->add_option("--seed", seed_path, "seed JSON file, - for standard input");
    c->add_option("--preset", preset, "built-in seed: g2-triple-flag");
  };
  auto word_opts = [&](CLI::App* c) {
    c->add_option("--type", type, "root system, e.g. A3, G2, or A with --rank");
    c->add_option("--rank", rank, "rank for a one-letter --type");
    c->add_option("--word", word, "signed simple roots, e.g. \"a -b -a\"")->required();
  };

  auto* validate_cmd = app.add_subcommand("validate", "check the seed axioms");
  seed_opts(validate_cmd);

  auto* mutate_cmd = app.add_subcommand("mutate", "apply a mutation program to a seed");
  seed_opts(mutate_cmd);
  mutate_cmd->add_option("--program", program, "JSON list of labels (inline or file), applied left to right")
      ->required();
  mutate_cmd->add_flag("--json", as_json);

  auto* map_cmd = app.add_subcommand("map", "coordinate map of a mutation program as JSON");
  seed_opts(map_cmd);
  map_cmd->add_option("--program", program)->required();

  auto* amalgamate_cmd = app.add_subcommand("amalgamate", "amalgamate seeds from a gluing file");
  amalgamate_cmd->add_option("--gluing", gluing_path, "gluing JSON file, - for standard input")->required();
  amalgamate_cmd->add_option("--defrost", defrost_labels, "glued vertices to unfreeze");
  amalgamate_cmd->add_flag("--json", as_json);

  auto* word_cmd = app.add_subcommand("word-seed", "the seed J(w) of a word");
  word_opts(word_cmd);
  word_cmd->add_flag("--json", as_json);
  word_cmd->add_flag("--dot", as_dot);

  auto* ev_cmd = app.add_subcommand("ev", "evaluation matrix of a type A word");
  word_opts(ev_cmd);
  ev_cmd->add_option("--point", point, "numeric coordinates, e.g. a0=1,a1=2/3,...");

  auto* verify_cmd = app.add_subcommand("verify", "run verification suites");
  verify_cmd->add_option("suite", suite, "pentagon, b2, g2, fold, m0n, flags, criterion, all")->required();
  verify_cmd->add_option("--type", type, "fold: A3-B2 or D4-G2");
  verify_cmd->add_option("--word", word, "fold: word in the folded root system");
  verify_cmd->add_option("--number", criterion, "criterion: 1..10");
  verify_cmd->add_flag("--details", details, "list every check");
  verify_cmd->add_flag("--quick", quick, "skip the slow loop reading of the braid action");

  auto* explore_cmd = app.add_subcommand("explore", "explore the mutation class up to isomorphism");
  seed_opts(explore_cmd);
  explore_cmd->add_option("--max-nodes", max_nodes);
  explore_cmd->add_flag("--json", as_json);

  auto* complex_cmd = app.add_subcommand("complex", "modular complex of a finite mutation class");
  seed_opts(complex_cmd);
  complex_cmd->add_option("--max-nodes", max_nodes);
  complex_cmd->add_flag("--pi1", pi1, "fundamental group presentation");
  complex_cmd->add_flag("--json", as_json);
  complex_cmd->add_flag("--dot", as_dot, "dual 1-skeleton as DOT");

  auto* m0n_cmd = app.add_subcommand("m0n", "cross-ratio coordinates of points on P^1");
  m0n_cmd->add_option("--n", n_m0n, "n for n+3 points");
  m0n_cmd->add_option("--triangulation", triangulation, "diagonals, 1-based: 1-3,1-4,1-5; default zig-zag");
  m0n_cmd->add_option("--points", points, "n+3 rationals or inf; default symbolic t1..");
  m0n_cmd->add_flag("--check-flips", check_flips, "every flip is the mutation");

  auto* flags_cmd = app.add_subcommand("flags", "triples of flags in P^3");
  flags_cmd->add_flag("--check-phi", check_phi, "check X_i o Phi and Psi o Phi");
  flags_cmd->add_flag("--details", details);

  auto* export_cmd = app.add_subcommand("export", "JSON or DOT export");
  seed_opts(export_cmd);
  export_cmd->add_option("--what", export_what, "seed, graph, complex, pi1")
      ->check(CLI::IsMember({"seed", "graph", "complex", "pi1"}));
  export_cmd->add_option("--format", export_format)->check(CLI::IsMember({"json", "dot"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate_cmd) {
      const auto v = validate(load_seed(seed_path, preset));
      if (v.empty()) {
        std::cout << "ok\n";
        return 0;
      }
      for (auto& x : v) std::cout << x << "\n";
      return 1;
    }
    if (*mutate_cmd) {
      print_seed(mutate_seed(load_seed(seed_path, preset), load_program(program)), as_json);
      return 0;
    }
    if (*map_cmd) {
      std::cout << map_to_json(mutation_sequence_map(load_seed(seed_path, preset), load_program(program))).dump(2)
                << "\n";
      return 0;
    }
    if (*amalgamate_cmd) {
      Seed s = amalgamate(gluing_from_json(read_json(gluing_path)));
      if (!defrost_labels.empty()) s = defrost(s, defrost_labels);
      print_seed(s, as_json);
      return 0;
    }
    if (*word_cmd) {
      const RootDatum rd = root_datum_preset(type_name(type, rank));
      const Seed s = word_seed(rd, parse_word(rd, word));
      if (as_dot)
        std::cout << seed_to_dot(s, "J");
      else
        print_seed(s, as_json);
      return 0;
    }
    if (*ev_cmd) {
      const RootDatum rd = root_datum_preset(type_name(type, rank));
      Matrix m = ev(rd, parse_word(rd, word));
      if (!point.empty()) {
        Assignment a;
        for (auto& kv : split(point, ',')) {
          const auto eq = kv.find('=');
          if (eq == std::string::npos) throw UsageError("--point entries look like a0=3/2");
          a.emplace(kv.substr(0, eq), RationalFunction(parse_scalar(kv.substr(eq + 1))));
        }
        m = substitute(m, a);
      }
      std::cout << matrix_str(m) << "\n";
      return 0;
    }
    if (*verify_cmd) {
      VerifyOptions opt;
      opt.loop_monodromies = !quick;
      if (suite == "pentagon") return print_report("pentagon relation", verify_pentagon(), details);
      if (suite == "b2") return print_report("B2 identity", verify_b2(), details);
      if (suite == "g2") return print_report("G2 identity", verify_g2(), details);
      if (suite == "fold") {
        if (word.empty() || type == "A") throw UsageError("verify fold needs --type A3-B2|D4-G2 and --word");
        return print_report("folding " + type + " on " + word, verify_fold(type, word), details);
      }
      if (suite == "m0n")
        return print_report("points on P^1", only(verify_configuration_spaces(), kM0nChecks, true), details);
      if (suite == "flags")
        return print_report("triples of flags", only(verify_config_spaces(), kM0nChecks, false), details);
      const auto& all = acceptance_criteria();
      if (suite == "criterion") {
        if (criterion < 1 || criterion > static_cast<int>(all.size())) throw UsageError("--number is 1..10");
        const auto& c = all[criterion - 1];
        return print_report("criterion " + std::to_string(c.number) + ": " + c.title, c.run(opt), details);
      }
      if (suite == "all") {
        std::vector<std::future<IdentityReport>> jobs;
        for (auto& c : all) jobs.push_back(std::async(std::launch::async, c.run, opt));
        int rc = 0;
        for (std::size_t i = 0; i < all.size(); ++i)
          rc |= print_report("criterion " + std::to_string(all[i].number) + ": " + all[i].title, jobs[i].get(),
                             details);
        return rc;
      }
      throw UsageError("unknown suite '" + suite + "'");
    }
    if (*explore_cmd || *complex_cmd || *export_cmd) {
      const Seed s = load_seed(seed_path, preset);
      if (*export_cmd && export_what == "seed") {
        std::cout << (export_format == "dot" ? seed_to_dot(s) : seed_to_json(s).dump(2) + "\n");
        return 0;
      }
      ExploreOptions eo;
      eo.max_nodes = static_cast<std::size_t>(max_nodes);
      const ExchangeGraph g = explore(s, eo);
      if (*explore_cmd) {
        std::cout << (as_json ? exchange_graph_to_json(g).dump(2) : g.verdict) << "\n";
        return g.finite ? 0 : 1;
      }
      if (*export_cmd && export_what == "graph") {
        if (export_format == "dot") throw UsageError("the exchange graph exports as JSON");
        std::cout << exchange_graph_to_json(g).dump(2) << "\n";
        return 0;
      }
      if (!g.finite) throw UsageError("mutation class not finite: " + g.verdict);
      const ModularComplex c = build_modular_complex(g);
      const bool want_pi1 = *complex_cmd ? pi1 : export_what == "pi1";
      const bool dot = *complex_cmd ? as_dot : export_format == "dot";
      if (dot) {
        std::cout << dual_graph_dot(c);
        return 0;
      }
      if (want_pi1) {
        const Presentation p = tietze_simplify(fundamental_group(c, TreeStrategy::BFS));
        if (*complex_cmd && !as_json) {
          std::cout << p.str() << "\n";
          const BraidMatch m = match_g2_braid_relator(p);
          if (m.ok) std::cout << "braid relator: " << m.detail << "\n";
        } else {
          std::cout << presentation_to_json(p).dump(2) << "\n";
        }
        return 0;
      }
      if (*complex_cmd && !as_json) {
        std::cout << g.verdict << "\nface classes by dimension:";
        for (auto n : c.face_counts) std::cout << " " << n;
        std::cout << "\nEuler characteristic: " << c.euler_characteristic() << "\n";
      } else {
        std::cout << complex_to_json(c).dump(2) << "\n";
      }
      return 0;
    }
    if (*m0n_cmd) {
      const int N = n_m0n + 3;
      Triangulation t = snake_triangulation(N);
      if (!triangulation.empty()) {
        t = Triangulation{N, {}};
        for (auto& d : split(triangulation, ',')) {
          const auto parts = split(d, '-');
          if (parts.size() != 2) throw UsageError("diagonals look like 1-3");
          int i = std::stoi(parts[0]) - 1, j = std::stoi(parts[1]) - 1;
          t.diagonals.push_back({std::min(i, j), std::max(i, j)});
        }
        std::sort(t.diagonals.begin(), t.diagonals.end());
        const auto v = validate(t);
        if (!v.empty()) throw UsageError("triangulation: " + v.front());
      }
      std::vector<P1Point> pts = symbolic_points(N);
      if (!points.empty()) {
        pts.clear();
        for (auto& x : split(points, ','))
          pts.push_back(x == "inf" ? p1_infinity() : p1_point(RationalFunction(parse_scalar(x))));
        if (static_cast<int>(pts.size()) != N) throw UsageError("--points needs n+3 values");
      }
      for (auto& [label, value] : triangulation_coords(t, pts)) std::cout << label << " = " << value.str() << "\n";
      if (!check_flips) return 0;
      int rc = 0;
      for (auto& d : t.diagonals) {
        const FlipCheck fc = flip_is_mutation(t, d, pts);
        std::cout << (fc.ok ? "PASS" : "FAIL") << " flip at " << diagonal_label(d)
                  << (fc.detail.empty() ? "" : ": " + fc.detail) << "\n";
        if (!fc.ok) rc = 1;
      }
      return rc;
    }
    if (*flags_cmd) {
      if (check_phi)
        return print_report("Phi and Psi", only(verify_config_spaces(), {"X_i o Phi", "Phi lands on the hexagon triangulation",
                                                                        "Psi o Phi = id", "printed X_1 display"},
                                                true),
                            details);
      std::array<RationalFunction, 6> params;
      const char* names[6] = {"x1", "y1", "x2", "y2", "x3", "y3"};
      for (int i = 0; i < 6; ++i) params[i] = RationalFunction::var(names[i]);
      const auto X = flag_coords(phi(params));
      for (int i = 0; i < 3; ++i) std::cout << "X" << i + 1 << " o Phi = " << X[i].str() << "\n";
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
