// renormalist: command-line front end for the renormalisation engine.
// Commands: trees | negatives | renorm | counterterms | graphcheck | selftest

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "renormalist/character.hpp"
#include "renormalist/config.hpp"
#include "renormalist/counterterms.hpp"
#include "renormalist/generate.hpp"
#include "renormalist/graph_power.hpp"
#include "renormalist/renorm_eq.hpp"
#include "renormalist/second_homogeneity.hpp"

using namespace renormalist;
using nlohmann::json;

namespace {

enum ExitCode {
  kOk = 0,
  kUsage = 2,
  kParseError = 3,
  kValidationError = 4,
  kBudgetError = 5,
  kQuadratureError = 6,
  kIoError = 7,
};

struct Options {
  std::string format = "text";
  std::string gamma, delta0 = "3/2", kappa;
  std::string eps_grid = "3:8";
  unsigned seed = 1;
};

json tree_json(const Tree& t, const EdgeSystem& sys, int node = 0) {
  json kids = json::array();
  auto children = t.children();
  for (int c : children[node]) {
    json sub = tree_json(t, sys, c);
    sub["edge"] = sys.edge(t.edge_type(c)).id;
    kids.push_back(sub);
  }
  return json{{"children", kids}};
}

std::string tree_dot(const std::vector<Tree>& trees, const EdgeSystem& sys,
                     const std::vector<std::vector<int>>* depths = nullptr) {
  std::ostringstream os;
  os << "digraph trees {\n  node [shape=point];\n";
  int offset = 0;
  for (size_t i = 0; i < trees.size(); ++i) {
    const Tree& t = trees[i];
    for (int v = 0; v < t.node_count(); ++v) {
      os << "  n" << offset + v;
      if (depths && v > 0) {
        int d = (*depths)[i][static_cast<size_t>(v)];
        if (d > 0) os << " [color=gray" << std::max(10, 90 - 30 * d) << "]";
      }
      os << ";\n";
    }
    for (int v = 1; v < t.node_count(); ++v) {
      os << "  n" << offset + t.parent(v) << " -> n" << offset + v << " [label=\""
         << sys.edge(t.edge_type(v)).id << "\"";
      if (depths && (*depths)[i][static_cast<size_t>(v)] > 0)
        os << ", penwidth=" << 1 + (*depths)[i][static_cast<size_t>(v)];
      os << "];\n";
    }
    offset += t.node_count();
  }
  os << "}\n";
  return os.str();
}

Fixture load_with_overrides(const std::string& path, const Options& opt) {
  Fixture fx = load_fixture(path);
  if (!opt.gamma.empty()) {
    Homogeneity g = Homogeneity::parse(opt.gamma);
    for (auto& s : fx.sectors) s.gamma = g;
  }
  if (!opt.kappa.empty()) fx.kappa_numeric = Rational::parse(opt.kappa);
  return fx;
}

int cmd_trees(const std::string& path, const Options& opt) {
  Fixture fx = load_with_overrides(path, opt);
  const EdgeSystem& sys = *fx.sys;
  SecondHomogeneity sh(sys);
  Homogeneity delta0 = Homogeneity::parse(opt.delta0);

  json out;
  out["name"] = fx.name;
  std::vector<Tree> all;
  for (const SectorSpec& sector : fx.sectors) {
    std::vector<Tree> trees = fx.run_sector(sector);
    json jsec;
    jsec["count"] = trees.size();
    jsec["gamma"] = sector.gamma.str();
    jsec["trees"] = json::array();
    for (const Tree& t : trees) {
      json jt;
      jt["term"] = tree_term(t, sys);
      jt["degree"] = tree_homogeneity(t, sys).str();
      jt["second_degree"] = sh.norm(t, delta0).str();
      jt["symmetry"] = symmetry_factor(t);
      jt["plane_count"] = plane_count(t);
      jt["tree"] = tree_json(t, sys);
      jsec["trees"].push_back(jt);
      all.push_back(t);
    }
    out["sectors"][sector.name] = jsec;
  }
  if (opt.format == "json") {
    std::cout << out.dump(2) << "\n";
  } else if (opt.format == "dot") {
    std::cout << tree_dot(all, sys);
  } else {
    for (auto& [name, jsec] : out["sectors"].items()) {
      std::cout << "sector " << name << " (gamma " << jsec["gamma"].get<std::string>()
                << "): " << jsec["count"] << " trees\n";
      for (auto& jt : jsec["trees"])
        std::cout << "  " << jt["term"].get<std::string>() << "  |.|="
                  << jt["degree"].get<std::string>() << "  ||.||="
                  << jt["second_degree"].get<std::string>() << "  S=" << jt["symmetry"]
                  << "  plane=" << jt["plane_count"] << "\n";
    }
  }
  return kOk;
}

// counterterm-relevant negative subtrees: even noise count, negative degree
std::vector<Tree> negative_list(const Fixture& fx) {
  const EdgeSystem& sys = *fx.sys;
  std::set<Tree> universe;
  for (const SectorSpec& sector : fx.sectors)
    for (Tree& t : fx.run_sector(sector)) universe.insert(t);
  std::set<Tree> negatives;
  for (const Tree& host : universe)
    for (const EmbeddedSubtree& s : negative_subtrees(host, sys)) {
      int noises = count_edges_of_class(s.tree, sys, EdgeClass::Minus);
      if (noises % 2 != 0) continue;
      if (!(tree_homogeneity(s.tree, sys) < Homogeneity::zero())) continue;
      negatives.insert(s.tree);
    }
  return {negatives.begin(), negatives.end()};
}

int cmd_negatives(const std::string& path, const Options& opt) {
  Fixture fx = load_with_overrides(path, opt);
  const EdgeSystem& sys = *fx.sys;
  std::vector<Tree> negatives = negative_list(fx);
  if (opt.format == "json") {
    json out;
    out["name"] = fx.name;
    out["count"] = negatives.size();
    out["negatives"] = json::array();
    for (const Tree& t : negatives) {
      json jt;
      jt["term"] = tree_term(t, sys);
      jt["degree"] = tree_homogeneity(t, sys).str();
      jt["noises"] = count_edges_of_class(t, sys, EdgeClass::Minus);
      jt["value"] = fx.character->value_uncolored(t).str();
      out["negatives"].push_back(jt);
    }
    std::cout << out.dump(2) << "\n";
  } else if (opt.format == "dot") {
    std::cout << tree_dot(negatives, sys);
  } else {
    std::cout << "counterterm-relevant negative trees: " << negatives.size() << "\n";
    for (const Tree& t : negatives)
      std::cout << "  " << tree_term(t, sys) << "  |.|=" << tree_homogeneity(t, sys).str()
                << "  g=" << fx.character->value_uncolored(t).str() << "\n";
  }
  return kOk;
}

int cmd_renorm(const std::string& path, const Options& opt) {
  Fixture fx = load_with_overrides(path, opt);
  if (!fx.has_equation) throw ConfigError("config has no [equation] block");
  std::vector<Tree> taus;
  for (auto& [term, value] : fx.character_terms) taus.push_back(parse_tree_term(*fx.sys, term));
  auto eq = renormalized_equation(fx.equation, *fx.character, taus);
  if (opt.format == "json") {
    json out;
    out["name"] = fx.name;
    for (auto& [comp, expr] : eq) {
      json terms = json::array();
      for (const SymTerm& t : expr.terms()) {
        json jt;
        jt["coeff"] = t.coeff.str();
        for (auto& [c, e] : t.constants) jt["constants"][c] = e;
        for (auto& [p, e] : t.powers) jt["powers"][p] = e;
        for (auto& f : t.funcs)
          jt["functions"].push_back({{"name", f.name}, {"order", f.order}, {"arg", f.arg}});
        terms.push_back(jt);
      }
      out["components"][comp] = {{"expression", expr.str(fx.equation.display)},
                                 {"terms", terms}};
    }
    std::cout << out.dump(2) << "\n";
  } else {
    for (auto& [comp, expr] : eq)
      std::cout << "L" << comp << " = " << expr.str(fx.equation.display) << "\n";
  }
  return kOk;
}

std::vector<double> parse_eps_grid(const std::string& spec) {
  // "a:b" for 2^-a .. 2^-b, or comma-separated values
  auto colon = spec.find(':');
  std::vector<double> eps;
  if (colon != std::string::npos) {
    int lo = std::stoi(spec.substr(0, colon)), hi = std::stoi(spec.substr(colon + 1));
    for (int k = lo; k <= hi; ++k) eps.push_back(std::ldexp(1.0, -k));
  } else {
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) eps.push_back(std::stod(item));
  }
  if (eps.empty()) throw ConfigError("empty epsilon grid");
  return eps;
}

int cmd_counterterms(const std::string& family, const Options& opt) {
  std::vector<double> eps = parse_eps_grid(opt.eps_grid);
  QuadratureConfig cfg;
  struct Entry {
    std::string name;
    double (*raw)(double, const QuadratureConfig&);
  };
  std::vector<Entry> entries;
  if (family == "pam" || family == "gpam") {
    entries = {{"pam_c", &pam_c_raw}, {"pam_cp", &pam_cp_raw}};
  } else if (family == "phi4" || family == "phi43") {
    entries = {{"phi4_c", &phi4_c_raw}, {"phi4_cp", &phi4_cp_raw}};
  } else if (family == "phi34") {
    entries = {{"phi34_c21", &phi34_c21_raw},
               {"phi34_c22", &phi34_c22_raw},
               {"phi34_c211", &phi34_c211_raw},
               {"phi34_c22j", &phi34_c22j_raw},
               {"phi34_c11", &phi34_c11_raw}};
  } else {
    throw ConfigError("unknown counterterm family: " + family +
                      " (expected pam | phi4 | phi34)");
  }

  std::cout << "constant,eps,value,error\n";
  for (const Entry& entry : entries) {
    QuadratureConfig coarse = cfg;
    coarse.panels = std::max(3, (2 * cfg.panels) / 3);
    coarse.gauss = std::max(2, cfg.gauss - 1);
    std::vector<double> fine = sweep_epsilons(eps, [&](double e) { return entry.raw(e, cfg); });
    std::vector<double> rough =
        sweep_epsilons(eps, [&](double e) { return entry.raw(e, coarse); });
    std::vector<std::pair<double, double>> samples;
    for (size_t i = 0; i < eps.size(); ++i) {
      samples.push_back({eps[i], fine[i]});
      std::cout << entry.name << "," << eps[i] << "," << fine[i] << ","
                << std::abs(fine[i] - rough[i]) << "\n";
    }
    FitResult fit = fit_divergence(samples);
    Rational oracle = divergence_oracle(entry.name);
    std::cout << "# fit " << entry.name << ": "
              << (fit.model == FitResult::Model::Log ? "log" : "power") << " a=" << fit.a
              << " b=" << fit.b;
    if (fit.model == FitResult::Model::Power) std::cout << " p=" << fit.p;
    std::cout << " residual=" << fit.residual << " oracle_degree=" << oracle.str() << "\n";
  }
  return kOk;
}

LabelledGraph graph_from_json(const json& j) {
  LabelledGraph g;
  g.vertex_count = j.at("vertices").get<int>();
  g.s_norm = Rational::parse(j.at("s_norm").get<std::string>());
  if (j.contains("vstar"))
    for (const auto& v : j.at("vstar")) g.vstar.push_back(v.get<int>());
  for (const auto& je : j.at("edges")) {
    LabelledGraph::Edge e;
    e.from = je.at("from").get<int>();
    e.to = je.at("to").get<int>();
    e.a = Rational::parse(je.at("a").get<std::string>());
    e.r = je.value("r", 0);
    g.edges.push_back(e);
  }
  return g;
}

int cmd_graphcheck(const std::string& path, const Options& opt) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open graph: " + path);
  json j = json::parse(in);
  LabelledGraph g = graph_from_json(j);
  GraphCheckResult res = check_assumptions(g);
  Rational alpha = bound_exponent(g);
  if (opt.format == "json") {
    json out;
    out["pass"] = res.pass;
    out["alpha_tilde"] = alpha.str();
    if (res.violation) {
      out["violation"] = {{"condition", res.violation->condition},
                          {"subset", res.violation->subset},
                          {"lhs", res.violation->lhs.str()},
                          {"rhs", res.violation->rhs.str()}};
    }
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << (res.pass ? "PASS" : "FAIL") << " alpha_tilde=" << alpha.str() << "\n";
    if (res.violation) {
      std::cout << "violated condition " << res.violation->condition << " on subset {";
      for (size_t i = 0; i < res.violation->subset.size(); ++i)
        std::cout << (i ? "," : "") << res.violation->subset[i];
      std::cout << "}\n";
    }
  }
  return res.pass ? kOk : kValidationError;
}

int cmd_selftest(const std::string& fixtures_dir) {
  int failures = 0;
  auto expect = [&](bool ok, const std::string& what) {
    std::cout << (ok ? "[ok]   " : "[FAIL] ") << what << "\n";
    if (!ok) ++failures;
  };
  for (const char* name : {"gpam", "phi43", "phi34"}) {
    Fixture fx = load_fixture(fixtures_dir + "/" + std::string(name) + ".toml");
    expect(is_subcritical(*fx.rule).subcritical, std::string(name) + ": rule subcritical");
    expect(is_equation_like(*fx.rule), std::string(name) + ": rule equation-like");
    for (const SectorSpec& s : fx.sectors) {
      auto trees = fx.run_sector(s);
      expect(!trees.empty(), std::string(name) + ": sector " + s.name + " nonempty");
    }
  }
  return failures == 0 ? kOk : kValidationError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"renormalisation engine for subcritical singular SPDEs"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--format", opt.format, "output format: text|json|dot|csv")
      ->check(CLI::IsMember({"text", "json", "dot", "csv"}));
  app.add_option("--gamma", opt.gamma, "override the sector homogeneity cutoffs");
  app.add_option("--delta0", opt.delta0, "jet precision cutoff for ||.||");
  app.add_option("--kappa", opt.kappa, "numeric kappa substitution");
  app.add_option("--eps-grid", opt.eps_grid, "a:b for 2^-a..2^-b, or comma list");
  app.add_option("--seed", opt.seed, "seed for randomised self checks");

  std::string config_path, graph_path, family, fixtures = "fixtures";
  auto* trees = app.add_subcommand("trees", "enumerate sector trees");
  trees->add_option("config", config_path)->required();
  auto* negatives = app.add_subcommand("negatives", "counterterm-relevant negative trees");
  negatives->add_option("config", config_path)->required();
  auto* renorm = app.add_subcommand("renorm", "emit the renormalised equation");
  renorm->add_option("config", config_path)->required();
  auto* cts = app.add_subcommand("counterterms", "evaluate counterterm constants");
  cts->add_option("family", family, "pam | phi4 | phi34")->required();
  auto* gc = app.add_subcommand("graphcheck", "power-counting check of a labelled graph");
  gc->add_option("graph", graph_path)->required();
  auto* st = app.add_subcommand("selftest", "quick internal consistency run");
  st->add_option("fixtures", fixtures);

  try {
    app.parse(argc, argv);
    if (trees->parsed()) return cmd_trees(config_path, opt);
    if (negatives->parsed()) return cmd_negatives(config_path, opt);
    if (renorm->parsed()) return cmd_renorm(config_path, opt);
    if (cts->parsed()) return cmd_counterterms(family, opt);
    if (gc->parsed()) return cmd_graphcheck(graph_path, opt);
    if (st->parsed()) return cmd_selftest(fixtures);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ConfigError& e) {
    std::cerr << json{{"error", "config"}, {"message", e.what()}}.dump() << "\n";
    return kParseError;
  } catch (const BudgetError& e) {
    std::cerr << json{{"error", "budget"}, {"message", e.what()}}.dump() << "\n";
    return kBudgetError;
  } catch (const QuadratureError& e) {
    std::cerr << json{{"error", "quadrature"}, {"message", e.what()}}.dump() << "\n";
    return kQuadratureError;
  } catch (const json::exception& e) {
    std::cerr << json{{"error", "io"}, {"message", e.what()}}.dump() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "validation"}, {"message", e.what()}}.dump() << "\n";
    return kValidationError;
  }
  return kUsage;
}
