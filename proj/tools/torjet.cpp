#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "torjet/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Dual degrees, jet matrices and tropical tests for lattice polytopes"};
  app.require_subcommand(1);
  bool pretty = false;
  app.add_flag("--pretty", pretty, "also print a readable table to stderr");

  torjet::CommandSpec spec;
  std::string u, d, witness, svg;
  long k = 0, r = 0;
  int variant = 0;
  std::size_t cap = 0, branch_cap = 0;

  struct Sub {
    CLI::App* app;
    torjet::Subcommand kind;
  };
  std::vector<Sub> subs;
  auto add = [&](const std::string& name, const std::string& help, torjet::Subcommand kind) {
    CLI::App* s = app.add_subcommand(name, help);
    subs.push_back({s, kind});
    return s;
  };
  auto with_input = [&](CLI::App* s) { s->add_option("input", spec.input, "input JSON file, - for stdin")->required(); };

  auto* info = add("polytope-info", "vertices, facets, invariants and adjoint data", torjet::Subcommand::PolytopeInfo);
  with_input(info);
  info->add_option("--k", k, "report k-regularity");
  info->add_option("--r", r, "adjoint twist (default 1)");

  auto* dual = add("dual-degree", "degree of the k-th dual variety", torjet::Subcommand::DualDegree);
  with_input(dual);
  dual->add_option("--k", k, "order of the dual (default 1)");
  dual->add_option("--corollary", variant, "evaluate a closed-form variant (1 or 2) instead")->check(CLI::Range(1, 2));

  auto* scroll = add("scroll", "k-th dual of a rational normal scroll", torjet::Subcommand::Scroll);
  scroll->add_option("--d", d, "segment lengths, comma separated")->required();
  scroll->add_option("--k", k, "order of the dual")->required();

  auto* jet = add("jet", "the jet matrix of a point configuration", torjet::Subcommand::Jet);
  with_input(jet);
  jet->add_option("--k", k, "jet order");
  jet->add_flag("--tsv", spec.tsv, "include the matrix as TSV");

  auto* member = add("trop-member", "tropical membership of a weight vector", torjet::Subcommand::TropMember);
  with_input(member);
  member->add_option("--k", k, "jet order");
  member->add_option("--u", u, "weights, comma separated or @file.json");
  member->add_option("--witness", witness, "check a proposed point b");
  member->add_option("--cap", cap, "largest column count for cocircuit enumeration");
  member->add_option("--branch-cap", branch_cap, "largest number of search nodes");
  member->add_flag("--deterministic", spec.deterministic, "accepted for compatibility; the search is always sequential");

  auto* empty = add("trop-empty", "whether the k-th dual misses the torus", torjet::Subcommand::TropEmpty);
  with_input(empty);
  empty->add_option("--k", k, "jet order");

  auto* curve = add("trop-curve", "plane tropical curve of a weighted configuration", torjet::Subcommand::TropCurve);
  with_input(curve);
  curve->add_option("--u", u, "weights, comma separated or @file.json");
  curve->add_option("--svg", svg, "write an SVG drawing here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  for (const auto& s : subs)
    if (s.app->parsed()) spec.subcommand = s.kind;
  CLI::App* active = app.get_subcommands().front();
  auto given = [&](const char* opt) { return active->get_option_no_throw(opt) && active->count(opt) > 0; };
  if (given("--k")) spec.k = k;
  if (given("--r")) spec.r = r;
  if (given("--u")) spec.u = u;
  if (given("--d")) spec.d = d;
  if (given("--witness")) spec.witness = witness;
  if (given("--corollary")) spec.variant = variant;
  if (given("--cap")) spec.column_cap = cap;
  if (given("--branch-cap")) spec.branch_cap = branch_cap;
  if (given("--svg")) spec.svg_path = svg;

  const torjet::RunReport report = torjet::run(spec);
  std::cout << report.to_json().dump(2) << "\n";
  if (pretty) std::cerr << torjet::pretty_table(report);
  return report.exit_code;
}
