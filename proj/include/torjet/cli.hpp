#pragma once

// Command dispatch behind the torjet executable. Argument parsing lives in
// tools/torjet.cpp; everything here is callable from tests.

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "torjet/dual_degrees.hpp"
#include "torjet/io.hpp"
#include "torjet/jet_apparatus.hpp"
#include "torjet/polytope_invariants.hpp"
#include "torjet/svg.hpp"
#include "torjet/tropical.hpp"

namespace torjet {

enum class Subcommand { PolytopeInfo, DualDegree, Scroll, Jet, TropMember, TropEmpty, TropCurve };

inline const std::vector<std::pair<std::string, Subcommand>>& subcommand_table() {
  static const std::vector<std::pair<std::string, Subcommand>> table = {
      {"polytope-info", Subcommand::PolytopeInfo}, {"dual-degree", Subcommand::DualDegree}, {"scroll", Subcommand::Scroll},
      {"jet", Subcommand::Jet},                    {"trop-member", Subcommand::TropMember}, {"trop-empty", Subcommand::TropEmpty},
      {"trop-curve", Subcommand::TropCurve}};
  return table;
}

inline std::string subcommand_name(Subcommand s) {
  for (const auto& [name, value] : subcommand_table())
    if (value == s) return name;
  return "unknown";
}

inline std::optional<Subcommand> parse_subcommand(const std::string& name) {
  for (const auto& [n, value] : subcommand_table())
    if (n == name) return value;
  return std::nullopt;
}

struct CommandSpec {
  Subcommand subcommand = Subcommand::PolytopeInfo;
  std::string input;                  // path, "-" for stdin, empty when unused
  std::optional<std::string> input_text;  // overrides reading `input`
  std::optional<long> k;
  std::optional<long> r;
  std::optional<std::string> u;       // comma list or @file
  std::optional<std::string> d;       // comma list for scroll
  std::optional<std::string> witness; // comma list b for trop-member
  std::optional<int> variant;         // corollary variant for dual-degree --k 2
  std::optional<std::size_t> column_cap;
  std::optional<std::size_t> branch_cap;
  bool deterministic = false;
  std::optional<std::string> svg_path;
  bool tsv = false;
};

struct RunReport {
  std::string subcommand;
  std::string input_digest;
  json outputs = json::object();
  std::vector<std::string> warnings;
  int exit_code = 0;

  /// One flat JSON document: bookkeeping fields followed by the outputs.
  json to_json() const {
    json doc = json::object();
    doc["subcommand"] = subcommand;
    doc["input_digest"] = input_digest;
    for (const auto& [key, value] : outputs.items()) doc[key] = value;
    doc["warnings"] = warnings;
    doc["exit_code"] = exit_code;
    return doc;
  }
};

inline int exit_code_for(ErrorCode code) {
  return code == ErrorCode::ParseError || code == ErrorCode::IoError ? 2 : 1;
}

namespace detail {

inline std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) {
    cur.erase(0, cur.find_first_not_of(" \t"));
    cur.erase(cur.find_last_not_of(" \t") + 1);
    parts.push_back(cur);
  }
  return parts;
}

inline RationalVector parse_rational_list(const std::string& s, const std::string& flag) {
  if (!s.empty() && s[0] == '@') return json_rationals(parse_json_exact(read_text(s.substr(1))), flag);
  RationalVector v;
  for (const auto& part : split_commas(s)) {
    try {
      v.push_back(parse_rational(part));
    } catch (const Error&) {
      throw Error(ErrorCode::ParseError, flag + ": bad entry '" + part + "'");
    }
  }
  return v;
}

inline json facets_json(const LatticePolytope& P) {
  json a = json::array();
  for (const Facet& f : P.facets()) a.push_back({{"normal", to_json(f.normal)}, {"offset", to_json(f.offset)}});
  return a;
}

inline json points_json(const std::vector<IntVector>& pts) {
  json a = json::array();
  for (const auto& p : pts) a.push_back(to_json(p));
  return a;
}

inline json rational_points_json(const std::vector<RationalVector>& pts) {
  json a = json::array();
  for (const auto& p : pts) a.push_back(to_json(p));
  return a;
}

inline json report_json(const DegreeReport& rep) {
  json out = json::object();
  if (rep.outcome == Outcome::Degree) out["degree"] = to_json(rep.degree);
  else out["degree"] = nullptr;
  out["outcome"] = outcome_name(rep.outcome);
  out["branch"] = branch_name(rep.branch);
  json inter = json::object();
  for (const auto& [k, v] : rep.intermediates) inter[k] = to_json(v);
  out["intermediates"] = inter;
  return out;
}

inline json tag_json(const ExceptionalTag& t) {
  json out = {{"tag", kind_name(t.kind)}};
  if (t.kind == ExceptionalKind::KSimplex) out["k"] = t.k;
  if (t.kind == ExceptionalKind::DoubleCayleyScroll) {
    out["a"] = t.a;
    out["b"] = t.b;
    out["c"] = t.c;
    out["twist"] = t.twist;
    out["direction"] = to_json(t.direction);
  }
  return out;
}

inline json adjoint_json(const AdjointInvariants& a) {
  json out = json::object();
  out["r"] = to_json(a.r);
  out["vol_adj"] = to_json(a.vol_adj);
  out["facet_adj"] = a.facet_adj ? to_json(*a.facet_adj) : json(nullptr);
  out["edge_adj"] = to_json(a.edge_adj);
  out["tightened_dim_tag"] = tag_name(a.degenerate);
  out["tightened_vertices"] = rational_points_json(a.tightened.vertices);
  if (a.facet_sum_of_q) {
    out["facet_sum_of_tightened"] = to_json(*a.facet_sum_of_q);
    out["edge_sum_of_tightened"] = to_json(*a.edge_sum_of_q);
    out["combinatorial_match"] = a.combinatorial_match;
  }
  out["interior_hull_tag"] = tag_name(a.interior_hull_tag);
  out["interior_hull_differs"] = a.interior_hull_differs;
  return out;
}

inline json polynomial_json(const Polynomial& p, const std::vector<Exponent>& basis) {
  json coeffs = json::array();
  for (const auto& e : basis) coeffs.push_back(to_json(p.coefficient(e)));
  return {{"polynomial", p.to_string("w", 1)}, {"coefficients", coeffs}};
}

inline long require_k(const CommandSpec& spec, const InputDocument* doc, long fallback, bool required) {
  if (spec.k) return *spec.k;
  if (doc && doc->k) return *doc->k;
  if (required) throw Error(ErrorCode::BadParameters, "--k is required");
  return fallback;
}

inline std::vector<std::string> digest_parts(const CommandSpec& spec) {
  std::vector<std::string> parts{subcommand_name(spec.subcommand)};
  if (spec.k) parts.push_back("k=" + std::to_string(*spec.k));
  if (spec.r) parts.push_back("r=" + std::to_string(*spec.r));
  if (spec.u) parts.push_back("u=" + *spec.u);
  if (spec.d) parts.push_back("d=" + *spec.d);
  if (spec.witness) parts.push_back("witness=" + *spec.witness);
  if (spec.variant) parts.push_back("variant=" + std::to_string(*spec.variant));
  return parts;
}

}  // namespace detail

inline const Integer kEnumerationVolumeLimit("1000000");

inline json run_polytope_info(const CommandSpec& spec, const InputDocument& doc, RunReport& rep) {
  const LatticePolytope P = convex_hull(doc.points);
  json out = json::object();
  out["ambient_dim"] = P.ambient_dim();
  out["vertices"] = detail::points_json(P.vertices());
  out["facets"] = detail::facets_json(P);
  json fvec = json::array();
  for (int d = 0; d < P.dim(); ++d) fvec.push_back(P.faces_of_dim(d).size());
  out["f_vector"] = fvec;
  const InvariantVector iv = invariant_vector(P);
  out["invariants"] = {{"vol", to_json(iv.vol)}, {"F", to_json(iv.F)}, {"E", to_json(iv.E)}, {"V", to_json(iv.V)}};
  // Point counts and adjoints enumerate lattice points; skip them for huge inputs.
  const bool enumerable = iv.vol <= kEnumerationVolumeLimit;
  if (enumerable) {
    out["lattice_points"] = lattice_points(P).size();
    out["interior_points"] = lattice_points(P, true).size();
  } else {
    out["lattice_points"] = nullptr;
    out["interior_points"] = nullptr;
    rep.warnings.push_back("normalized volume exceeds " + kEnumerationVolumeLimit.get_str() + "; lattice counts and adjoint skipped");
  }
  const bool smooth = is_smooth(P);
  out["smooth"] = smooth;
  Integer min_edge = -1;
  for (const Face& e : P.edges())
    if (min_edge < 0 || P.edge_length(e) < min_edge) min_edge = P.edge_length(e);
  out["max_regularity"] = to_json(min_edge);
  if (spec.k) out["k_regular"] = is_k_regular(P, *spec.k);
  if (P.ambient_dim() == 3 && smooth && enumerable) {
    if (is_k_regular(P, 2)) out["exceptional"] = detail::tag_json(detect_exceptional(P));
    const long r = spec.r.value_or(1);
    const AdjointInvariants a = adjoint_invariants(P, r);
    out["adjoint"] = detail::adjoint_json(a);
    out["adjoint_nef"] = adjoint_is_nef(P, r);
    if (a.interior_hull_differs) rep.warnings.push_back("interior hull of rP differs from the tightened polytope");
    if (a.facet_sum_of_q && !a.combinatorial_match) rep.warnings.push_back("face sums of the tightened polytope disagree with the adjoint contract");
  }
  return out;
}

inline json run_dual_degree(const CommandSpec& spec, const InputDocument& doc, RunReport& rep) {
  const LatticePolytope P = convex_hull(doc.points);
  const long k = detail::require_k(spec, &doc, 1, false);
  if (P.ambient_dim() == 2) {
    json out = detail::report_json(surface_kdual_degree(P, k));
    if (out["outcome"] == "Defective") rep.warnings.push_back("the polygon is k times the standard triangle");
    return out;
  }
  if (P.ambient_dim() != 3) throw Error(ErrorCode::PreconditionViolated, "dual-degree handles polygons and threefold polytopes");
  if (k == 1) {
    const DeltaSequence s = dual_degree_sequence_threefold(P);
    return {{"degree", to_json(s.degree)}, {"branch", branch_name(Branch::DeltaSequence)}, {"delta1", to_json(s.delta1)},
            {"delta2", to_json(s.delta2)}, {"codim", s.codim}};
  }
  if (k != 2) throw Error(ErrorCode::KOutOfRange, "threefold duals are available for k = 1, 2", k);
  if (spec.variant) return detail::report_json(threefold_2dual_via_corollary(P, *spec.variant));
  const DegreeReport r = threefold_2dual_degree(P);
  if (r.branch == Branch::Formula) {
    const AdjointInvariants a = adjoint_invariants(P, 1);
    if (a.interior_hull_differs) rep.warnings.push_back("interior hull differs from the tightened polytope; the tightened polytope was used");
  }
  return detail::report_json(r);
}

inline json run_scroll(const CommandSpec& spec) {
  if (!spec.d) throw Error(ErrorCode::BadParameters, "--d is required");
  std::vector<long> d;
  for (const auto& part : detail::split_commas(*spec.d)) {
    const Integer x = parse_integer(part);
    if (!fits_int64(x)) throw Error(ErrorCode::BadParameters, "segment length out of range");
    d.push_back(to_int64(x));
  }
  if (!spec.k) throw Error(ErrorCode::BadParameters, "--k is required");
  const ScrollResult s = scroll_kdual(d, *spec.k);
  json out = json::object();
  out["dim"] = s.dim;
  out["degree"] = s.degree ? to_json(s.degree->degree) : json(nullptr);
  out["i_k"] = s.profile.i_k;
  out["m"] = s.profile.m;
  out["d"] = s.profile.d;
  out["k"] = s.profile.k;
  if (s.degree) out["intermediates"] = detail::report_json(*s.degree)["intermediates"];
  return out;
}

inline json run_jet(const CommandSpec& spec, const InputDocument& doc) {
  const long k = detail::require_k(spec, &doc, 0, true);
  if (k < 0) throw Error(ErrorCode::KOutOfRange, "k must be nonnegative", k);
  const JetMatrix J = build_Ak(doc.points, static_cast<unsigned>(k));
  const RankKernel rk = rank_and_kernel(J.matrix);
  json out = json::object();
  out["k"] = k;
  out["shape"] = {J.matrix.rows(), J.matrix.cols()};
  json idx = json::array();
  for (const auto& a : J.row_index) idx.push_back(a);
  out["row_index"] = idx;
  json rows = json::array();
  for (std::size_t i = 0; i < J.matrix.rows(); ++i) rows.push_back(to_json(J.matrix.row(i)));
  out["rows"] = rows;
  out["rank"] = rk.rank;
  json ker = json::array();
  for (const auto& v : rk.kernel) ker.push_back(to_json(v));
  out["kernel"] = ker;
  out["generically_k_spanned"] = is_generically_k_spanned(doc.points, static_cast<unsigned>(k));
  out["expected_dim"] = expected_dim(doc.points, static_cast<unsigned>(k));
  if (spec.tsv) out["matrix_tsv"] = J.matrix.to_tsv();
  return out;
}

inline RationalVector weights_for(const CommandSpec& spec, const InputDocument& doc) {
  if (spec.u) return detail::parse_rational_list(*spec.u, "--u");
  if (doc.u) return *doc.u;
  throw Error(ErrorCode::BadParameters, "a weight vector u is required (--u or \"u\" in the input)");
}

inline json run_trop_member(const CommandSpec& spec, const InputDocument& doc) {
  const long k = detail::require_k(spec, &doc, 0, true);
  const RationalVector u = weights_for(spec, doc);
  MembershipCaps caps;
  caps.columns = spec.column_cap.value_or(column_cap_from_env());
  if (spec.branch_cap) caps.nodes = *spec.branch_cap;
  const MembershipCertificate cert = membership(doc.points, static_cast<unsigned>(k), u, caps);
  json out = json::object();
  out["verdict"] = verdict_name(cert.verdict);
  out["witness_b"] = cert.witness_b ? to_json(*cert.witness_b) : json(nullptr);
  json ties = json::array();
  for (const auto& [i, j] : cert.tie_assignment) ties.push_back({i, j});
  out["tie_assignment"] = ties;
  out["cocircuits"] = cert.cocircuit_count;
  json trace = {{"nodes_explored", cert.trace.nodes_explored}, {"infeasible_branches", cert.trace.infeasible_branches}, {"reason", cert.trace.reason}};
  if (cert.trace.singleton_support) trace["singleton_support"] = *cert.trace.singleton_support;
  out["failure_trace"] = trace;
  if (spec.witness) {
    const RationalVector b = detail::parse_rational_list(*spec.witness, "--witness");
    out["witness_verified"] = verify_witness(doc.points, static_cast<unsigned>(k), u, b, caps.columns);
  }
  return out;
}

inline json run_trop_empty(const CommandSpec& spec, const InputDocument& doc) {
  const long k = detail::require_k(spec, &doc, 0, true);
  const TorusDisjointness t = torus_disjoint(doc.points, static_cast<unsigned>(k));
  json out = json::object();
  out["torus_disjoint"] = t.disjoint;
  if (t.disjoint) {
    out["index"] = *t.index;
    const JetMatrix J = build_Ak(doc.points, static_cast<unsigned>(k));
    out["witness_Q"] = detail::polynomial_json(*t.witness, J.row_index);
    json values = json::array();
    for (const auto& p : doc.points) values.push_back(to_json(t.witness->evaluate(p)));
    out["witness_values"] = values;
  } else {
    out["witness_Q"] = nullptr;
  }
  return out;
}

inline json run_trop_curve(const CommandSpec& spec, const InputDocument& doc) {
  const TropicalForm T(doc.points, weights_for(spec, doc));
  const PlaneTropicalCurve c = plane_curve(T);
  json out = json::object();
  out["vertices"] = detail::rational_points_json(c.vertices);
  json edges = json::array();
  for (const auto& e : c.edges)
    edges.push_back({{"from", e.from}, {"to", e.to}, {"multiplicity", to_json(e.multiplicity)},
                     {"dual", {to_json(e.dual.first), to_json(e.dual.second)}}});
  out["edges"] = edges;
  json rays = json::array();
  for (const auto& r : c.rays)
    rays.push_back({{"from", r.from}, {"direction", to_json(r.direction)}, {"multiplicity", to_json(r.multiplicity)},
                    {"dual", {to_json(r.dual.first), to_json(r.dual.second)}}});
  out["rays"] = rays;
  out["balanced"] = is_balanced(c);
  if (spec.svg_path) {
    write_text(*spec.svg_path, render_svg(c));
    out["svg"] = *spec.svg_path;
  }
  return out;
}

/// Runs one command. Library errors become exit codes 1 (precondition) or 2
/// (input/output) with a machine-readable "error" object.
inline RunReport run(const CommandSpec& spec) {
  RunReport rep;
  rep.subcommand = subcommand_name(spec.subcommand);
  std::string digest_input;
  for (const auto& p : detail::digest_parts(spec)) digest_input += p + "\n";
  try {
    std::optional<InputDocument> doc;
    if (spec.subcommand != Subcommand::Scroll) {
      if (spec.input.empty() && !spec.input_text) throw Error(ErrorCode::IoError, "no input file given");
      const std::string text = spec.input_text ? *spec.input_text : read_text(spec.input);
      digest_input += text;
      rep.input_digest = fnv1a_hex(digest_input);
      doc = parse_input(text);
    } else {
      rep.input_digest = fnv1a_hex(digest_input);
    }
    switch (spec.subcommand) {
      case Subcommand::PolytopeInfo: rep.outputs = run_polytope_info(spec, *doc, rep); break;
      case Subcommand::DualDegree: rep.outputs = run_dual_degree(spec, *doc, rep); break;
      case Subcommand::Scroll: rep.outputs = run_scroll(spec); break;
      case Subcommand::Jet: rep.outputs = run_jet(spec, *doc); break;
      case Subcommand::TropMember: rep.outputs = run_trop_member(spec, *doc); break;
      case Subcommand::TropEmpty: rep.outputs = run_trop_empty(spec, *doc); break;
      case Subcommand::TropCurve: rep.outputs = run_trop_curve(spec, *doc); break;
    }
    rep.exit_code = 0;
  } catch (const ParseFailure& e) {
    if (rep.input_digest.empty()) rep.input_digest = fnv1a_hex(digest_input);
    rep.outputs = {{"error", {{"code", "ParseError"}, {"message", e.what()}, {"line", e.line()}, {"column", e.column()}}}};
    rep.exit_code = 2;
  } catch (const Error& e) {
    if (rep.input_digest.empty()) rep.input_digest = fnv1a_hex(digest_input);
    json err = {{"code", std::string(code_name(e.code()))}, {"message", e.what()}};
    if (e.detail()) err["detail"] = *e.detail();
    rep.outputs = {{"error", err}};
    rep.exit_code = exit_code_for(e.code());
  }
  return rep;
}

/// Human-readable summary for --pretty, written to stderr by the tool.
inline std::string pretty_table(const RunReport& rep) {
  std::string out;
  const json doc = rep.to_json();
  std::size_t width = 0;
  for (const auto& [key, value] : doc.items()) width = std::max(width, key.size());
  for (const auto& [key, value] : doc.items()) {
    std::string v = value.is_string() ? value.get<std::string>() : value.dump();
    if (v.size() > 100) v = v.substr(0, 97) + "...";
    out += key + std::string(width - key.size() + 2, ' ') + v + "\n";
  }
  return out;
}

}  // namespace torjet
