// endograph: build groups, export their endomorphism graphs, run the checks.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "endograph/digraph.hpp"
#include "endograph/export.hpp"
#include "endograph/group.hpp"
#include "endograph/hom.hpp"
#include "endograph/powergraph.hpp"
#include "endograph/verify.hpp"

namespace {

using namespace endograph;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

EnumerationLimits limits_from_env() {
  verify::Options defaults;
  EnumerationLimits limits = defaults.limits;
  if (const char* env = std::getenv("ENDOGRAPH_MAX_ORDER")) {
    try {
      limits.max_order = std::stoull(env);
    } catch (const std::exception&) {
      throw ParameterError(std::string("ENDOGRAPH_MAX_ORDER is not a number: ") + env);
    }
  }
  return limits;
}

int print_group_info(const std::string& text, const EnumerationLimits& limits) {
  const auto spec = parse_group_spec(text);
  const auto g = build_group(spec);
  std::cout << "spec: " << to_string(spec) << "\n"
            << "label: " << g.label() << "\n"
            << "order: " << g.order() << "\n"
            << "generators:";
  for (Element x : g.generators()) std::cout << " " << g.element_name(x);
  std::cout << "\nabelian: " << (g.is_abelian() ? "yes" : "no") << "\n";
  const auto info = structural_predicates(g);
  std::cout << "perfect: " << (info.is_perfect ? "yes" : "no") << "\n"
            << "center order: " << info.center.size() << "\n"
            << "derived subgroup order: " << info.derived_subgroup.size() << "\n";
  if (info.is_simple) std::cout << "simple: " << (*info.is_simple ? "yes" : "no") << "\n";
  if (info.normal_subgroups) std::cout << "normal subgroups: " << info.normal_subgroups->size() << "\n";
  if (enumeration_feasible(g, limits)) {
    std::size_t endos = 0;
    for_each_endomorphism(g, [&](std::span<const Element>) { ++endos; }, limits);
    std::cout << "endomorphisms: " << endos << "\n";
  } else {
    std::cout << "endomorphisms: not enumerated (exceeds cap " << limits.max_order << ")\n";
  }
  std::cout << "automorphism orbits: " << automorphism_orbits(g, limits).size() << "\n"
            << "endomorphism classes: " << endomorphism_classes(g, limits).size() << "\n";
  return 0;
}

int emit_digraph(const std::string& text, const std::string& kind, bool compressed, bool identity_deleted,
                 const std::string& format, const std::string& out_path, const EnumerationLimits& limits) {
  const auto g = build_group(text);
  ExportGraph e;
  if (compressed) {
    e = to_export(compress(g, limits));
  } else {
    Digraph d = kind == "endo" ? endo_digraph(g, limits) : kind == "auto" ? auto_digraph(g, limits) : power_digraph(g);
    if (identity_deleted) d = delete_identity(d);
    e = to_export(d, g.label(), kind);
  }
  const std::string body = format == "json" ? to_json(e) : to_dot(e);
  if (out_path.empty() || out_path == "-") {
    std::cout << body;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ParameterError("cannot open " + out_path);
    out << body;
  }
  return 0;
}

int run_verify(bool all, const std::string& check, std::size_t max_order, const EnumerationLimits& limits) {
  verify::Workspace ws(verify::Options{max_order, limits});
  std::vector<verify::CheckResult> results;
  if (all) {
    results = verify::run_all(ws);
  } else {
    results.push_back(verify::run_check(check, ws));
  }
  bool failed = false;
  for (const auto& r : results) {
    std::cout << verify::format_result(r) << std::endl;
    failed = failed || r.status == verify::Status::kFail;
  }
  return failed ? kExitFail : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Endomorphism graphs of finite groups"};
  app.require_subcommand(1);

  std::string spec;
  bool info = false;
  auto* group_cmd = app.add_subcommand("group", "Describe a group");
  group_cmd->add_option("--spec", spec, "Group spec, e.g. cyclic:12, dihedral:6, product:(cyclic:2)x(cyclic:3)")->required();
  group_cmd->add_flag("--info", info, "Print structural information (default)");

  std::string kind = "endo", format = "dot", out_path;
  bool compressed = false, identity_deleted = false;
  auto* digraph_cmd = app.add_subcommand("digraph", "Emit a digraph as DOT or JSON");
  digraph_cmd->add_option("--spec", spec, "Group spec")->required();
  digraph_cmd->add_option("--kind", kind, "endo, auto or power")->check(CLI::IsMember({"endo", "auto", "power"}));
  digraph_cmd->add_flag("--compressed", compressed, "Condense automorphism orbits (endo only)");
  digraph_cmd->add_flag("--identity-deleted", identity_deleted, "Drop the identity vertex");
  digraph_cmd->add_option("--format", format, "dot or json")->check(CLI::IsMember({"dot", "json"}));
  digraph_cmd->add_option("--out", out_path, "Output file (stdout if omitted)");

  bool all = false;
  std::string check;
  std::size_t max_order = verify::Options{}.max_order;
  auto* verify_cmd = app.add_subcommand("verify", "Run verification checks");
  auto* all_opt = verify_cmd->add_flag("--all", all, "Run T1..T18");
  auto* check_opt = verify_cmd->add_option("--check", check, "Run one check, e.g. T5");
  all_opt->excludes(check_opt);
  verify_cmd->add_option("--max-order", max_order, "Largest catalog group order")->check(CLI::Range(1, 64));

  std::size_t catalog_max = 64;
  auto* catalog_cmd = app.add_subcommand("catalog", "List the group catalog");
  catalog_cmd->add_option("--max-order", catalog_max, "Largest group order")->check(CLI::Range(1, 64));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    const auto limits = limits_from_env();
    if (*group_cmd) return print_group_info(spec, limits);
    if (*digraph_cmd) {
      if (compressed && kind != "endo") {
        std::cerr << "--compressed requires --kind endo\n";
        return kExitUsage;
      }
      return emit_digraph(spec, kind, compressed, identity_deleted, format, out_path, limits);
    }
    if (*verify_cmd) {
      if (!all && check.empty()) {
        std::cerr << "verify needs --all or --check Tn\n";
        return kExitUsage;
      }
      return run_verify(all, check, max_order, limits);
    }
    if (*catalog_cmd) {
      for (const auto& e : verify::catalog(catalog_max))
        std::cout << e.order << "\t" << e.name << "\t" << (e.abelian ? "abelian" : "nonabelian")
                  << (e.p_group ? "\tp-group" : "") << "\n";
      return 0;
    }
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SizeError& e) {
    std::cerr << "size cap: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
