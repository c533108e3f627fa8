#pragma once

#include <chrono>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "infodim/infodim.hpp"
#include "infodim/json_io.hpp"

namespace infodim::cli {

using nlohmann::json;

/// Exit codes shared by every subcommand.
enum ExitCode : int { kHolds = 0, kError = 1, kNegative = 2 };

inline constexpr const char* kGrammarHelp = R"txt(Inequality grammar:
  ineq  := expr ("<=" | ">=") expr
  expr  := term (("+" | "-") term)*
  term  := [rational ["*"]] atom | "0"
  atom  := H(vars) | H(vars|vars) | I(vars;vars) | I(vars;vars|vars)
  vars  := name ("," name)*        rational := p | p/q
Variables are numbered by first appearance unless --vars fixes the order.
Example: "2 H(x,y,z) <= H(x,y) + H(x,z) + H(y,z)"

Exit codes: 0 holds / success, 2 definite negative finding, 1 error.)txt";

namespace detail {

inline std::optional<std::vector<std::string>> split_names(const std::string& csv) {
  if (csv.empty()) return std::nullopt;
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

inline SubsetIndex parse_positions(const std::string& csv) {
  std::uint32_t mask = 0;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int p = 0;
    try {
      p = std::stoi(item);
    } catch (const std::exception&) {
      throw Error("usage", "bad coordinate list '" + csv + "'");
    }
    if (p < 1 || p > kMaxVariables) throw Error("usage", "coordinate " + item + " out of range");
    mask |= 1u << (p - 1);
  }
  if (mask == 0) throw Error("usage", "empty coordinate list");
  return SubsetIndex(mask);
}

inline json entropy_json(const EntropyVector& v, const std::vector<std::string>& names) {
  json out = json::array();
  for (SubsetIndex s : subsets(v.m())) {
    json entry{{"subset", "H(" + join_names(s, names) + ")"}, {"float", v.value(s)}};
    if (v.mode() == EntropyMode::exact) entry["exact"] = v.exact(s).to_string();
    out.push_back(entry);
  }
  return out;
}

inline json violation_json(const FiniteGroup& g, const std::string& name, const std::vector<Subgroup>& subgroups,
                           const LinearInequality& ineq, const std::vector<std::string>& names) {
  const GroupEntropyPoint point = coset_entropy_point(g, subgroups);
  json subs = json::array();
  for (const auto& h : subgroups) subs.push_back(json_io::to_json(h));
  return {{"group", name},
          {"order", g.order()},
          {"subgroups", subs},
          {"entropy_point", entropy_json(point.vector, names)},
          {"slack", json_io::to_json(eval_slack_exact(ineq, point.vector))}};
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args) {
    CLI::App app{"Exact workbench for linear entropy inequalities and their dimension counterparts", "infodim"};
    app.footer(kGrammarHelp);
    app.require_subcommand(1);

    std::string text, vars, file_a, file_b, project, groups_file;
    int max_order = 24;
    int k = 16;
    std::uint64_t max_tuples = SearchOptions{}.max_tuples_per_group;
    bool greedy = false;
    bool exhaustive = false;

    auto* check = app.add_subcommand("check", "Decide Shannon-type membership with an exact certificate");
    check->add_option("inequality", text, "Inequality text")->required();
    check->add_option("--vars", vars, "Comma-separated variable order");

    auto* eval = app.add_subcommand("eval", "Slack of an inequality on a distribution's entropy vector");
    eval->add_option("--ineq", text, "Inequality text")->required();
    eval->add_option("--dist", file_a, "Distribution JSON")->required();
    eval->add_option("--vars", vars, "Comma-separated variable order");

    auto* search = app.add_subcommand("group-search", "Look for a group-characterizable violation");
    search->add_option("--ineq", text, "Inequality text")->required();
    search->add_option("--max-order", max_order, "Largest built-in group order")->check(CLI::Range(1, 120));
    search->add_option("--groups", groups_file, "Group JSON (object or array) replacing the built-in catalog");
    search->add_option("--max-tuples", max_tuples, "Per-group cap on scanned subgroup tuples");
    search->add_option("--vars", vars, "Comma-separated variable order");

    auto* counter = app.add_subcommand("counterexample", "Build a Cantor-set dimension counterexample");
    counter->add_option("--ineq", text, "Inequality text")->required();
    auto* group_opt = counter->add_option("--group", file_a, "Group JSON");
    auto* subs_opt = counter->add_option("--subgroups", file_b, "Subgroup element lists JSON");
    group_opt->needs(subs_opt);
    subs_opt->needs(group_opt);
    counter->add_option("--max-order", max_order, "Largest built-in group order when searching")
        ->check(CLI::Range(1, 120));
    counter->add_option("--max-tuples", max_tuples, "Per-group cap on scanned subgroup tuples");
    counter->add_option("--vars", vars, "Comma-separated variable order");

    auto* cantor = app.add_subcommand("cantor", "Dimensions of a Cantor-type witness and its projections");
    cantor->add_option("--witness", file_a, "Witness JSON")->required();
    cantor->add_option("--project", project, "Single projection, e.g. 1,2");

    auto* split = app.add_subcommand("split", "Search and verify a splitting of a finite body");
    split->add_option("--body", file_a, "Body JSON")->required();
    split->add_option("--spec", file_b, "Split spec JSON")->required();
    auto* ex_flag = split->add_flag("--exhaustive", exhaustive, "Exhaustive search (default)");
    auto* gr_flag = split->add_flag("--greedy", greedy, "Greedy heuristic");
    ex_flag->excludes(gr_flag);

    auto* demo = app.add_subcommand("demo", "Built-in demonstrations");
    demo->require_subcommand(1);
    auto* cube_bar = demo->add_subcommand("cube-bar", "Cube plus bar body against the unsplit inequality");
    cube_bar->add_option("--k", k, "Cube side (a perfect square, at least 4)")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
      out_ << app.help();
      return kHolds;
    } catch (const CLI::ParseError& e) {
      err_ << "error: usage: " << one_line(e.what()) << "\n";
      return kError;
    }

    const auto start = std::chrono::steady_clock::now();
    try {
      json report;
      int code = kHolds;
      if (*check) {
        code = run_check(text, vars, report);
      } else if (*eval) {
        code = run_eval(text, vars, file_a, report);
      } else if (*search) {
        code = run_search(text, vars, max_order, groups_file, max_tuples, report);
      } else if (*counter) {
        code = run_counterexample(text, vars, file_a, file_b, max_order, max_tuples, report);
      } else if (*cantor) {
        code = run_cantor(file_a, project, report);
      } else if (*split) {
        code = run_split(file_a, file_b, greedy, report);
      } else if (*cube_bar) {
        code = run_cube_bar(k, report);
      }
      const auto elapsed = std::chrono::steady_clock::now() - start;
      report["elapsed_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
      out_ << report.dump(2) << "\n";
      return code;
    } catch (const Error& e) {
      err_ << "error: " << e.kind() << ": " << one_line(e.detail()) << "\n";
    } catch (const std::exception& e) {
      err_ << "error: internal: " << one_line(e.what()) << "\n";
    }
    return kError;
  }

 private:
  static std::string one_line(std::string s) {
    for (char& c : s) {
      if (c == '\n' || c == '\r') c = ' ';
    }
    return s;
  }

  static ParsedInequality parse(const std::string& text, const std::string& vars) {
    return parse_inequality(text, split_names(vars));
  }

  static json inequality_json(const ParsedInequality& p) {
    return {{"canonical", format_inequality(p.inequality, p.variables)}, {"variables", p.variables}};
  }

  int run_check(const std::string& text, const std::string& vars, json& report) {
    const ParsedInequality p = parse(text, vars);
    report = {{"subcommand", "check"}, {"inputs", {{"inequality", text}}}, {"inequality", inequality_json(p)}};
    const ShannonVerdict verdict = is_shannon_type(p.inequality);
    const ElementalSet elemental = elemental_inequalities(p.inequality.m());
    if (const auto* cert = std::get_if<ShannonCertificate>(&verdict)) {
      verify_certificate(p.inequality, *cert);
      report["outcome"] = "shannon-type";
      report["certificate"] = json_io::to_json(*cert, elemental);
      return kHolds;
    }
    const auto& witness = std::get<FarkasWitness>(verdict);
    verify_farkas(p.inequality, witness);
    report["outcome"] = "not-shannon-type";
    report["farkas_witness"] = {{"point", json_io::to_json(witness.point, p.variables)},
                                {"target_slack", to_string(eval_slack(p.inequality, witness.point))},
                                {"elemental_rows_checked", elemental.rows.size()}};
    return kNegative;
  }

  int run_eval(const std::string& text, const std::string& vars, const std::string& dist_file, json& report) {
    const ParsedInequality p = parse(text, vars);
    const auto dist = json_io::distribution_from_json(json_io::load_file(dist_file));
    const EntropyVector v = std::holds_alternative<JointDistribution>(dist)
                                ? entropy_vector_float(std::get<JointDistribution>(dist))
                                : exact_entropy_vector(std::get<SupportSet>(dist));
    report = {{"subcommand", "eval"},
              {"inputs", {{"inequality", text}, {"dist", dist_file}}},
              {"inequality", inequality_json(p)},
              {"mode", v.mode() == EntropyMode::exact ? "exact" : "float"}};
    if (v.m() != p.inequality.m()) {
      throw Error("dimension-mismatch", "inequality has m=" + std::to_string(p.inequality.m()) +
                                            ", distribution has m=" + std::to_string(v.m()));
    }
    report["entropy_vector"] = entropy_json(v, p.variables);
    bool violated = false;
    if (v.mode() == EntropyMode::exact) {
      const ExactLogLin slack = eval_slack_exact(p.inequality, v);
      report["slack"] = json_io::to_json(slack);
      violated = loglin_sign(slack) == Sign::negative;
    } else {
      const double slack = eval_slack_float(p.inequality, v);
      report["slack"] = {{"float", slack}};
      violated = slack < -kEntropyTolerance;
    }
    report["outcome"] = violated ? "violated" : "holds";
    return violated ? kNegative : kHolds;
  }

  static std::vector<CatalogEntry> catalog(int max_order, const std::string& groups_file) {
    if (!groups_file.empty()) return json_io::catalog_from_json(json_io::load_file(groups_file));
    return builtin_catalog(max_order);
  }

  int run_search(const std::string& text, const std::string& vars, int max_order, const std::string& groups_file,
                 std::uint64_t max_tuples, json& report) {
    const ParsedInequality p = parse(text, vars);
    const auto groups = catalog(max_order, groups_file);
    report = {{"subcommand", "group-search"},
              {"inputs", {{"inequality", text}, {"max_order", max_order}, {"groups", groups_file}}},
              {"inequality", inequality_json(p)},
              {"catalog_size", groups.size()}};
    const SearchOutcome outcome = search_violation(p.inequality, groups, SearchOptions{max_tuples});
    report["tuples_examined"] = outcome.tuples_examined;
    report["truncated"] = outcome.truncated;
    if (!outcome.violation) {
      report["outcome"] = "none within catalog";
      return kHolds;
    }
    const auto& v = *outcome.violation;
    report["outcome"] = "violation-found";
    report["violation"] = violation_json(groups[v.catalog_index].group, v.group_name, v.subgroups, p.inequality,
                                         p.variables);
    return kNegative;
  }

  int run_counterexample(const std::string& text, const std::string& vars, const std::string& group_file,
                         const std::string& subgroups_file, int max_order, std::uint64_t max_tuples, json& report) {
    const ParsedInequality p = parse(text, vars);
    report = {{"subcommand", "counterexample"},
              {"inputs", {{"inequality", text}, {"group", group_file}, {"subgroups", subgroups_file}}},
              {"inequality", inequality_json(p)}};

    std::optional<FiniteGroup> group;
    std::vector<Subgroup> subgroups;
    std::string name = "input";
    if (!group_file.empty()) {
      group = json_io::group_from_json(json_io::load_file(group_file));
      subgroups = json_io::subgroups_from_json(*group, json_io::load_file(subgroups_file));
    } else {
      const auto groups = builtin_catalog(max_order);
      const SearchOutcome outcome = search_violation(p.inequality, groups, SearchOptions{max_tuples});
      report["search"] = {{"max_order", max_order},
                          {"tuples_examined", outcome.tuples_examined},
                          {"truncated", outcome.truncated}};
      if (!outcome.violation) {
        report["outcome"] = "none within catalog";
        return kHolds;
      }
      group = groups[outcome.violation->catalog_index].group;
      subgroups = outcome.violation->subgroups;
      name = outcome.violation->group_name;
    }
    report["violation"] = violation_json(*group, name, subgroups, p.inequality, p.variables);

    const DimensionCounterexample cx = build_counterexample(p.inequality, *group, subgroups);
    json dims = json::array();
    for (SubsetIndex s : subsets(p.inequality.m())) {
      json d = json_io::to_json(cx.projection_dims[s.slot()]);
      d["subset"] = join_names(s, p.variables);
      dims.push_back(d);
    }
    json levels = json::array();
    for (const auto& level : cx.levels) {
      levels.push_back({{"subset", join_names(level.subset, p.variables)},
                        {"lambda", to_string(level.lambda)},
                        {"dimension", level.dim.to_string()},
                        {"level", {{"exact", level.to_string()}, {"float", level.to_double()}}},
                        {"clamped", level.clamped}});
    }
    json mu = json::array();
    for (const auto& [subset, weight] : p.inequality.right_family()) {
      mu.push_back({{"subset", join_names(subset, p.variables)}, {"mu", to_string(weight)}});
    }
    const ExactLogLin base_log = ExactLogLin::log2_of(cx.witness.base());
    report["outcome"] = "counterexample";
    report["counterexample"] = {
        {"witness", json_io::to_json(cx.witness)},
        {"N", cx.witness.base()},
        {"epsilon", to_string(cx.epsilon)},
        {"projection_dimensions", dims},
        {"levels", levels},
        {"right_family", mu},
        {"entropy_slack", json_io::to_json(cx.entropy_slack)},
        {"level_margin_times_log2N", json_io::to_json(cx.level_margin)},
        {"level_margin", cx.level_margin.to_double() / base_log.to_double()},
        {"verified", true}};
    return kNegative;
  }

  int run_cantor(const std::string& witness_file, const std::string& project_arg, json& report) {
    const CantorWitness w = json_io::witness_from_json(json_io::load_file(witness_file));
    report = {{"subcommand", "cantor"},
              {"inputs", {{"witness", witness_file}, {"project", project_arg}}},
              {"m", w.m()},
              {"N", w.base()},
              {"dimension", json_io::to_json(dim_value(w))}};
    std::vector<SubsetIndex> targets;
    if (!project_arg.empty()) {
      targets.push_back(parse_positions(project_arg));
      if (!targets.front().fits(w.m())) throw Error("usage", "projection exceeds m=" + std::to_string(w.m()));
    } else {
      targets = subsets(w.m());
    }
    json projections = json::array();
    for (SubsetIndex s : targets) {
      const CantorWitness proj = project(w, s);
      json entry{{"subset", s.positions()}, {"dimension", json_io::to_json(dim_value(proj))}};
      if (s != SubsetIndex::full(w.m())) {
        const FiberCheck fiber = uniform_fiber(w, s);
        entry["uniform_fibers"] = fiber.uniform;
        if (fiber.uniform) {
          entry["fiber_size"] = fiber.fiber_size;
        } else {
          entry["offending_value"] = fiber.offending;
        }
      }
      projections.push_back(entry);
    }
    report["projections"] = projections;
    report["outcome"] = "ok";
    return kHolds;
  }

  int run_split(const std::string& body_file, const std::string& spec_file, bool greedy, json& report) {
    const FiniteBody body = json_io::body_from_json(json_io::load_file(body_file));
    const SplitSpec spec = json_io::split_spec_from_json(json_io::load_file(spec_file));
    report = {{"subcommand", "split"},
              {"inputs", {{"body", body_file}, {"spec", spec_file}, {"method", greedy ? "greedy" : "exhaustive"}}},
              {"body_size", body.size()},
              {"spec", json_io::to_json(spec)}};
    const auto result = greedy ? find_split_greedy(body, spec) : find_split_exhaustive(body, spec);
    if (!result) {
      report["outcome"] = greedy ? "inconclusive" : "no-split";
      return greedy ? kHolds : kNegative;
    }
    const bool verified = verify_split(body, spec, *result);
    if (!verified) throw Error("internal", "split failed verification");
    json parts = json::array();
    for (std::size_t k = 0; k < spec.parts.size(); ++k) {
      std::vector<Tuple> members;
      for (std::size_t i = 0; i < body.size(); ++i) {
        if (result->assignment[i] == k) members.push_back(body.points()[i]);
      }
      const std::size_t proj = members.empty() ? 0 : projection_size(members, spec.parts[k].subset);
      parts.push_back({{"subset", to_string(spec.parts[k].subset)},
                       {"points", members.size()},
                       {"projection_size", proj},
                       {"level", json_io::to_json(spec.parts[k].level)}});
    }
    report["outcome"] = "split-found";
    report["assignment"] = json_io::to_json(*result, spec);
    report["parts"] = parts;
    report["verified"] = verified;
    return kHolds;
  }

  int run_cube_bar(int k, json& report) {
    const FiniteBody body = cube_bar_instance(k);
    const UnsplitComparison c = check_unsplit_inequality(body);
    const char* rel = c.sign == Sign::positive ? " > " : c.sign == Sign::negative ? " < " : " = ";
    report = {{"subcommand", "demo cube-bar"},
              {"inputs", {{"k", k}}},
              {"N", body.base()},
              {"volume", c.volume},
              {"proj_1", c.proj1},
              {"proj_12", c.proj12},
              {"proj_13", c.proj13},
              {"lhs_bits", c.lhs_bits},
              {"rhs_bits", c.rhs_bits},
              {"lhs_product", c.lhs_product.str()},
              {"rhs_product", c.rhs_product.str()},
              {"comparison", c.lhs_product.str() + rel + c.rhs_product.str()},
              {"verdict", c.holds() ? "unsplit inequality holds" : "unsplit inequality VIOLATED"},
              {"loomis_whitney_slack", loomis_whitney_slack(body)}};
    report["outcome"] = c.holds() ? "holds" : "violated";
    return c.holds() ? kHolds : kNegative;
  }

  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace detail

/// Runs the tool on `args` (without the program name); the JSON report goes
/// to `out`, a single `error: <kind>: <detail>` line to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return detail::Runner(out, err).run(args);
}

}  // namespace infodim::cli
