// roquette: build groups, enumerate subgroups, test expansivity and run the
// verification suites.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "roquette/roquette.hpp"

namespace {

using namespace roq;
using nlohmann::json;

struct Common {
  unsigned jobs = 1;
  std::string cache_dir;
  std::string format = "text";
};

std::unique_ptr<LatticeCache> open_cache(const std::string& flag) {
  std::string dir = flag;
  if (dir.empty())
    if (const char* env = std::getenv("ROQUETTE_CACHE_DIR")) dir = env;
  if (dir.empty()) return nullptr;
  return std::make_unique<LatticeCache>(dir);
}

BuiltGroup build_or_report(const std::string& def) {
  try {
    return parse_group_definition(def);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n  " << def << "\n  " << std::string(e.position, ' ') << "^\n";
    std::exit(1);
  }
}

SubgroupLattice lattice_for(const Group& g, const Common& c) {
  auto cache = open_cache(c.cache_dir);
  return lattice_with_cache(g, cache.get(), {c.jobs, 0});
}

std::string set_text(const std::vector<Elem>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

int cmd_build(const std::string& def, const Common& c) {
  auto b = build_or_report(def);
  const auto& g = b.group;
  auto fp = fingerprint(g);
  json j{{"definition", def},
         {"order", g.order()},
         {"fingerprint", group_fingerprint(g)},
         {"generators", g.generators()},
         {"center_order", fp.center_order},
         {"derived_series", fp.derived_series},
         {"element_orders", json::object()},
         {"named", json::object()}};
  for (std::size_t o = 1; o < fp.order_census.size(); ++o)
    if (fp.order_census[o]) j["element_orders"][std::to_string(o)] = fp.order_census[o];
  for (const auto& [name, s] : b.named) j["named"][name] = s.order();
  if (c.format == "json") {
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  std::cout << def << "\n  order " << g.order() << ", fingerprint " << group_fingerprint(g) << "\n  generators";
  for (Elem x : g.generators()) std::cout << ' ' << g.label(x);
  std::cout << "\n  |Z| = " << fp.center_order << ", derived series";
  for (auto o : fp.derived_series) std::cout << ' ' << o;
  std::cout << "\n  element orders (order:count)";
  for (std::size_t o = 1; o < fp.order_census.size(); ++o)
    if (fp.order_census[o]) std::cout << ' ' << o << ':' << fp.order_census[o];
  std::cout << '\n';
  for (const auto& [name, s] : b.named) std::cout << "  " << name << ": order " << s.order() << '\n';
  return 0;
}

int cmd_subgroups(const std::string& def, const Common& c) {
  auto b = build_or_report(def);
  const auto& g = b.group;
  auto lat = lattice_for(g, c);
  auto classes = conjugacy_classes(lat);
  auto tc = trivial_core_classes(lat);
  json rows = json::array();
  for (std::size_t k = 0; k < classes.size(); ++k) {
    const auto& rep = lat.subgroups[lat.class_reps[k]];
    auto props = subgroup_properties(g, rep);
    const bool trivial_core = std::find(tc.begin(), tc.end(), lat.class_reps[k]) != tc.end();
    rows.push_back({{"class", k},
                    {"order", rep.order()},
                    {"size", classes[k].size()},
                    {"normal", classes[k].size() == 1},
                    {"trivial_core", trivial_core},
                    {"abelian", props.is_abelian},
                    {"cyclic", props.is_cyclic},
                    {"generators", rep.generators}});
  }
  if (c.format == "json") {
    std::cout << json{{"definition", def}, {"order", g.order()}, {"subgroups", lat.size()}, {"classes", rows}}.dump(2)
              << '\n';
    return 0;
  }
  std::cout << def << ": " << lat.size() << " subgroups in " << lat.class_count() << " classes, " << tc.size()
            << " nontrivial classes with trivial core\n";
  std::cout << "  class  order  size  flags\n";
  for (const auto& r : rows) {
    std::string flags;
    if (r["normal"]) flags += " normal";
    if (r["trivial_core"]) flags += " trivial-core";
    if (r["cyclic"]) flags += " cyclic";
    else if (r["abelian"]) flags += " abelian";
    std::cout << "  " << std::setw(5) << r["class"].get<std::size_t>() << "  " << std::setw(5)
              << r["order"].get<std::size_t>() << "  " << std::setw(4) << r["size"].get<std::size_t>() << " " << flags
              << '\n';
  }
  return 0;
}

json result_json(const ExpansivityResult& r) {
  json j{{"order", r.subgroup.order()}, {"elements", r.subgroup.elements}, {"expansive", r.expansive}};
  j["witness_g"] = r.witness_g ? json(*r.witness_g) : json(nullptr);
  if (!r.trace.empty()) {
    j["trace"] = json::array();
    for (auto [g, size] : r.trace) j["trace"].push_back({{"g", g}, {"core_order", size}});
  }
  return j;
}

void print_result(const Group& g, const ExpansivityResult& r) {
  std::cout << "  order " << std::setw(4) << r.subgroup.order() << "  " << (r.expansive ? "expansive" : "not expansive");
  if (r.witness_g) std::cout << ", witness g = " << *r.witness_g << " (" << g.label(*r.witness_g) << ")";
  std::cout << "  " << set_text(r.subgroup.generators) << '\n';
  for (auto [x, size] : r.trace) std::cout << "      g = " << x << "  core order " << size << '\n';
}

int cmd_expansive(const std::string& def, const std::string& subgroup, bool trace, const Common& c) {
  auto b = build_or_report(def);
  const auto& g = b.group;
  if (!subgroup.empty()) {
    auto it = b.named.find(subgroup);
    if (it == b.named.end()) {
      std::cerr << "error: '" << def << "' has no subgroup named '" << subgroup << "'\n";
      return 1;
    }
    auto r = is_expansive(g, it->second, trace);
    if (c.format == "json")
      std::cout << result_json(r).dump(2) << '\n';
    else
      print_result(g, r);
    return 0;
  }
  auto lat = lattice_for(g, c);
  auto scan = scan_expansive_trivial_core(g, lat, c.jobs, trace);
  if (c.format == "json") {
    json rows = json::array();
    for (const auto& e : scan) rows.push_back(result_json(e.result));
    std::cout << json{{"definition", def}, {"scanned", scan.size()}, {"expansive", count_expansive(scan)}, {"results", rows}}
                     .dump(2)
              << '\n';
    return 0;
  }
  std::cout << def << ": " << scan.size() << " nontrivial classes with trivial core, " << count_expansive(scan)
            << " expansive\n";
  for (const auto& e : scan) print_result(g, e.result);
  return 0;
}

int cmd_roquette(const std::string& def, const Common& c) {
  auto b = build_or_report(def);
  const auto& g = b.group;
  auto lat = lattice_for(g, c);
  auto v = is_roquette(g, lat);
  auto f = fitting(g);
  std::optional<RoquetteClass> cls;
  if (g.prime_factors().size() == 1) cls = classify_roquette_p_group(g);
  if (c.format == "json") {
    json j{{"definition", def}, {"roquette", v.is_roquette}, {"criteria_agree", v.method_agreement},
           {"fitting_order", f.order()}};
    j["witness"] = v.witness ? json(v.witness->elements) : json(nullptr);
    j["classification"] = cls ? json(to_string(*cls)) : json(nullptr);
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  std::cout << def << ": " << (v.is_roquette ? "Roquette" : "not Roquette") << '\n';
  if (v.witness) std::cout << "  normal abelian non-cyclic subgroup of order " << v.witness->order() << ' ' << set_text(v.witness->generators) << '\n';
  std::cout << "  elementary-abelian criterion " << (v.method_agreement ? "agrees" : "DISAGREES") << '\n';
  std::cout << "  Fitting subgroup of order " << f.order() << '\n';
  if (cls) std::cout << "  p-group classification: " << to_string(*cls) << '\n';
  return 0;
}

int cmd_cohomology(std::size_t max_n, const Common& c) {
  json rows = json::array();
  for (std::size_t n = 2; n <= max_n; ++n)
    for (unsigned p : prime_factors(n)) {
      if (n % (std::size_t{p} * p) != 0) continue;
      auto a = make_cyclic_action(n, alpha_p(n, p));
      rows.push_back({{"n", n}, {"p", p}, {"h1", h1_cyclic(a).factors}, {"h2", h2_cyclic(a).factors}});
    }
  if (c.format == "json") {
    std::cout << rows.dump(2) << '\n';
    return 0;
  }
  auto group_text = [](const std::vector<std::size_t>& f) {
    if (f.empty()) return std::string("1");
    std::string s;
    for (std::size_t i = 0; i < f.size(); ++i) s += (i ? " x C" : "C") + std::to_string(f[i]);
    return s;
  };
  std::cout << "    n    p  H1    H2\n";
  for (const auto& r : rows)
    std::cout << std::setw(5) << r["n"].get<std::size_t>() << std::setw(5) << r["p"].get<unsigned>() << "  " << std::left
              << std::setw(6) << group_text(r["h1"]) << group_text(r["h2"]) << std::right << '\n';
  return 0;
}

int cmd_verify(const std::string& suite, const Common& c, bool heavy, std::size_t max_subgroups,
               const std::vector<std::size_t>& n_list, std::size_t max_n, const std::string& output) {
  auto cache = open_cache(c.cache_dir);
  SuiteOptions opt;
  opt.jobs = c.jobs;
  opt.cache = cache.get();
  opt.include_heavy = heavy;
  opt.max_subgroups = max_subgroups;
  if (!n_list.empty()) opt.cyclic_n = n_list;
  opt.cohomology_max_n = max_n;
  auto report = run_suite(suite, opt);
  const auto text = emit_report(report, c.format == "json" ? ReportFormat::json : ReportFormat::text);
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output);
    out << text;
    std::cout << suite << ": " << (report.overall() ? "PASS" : "FAIL") << '\n';
  }
  if (report.any_failed()) return 1;
  return report.overall() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite group computations: subgroup lattices, expansive subgroups, Roquette groups"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub, bool lattice) {
    sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    if (lattice) {
      sub->add_option("--jobs,-j", common.jobs, "Worker threads")->check(CLI::PositiveNumber);
      sub->add_option("--cache", common.cache_dir, "Lattice cache directory (default: $ROQUETTE_CACHE_DIR)");
    }
  };

  std::string def, subgroup, suite, output;
  bool trace = false, heavy = false;
  std::size_t max_n = 200, max_subgroups = 0;
  std::vector<std::size_t> n_list;

  auto* build = app.add_subcommand("build", "Build a group and print its invariants");
  build->add_option("definition", def, "Group definition, e.g. 'semidirect cyclic:8 units:[5]'")->required();
  add_common(build, false);

  auto* subs = app.add_subcommand("subgroups", "Enumerate subgroups up to conjugacy");
  subs->add_option("definition", def)->required();
  add_common(subs, true);

  auto* exp = app.add_subcommand("expansive", "Test nontrivial trivial-core subgroups for expansivity");
  exp->add_option("definition", def)->required();
  exp->add_flag("--trace", trace, "Print the core order for each coset tried");
  exp->add_option("--subgroup", subgroup, "Test one named subgroup of the definition instead (e.g. S3 of q8s3)");
  add_common(exp, true);

  auto* roq_cmd = app.add_subcommand("roquette", "Decide whether every normal abelian subgroup is cyclic");
  roq_cmd->add_option("definition", def)->required();
  add_common(roq_cmd, true);

  auto* coh = app.add_subcommand("cohomology", "H1 and H2 of <alpha_p> on C_n");
  coh->add_option("--max-n", max_n, "Largest n")->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
  add_common(coh, false);

  auto* ver = app.add_subcommand("verify", "Run a verification suite; exit 0 iff every check passes");
  ver->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(roq::suite_names()));
  ver->add_flag("--heavy", heavy, "Include the order-1944 group");
  ver->add_option("--max-subgroups", max_subgroups, "Skip groups whose lattice exceeds this many subgroups");
  ver->add_option("--n", n_list, "Moduli for cyclic-fitting")->delimiter(',');
  ver->add_option("--max-n", max_n, "Largest n for cohomology-tables");
  ver->add_option("--output,-o", output, "Write the report to a file");
  add_common(ver, true);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*build) return cmd_build(def, common);
    if (*subs) return cmd_subgroups(def, common);
    if (*exp) return cmd_expansive(def, subgroup, trace, common);
    if (*roq_cmd) return cmd_roquette(def, common);
    if (*coh) return cmd_cohomology(max_n, common);
    if (*ver) return cmd_verify(suite, common, heavy, max_subgroups, n_list, max_n, output);
  } catch (const roq::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
