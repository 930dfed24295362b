#pragma once

#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "roquette/error.hpp"

namespace roq {

enum class Outcome { pass, fail, skipped };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::pass: return "pass";
    case Outcome::fail: return "fail";
    case Outcome::skipped: return "skipped";
  }
  return "?";
}

inline Outcome outcome_from_string(const std::string& s) {
  if (s == "pass") return Outcome::pass;
  if (s == "fail") return Outcome::fail;
  if (s == "skipped") return Outcome::skipped;
  throw Error("unknown outcome '" + s + "'");
}

/// A subgroup or element singled out by a check, as element indices.
struct Witness {
  std::string role;
  std::vector<std::uint32_t> elements;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct CheckOutcome {
  std::string id;
  Outcome outcome = Outcome::pass;
  std::string detail;
  std::vector<Witness> witnesses;

  friend bool operator==(const CheckOutcome&, const CheckOutcome&) = default;
};

struct LatticeStats {
  std::size_t subgroups = 0;
  std::size_t classes = 0;
  std::size_t trivial_core_classes = 0;
  bool cached = false;

  friend bool operator==(const LatticeStats&, const LatticeStats&) = default;
};

struct Timings {
  double build_ms = 0;
  double lattice_ms = 0;
  double checks_ms = 0;

  friend bool operator==(const Timings&, const Timings&) = default;
};

struct GroupReport {
  std::string definition;
  std::string fingerprint;  // "<order>-<table hash>"
  std::size_t order = 0;
  std::optional<LatticeStats> lattice;
  std::vector<CheckOutcome> checks;
  Timings timings;

  bool passed() const {
    for (const auto& c : checks)
      if (c.outcome != Outcome::pass) return false;
    return true;
  }

  friend bool operator==(const GroupReport&, const GroupReport&) = default;
};

struct VerificationReport {
  std::string suite;
  std::vector<GroupReport> groups;
  std::vector<std::string> notes;

  /// Every check passed. Skipped checks count against this.
  bool overall() const {
    for (const auto& g : groups)
      if (!g.passed()) return false;
    return true;
  }
  bool any_failed() const {
    for (const auto& g : groups)
      for (const auto& c : g.checks)
        if (c.outcome == Outcome::fail) return true;
    return false;
  }

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

inline void to_json(nlohmann::json& j, const Witness& w) { j = {{"role", w.role}, {"elements", w.elements}}; }
inline void from_json(const nlohmann::json& j, Witness& w) {
  j.at("role").get_to(w.role);
  j.at("elements").get_to(w.elements);
}

inline void to_json(nlohmann::json& j, const CheckOutcome& c) {
  j = {{"id", c.id}, {"outcome", to_string(c.outcome)}, {"detail", c.detail}, {"witnesses", c.witnesses}};
}
inline void from_json(const nlohmann::json& j, CheckOutcome& c) {
  j.at("id").get_to(c.id);
  c.outcome = outcome_from_string(j.at("outcome").get<std::string>());
  j.at("detail").get_to(c.detail);
  j.at("witnesses").get_to(c.witnesses);
}

inline void to_json(nlohmann::json& j, const LatticeStats& s) {
  j = {{"subgroups", s.subgroups},
       {"classes", s.classes},
       {"trivial_core_classes", s.trivial_core_classes},
       {"cached", s.cached}};
}
inline void from_json(const nlohmann::json& j, LatticeStats& s) {
  j.at("subgroups").get_to(s.subgroups);
  j.at("classes").get_to(s.classes);
  j.at("trivial_core_classes").get_to(s.trivial_core_classes);
  j.at("cached").get_to(s.cached);
}

inline void to_json(nlohmann::json& j, const Timings& t) {
  j = {{"build_ms", t.build_ms}, {"lattice_ms", t.lattice_ms}, {"checks_ms", t.checks_ms}};
}
inline void from_json(const nlohmann::json& j, Timings& t) {
  j.at("build_ms").get_to(t.build_ms);
  j.at("lattice_ms").get_to(t.lattice_ms);
  j.at("checks_ms").get_to(t.checks_ms);
}

inline void to_json(nlohmann::json& j, const GroupReport& g) {
  j = {{"definition", g.definition}, {"fingerprint", g.fingerprint}, {"order", g.order},
       {"lattice", nullptr},         {"checks", g.checks},           {"timings", g.timings}};
  if (g.lattice) j["lattice"] = *g.lattice;
}
inline void from_json(const nlohmann::json& j, GroupReport& g) {
  j.at("definition").get_to(g.definition);
  j.at("fingerprint").get_to(g.fingerprint);
  j.at("order").get_to(g.order);
  if (j.at("lattice").is_null())
    g.lattice.reset();
  else
    g.lattice = j.at("lattice").get<LatticeStats>();
  j.at("checks").get_to(g.checks);
  j.at("timings").get_to(g.timings);
}

inline void to_json(nlohmann::json& j, const VerificationReport& r) {
  j = {{"suite", r.suite}, {"overall", r.overall() ? "pass" : "fail"}, {"groups", r.groups}, {"notes", r.notes}};
}
inline void from_json(const nlohmann::json& j, VerificationReport& r) {
  j.at("suite").get_to(r.suite);
  j.at("groups").get_to(r.groups);
  j.at("notes").get_to(r.notes);
  const bool stored = j.at("overall").get<std::string>() == "pass";
  if (stored != r.overall()) throw Error("report: 'overall' disagrees with the check outcomes");
}

enum class ReportFormat { json, text };

inline std::string emit_report(const VerificationReport& r, ReportFormat format) {
  if (format == ReportFormat::json) return nlohmann::json(r).dump(2) + "\n";
  std::ostringstream out;
  out << "suite " << r.suite << ": " << (r.overall() ? "PASS" : "FAIL") << '\n';
  for (const auto& g : r.groups) {
    out << "\n" << g.definition << "  (order " << g.order << ", " << g.fingerprint << ")\n";
    if (g.lattice)
      out << "  lattice: " << g.lattice->subgroups << " subgroups, " << g.lattice->classes << " classes, "
          << g.lattice->trivial_core_classes << " trivial-core classes" << (g.lattice->cached ? " [cached]" : "") << '\n';
    for (const auto& c : g.checks) {
      out << "  " << std::left << std::setw(8) << to_string(c.outcome) << c.id;
      if (!c.detail.empty()) out << ": " << c.detail;
      out << '\n';
      for (const auto& w : c.witnesses) {
        out << "           " << w.role << " {";
        for (std::size_t i = 0; i < w.elements.size(); ++i) out << (i ? "," : "") << w.elements[i];
        out << "}\n";
      }
    }
    out << std::fixed << std::setprecision(1) << "  time: build " << g.timings.build_ms << " ms, lattice "
        << g.timings.lattice_ms << " ms, checks " << g.timings.checks_ms << " ms\n";
    out.unsetf(std::ios::fixed);
  }
  for (const auto& n : r.notes) out << "\nnote: " << n << '\n';
  return out.str();
}

inline VerificationReport parse_report_json(const std::string& text) {
  return nlohmann::json::parse(text).get<VerificationReport>();
}

}  // namespace roq
