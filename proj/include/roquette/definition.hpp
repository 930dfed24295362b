#pragma once

#include <cctype>
#include <charconv>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "roquette/constructors.hpp"
#include "roquette/error.hpp"
#include "roquette/group.hpp"
#include "roquette/lattice.hpp"

namespace roq {

/// Group definitions, one per string:
///
///   def   := atom | "direct" def def | "semidirect" "cyclic:" N "units:[" u {"," u} "]"
///   atom  := "cyclic:" N | "dihedral:" N | "semidihedral:" N | "quaternion:" N
///          | "extraspecial:" P | "central:" P ":" I | "sl2:" P
///          | "extsl2:" P ":" I [":" K] | "q8s3"
///   K     := trivial | center | unipotent | borel | c4 | q8 | full
///
/// Tokens are separated by whitespace. N is the group order for the 2-group
/// families. `units:[]` gives the trivial action.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : Error("parse error at column " + std::to_string(pos + 1) + ": " + msg), position(pos) {}
  std::size_t position;
};

struct BuiltGroup {
  std::string definition;
  Group group;
  /// Subgroups worth naming, e.g. "kernel" and "complement" of a semidirect product.
  std::map<std::string, SubgroupSet> named;
};

/// Named subgroups of SL(2,p): trivial, center, unipotent (upper unitriangular),
/// borel (upper triangular), c4 (first element of order 4), q8 (Sylow 2-subgroup
/// when of order 8), full.
inline SubgroupSet sl2_subgroup(const Sl2& s, std::string_view name) {
  const auto& g = s.group;
  if (name == "trivial") return trivial_subgroup(g);
  if (name == "center") return center(g);
  if (name == "unipotent") return unipotent_subgroup(s);
  if (name == "borel") return borel_subgroup(s);
  if (name == "full") return whole_group(g);
  if (name == "c4") {
    for (Elem x = 1; x < g.order(); ++x)
      if (g.element_order(x) == 4) return closure(g, {x});
    throw Error("SL(2,p) has no element of order 4");
  }
  if (name == "q8") {
    auto s2 = sylow_subgroup(g, 2);
    if (s2.order() != 8) throw Error("the Sylow 2-subgroup is not of order 8");
    return s2;
  }
  throw Error("unknown SL(2,p) subgroup '" + std::string(name) + "'");
}

namespace detail {

class DefinitionParser {
 public:
  DefinitionParser(std::string_view text, std::size_t bound) : text_(text), bound_(bound) {}

  BuiltGroup parse() {
    auto g = term();
    skip_space();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
    g.definition = std::string(text_);
    return g;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t bound_;

  struct Token {
    std::string_view text;
    std::size_t pos;
  };

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  Token next_token() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError("expected a group definition", pos_);
    const auto start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return {text_.substr(start, pos_ - start), start};
  }

  /// Splits "a:b:c" keeping each field's absolute position.
  static std::vector<Token> fields(const Token& t) {
    std::vector<Token> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= t.text.size(); ++i)
      if (i == t.text.size() || t.text[i] == ':') {
        out.push_back({t.text.substr(start, i - start), t.pos + start});
        start = i + 1;
      }
    return out;
  }

  static std::size_t number(const Token& t) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (t.text.empty() || ec != std::errc() || ptr != t.text.data() + t.text.size())
      throw ParseError("expected a non-negative integer, got '" + std::string(t.text) + "'", t.pos);
    return v;
  }

  static void arity(const std::vector<Token>& f, std::size_t lo, std::size_t hi, const Token& whole) {
    if (f.size() - 1 < lo || f.size() - 1 > hi)
      throw ParseError("wrong number of parameters for '" + std::string(f[0].text) + "'", whole.pos);
  }

  /// Runs a constructor, attaching the token position to its errors.
  template <class F>
  static auto at(const Token& t, F&& f) -> decltype(f()) {
    try {
      return f();
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), t.pos);
    }
  }

  BuiltGroup term() {
    const Token t = next_token();
    if (t.text == "direct") {
      auto a = term();
      auto b = term();
      return at(t, [&] {
        BuiltGroup out{"", build_direct_product(a.group, b.group, bound_), {}};
        return out;
      });
    }
    if (t.text == "semidirect") return semidirect(t);
    return atom(t);
  }

  BuiltGroup semidirect(const Token& head) {
    const Token c = next_token();
    auto cf = fields(c);
    if (cf[0].text != "cyclic") throw ParseError("semidirect expects 'cyclic:N' first", c.pos);
    arity(cf, 1, 1, c);
    const auto n = number(cf[1]);
    const Token u = next_token();
    if (u.text.substr(0, 7) != "units:[" || u.text.back() != ']')
      throw ParseError("expected 'units:[u,...]'", u.pos);
    std::vector<unsigned> gens;
    auto body = u.text.substr(7, u.text.size() - 8);
    std::size_t start = 0;
    while (!body.empty() && start <= body.size()) {
      auto comma = body.find(',', start);
      if (comma == std::string_view::npos) comma = body.size();
      gens.push_back(static_cast<unsigned>(number({body.substr(start, comma - start), u.pos + 7 + start})));
      start = comma + 1;
    }
    return at(head, [&] {
      auto ext = build_cyclic_extension(n, gens, bound_);
      BuiltGroup out{"", ext.group, {{"kernel", ext.kernel}, {"complement", ext.complement}}};
      return out;
    });
  }

  BuiltGroup atom(const Token& t) {
    auto f = fields(t);
    const auto name = f[0].text;
    if (name == "cyclic") {
      arity(f, 1, 1, t);
      auto n = number(f[1]);
      return at(f[1], [&] { return BuiltGroup{"", build_cyclic(n, bound_), {}}; });
    }
    if (name == "dihedral" || name == "semidihedral" || name == "quaternion") {
      arity(f, 1, 1, t);
      auto n = number(f[1]);
      auto kind = name == "dihedral" ? TwoGroupKind::dihedral
                  : name == "semidihedral" ? TwoGroupKind::semidihedral
                                           : TwoGroupKind::quaternion;
      return at(f[1], [&] { return BuiltGroup{"", build_two_group(kind, n, bound_), {}}; });
    }
    if (name == "extraspecial") {
      arity(f, 1, 1, t);
      auto p = number(f[1]);
      return at(f[1], [&] { return BuiltGroup{"", build_extraspecial(static_cast<unsigned>(p), bound_), {}}; });
    }
    if (name == "central") {
      arity(f, 2, 2, t);
      auto p = number(f[1]);
      auto i = number(f[2]);
      return at(f[1], [&] {
        auto a = build_sl2_action_on_P(static_cast<unsigned>(p), static_cast<unsigned>(i), bound_);
        return BuiltGroup{"", a.P, {{"E", a.E}, {"Z", a.Z}}};
      });
    }
    if (name == "sl2") {
      arity(f, 1, 1, t);
      auto p = number(f[1]);
      return at(f[1], [&] {
        auto s = build_sl2(static_cast<unsigned>(p), bound_);
        return BuiltGroup{"", s.group, {{"borel", borel_subgroup(s)}, {"unipotent", unipotent_subgroup(s)}}};
      });
    }
    if (name == "extsl2") {
      arity(f, 2, 3, t);
      auto p = number(f[1]);
      auto i = number(f[2]);
      const Token kt = f.size() > 3 ? f[3] : Token{"full", t.pos};
      return at(f[1], [&] {
        auto a = build_sl2_action_on_P(static_cast<unsigned>(p), static_cast<unsigned>(i), bound_);
        auto k = at(kt, [&] { return sl2_subgroup(a.sl2, kt.text); });
        auto es = build_extraspecial_semidirect(a, k, bound_);
        return BuiltGroup{"", es.group, {{"P", es.P}, {"K", es.K}}};
      });
    }
    if (name == "q8s3") {
      arity(f, 0, 0, t);
      auto q = build_q8_s3();
      return BuiltGroup{"", q.group, {{"Q8", q.q8}, {"S3", q.s3}}};
    }
    throw ParseError("unknown group family '" + std::string(name) + "'", t.pos);
  }
};

}  // namespace detail

inline BuiltGroup parse_group_definition(std::string_view text, std::size_t bound = kDefaultOrderBound) {
  return detail::DefinitionParser(text, bound).parse();
}

}  // namespace roq
