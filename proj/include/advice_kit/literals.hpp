#pragma once

// Text literals for names, sets and problem fixtures, and lookup of problems by id.
//
//   name     alphabet:bin|nat; prefix:0,1,1; period:0
//   set      open{words: 1; 0,1}   closed{complement: 1; 0,0}   closed{complement: (0,1/2); (3/4,2)}
//   fixture  problem:LLPO; x0:<name>; x1:<name>
//            problem:MLPO_3; vector: 0, 1/2, 1/4
//            problem:LinEq_2,3; matrix: 1,0,0; 0,1,1

#include <cctype>
#include <fstream>
#include <sstream>

#include "advice_kit/complexity.hpp"

namespace advice_kit {

struct LiteralError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::string trim(std::string_view s) {
  auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string_view::npos) return {};
  auto b = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(a, b - a + 1));
}

/// Splits at `sep` outside braces and parentheses.
inline std::vector<std::string> splitTopLevel(std::string_view s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '{' || c == '(') ++depth;
    if (c == '}' || c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

inline Prefix parseSymbols(std::string_view s) {
  Prefix out;
  std::string t = trim(s);
  if (t.empty()) return out;
  for (const auto& part : splitTopLevel(t, ',')) {
    if (part.empty() || !std::all_of(part.begin(), part.end(), [](unsigned char c) { return std::isdigit(c); }))
      throw LiteralError("malformed symbol '" + part + "'");
    out.push_back(std::stoull(part));
  }
  return out;
}

inline std::pair<std::string, std::string> keyValue(const std::string& segment) {
  auto colon = segment.find(':');
  if (colon == std::string::npos) return {"", segment};
  return {trim(segment.substr(0, colon)), trim(segment.substr(colon + 1))};
}

}  // namespace detail

inline bool isNameLiteral(std::string_view s) { return detail::trim(s).rfind("alphabet:", 0) == 0; }

inline Name parseNameLiteral(std::string_view text) {
  std::optional<Alphabet> alphabet;
  Prefix prefix, period{0};
  for (const auto& seg : detail::splitTopLevel(text, ';')) {
    if (seg.empty()) continue;
    auto [k, v] = detail::keyValue(seg);
    if (k == "alphabet") {
      if (v == "bin") alphabet = Alphabet::binary();
      else if (v == "nat") alphabet = Alphabet::natural();
      else throw LiteralError("unknown alphabet '" + v + "'");
    } else if (k == "prefix") {
      prefix = detail::parseSymbols(v);
    } else if (k == "period") {
      period = detail::parseSymbols(v);
      if (period.empty()) throw LiteralError("empty period");
    } else {
      throw LiteralError("unknown name field '" + k + "'");
    }
  }
  if (!alphabet) throw LiteralError("name literal needs alphabet:bin|nat");
  for (Symbol s : prefix)
    if (!alphabet->admits(s)) throw LiteralError("symbol " + std::to_string(s) + " outside the alphabet");
  for (Symbol s : period)
    if (!alphabet->admits(s)) throw LiteralError("symbol " + std::to_string(s) + " outside the alphabet");
  return Name::periodic(*alphabet, prefix, period);
}

inline std::string nameLiteral(const Name& x) {
  const auto* p = x.asPeriodic();
  if (!p) throw LiteralError("only eventually periodic names have literals");
  auto join = [](const Prefix& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
    return s;
  };
  std::string a = x.alphabet().kind() == Alphabet::Kind::Binary ? "bin" : "nat";
  return "alphabet:" + a + ";prefix:" + join(p->prefix) + ";period:" + join(p->period);
}

/// Parsed set literal: open or closed, listed words (Cantor/ℕ) or open balls (reals).
struct SetLiteral {
  bool open = false;
  std::vector<Prefix> words;
  std::vector<RationalBall> balls;

  Name name() const {
    if (!balls.empty()) return openSetOfBalls(balls);
    return open ? openSetName(words) : closedSetName(words);
  }
};

inline SetLiteral parseSetLiteral(std::string_view text) {
  std::string t = detail::trim(text);
  SetLiteral s;
  std::string body;
  if (t.rfind("open{", 0) == 0) {
    s.open = true;
    body = t.substr(5);
  } else if (t.rfind("closed{", 0) == 0) {
    body = t.substr(7);
  } else {
    throw LiteralError("set literal must start with open{ or closed{");
  }
  if (body.empty() || body.back() != '}') throw LiteralError("unterminated set literal");
  body.pop_back();
  auto [k, v] = detail::keyValue(body);
  if (s.open && k != "words") throw LiteralError("open sets list words:");
  if (!s.open && k != "complement") throw LiteralError("closed sets list complement:");
  for (const auto& item : detail::splitTopLevel(v, ';')) {
    if (item.empty()) continue;
    if (item.front() == '(') {
      if (item.back() != ')') throw LiteralError("unterminated interval '" + item + "'");
      auto ends = detail::splitTopLevel(item.substr(1, item.size() - 2), ',');
      if (ends.size() != 2) throw LiteralError("interval needs two endpoints");
      try {
        s.balls.push_back(RationalBall::between(parseRational(ends[0]), parseRational(ends[1])));
      } catch (const std::invalid_argument& e) {
        throw LiteralError(e.what());
      }
    } else {
      s.words.push_back(detail::parseSymbols(item));
    }
  }
  if (!s.balls.empty() && !s.words.empty()) throw LiteralError("set literal mixes words and intervals");
  return s;
}

// Meanings of closed-set literals.

namespace detail {

inline ChoiceMeaning cantorSetMeaning(const std::vector<Prefix>& excluded) {
  std::size_t depth = 1;
  for (const auto& w : excluded) depth = std::max(depth, w.size());
  auto blocked = [&](const Prefix& w) {
    return std::any_of(excluded.begin(), excluded.end(), [&](const Prefix& u) { return isPrefixOf(u, w); });
  };
  std::vector<Prefix> leaves;
  for (std::size_t i = 0; i < (std::size_t{1} << depth); ++i) {
    Prefix w(depth);
    for (std::size_t b = 0; b < depth; ++b) w[b] = (i >> (depth - 1 - b)) & 1;
    if (!blocked(w)) leaves.push_back(w);
  }
  ChoiceMeaning m;
  m.description = "complement of " + std::to_string(excluded.size()) + " cylinders";
  m.measure = ratio(static_cast<long>(leaves.size()), 1L << depth);
  if (leaves.empty()) return m;
  m.answers = {Name::periodic(Alphabet::binary(), leaves.front(), {0}),
               Name::periodic(Alphabet::binary(), leaves.back(), {1})};
  m.sample = [leaves](Rng& r) {
    return Name::periodic(Alphabet::binary(), leaves[r() % leaves.size()], fixtures::randomWord(r, 1 + r() % 8));
  };
  m.consistent = [excluded](const Name& c, std::size_t d) {
    Fuel fuel(defaultFuel());
    auto p = c.prefix(d, fuel);
    return !p || std::none_of(excluded.begin(), excluded.end(), [&](const Prefix& u) { return isPrefixOf(u, *p); });
  };
  return m;
}

inline ChoiceMeaning natSetMeaning(const std::vector<Prefix>& excluded) {
  std::vector<Symbol> out;
  for (const auto& w : excluded) {
    if (w.size() != 1) throw LiteralError("subsets of N exclude one-symbol words");
    out.push_back(w[0]);
  }
  std::vector<Symbol> members;
  for (Symbol n = 0; members.size() < 4; ++n)
    if (std::find(out.begin(), out.end(), n) == out.end()) members.push_back(n);
  ChoiceMeaning m;
  m.description = "N without " + std::to_string(out.size()) + " points";
  for (auto it = members.rbegin(); it != members.rend(); ++it) m.answers.push_back(natName(*it));
  m.sample = [members](Rng& r) { return natName(members[r() % members.size()]); };
  m.consistent = [out](const Name& c, std::size_t) {
    Fuel fuel(defaultFuel());
    auto s = c.at(0, fuel);
    return !s || std::find(out.begin(), out.end(), *s) == out.end();
  };
  return m;
}

/// Complement of the balls inside `hull`, as closed pieces.
inline ChoiceMeaning realSetMeaning(const std::vector<RationalBall>& balls, Interval hull) {
  std::vector<Interval> cut;
  for (const auto& b : balls) cut.push_back(b.closure());
  std::sort(cut.begin(), cut.end(), [](const Interval& a, const Interval& b) { return a.lo() < b.lo(); });
  std::vector<Interval> pieces;
  Rational at = hull.lo();
  for (const auto& c : cut) {
    if (c.lo() > at && at < hull.hi()) pieces.emplace_back(at, std::min(c.lo(), hull.hi()));
    if (c.hi() > at) at = c.hi();
  }
  if (at < hull.hi()) pieces.emplace_back(at, hull.hi());
  ChoiceMeaning m;
  m.description = "union of " + std::to_string(pieces.size()) + " intervals";
  m.pieces = pieces;
  Rational total = 0;
  for (const auto& p : pieces) {
    total += p.width();
    for (const auto& q : {p.lo(), p.hi(), p.midpoint()}) {
      m.points.push_back(q);
      m.answers.push_back(encodeRational(q));
    }
  }
  m.measure = total;
  if (!pieces.empty())
    m.sample = [pieces](Rng& r) {
      const auto& p = pieces[r() % pieces.size()];
      Rational u(static_cast<long>(r() >> 24), 1);
      u /= pow2(40);
      return encodeRational(p.lo() + u * p.width());
    };
  return m;
}

}  // namespace detail

/// Closed-set literal as a fixture of the given choice problem.
inline Fixture setFixture(const std::string& problemId, std::string_view text) {
  SetLiteral s = parseSetLiteral(text);
  if (s.open) throw LiteralError(problemId + " takes a closed set");
  Fixture f{s.name(), {}, detail::trim(text)};
  if (problemId == "C_N") {
    f.meaning = detail::natSetMeaning(s.words);
  } else if (problemId == "C_Cantor" || problemId == "PC_Cantor") {
    f.meaning = detail::cantorSetMeaning(s.words);
  } else if (problemId == "PC_I" || problemId == "PC_R") {
    Interval hull(0, 1);
    if (problemId == "PC_R") {
      Rational lo = 0, hi = 1;
      for (const auto& b : s.balls) {
        lo = std::min(lo, b.lo());
        hi = std::max(hi, b.hi());
      }
      hull = Interval(lo, hi);
    }
    f.meaning = detail::realSetMeaning(s.balls, hull);
  } else {
    throw LiteralError(problemId + " does not take a set");
  }
  return f;
}

// Problems by id.

inline ProblemPtr problemById(const std::string& id) {
  auto suffix = [&](const std::string& head) -> std::optional<std::string> {
    if (id.rfind(head, 0) == 0 && id.size() > head.size()) return id.substr(head.size());
    return std::nullopt;
  };
  try {
    if (id == "LPO") return lpoProblem();
    if (id == "LLPO") return llpoProblem();
    if (auto n = suffix("LPO^")) return lpoPowerProblem(std::stoul(*n));
    if (auto n = suffix("LLPO^")) return llpoPowerProblem(std::stoul(*n));
    if (auto n = suffix("MLPO_")) return mlpoProblem(std::stoul(*n));
    if (id == "Sep") return sepProblem();
    if (id == "C_N") return closedChoiceNatProblem();
    if (id == "C_Cantor") return closedChoiceCantorProblem(false);
    if (id == "PC_Cantor") return closedChoiceCantorProblem(true);
    if (id == "PC_I") return positiveChoiceRealProblem(true);
    if (id == "PC_R") return positiveChoiceRealProblem(false);
    if (id == "SEigen_2xSEigen_2") return seigenPairProblem(2, 2);
    if (auto n = suffix("SEigen_")) return seigenProblem(std::stoul(*n));
    if (auto nm = suffix("LinEq_")) {
      auto comma = nm->find(',');
      if (comma == std::string::npos) throw LiteralError("LinEq_n,m needs two sizes");
      return linEqProblem(std::stoul(nm->substr(0, comma)), std::stoul(nm->substr(comma + 1)));
    }
    if (id == "circle") return circleProblem();
    if (id == "id_Cantor") return identityProblem();
    if (id == "cond-flip") return condFlipProblem();
    if (id == "LPO.cond-flip") return lpoAfterCondFlipProblem();
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const LiteralError*>(&e)) throw;
    throw LiteralError("malformed problem id '" + id + "'");
  }
  throw LiteralError("unknown problem '" + id + "'");
}

// Fixtures.

struct ParsedFixture {
  std::string problemId;
  Fixture fixture;
};

namespace detail {

/// Keys that start a field; `alphabet`, `prefix` and `period` continue a name literal.
inline bool isFieldKey(const std::string& k) {
  static const std::vector<std::string> keys = {"problem", "x", "y", "a", "b", "vector", "matrix", "set"};
  if (std::find(keys.begin(), keys.end(), k) != keys.end()) return true;
  return k.size() > 1 && k[0] == 'x' && std::all_of(k.begin() + 1, k.end(), [](unsigned char c) { return std::isdigit(c); });
}

inline std::vector<std::pair<std::string, std::string>> fixtureFields(std::string_view text) {
  std::string flat(text);
  std::replace(flat.begin(), flat.end(), '\n', ';');
  std::vector<std::pair<std::string, std::string>> fields;
  for (const auto& seg : splitTopLevel(flat, ';')) {
    if (seg.empty() || seg[0] == '#') continue;
    auto [k, v] = keyValue(seg);
    if (isFieldKey(k)) {
      fields.emplace_back(k, v);
    } else {
      if (fields.empty()) throw LiteralError("fixture must start with problem:");
      fields.back().second += ";" + seg;
    }
  }
  return fields;
}

inline Name pointLiteral(const std::string& v, bool real) {
  if (isNameLiteral(v)) return parseNameLiteral(v);
  if (real) return encodeRational(parseRational(v));
  throw LiteralError("expected a name literal, got '" + v + "'");
}

}  // namespace detail

inline ParsedFixture parseFixture(std::string_view text) {
  auto fields = detail::fixtureFields(text);
  std::map<std::string, std::string> f;
  for (auto& [k, v] : fields) {
    if (f.count(k)) throw LiteralError("duplicate field '" + k + "'");
    f[k] = v;
  }
  if (!f.count("problem")) throw LiteralError("fixture needs problem:");
  std::string id = f["problem"];
  auto need = [&](const std::string& k) -> const std::string& {
    auto it = f.find(k);
    if (it == f.end()) throw LiteralError(id + " fixture needs " + k + ":");
    return it->second;
  };
  auto p = problemById(id);
  Fixture fx{Name::zeros(), {}, id};
  try {
    if (id == "LPO" || id == "id_Cantor") {
      fx.name = detail::pointLiteral(need("x"), false);
    } else if (id == "LLPO") {
      fx.name = pairNames(detail::pointLiteral(need("x0"), false), detail::pointLiteral(need("x1"), false));
    } else if (id.rfind("LPO^", 0) == 0) {
      std::size_t n = std::stoul(id.substr(4));
      std::vector<Name> parts;
      for (std::size_t i = 0; i < n; ++i) parts.push_back(detail::pointLiteral(need("x" + std::to_string(i)), false));
      fx.name = tupleNames(parts);
    } else if (id.rfind("MLPO_", 0) == 0) {
      std::size_t n = std::stoul(id.substr(5));
      std::vector<Rational> v;
      for (const auto& q : detail::splitTopLevel(need("vector"), ',')) v.push_back(parseRational(q));
      if (v.size() != n) throw LiteralError(id + " needs " + std::to_string(n) + " entries");
      fx.name = fixtures::rationalVectorName(v);
      fx.meaning = RealVectorMeaning{v};
    } else if (id == "Sep" || id == "cond-flip" || id == "LPO.cond-flip") {
      fx.name = pairNames(detail::pointLiteral(need("x"), false), detail::pointLiteral(need("y"), false));
    } else if (id == "C_N" || id == "C_Cantor" || id == "PC_Cantor" || id == "PC_I" || id == "PC_R") {
      fx = setFixture(id, need("set"));
    } else if (id == "SEigen_2xSEigen_2") {
      auto a = parseMatrix(need("a")), b = parseMatrix(need("b"));
      fx.name = pairNames(fixtures::matrixName(a), fixtures::matrixName(b));
      fx.meaning = MatrixMeaning{kronecker(a, b), std::make_pair(a, b)};
    } else if (id.rfind("SEigen_", 0) == 0 || id.rfind("LinEq_", 0) == 0) {
      auto a = parseMatrix(need("matrix"));
      fx.name = fixtures::matrixName(a);
      fx.meaning = MatrixMeaning{a, {}};
    } else if (id == "circle") {
      const std::string& v = need("x");
      if (isNameLiteral(v)) {
        fx.name = parseNameLiteral(v);
      } else {
        Rational q = parseRational(v);
        fx.name = encodeRational(q);
        fx.meaning = CirclePoint{true};
      }
    } else {
      throw LiteralError("no fixture grammar for " + id);
    }
  } catch (const LiteralError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw LiteralError(e.what());
  }
  if (p->domainCheck(fx.name, 32) == DomainStatus::DomainViolated)
    throw LiteralError("fixture lies outside the domain of " + id);
  return {id, std::move(fx)};
}

inline ParsedFixture loadFixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LiteralError("cannot read fixture file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parseFixture(ss.str());
}

}  // namespace advice_kit
