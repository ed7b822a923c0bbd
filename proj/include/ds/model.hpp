#pragma once

#include <cctype>
#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ds/propagation.hpp"

namespace ds {

struct ModelSource {
  std::string text;
  std::string provenance;  // file path or "<stdin>"
};

namespace dsl {

struct Token {
  enum Kind { Atom, LBrace, RBrace, Comma, Equal, Colon, Arrow, Pipe, End };
  Kind kind;
  std::string text;
  int line;
  int column;
};

inline const char* kind_name(Token::Kind k) {
  switch (k) {
    case Token::Atom: return "identifier";
    case Token::LBrace: return "'{'";
    case Token::RBrace: return "'}'";
    case Token::Comma: return "','";
    case Token::Equal: return "'='";
    case Token::Colon: return "':'";
    case Token::Arrow: return "'->'";
    case Token::Pipe: return "'|'";
    case Token::End: return "end of input";
  }
  return "?";
}

inline bool is_atom_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

inline std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    int tl = line, tc = col;
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      out.push_back({Token::Arrow, "->", tl, tc});
      advance(2);
      continue;
    }
    switch (c) {
      case '{': out.push_back({Token::LBrace, "{", tl, tc}); advance(1); continue;
      case '}': out.push_back({Token::RBrace, "}", tl, tc}); advance(1); continue;
      case ',': out.push_back({Token::Comma, ",", tl, tc}); advance(1); continue;
      case '=': out.push_back({Token::Equal, "=", tl, tc}); advance(1); continue;
      case ':': out.push_back({Token::Colon, ":", tl, tc}); advance(1); continue;
      case '|': out.push_back({Token::Pipe, "|", tl, tc}); advance(1); continue;
      default: break;
    }
    if (is_atom_char(c)) {
      std::size_t j = i;
      while (j < text.size() && is_atom_char(text[j])) ++j;
      out.push_back({Token::Atom, text.substr(i, j - i), tl, tc});
      advance(j - i);
      continue;
    }
    throw parse_error(tl, tc, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Token::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : tokens_(lex(text)) {}

  ChainModel parse() {
    while (peek().kind != Token::End) {
      const Token& t = peek();
      if (t.kind != Token::Atom)
        throw parse_error(t.line, t.column,
                          "expected a statement, got " + describe(t));
      if (t.text == "variable") parse_variable();
      else if (t.text == "link") parse_link();
      else if (t.text == "belief") parse_belief();
      else
        throw parse_error(t.line, t.column,
                          "expected 'variable', 'link' or 'belief', got '" + t.text + "'");
    }
    return assemble();
  }

 private:
  struct RawLink {
    std::string from, to;
    Method method;
    std::vector<MassFunction> rows;
    Token loc;
  };

  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  static std::string describe(const Token& t) {
    if (t.kind == Token::Atom) return "'" + t.text + "'";
    return kind_name(t.kind);
  }

  const Token& expect(Token::Kind kind) {
    const Token& t = next();
    if (t.kind != kind)
      throw parse_error(t.line, t.column,
                        std::string("expected ") + kind_name(kind) + ", got " + describe(t));
    return t;
  }

  const Token& expect_keyword(const std::string& word) {
    const Token& t = next();
    if (t.kind != Token::Atom || t.text != word)
      throw parse_error(t.line, t.column, "expected '" + word + "', got " + describe(t));
    return t;
  }

  const Variable& resolve_variable(const Token& name) const {
    for (const auto& v : variables_)
      if (v.name == name.text) return v;
    throw parse_error(name.line, name.column, "unknown variable '" + name.text + "'");
  }

  std::size_t resolve_value(const Variable& var, const Token& value) const {
    for (std::size_t i = 0; i < var.values.size(); ++i)
      if (var.values[i] == value.text) return i;
    throw parse_error(value.line, value.column,
                      "unknown value '" + value.text + "' for variable " + var.name);
  }

  double parse_number(const Token& t) const {
    if (t.kind != Token::Atom)
      throw parse_error(t.line, t.column, "expected a number, got " + describe(t));
    double v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc{} || p != t.text.data() + t.text.size())
      throw parse_error(t.line, t.column, "expected a number, got '" + t.text + "'");
    return v;
  }

  void parse_variable() {
    next();  // "variable"
    const Token& name = expect(Token::Atom);
    for (const auto& v : variables_)
      if (v.name == name.text)
        throw parse_error(name.line, name.column,
                          "duplicate variable '" + name.text + "'");
    Variable var{name.text, {}};
    expect(Token::LBrace);
    var.values.push_back(expect(Token::Atom).text);
    while (peek().kind == Token::Comma) {
      next();
      var.values.push_back(expect(Token::Atom).text);
    }
    expect(Token::RBrace);
    try {
      validate_variable(var);
    } catch (const model_error& e) {
      throw parse_error(name.line, name.column, e.what());
    }
    variables_.push_back(std::move(var));
  }

  // massmap := "{" [ subset "=" NUMBER ("," subset "=" NUMBER)* ] "}"
  // An empty map is a vacuous mass function (all mass uncommitted).
  MassFunction parse_massmap(const Variable& var) {
    Frame frame({var});
    std::vector<std::pair<ConfigSet, double>> entries;
    expect(Token::LBrace);
    if (peek().kind != Token::RBrace) {
      for (;;) {
        std::uint64_t bits = 1ull << resolve_value(var, expect(Token::Atom));
        while (peek().kind == Token::Pipe) {
          next();
          bits |= 1ull << resolve_value(var, expect(Token::Atom));
        }
        expect(Token::Equal);
        entries.emplace_back(ConfigSet(frame, bits), parse_number(next()));
        if (peek().kind != Token::Comma) break;
        next();
      }
    }
    expect(Token::RBrace);
    return make_mass(frame, entries);
  }

  void parse_link() {
    const Token& kw = next();  // "link"
    const Token& from = expect(Token::Atom);
    expect(Token::Arrow);
    const Token& to = expect(Token::Atom);
    const Variable ant = resolve_variable(from);
    const Variable cons = resolve_variable(to);
    expect_keyword("method");
    const Token& mtok = expect(Token::Atom);
    Method method;
    try {
      method = method_from_string(mtok.text);
    } catch (const model_error& e) {
      throw parse_error(mtok.line, mtok.column, e.what());
    }
    expect(Token::LBrace);
    std::vector<std::optional<MassFunction>> rows(ant.values.size());
    while (peek().kind == Token::Atom && peek().text == "given") {
      next();
      const Token& gname = expect(Token::Atom);
      if (gname.text != ant.name)
        throw parse_error(gname.line, gname.column,
                          "rule must condition on the antecedent '" + ant.name + "'");
      expect(Token::Equal);
      const Token& gval = expect(Token::Atom);
      std::size_t idx = resolve_value(ant, gval);
      if (rows[idx])
        throw parse_error(gval.line, gval.column,
                          "duplicate rule for " + ant.name + "=" + gval.text);
      expect(Token::Colon);
      rows[idx] = parse_massmap(cons);
    }
    expect(Token::RBrace);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (!rows[i])
        throw parse_error(kw.line, kw.column,
                          "missing rule for " + ant.name + "=" + ant.values[i]);
    std::vector<MassFunction> built;
    built.reserve(rows.size());
    for (auto& r : rows) built.push_back(std::move(*r));
    links_.push_back({from.text, to.text, method, std::move(built), kw});
  }

  void parse_belief() {
    const Token& kw = next();  // "belief"
    const Token& name = expect(Token::Atom);
    const Variable var = resolve_variable(name);
    expect(Token::Colon);
    MassFunction m = parse_massmap(var);
    if (belief_)
      throw parse_error(kw.line, kw.column, "duplicate belief declaration");
    belief_ = std::move(m);
    belief_variable_ = name.text;
    belief_loc_ = name;
  }

  ChainModel assemble() {
    const Token& end = tokens_.back();
    if (variables_.empty())
      throw parse_error(end.line, end.column, "model declares no variables");
    if (!belief_)
      throw parse_error(end.line, end.column, "model needs exactly one belief declaration");
    if (links_.size() + 1 != variables_.size())
      throw parse_error(end.line, end.column,
                        "chain discontinuity: " + std::to_string(variables_.size()) +
                            " variables need " + std::to_string(variables_.size() - 1) +
                            " links, got " + std::to_string(links_.size()));
    for (std::size_t i = 0; i < links_.size(); ++i) {
      if (links_[i].from != variables_[i].name || links_[i].to != variables_[i + 1].name)
        throw parse_error(links_[i].loc.line, links_[i].loc.column,
                          "chain discontinuity: expected link " + variables_[i].name +
                              " -> " + variables_[i + 1].name);
    }
    if (belief_variable_ != variables_[0].name)
      throw parse_error(belief_loc_.line, belief_loc_.column,
                        "belief must be attached to the first variable of the chain ('" +
                            variables_[0].name + "')");
    ChainModel model;
    model.variables = variables_;
    for (auto& l : links_) {
      std::size_t i = &l - links_.data();
      ConditionalBeliefTable table(variables_[i], variables_[i + 1], std::move(l.rows));
      model.links.push_back(build_link(table, l.method));
    }
    model.root_belief = std::move(*belief_);
    model.validate();
    return model;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::vector<Variable> variables_;
  std::vector<RawLink> links_;
  std::optional<MassFunction> belief_;
  std::string belief_variable_;
  Token belief_loc_{};
};

inline std::string format_double(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

}  // namespace dsl

inline ChainModel parse_model(const ModelSource& src) {
  return dsl::Parser(src.text).parse();
}

namespace dsl {

// Committed entries of a mass function on a single-variable frame, the
// uncommitted remainder left implicit.
inline std::string render_massmap(const MassFunction& m) {
  const Variable& var = m.frame().variables()[0];
  std::uint64_t full = (1ull << var.values.size()) - 1;
  std::string out = "{";
  bool first = true;
  for (const auto& f : m.focals()) {
    if (f.set == full) continue;  // implicit remainder
    if (!first) out += ", ";
    first = false;
    bool first_val = true;
    for (std::uint64_t b = f.set; b; b &= b - 1) {
      if (!first_val) out += '|';
      first_val = false;
      out += var.values[static_cast<std::size_t>(std::countr_zero(b))];
    }
    out += " = " + format_double(f.mass);
  }
  out += '}';
  return out;
}

}  // namespace dsl

// Emits a DSL document that parses back to an identical model.
inline std::string render_model(const ChainModel& model) {
  std::string out;
  for (const auto& v : model.variables) {
    out += "variable " + v.name + " {";
    for (std::size_t i = 0; i < v.values.size(); ++i) {
      if (i) out += ", ";
      out += v.values[i];
    }
    out += "}\n";
  }
  for (const auto& link : model.links) {
    const auto& t = link.table;
    out += "\nlink " + t.antecedent().name + " -> " + t.consequent().name + " method " +
           to_string(link.method) + " {\n";
    for (std::size_t i = 0; i < t.rows().size(); ++i)
      out += "  given " + t.antecedent().name + "=" + t.antecedent().values[i] + " : " +
             dsl::render_massmap(t.row(i)) + "\n";
    out += "}\n";
  }
  out += "\nbelief " + model.variables[0].name + " : " +
         dsl::render_massmap(model.root_belief) + "\n";
  return out;
}

}  // namespace ds
