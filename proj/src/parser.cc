// Copyright 2026 The physk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <algorithm>
#include <set>
#include <sstream>

#include "physk/error.h"
#include "physk/lang.h"

namespace physk {
namespace {

enum class Tok {
  kEnd,
  kIdent,
  kNumber,
  kLParen,
  kRParen,
  kLBrace,
  kRBrace,
  kLBracket,
  kRBracket,
  kComma,
  kColon,
  kColonEq,
  kDot,
  kPlus,
  kMinus,
  kStar,
  kSlash,
  kPow,
  kSMul,
  kNorm,
  kArrow,
  kForall,
  kIn,
  kAnd,
  kOr,
  kEq,
  kNe,
  kLe,
  kLt,
  kGe,
  kGt,
};

struct Token {
  Tok kind;
  std::string text;
  Span span;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::kEnd) return "end of input";
  return "'" + t.text + "'";
}

// Failure inside the recursive descent. Converted to Error at the API
// boundary; the furthest failure wins when alternatives are tried.
struct ParseFailure {
  std::size_t offset;
  std::string message;
};

// Decodes one UTF-8 code point; returns its byte length (1 on bad input).
std::size_t decode(std::string_view s, std::size_t i, char32_t* cp) {
  unsigned char c = static_cast<unsigned char>(s[i]);
  auto cont = [&](std::size_t k) {
    return i + k < s.size() &&
           (static_cast<unsigned char>(s[i + k]) & 0xC0) == 0x80;
  };
  if (c < 0x80) {
    *cp = c;
    return 1;
  }
  if ((c & 0xE0) == 0xC0 && cont(1)) {
    *cp = ((c & 0x1F) << 6) | (s[i + 1] & 0x3F);
    return 2;
  }
  if ((c & 0xF0) == 0xE0 && cont(1) && cont(2)) {
    *cp = ((c & 0x0F) << 12) | ((s[i + 1] & 0x3F) << 6) | (s[i + 2] & 0x3F);
    return 3;
  }
  if ((c & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3)) {
    *cp = ((c & 0x07) << 18) | ((s[i + 1] & 0x3F) << 12) |
          ((s[i + 2] & 0x3F) << 6) | (s[i + 3] & 0x3F);
    return 4;
  }
  *cp = 0xFFFD;
  return 1;
}

std::optional<Tok> unicode_operator(char32_t cp) {
  switch (cp) {
    case 0x2022: return Tok::kSMul;    // •
    case 0x2016: return Tok::kNorm;    // ‖
    case 0x2192: return Tok::kArrow;   // →
    case 0x2200: return Tok::kForall;  // ∀
    case 0x2208: return Tok::kIn;      // ∈
    case 0x2227: return Tok::kAnd;     // ∧
    case 0x2228: return Tok::kOr;      // ∨
    case 0x2260: return Tok::kNe;      // ≠
    case 0x2264: return Tok::kLe;      // ≤
    case 0x2265: return Tok::kGe;      // ≥
    default: return std::nullopt;
  }
}

bool is_ident_char(char32_t cp) {
  if (cp >= 0x80) return !unicode_operator(cp).has_value();
  return std::isalnum(static_cast<int>(cp)) || cp == '_' || cp == '\'';
}

std::vector<Token> tokenize(std::string_view text, std::size_t base) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto emit = [&](Tok kind, std::size_t len) {
    out.push_back(Token{kind, std::string(text.substr(i, len)),
                        Span{base + i, base + i + len}});
    i += len;
  };
  auto at = [&](std::size_t k) -> char {
    return i + k < text.size() ? text[i + k] : '\0';
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    if (c == '-' && at(1) == '-') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j + 1 < text.size() && text[j] == '.' &&
          std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
        ++j;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      }
      if (j < text.size() && (text[j] == 'e' || text[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < text.size() && (text[k] == '+' || text[k] == '-')) ++k;
        if (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) {
          while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
          j = k;
        }
      }
      emit(Tok::kNumber, j - i);
      continue;
    }
    char32_t cp;
    std::size_t len = decode(text, i, &cp);
    if (auto op = unicode_operator(cp)) {
      emit(*op, len);
      continue;
    }
    if (is_ident_char(cp)) {
      std::size_t j = i;
      while (j < text.size()) {
        char32_t next;
        std::size_t l = decode(text, j, &next);
        if (!is_ident_char(next)) break;
        j += l;
      }
      std::string_view word = text.substr(i, j - i);
      Tok kind = Tok::kIdent;
      if (word == "forall") kind = Tok::kForall;
      if (word == "in") kind = Tok::kIn;
      emit(kind, j - i);
      continue;
    }
    switch (c) {
      case '(': emit(Tok::kLParen, 1); break;
      case ')': emit(Tok::kRParen, 1); break;
      case '{': emit(Tok::kLBrace, 1); break;
      case '}': emit(Tok::kRBrace, 1); break;
      case '[': emit(Tok::kLBracket, 1); break;
      case ']': emit(Tok::kRBracket, 1); break;
      case ',': emit(Tok::kComma, 1); break;
      case '.': emit(Tok::kDot, 1); break;
      case '+': emit(Tok::kPlus, 1); break;
      case '^': emit(Tok::kPow, 1); break;
      case '=': emit(Tok::kEq, 1); break;
      case ':':
        if (at(1) == '=') emit(Tok::kColonEq, 2); else emit(Tok::kColon, 1);
        break;
      case '-':
        if (at(1) == '>') emit(Tok::kArrow, 2); else emit(Tok::kMinus, 1);
        break;
      case '*':
        if (at(1) == '*') emit(Tok::kPow, 2);
        else if (at(1) == '.') emit(Tok::kSMul, 2);
        else emit(Tok::kStar, 1);
        break;
      case '/':
        if (at(1) == '\\') emit(Tok::kAnd, 2); else emit(Tok::kSlash, 1);
        break;
      case '\\':
        if (at(1) == '/') {
          emit(Tok::kOr, 2);
        } else {
          throw ParseFailure{base + i, "unexpected character '\\'"};
        }
        break;
      case '!':
        if (at(1) == '=') {
          emit(Tok::kNe, 2);
        } else {
          throw ParseFailure{base + i, "unexpected character '!'"};
        }
        break;
      case '<':
        if (at(1) == '=') emit(Tok::kLe, 2); else emit(Tok::kLt, 1);
        break;
      case '>':
        if (at(1) == '=') emit(Tok::kGe, 2); else emit(Tok::kGt, 1);
        break;
      default:
        throw ParseFailure{base + i, "unexpected character '" +
                                         std::string(text.substr(i, len)) +
                                         "'"};
    }
  }
  out.push_back(Token{Tok::kEnd, "", Span{base + text.size(), base + text.size()}});
  return out;
}

std::optional<ElementaryFn> elementary(std::string_view name) {
  if (name == "sin") return ElementaryFn::kSin;
  if (name == "cos") return ElementaryFn::kCos;
  if (name == "log") return ElementaryFn::kLog;
  if (name == "exp") return ElementaryFn::kExp;
  if (name == "sqrt") return ElementaryFn::kSqrt;
  return std::nullopt;
}

bool is_qualifier(std::string_view name) {
  return name == "Real" || name == "SI" || name == "Scalar";
}

bool is_real_type(std::string_view name) {
  return name == "ℝ" || name == "ℚ" || name == "ℤ";
}

std::string exponent_text(const BigRational& e) {
  if (boost::multiprecision::denominator(e) == 1 && e >= 0) {
    return to_string(e);
  }
  return "(" + to_string(e) + ")";
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::string_view source,
         std::size_t source_base, const UnitDb& db)
      : toks_(std::move(tokens)),
        source_(source),
        source_base_(source_base),
        db_(db) {}

  void set_statement(const Statement* s) { stmt_ = s; }
  void push_bound(const std::string& name, const KindRef& kind) {
    bound_.emplace_back(name, kind);
  }

  Statement statement(Metadata meta) {
    Statement s;
    s.meta = std::move(meta);
    stmt_ = &s;
    Token kw = expect(Tok::kIdent, "'theorem'");
    if (kw.text != "theorem") fail(kw, "expected 'theorem'");
    s.name = expect(Tok::kIdent, "theorem name").text;
    if (!s.meta.name.empty() && s.meta.name != s.name) {
      fail(toks_[pos_ - 1], "theorem name '" + s.name +
                                "' differs from front-matter name '" +
                                s.meta.name + "'");
    }
    std::set<std::string> names;
    auto claim = [&](const Token& t) {
      if (!names.insert(t.text).second) {
        fail(t, "duplicate name '" + t.text + "'");
      }
    };
    while (peek().kind == Tok::kLParen) {
      std::size_t open = pos_;
      advance();
      std::vector<Token> ids;
      while (peek().kind == Tok::kIdent) ids.push_back(advance());
      if (ids.empty()) fail(peek(), "expected binder name");
      if (ids.size() == 1 && peek().kind == Tok::kColonEq) {
        advance();
        claim(ids[0]);
        PropPtr p = prop();
        Token close = expect(Tok::kRParen, "')'");
        s.hyps.push_back(Hypothesis{ids[0].text, p,
                                    Span{toks_[open].span.begin,
                                         close.span.end}});
        continue;
      }
      expect(Tok::kColon, "':' or ':='");
      std::size_t after_colon = pos_;
      std::optional<ParseFailure> kind_failure;
      try {
        auto [domain, kind] = decl_kind();
        Token close = expect(Tok::kRParen, "')'");
        for (const Token& id : ids) {
          claim(id);
          s.decls.push_back(Decl{id.text, domain, kind,
                                 Span{toks_[open].span.begin,
                                      close.span.end}});
        }
        continue;
      } catch (const ParseFailure& f) {
        if (ids.size() > 1) throw;
        kind_failure = f;
      }
      pos_ = after_colon;
      try {
        PropPtr p = prop();
        Token close = expect(Tok::kRParen, "')'");
        claim(ids[0]);
        s.hyps.push_back(Hypothesis{ids[0].text, p,
                                    Span{toks_[open].span.begin,
                                         close.span.end}});
      } catch (const ParseFailure& f) {
        throw f.offset >= kind_failure->offset ? f : *kind_failure;
      }
    }
    expect(Tok::kColon, "'(' or ':'");
    s.goal = prop();
    if (peek().kind == Tok::kColonEq) {
      // Tolerate a trailing `:= by sorry` from pasted statements.
      advance();
      Token by = expect(Tok::kIdent, "'by'");
      Token sorry = expect(Tok::kIdent, "'sorry'");
      if (by.text != "by" || sorry.text != "sorry") {
        fail(by, "proofs are not part of statement files");
      }
    }
    expect(Tok::kEnd, "end of statement");
    stmt_ = nullptr;
    return s;
  }

  ExprPtr expr_only() {
    ExprPtr e = expr();
    expect(Tok::kEnd, "end of expression");
    return e;
  }

  PropPtr prop_only() {
    PropPtr p = prop();
    expect(Tok::kEnd, "end of proposition");
    return p;
  }

 private:
  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  Token advance() {
    Token t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    advance();
    return true;
  }
  Token expect(Tok kind, const std::string& what) {
    if (peek().kind != kind) {
      fail(peek(), "unexpected " + describe(peek()) + "; expected " + what);
    }
    return advance();
  }
  [[noreturn]] void fail(const Token& at, const std::string& message) const {
    throw ParseFailure{at.span.begin, message};
  }
  Span from(const Span& start) const {
    return Span{start.begin, toks_[pos_ == 0 ? 0 : pos_ - 1].span.end};
  }

  // ---- kinds ----

  std::pair<std::optional<KindRef>, KindRef> decl_kind() {
    KindRef first = kind_expr();
    if (accept(Tok::kArrow)) {
      KindRef second = kind_expr();
      return {first, second};
    }
    return {std::nullopt, first};
  }

  KindRef kind_expr() {
    KindRef k = kind_atom();
    while (peek().kind == Tok::kStar || peek().kind == Tok::kSlash) {
      bool mul = advance().kind == Tok::kStar;
      KindRef rhs = kind_atom();
      k.text += mul ? " * " : " / ";
      k.text += rhs.text;
      k.dim = mul ? dim_combine(k.dim, rhs.dim) : dim_divide(k.dim, rhs.dim);
    }
    return k;
  }

  KindRef kind_atom() {
    KindRef k;
    if (accept(Tok::kLParen)) {
      KindRef inner = kind_expr();
      expect(Tok::kRParen, "')'");
      k = KindRef{"(" + inner.text + ")", inner.dim};
    } else if (peek().kind == Tok::kLBrace) {
      Token open = advance();
      while (peek().kind != Tok::kRBrace && peek().kind != Tok::kEnd) advance();
      Token close = expect(Tok::kRBrace, "'}'");
      std::string_view raw = source_.substr(
          open.span.end - source_base_, close.span.begin - open.span.end);
      auto dim = Dimension::parse(raw);
      if (!dim) fail(open, "malformed dimension literal '{" + std::string(raw) + "}'");
      k = kind_of_dimension(*dim);
    } else {
      Token name = expect(Tok::kIdent, "kind");
      if (is_real_type(name.text)) {
        k = KindRef{name.text, Dimension()};
      } else if (const KindAlias* alias = db_.find_kind(name.text)) {
        k = KindRef{name.text, alias->dim};
      } else {
        std::string msg = "unknown kind '" + name.text + "'";
        auto near = db_.near_matches(name.text);
        if (!near.empty()) msg += "; did you mean " + near.front() + "?";
        fail(name, msg);
      }
    }
    if (accept(Tok::kPow)) {
      BigRational e = exponent();
      k.text += "^" + exponent_text(e);
      k.dim = dim_scale(k.dim, SmallRational::from_big(e));
    }
    return k;
  }

  BigRational exponent() {
    bool paren = accept(Tok::kLParen);
    bool negative = accept(Tok::kMinus);
    Token n = expect(Tok::kNumber, "exponent");
    BigRational value = *parse_decimal(n.text);
    if (paren && accept(Tok::kSlash)) {
      Token d = expect(Tok::kNumber, "exponent denominator");
      BigRational den = *parse_decimal(d.text);
      if (den == 0) fail(d, "zero exponent denominator");
      value /= den;
    }
    if (paren) expect(Tok::kRParen, "')'");
    return negative ? BigRational(-value) : value;
  }

  // ---- propositions ----

  PropPtr prop() {
    Span start = peek().span;
    PropPtr left = or_prop();
    if (accept(Tok::kArrow)) {
      PropPtr right = prop();
      return make_connective(PropKind::kImplies, left, right, from(start));
    }
    return left;
  }

  PropPtr or_prop() {
    Span start = peek().span;
    PropPtr left = and_prop();
    if (accept(Tok::kOr)) {
      PropPtr right = or_prop();
      return make_connective(PropKind::kOr, left, right, from(start));
    }
    return left;
  }

  PropPtr and_prop() {
    Span start = peek().span;
    PropPtr left = prop_atom();
    if (accept(Tok::kAnd)) {
      PropPtr right = and_prop();
      return make_connective(PropKind::kAnd, left, right, from(start));
    }
    return left;
  }

  PropPtr prop_atom() {
    Span start = peek().span;
    if (accept(Tok::kForall)) {
      Token var = expect(Tok::kIdent, "bound variable");
      if (accept(Tok::kIn)) {
        expect(Tok::kLBrace, "'{'");
        std::vector<ExprPtr> values;
        values.push_back(expr());
        while (accept(Tok::kComma)) values.push_back(expr());
        expect(Tok::kRBrace, "'}'");
        expect(Tok::kComma, "','");
        bound_.emplace_back(var.text, KindRef{"Int", Dimension()});
        PropPtr body = prop();
        bound_.pop_back();
        return make_forall_finite(var.text, std::move(values), body,
                                  from(start));
      }
      KindRef kind{"Real", Dimension()};
      if (accept(Tok::kColon)) {
        kind = kind_expr();
      } else if (const Decl* d = lookup_decl(var.text);
                 d != nullptr && !d->is_function()) {
        kind = d->kind;
      }
      expect(Tok::kComma, "','");
      bound_.emplace_back(var.text, kind);
      PropPtr body = prop();
      bound_.pop_back();
      return make_forall_fn(var.text, kind, body, from(start));
    }
    if (peek().kind == Tok::kLParen) {
      std::size_t save = pos_;
      try {
        return comparison();
      } catch (const ParseFailure& first) {
        pos_ = save;
        try {
          advance();
          PropPtr inner = prop();
          expect(Tok::kRParen, "')'");
          return inner;
        } catch (const ParseFailure& second) {
          throw second.offset >= first.offset ? second : first;
        }
      }
    }
    return comparison();
  }

  PropPtr comparison() {
    Span start = peek().span;
    ExprPtr lhs = expr();
    Token op = advance();
    PropKind kind;
    bool swap = false;
    switch (op.kind) {
      case Tok::kEq: kind = PropKind::kEq; break;
      case Tok::kNe: kind = PropKind::kNe; break;
      case Tok::kLe: kind = PropKind::kLe; break;
      case Tok::kLt: kind = PropKind::kLt; break;
      case Tok::kGe: kind = PropKind::kLe; swap = true; break;
      case Tok::kGt: kind = PropKind::kLt; swap = true; break;
      default:
        fail(op, "unexpected " + describe(op) +
                     "; expected one of = ≠ < ≤ > ≥ or an operator");
    }
    ExprPtr rhs = expr();
    if (swap) std::swap(lhs, rhs);
    return make_cmp(kind, lhs, rhs, from(start));
  }

  // ---- expressions ----

  ExprPtr expr() {
    Span start = peek().span;
    ExprPtr left = mul_expr();
    while (peek().kind == Tok::kPlus || peek().kind == Tok::kMinus) {
      ExprKind kind = advance().kind == Tok::kPlus ? ExprKind::kAdd
                                                   : ExprKind::kSub;
      ExprPtr right = mul_expr();
      left = make_binary(kind, left, right, from(start));
    }
    return left;
  }

  ExprPtr mul_expr() {
    Span start = peek().span;
    ExprPtr left = smul_expr();
    while (peek().kind == Tok::kStar || peek().kind == Tok::kSlash) {
      ExprKind kind = advance().kind == Tok::kStar ? ExprKind::kMul
                                                   : ExprKind::kDiv;
      ExprPtr right = smul_expr();
      left = make_binary(kind, left, right, from(start));
    }
    return left;
  }

  ExprPtr smul_expr() {
    Span start = peek().span;
    ExprPtr left = unary_expr();
    if (accept(Tok::kSMul)) {
      ExprPtr right = smul_expr();
      return make_binary(ExprKind::kSMul, left, right, from(start));
    }
    return left;
  }

  ExprPtr unary_expr() {
    Span start = peek().span;
    if (accept(Tok::kMinus)) {
      ExprPtr arg = unary_expr();
      return make_unary(ExprKind::kNeg, arg, from(start));
    }
    return pow_expr();
  }

  ExprPtr pow_expr() {
    Span start = peek().span;
    ExprPtr base = postfix_expr();
    while (accept(Tok::kPow)) {
      BigRational e = exponent();
      base = make_pow(base, e, from(start));
    }
    return base;
  }

  ExprPtr postfix_expr() {
    Span start = peek().span;
    ExprPtr e = primary();
    while (peek().kind == Tok::kDot && peek(1).kind == Tok::kIdent &&
           peek(1).text == "val") {
      advance();
      advance();
      e = make_unary(ExprKind::kVal, e, from(start));
    }
    return e;
  }

  ExprPtr primary() {
    Span start = peek().span;
    const Token& t = peek();
    switch (t.kind) {
      case Tok::kNumber: {
        Token n = advance();
        auto value = parse_decimal(n.text);
        if (!value) fail(n, "malformed number '" + n.text + "'");
        return make_num(*value, n.span);
      }
      case Tok::kLParen: {
        advance();
        ExprPtr inner = expr();
        expect(Tok::kRParen, "')'");
        return inner;
      }
      case Tok::kNorm: {
        advance();
        ExprPtr inner = expr();
        expect(Tok::kNorm, "closing '‖'");
        return make_unary(ExprKind::kNorm, inner, from(start));
      }
      case Tok::kIdent: break;
      default:
        fail(t, "unexpected " + describe(t) + "; expected expression");
    }
    Token id = advance();
    while (is_qualifier(id.text) && peek().kind == Tok::kDot &&
           peek(1).kind == Tok::kIdent) {
      advance();
      id = advance();
    }
    const std::string& name = id.text;
    if (name == "StandardUnit") {
      if (accept(Tok::kLBracket)) {
        KindRef k = kind_expr();
        expect(Tok::kRBracket, "']'");
        return make_std_unit(k, from(start));
      }
      if (peek().kind == Tok::kIdent && peek().text == "_") advance();
      return make_std_unit(std::nullopt, from(start));
    }
    if (peek().kind == Tok::kLParen) return call(id, start);

    if (is_bound(name)) return make_named(ExprKind::kVar, name, id.span);
    if (lookup_decl(name) != nullptr) {
      return make_named(ExprKind::kVar, name, id.span);
    }
    if (db_.find_unit(name) != nullptr) {
      return make_named(ExprKind::kUnit, name, id.span);
    }
    if (db_.find_constant(name) != nullptr) {
      return make_named(ExprKind::kConst, name, id.span);
    }
    if (name == "pi" || name == "π") {
      return make_named(ExprKind::kConst, "π", id.span);
    }
    std::string msg = "undeclared identifier '" + name + "'";
    auto near = db_.near_matches(name);
    if (!near.empty()) msg += "; did you mean " + near.front() + "?";
    fail(id, msg);
  }

  ExprPtr call(const Token& id, Span start) {
    const std::string& name = id.text;
    expect(Tok::kLParen, "'('");
    auto close = [&] { expect(Tok::kRParen, "')'"); };
    if (name == "val" || name == "norm") {
      ExprPtr arg = expr();
      close();
      return make_unary(name == "val" ? ExprKind::kVal : ExprKind::kNorm, arg,
                        from(start));
    }
    if (name == "cast") {
      ExprPtr arg = expr();
      expect(Tok::kComma, "','");
      KindRef k = kind_expr();
      close();
      return make_cast(arg, k, from(start));
    }
    if (name == "rpow") {
      ExprPtr base = expr();
      expect(Tok::kComma, "','");
      ExprPtr e = expr();
      close();
      return make_binary(ExprKind::kRPow, base, e, from(start));
    }
    if (name == "deriv") {
      Token f = expect(Tok::kIdent, "function variable");
      require_function(f);
      expect(Tok::kComma, "','");
      ExprPtr at = expr();
      close();
      return make_call(ExprKind::kDeriv, f.text, at, from(start));
    }
    if (auto fn = elementary(name)) {
      ExprPtr arg = expr();
      close();
      return make_fn(*fn, arg, from(start));
    }
    if (!is_bound(name)) {
      if (const Decl* d = lookup_decl(name); d != nullptr) {
        require_function(id);
        ExprPtr arg = expr();
        close();
        return make_call(ExprKind::kApply, name, arg, from(start));
      }
      if (db_.find_prefix(name) != nullptr) {
        ExprPtr arg = expr();
        close();
        return make_call(ExprKind::kPrefix, name, arg, from(start));
      }
    }
    fail(id, "'" + name + "' is not a function");
  }

  void require_function(const Token& f) const {
    const Decl* d = is_bound(f.text) ? nullptr : lookup_decl(f.text);
    if (d == nullptr || !d->is_function()) {
      fail(f, "'" + f.text + "' is not a declared function variable");
    }
  }

  bool is_bound(const std::string& name) const {
    return std::any_of(bound_.begin(), bound_.end(),
                       [&](const auto& b) { return b.first == name; });
  }

  const Decl* lookup_decl(const std::string& name) const {
    return stmt_ == nullptr ? nullptr : stmt_->find_decl(name);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::string_view source_;
  std::size_t source_base_;
  const UnitDb& db_;
  const Statement* stmt_ = nullptr;
  std::vector<std::pair<std::string, KindRef>> bound_;
};

Error to_error(std::string_view text, const ParseFailure& f) {
  SourcePos p = source_pos(text, f.offset);
  return Error(ErrorCode::kParseError, std::to_string(p.line) + ":" +
                                           std::to_string(p.column) + ": " +
                                           f.message);
}

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Reads the `---` block, if any. Returns the offset where the theorem text
// starts.
std::size_t front_matter(std::string_view text, const UnitDb& db,
                         Metadata* meta) {
  std::size_t i = 0;
  while (i < text.size() && (text[i] == ' ' || text[i] == '\n' ||
                             text[i] == '\r' || text[i] == '\t')) {
    ++i;
  }
  auto line_end = [&](std::size_t from) {
    std::size_t e = text.find('\n', from);
    return e == std::string_view::npos ? text.size() : e;
  };
  if (trim(text.substr(i, line_end(i) - i)) != "---") return 0;
  std::size_t cur = line_end(i) + 1;
  std::set<std::string> seen;
  while (true) {
    if (cur >= text.size()) {
      throw ParseFailure{text.size(), "unterminated front matter"};
    }
    std::size_t end = line_end(cur);
    std::string line = trim(text.substr(cur, end - cur));
    if (line == "---") return end;
    if (!line.empty()) {
      std::size_t colon = line.find(':');
      if (colon == std::string::npos) {
        throw ParseFailure{cur, "expected 'key: value' in front matter"};
      }
      std::string key = trim(line.substr(0, colon));
      std::string value = trim(line.substr(colon + 1));
      if (!seen.insert(key).second) {
        throw ParseFailure{cur, "duplicate front-matter key '" + key + "'"};
      }
      if (key == "name") {
        meta->name = value;
      } else if (key == "level") {
        meta->level = parse_level(value);
        if (!meta->level) {
          throw ParseFailure{cur, "unknown level '" + value +
                                      "'; expected college, comp-easy or "
                                      "comp-hard"};
        }
      } else if (key == "topic") {
        meta->topic = parse_topic(value);
        if (!meta->topic || *meta->topic == Topic::kFoundation) {
          throw ParseFailure{cur, "unknown topic '" + value + "'"};
        }
      } else if (key == "source") {
        meta->source = value;
      } else if (key == "constants") {
        std::stringstream items(value);
        std::string item;
        while (std::getline(items, item, ',')) {
          std::size_t eq = item.find('=');
          if (eq == std::string::npos) {
            throw ParseFailure{cur, "expected 'name = value' in constants"};
          }
          std::string cname = trim(item.substr(0, eq));
          auto cvalue = parse_rational(trim(item.substr(eq + 1)));
          const ConstantDef* def = db.find_constant(cname);
          if (def == nullptr || !def->configurable) {
            throw ParseFailure{cur, "unknown or fixed constant '" + cname + "'"};
          }
          if (!cvalue) {
            throw ParseFailure{cur, "malformed value for constant '" + cname + "'"};
          }
          meta->constants.emplace_back(cname, *cvalue);
        }
      } else {
        throw ParseFailure{cur, "unknown front-matter key '" + key + "'"};
      }
    }
    cur = end + 1;
  }
}

}  // namespace

SourcePos source_pos(std::string_view text, std::size_t offset) {
  SourcePos p;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.column = 1;
    } else if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
      ++p.column;
    }
  }
  return p;
}

Statement parse_statement(std::string_view text, const UnitDb& db) {
  try {
    Metadata meta;
    std::size_t start = front_matter(text, db, &meta);
    std::string_view body = text.substr(start);
    Parser parser(tokenize(body, start), text, 0, db);
    return parser.statement(std::move(meta));
  } catch (const ParseFailure& f) {
    throw to_error(text, f);
  }
}

ExprPtr parse_expr(std::string_view text, const ExprScope& scope,
                   const UnitDb& db) {
  try {
    Parser parser(tokenize(text, 0), text, 0, db);
    parser.set_statement(scope.statement);
    for (const auto& [name, kind] : scope.bound) parser.push_bound(name, kind);
    return parser.expr_only();
  } catch (const ParseFailure& f) {
    throw to_error(text, f);
  }
}

PropPtr parse_prop(std::string_view text, const ExprScope& scope,
                   const UnitDb& db) {
  try {
    Parser parser(tokenize(text, 0), text, 0, db);
    parser.set_statement(scope.statement);
    for (const auto& [name, kind] : scope.bound) parser.push_bound(name, kind);
    return parser.prop_only();
  } catch (const ParseFailure& f) {
    throw to_error(text, f);
  }
}

}  // namespace physk
