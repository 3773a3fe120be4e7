#include "lut/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace lut {

FormulaPtr make_node(Conn c, std::string label, FormulaPtr a, FormulaPtr b) {
  return FormulaPtr(new Formula(c, std::move(label), std::move(a), std::move(b)));
}

FormulaPtr atom(std::string name) { return make_node(Conn::Atom, std::move(name), nullptr, nullptr); }

FormulaPtr top() {
  static const FormulaPtr instance = make_node(Conn::Top, "", nullptr, nullptr);
  return instance;
}

FormulaPtr neg(FormulaPtr f) { return make_node(Conn::Neg, "", std::move(f), nullptr); }

FormulaPtr conj(FormulaPtr l, FormulaPtr r) {
  return make_node(Conn::And, "", std::move(l), std::move(r));
}

FormulaPtr know(std::string agent, FormulaPtr f) {
  return make_node(Conn::Know, std::move(agent), std::move(f), nullptr);
}

FormulaPtr ann(FormulaPtr announced, FormulaPtr body) {
  return make_node(Conn::Ann, "", std::move(announced), std::move(body));
}

FormulaPtr unk(std::string agent, FormulaPtr f) {
  return make_node(Conn::Unk, std::move(agent), std::move(f), nullptr);
}

FormulaPtr bot() { return neg(top()); }

FormulaPtr disj(FormulaPtr l, FormulaPtr r) { return neg(conj(neg(std::move(l)), neg(std::move(r)))); }

FormulaPtr impl(FormulaPtr l, FormulaPtr r) { return neg(conj(std::move(l), neg(std::move(r)))); }

FormulaPtr iff(FormulaPtr l, FormulaPtr r) { return conj(impl(l, r), impl(r, l)); }

FormulaPtr diam(FormulaPtr announced, FormulaPtr body) {
  return neg(ann(std::move(announced), neg(std::move(body))));
}

FormulaPtr bullet(std::string agent, FormulaPtr f) {
  FormulaPtr known = know(std::move(agent), f);
  return conj(std::move(f), neg(std::move(known)));
}

bool operator==(const Formula& a, const Formula& b) {
  if (&a == &b) return true;
  if (a.conn() != b.conn()) return false;
  switch (a.conn()) {
    case Conn::Atom: return a.atom_name() == b.atom_name();
    case Conn::Top: return true;
    case Conn::Neg: return *a.child() == *b.child();
    case Conn::And: return *a.lhs() == *b.lhs() && *a.rhs() == *b.rhs();
    case Conn::Know:
    case Conn::Unk: return a.agent() == b.agent() && *a.child() == *b.child();
    case Conn::Ann: return *a.announced() == *b.announced() && *a.body() == *b.body();
  }
  return false;
}

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  return __builtin_add_overflow(a, b, &r) ? UINT64_MAX : r;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  return __builtin_mul_overflow(a, b, &r) ? UINT64_MAX : r;
}

}  // namespace

Complexity measures(const Formula& f) {
  switch (f.conn()) {
    case Conn::Atom:
    case Conn::Top: return {0, 1};
    case Conn::Neg: {
      Complexity c = measures(*f.child());
      return {c.udepth, sat_add(c.size, 1)};
    }
    case Conn::And: {
      Complexity l = measures(*f.lhs());
      Complexity r = measures(*f.rhs());
      return {std::max(l.udepth, r.udepth), sat_add(sat_add(l.size, r.size), 1)};
    }
    case Conn::Know: {
      Complexity c = measures(*f.child());
      return {c.udepth, sat_add(c.size, 1)};
    }
    case Conn::Ann: {
      Complexity a = measures(*f.announced());
      Complexity b = measures(*f.body());
      return {a.udepth + b.udepth, sat_mul(sat_add(5, a.size), b.size)};
    }
    case Conn::Unk: {
      Complexity c = measures(*f.child());
      return {c.udepth + 1, sat_add(c.size, 1)};
    }
  }
  return {0, 1};
}

bool less_complex(const Formula& a, const Formula& b) { return measures(a) < measures(b); }

bool is_el(const Formula& f) {
  switch (f.conn()) {
    case Conn::Atom:
    case Conn::Top: return true;
    case Conn::Neg:
    case Conn::Know: return is_el(*f.child());
    case Conn::And: return is_el(*f.lhs()) && is_el(*f.rhs());
    case Conn::Ann:
    case Conn::Unk: return false;
  }
  return false;
}

bool is_pal(const Formula& f) {
  switch (f.conn()) {
    case Conn::Atom:
    case Conn::Top: return true;
    case Conn::Neg:
    case Conn::Know: return is_pal(*f.child());
    case Conn::And: return is_pal(*f.lhs()) && is_pal(*f.rhs());
    case Conn::Ann: return is_pal(*f.announced()) && is_pal(*f.body());
    case Conn::Unk: return false;
  }
  return false;
}

namespace {

void collect_rec(const Formula& f, std::set<std::string>& atoms, std::set<std::string>& agents) {
  switch (f.conn()) {
    case Conn::Atom: atoms.insert(f.atom_name()); return;
    case Conn::Top: return;
    case Conn::Neg: collect_rec(*f.child(), atoms, agents); return;
    case Conn::And:
      collect_rec(*f.lhs(), atoms, agents);
      collect_rec(*f.rhs(), atoms, agents);
      return;
    case Conn::Know:
    case Conn::Unk:
      agents.insert(f.agent());
      collect_rec(*f.child(), atoms, agents);
      return;
    case Conn::Ann:
      collect_rec(*f.announced(), atoms, agents);
      collect_rec(*f.body(), atoms, agents);
      return;
  }
}

}  // namespace

std::vector<std::string> collect_atoms(const Formula& f) {
  std::set<std::string> atoms, agents;
  collect_rec(f, atoms, agents);
  return {atoms.begin(), atoms.end()};
}

std::vector<std::string> collect_agents(const Formula& f) {
  std::set<std::string> atoms, agents;
  collect_rec(f, atoms, agents);
  return {agents.begin(), agents.end()};
}

parse_error::parse_error(const std::string& what, std::size_t off)
    : std::runtime_error(what + " (offset " + std::to_string(off) + ")"), offset(off) {}

namespace {

enum class Tok : std::uint8_t {
  Ident, TopKw, BotKw, KnowOp, UnkOp, BulletOp,
  Tilde, Amp, Pipe, Arrow, Iff,
  LBrack, RBrack, LAngle, RAngle, LParen, RParen, End,
};

struct Token {
  Tok kind;
  std::string text;  // identifier, or agent name for the modal prefixes
  std::size_t offset;
};

bool ident_start(char c) { return c >= 'a' && c <= 'z'; }
bool ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

class Lexer {
public:
  explicit Lexer(std::string_view text) : text_(text) { next(); }

  const Token& peek() const { return cur_; }
  Token take() {
    Token t = cur_;
    next();
    return t;
  }

private:
  std::string lex_ident() {
    std::size_t start = pos_;
    ++pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  void next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::size_t off = pos_;
    if (pos_ >= text_.size()) {
      cur_ = {Tok::End, "", off};
      return;
    }
    const char c = text_[pos_];
    if (ident_start(c)) {
      std::string id = lex_ident();
      if (id == "top") cur_ = {Tok::TopKw, std::move(id), off};
      else if (id == "bot") cur_ = {Tok::BotKw, std::move(id), off};
      else cur_ = {Tok::Ident, std::move(id), off};
      return;
    }
    if (c == 'K' || c == 'U' || c == 'B') {
      if (pos_ + 1 >= text_.size() || text_[pos_ + 1] != '_')
        throw parse_error(std::string("unknown token '") + c + "'", off);
      pos_ += 2;
      if (pos_ >= text_.size() || !ident_start(text_[pos_]))
        throw parse_error(std::string("expected agent name after '") + c + "_'", pos_);
      std::string agent = lex_ident();
      const Tok kind = c == 'K' ? Tok::KnowOp : c == 'U' ? Tok::UnkOp : Tok::BulletOp;
      cur_ = {kind, std::move(agent), off};
      return;
    }
    switch (c) {
      case '~': ++pos_; cur_ = {Tok::Tilde, "~", off}; return;
      case '&': ++pos_; cur_ = {Tok::Amp, "&", off}; return;
      case '|': ++pos_; cur_ = {Tok::Pipe, "|", off}; return;
      case '(': ++pos_; cur_ = {Tok::LParen, "(", off}; return;
      case ')': ++pos_; cur_ = {Tok::RParen, ")", off}; return;
      case '[': ++pos_; cur_ = {Tok::LBrack, "[", off}; return;
      case ']': ++pos_; cur_ = {Tok::RBrack, "]", off}; return;
      case '>': ++pos_; cur_ = {Tok::RAngle, ">", off}; return;
      case '<':
        if (text_.substr(pos_).starts_with("<->")) {
          pos_ += 3;
          cur_ = {Tok::Iff, "<->", off};
        } else {
          ++pos_;
          cur_ = {Tok::LAngle, "<", off};
        }
        return;
      case '-':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
          pos_ += 2;
          cur_ = {Tok::Arrow, "->", off};
          return;
        }
        throw parse_error("unknown token '-'", off);
      default:
        throw parse_error(std::string("unknown token '") + c + "'", off);
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Token cur_{Tok::End, "", 0};
};

class Parser {
public:
  explicit Parser(std::string_view text) : lex_(text) {}

  FormulaPtr parse() {
    FormulaPtr f = parse_iff();
    if (lex_.peek().kind != Tok::End)
      throw parse_error("unexpected trailing input", lex_.peek().offset);
    return f;
  }

private:
  void expect(Tok kind, const char* what) {
    if (lex_.peek().kind != kind)
      throw parse_error(std::string("expected ") + what, lex_.peek().offset);
    lex_.take();
  }

  FormulaPtr parse_iff() {
    FormulaPtr f = parse_imp();
    while (lex_.peek().kind == Tok::Iff) {
      lex_.take();
      f = iff(std::move(f), parse_imp());
    }
    return f;
  }

  FormulaPtr parse_imp() {
    FormulaPtr f = parse_or();
    if (lex_.peek().kind == Tok::Arrow) {
      lex_.take();
      return impl(std::move(f), parse_imp());
    }
    return f;
  }

  FormulaPtr parse_or() {
    FormulaPtr f = parse_and();
    while (lex_.peek().kind == Tok::Pipe) {
      lex_.take();
      f = disj(std::move(f), parse_and());
    }
    return f;
  }

  FormulaPtr parse_and() {
    FormulaPtr f = parse_unary();
    while (lex_.peek().kind == Tok::Amp) {
      lex_.take();
      f = conj(std::move(f), parse_unary());
    }
    return f;
  }

  FormulaPtr parse_unary() {
    const Token t = lex_.peek();
    switch (t.kind) {
      case Tok::Tilde: lex_.take(); return neg(parse_unary());
      case Tok::KnowOp: lex_.take(); return know(t.text, parse_unary());
      case Tok::UnkOp: lex_.take(); return unk(t.text, parse_unary());
      case Tok::BulletOp: lex_.take(); return bullet(t.text, parse_unary());
      case Tok::LBrack: {
        lex_.take();
        FormulaPtr a = parse_iff();
        expect(Tok::RBrack, "']'");
        return ann(std::move(a), parse_unary());
      }
      case Tok::LAngle: {
        lex_.take();
        FormulaPtr a = parse_iff();
        expect(Tok::RAngle, "'>'");
        return diam(std::move(a), parse_unary());
      }
      case Tok::TopKw: lex_.take(); return top();
      case Tok::BotKw: lex_.take(); return bot();
      case Tok::Ident: lex_.take(); return atom(t.text);
      case Tok::LParen: {
        lex_.take();
        FormulaPtr f = parse_iff();
        expect(Tok::RParen, "')'");
        return f;
      }
      default:
        throw parse_error("expected a formula", t.offset);
    }
  }

  Lexer lex_;
};

// The only parenthesised position is a conjunction appearing as a unary
// operand or as the right conjunct of an enclosing conjunction; everything
// else is self-delimiting in the grammar.
void render_rec(const Formula& f, bool protect_and, std::string& out) {
  switch (f.conn()) {
    case Conn::Atom: out += f.atom_name(); return;
    case Conn::Top: out += "top"; return;
    case Conn::Neg:
      out += '~';
      render_rec(*f.child(), true, out);
      return;
    case Conn::Know:
      out += "K_";
      out += f.agent();
      out += ' ';
      render_rec(*f.child(), true, out);
      return;
    case Conn::Unk:
      out += "U_";
      out += f.agent();
      out += ' ';
      render_rec(*f.child(), true, out);
      return;
    case Conn::Ann:
      out += '[';
      render_rec(*f.announced(), false, out);
      out += "] ";
      render_rec(*f.body(), true, out);
      return;
    case Conn::And:
      if (protect_and) out += '(';
      render_rec(*f.lhs(), false, out);
      out += " & ";
      render_rec(*f.rhs(), true, out);
      if (protect_and) out += ')';
      return;
  }
}

}  // namespace

FormulaPtr parse_formula(std::string_view text) { return Parser(text).parse(); }

std::string render(const Formula& f) {
  std::string out;
  render_rec(f, false, out);
  return out;
}

}  // namespace lut
