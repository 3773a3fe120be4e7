#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lut {

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Primitive connectives of the stored syntax tree.
///
/// Derived connectives (|, ->, <->, the diamond announcement <psi>phi, the
/// unknown-truth operator B_a, and the constant bot) are expanded into these
/// primitives by the parser and by the builder helpers below; they never
/// appear in a stored Formula.
enum class Conn : std::uint8_t { Atom, Top, Neg, And, Know, Ann, Unk };

/// Immutable formula node. Subtrees are shared; nodes are never mutated
/// after construction, so formulas are safe to read from any thread.
class Formula {
public:
  Conn conn() const { return conn_; }

  /// Atom name (Conn::Atom only).
  const std::string& atom_name() const { return label_; }
  /// Agent identifier (Conn::Know and Conn::Unk).
  const std::string& agent() const { return label_; }
  /// Operand of Neg, or body of Know / Unk.
  const FormulaPtr& child() const { return a_; }
  /// Conjuncts (Conn::And).
  const FormulaPtr& lhs() const { return a_; }
  const FormulaPtr& rhs() const { return b_; }
  /// Announced formula and body (Conn::Ann).
  const FormulaPtr& announced() const { return a_; }
  const FormulaPtr& body() const { return b_; }

private:
  friend FormulaPtr make_node(Conn c, std::string label, FormulaPtr a, FormulaPtr b);

  Formula(Conn c, std::string label, FormulaPtr a, FormulaPtr b)
      : conn_(c), label_(std::move(label)), a_(std::move(a)), b_(std::move(b)) {}

  Conn conn_;
  std::string label_;
  FormulaPtr a_;
  FormulaPtr b_;
};

/// Structural equality.
bool operator==(const Formula& a, const Formula& b);
inline bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }
inline bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  return a == b || (a && b && *a == *b);
}

// Primitive constructors.
FormulaPtr atom(std::string name);
FormulaPtr top();
FormulaPtr neg(FormulaPtr f);
FormulaPtr conj(FormulaPtr l, FormulaPtr r);
FormulaPtr know(std::string agent, FormulaPtr f);
FormulaPtr ann(FormulaPtr announced, FormulaPtr body);
FormulaPtr unk(std::string agent, FormulaPtr f);

// Derived forms, expanded to primitives on construction.
FormulaPtr bot();                                        // ~top
FormulaPtr disj(FormulaPtr l, FormulaPtr r);             // ~(~l & ~r)
FormulaPtr impl(FormulaPtr l, FormulaPtr r);             // ~(l & ~r)
FormulaPtr iff(FormulaPtr l, FormulaPtr r);              // (l -> r) & (r -> l)
FormulaPtr diam(FormulaPtr announced, FormulaPtr body);  // ~[announced]~body
FormulaPtr bullet(std::string agent, FormulaPtr f);      // f & ~K_a f

/// Complexity of a formula: U-depth first, then size, compared
/// lexicographically. Sizes grow multiplicatively under announcement
/// ((5 + S(announced)) * S(body)) and saturate instead of overflowing.
struct Complexity {
  std::uint32_t udepth = 0;
  std::uint64_t size = 1;
  friend auto operator<=>(const Complexity&, const Complexity&) = default;
};

Complexity measures(const Formula& f);
inline Complexity measures(const FormulaPtr& f) { return measures(*f); }

/// Strict lexicographic order on (udepth, size).
bool less_complex(const Formula& a, const Formula& b);
inline bool less_complex(const FormulaPtr& a, const FormulaPtr& b) {
  return less_complex(*a, *b);
}

/// Epistemic fragment: no announcement and no U operator.
bool is_el(const Formula& f);
inline bool is_el(const FormulaPtr& f) { return is_el(*f); }
/// Announcement fragment: no U operator.
bool is_pal(const Formula& f);
inline bool is_pal(const FormulaPtr& f) { return is_pal(*f); }

/// Atom / agent names occurring in a formula, sorted and deduplicated.
std::vector<std::string> collect_atoms(const Formula& f);
std::vector<std::string> collect_agents(const Formula& f);

struct parse_error : std::runtime_error {
  parse_error(const std::string& what, std::size_t offset);
  std::size_t offset;  // byte offset into the input
};

/// Parses the ASCII grammar:
///
///   formula := iff
///   iff     := imp ("<->" imp)*
///   imp     := or ("->" imp)?                    right associative
///   or      := and ("|" and)*
///   and     := unary ("&" unary)*
///   unary   := "~" unary | "K_" IDENT unary | "U_" IDENT unary
///            | "B_" IDENT unary | "[" formula "]" unary
///            | "<" formula ">" unary | "top" | "bot" | IDENT
///            | "(" formula ")"
///   IDENT   := [a-z][a-zA-Z0-9]*
///
/// Whitespace is insignificant; "top" and "bot" are reserved words.
FormulaPtr parse_formula(std::string_view text);

/// Renders with minimal parentheses; parse_formula(render(f)) == f.
std::string render(const Formula& f);
inline std::string render(const FormulaPtr& f) { return render(*f); }

}  // namespace lut
