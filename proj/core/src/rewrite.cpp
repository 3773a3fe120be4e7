#include "lut/rewrite.hpp"

#include <stdexcept>

namespace lut {

namespace {

std::optional<FormulaPtr> contract(const FormulaPtr& f) {
  if (f->conn() != Conn::Ann) return std::nullopt;
  const FormulaPtr& a = f->announced();
  const FormulaPtr& x = f->body();
  switch (x->conn()) {
    case Conn::Atom:
    case Conn::Top:
      return impl(a, x);
    case Conn::Neg:
      return impl(a, neg(ann(a, x->child())));
    case Conn::And:
      return conj(ann(a, x->lhs()), ann(a, x->rhs()));
    case Conn::Know:
      return impl(a, know(x->agent(), ann(a, x->child())));
    case Conn::Ann:
      return ann(conj(a, ann(a, x->announced())), x->body());
    case Conn::Unk:
      return std::nullopt;  // no reduction equivalence for announced U
  }
  return std::nullopt;
}

}  // namespace

std::optional<FormulaPtr> reduce_once(const FormulaPtr& f) {
  if (auto reduced = contract(f)) return reduced;
  switch (f->conn()) {
    case Conn::Atom:
    case Conn::Top:
      return std::nullopt;
    case Conn::Neg:
      if (auto c = reduce_once(f->child())) return neg(std::move(*c));
      return std::nullopt;
    case Conn::Know:
      if (auto c = reduce_once(f->child())) return know(f->agent(), std::move(*c));
      return std::nullopt;
    case Conn::Unk:
      if (auto c = reduce_once(f->child())) return unk(f->agent(), std::move(*c));
      return std::nullopt;
    case Conn::And:
      if (auto l = reduce_once(f->lhs())) return conj(std::move(*l), f->rhs());
      if (auto r = reduce_once(f->rhs())) return conj(f->lhs(), std::move(*r));
      return std::nullopt;
    case Conn::Ann:
      if (auto a = reduce_once(f->announced())) return ann(std::move(*a), f->body());
      if (auto b = reduce_once(f->body())) return ann(f->announced(), std::move(*b));
      return std::nullopt;
  }
  return std::nullopt;
}

std::vector<FormulaPtr> reduction_chain(const FormulaPtr& f) {
  if (!is_pal(f))
    throw std::invalid_argument("announcement elimination requires a U-free formula");
  std::vector<FormulaPtr> chain{f};
  Complexity prev = measures(f);
  while (auto next = reduce_once(chain.back())) {
    const Complexity cur = measures(*next);
    if (!(cur < prev))
      throw std::logic_error("rewrite step failed to decrease the complexity measure");
    prev = cur;
    chain.push_back(std::move(*next));
  }
  return chain;
}

FormulaPtr eliminate_announcements(const FormulaPtr& f) { return reduction_chain(f).back(); }

}  // namespace lut
