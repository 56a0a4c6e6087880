#include "prockit/equiv.hpp"
#include "prockit/error.hpp"
#include "prockit/expr.hpp"

namespace prockit {

Lts eval_denotational(const ExprPtr& p, const CommFn& g) {
  switch (p->kind) {
    case ExprKind::Var:
      throw Error("open term: variable '" + p->name + "'");
    case ExprKind::Atom:
      return atomic(p->name);
    case ExprKind::Tau:
      return atomic(kTau);
    case ExprKind::Delta:
      return delta();
    case ExprKind::Alt:
      return alt(eval_denotational(p->left, g), eval_denotational(p->right, g));
    case ExprKind::Seq:
      return seq(eval_denotational(p->left, g), eval_denotational(p->right, g));
    case ExprKind::Par:
      return parallel(eval_denotational(p->left, g), eval_denotational(p->right, g), g);
    case ExprKind::Star:
      return star(eval_denotational(p->left, g), eval_denotational(p->right, g));
    case ExprKind::Omega:
      return omega(eval_denotational(p->left, g));
    case ExprKind::Encap:
      return encap(p->labels, eval_denotational(p->left, g));
    case ExprKind::Hide:
      return hide(p->labels, eval_denotational(p->left, g));
    case ExprKind::LeftMerge:
    case ExprKind::CommMerge:
      throw Error("auxiliary merge operators have no transition-system counterpart");
  }
  throw Error("unknown expression kind");
}

namespace {

// Head normal form: a sum of summands `a` (next == nullptr) or `a.next`.
// An empty sum is delta.
struct Hnf;
using HnfPtr = std::shared_ptr<const Hnf>;

struct Summand {
  std::string action;
  HnfPtr next;
};

struct Hnf {
  std::vector<Summand> summands;
};

ExprPtr to_expr(const HnfPtr& h);

std::string key_of(const Summand& s) {
  std::string k = s.action;
  if (s.next) k += "." + print_compact(to_expr(s.next));
  return k;
}

ExprPtr to_expr(const HnfPtr& h) {
  if (h->summands.empty()) return Expr::delta();
  ExprPtr out;
  for (const auto& s : h->summands) {
    ExprPtr term = Expr::atom(s.action);
    if (s.next) term = Expr::seq(term, to_expr(s.next));
    out = out ? Expr::alt(out, term) : term;
  }
  return out;
}

class Expander {
 public:
  explicit Expander(const CommFn& g) : g_(g) {}

  HnfPtr expand(const ExprPtr& p) {
    switch (p->kind) {
      case ExprKind::Atom:
        return single(p->name);
      case ExprKind::Tau:
        return single(kTau);
      case ExprKind::Delta:
        return empty();
      case ExprKind::Alt:
        return sum({expand(p->left), expand(p->right)});
      case ExprKind::Seq:
        return seq(expand(p->left), expand(p->right));
      case ExprKind::Par:
        return par(expand(p->left), expand(p->right));
      case ExprKind::LeftMerge:
        return left_merge(expand(p->left), expand(p->right));
      case ExprKind::CommMerge:
        return comm_merge(expand(p->left), expand(p->right));
      case ExprKind::Encap:
        return encap(p->labels, expand(p->left));
      case ExprKind::Hide:
        return hide(p->labels, expand(p->left));
      case ExprKind::Star:
      case ExprKind::Omega:
        throw Error("expansion does not support iteration");
      case ExprKind::Var:
        throw Error("open term: variable '" + p->name + "'");
    }
    throw Error("unknown expression kind");
  }

 private:
  static HnfPtr single(const std::string& a) { return std::make_shared<Hnf>(Hnf{{Summand{a, nullptr}}}); }
  static HnfPtr empty() { return std::make_shared<Hnf>(); }

  // A1/A2 with A3: concatenation keeping the first copy of duplicate summands.
  static HnfPtr sum(const std::vector<HnfPtr>& parts) {
    auto out = std::make_shared<Hnf>();
    std::set<std::string> seen;
    for (const auto& h : parts) {
      for (const auto& s : h->summands) {
        if (seen.insert(key_of(s)).second) out->summands.push_back(s);
      }
    }
    return out;
  }

  // A4, A5, A7.
  HnfPtr seq(const HnfPtr& x, const HnfPtr& y) {
    auto out = std::make_shared<Hnf>();
    for (const auto& s : x->summands) out->summands.push_back({s.action, s.next ? seq(s.next, y) : y});
    return sum({out});
  }

  // CM1.
  HnfPtr par(const HnfPtr& x, const HnfPtr& y) {
    return sum({left_merge(x, y), left_merge(y, x), comm_merge(x, y)});
  }

  // CM2, CM3, CM4.
  HnfPtr left_merge(const HnfPtr& x, const HnfPtr& y) {
    auto out = std::make_shared<Hnf>();
    for (const auto& s : x->summands) out->summands.push_back({s.action, s.next ? par(s.next, y) : y});
    return sum({out});
  }

  // CF1, CF2, CM5 to CM9.
  HnfPtr comm_merge(const HnfPtr& x, const HnfPtr& y) {
    auto out = std::make_shared<Hnf>();
    for (const auto& a : x->summands) {
      for (const auto& b : y->summands) {
        if (is_tau(a.action) || is_tau(b.action)) continue;
        auto c = g_.get(a.action, b.action);
        if (!c) continue;
        HnfPtr next;
        if (a.next && b.next) {
          next = par(a.next, b.next);
        } else {
          next = a.next ? a.next : b.next;
        }
        out->summands.push_back({*c, next});
      }
    }
    return sum({out});
  }

  // D1 to D4.
  HnfPtr encap(const std::set<std::string>& h, const HnfPtr& x) {
    auto out = std::make_shared<Hnf>();
    for (const auto& s : x->summands) {
      if (h.count(s.action)) continue;
      out->summands.push_back({s.action, s.next ? encap(h, s.next) : nullptr});
    }
    return sum({out});
  }

  // TI1 to TI4.
  HnfPtr hide(const std::set<std::string>& i, const HnfPtr& x) {
    auto out = std::make_shared<Hnf>();
    for (const auto& s : x->summands) {
      out->summands.push_back({i.count(s.action) ? kTau : s.action, s.next ? hide(i, s.next) : nullptr});
    }
    return sum({out});
  }

  const CommFn& g_;
};

}  // namespace

ExprPtr expand_to_basic(const ExprPtr& p, const CommFn& g) {
  if (!is_closed(p)) throw Error("open term: " + print_expr(p));
  return to_expr(Expander(g).expand(p));
}

bool check_law(const ExprPtr& lhs, const ExprPtr& rhs, const std::map<std::string, ExprPtr>& bindings,
               const CommFn& g) {
  constexpr std::size_t kBudget = 1000000;
  auto l = sos_lts(substitute(lhs, bindings), g, kBudget);
  auto r = sos_lts(substitute(rhs, bindings), g, kBudget);
  if (!l.complete || !r.complete) throw Error("state budget exhausted while checking a law");
  return rooted_branching_bisim(l.lts, r.lts).equivalent;
}

}  // namespace prockit
