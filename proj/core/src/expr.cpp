#include "prockit/expr.hpp"

#include <algorithm>
#include <sstream>

#include "prockit/error.hpp"

namespace prockit {

namespace {

ExprPtr make(ExprKind kind, ExprPtr l = nullptr, ExprPtr r = nullptr) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->left = std::move(l);
  e->right = std::move(r);
  return e;
}

ExprPtr binary(ExprKind kind, ExprPtr l, ExprPtr r) {
  if (!l || !r) throw Error("missing operand");
  return make(kind, std::move(l), std::move(r));
}

}  // namespace

ExprPtr Expr::var(std::string name) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Var;
  e->name = std::move(name);
  return e;
}

ExprPtr Expr::atom(std::string label) {
  if (is_tau(label)) return tau();
  if (label == kDelta) return delta();
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Atom;
  e->name = std::move(label);
  return e;
}

ExprPtr Expr::tau() { return make(ExprKind::Tau); }
ExprPtr Expr::delta() { return make(ExprKind::Delta); }
ExprPtr Expr::alt(ExprPtr l, ExprPtr r) { return binary(ExprKind::Alt, std::move(l), std::move(r)); }
ExprPtr Expr::seq(ExprPtr l, ExprPtr r) { return binary(ExprKind::Seq, std::move(l), std::move(r)); }
ExprPtr Expr::par(ExprPtr l, ExprPtr r) { return binary(ExprKind::Par, std::move(l), std::move(r)); }
ExprPtr Expr::left_merge(ExprPtr l, ExprPtr r) { return binary(ExprKind::LeftMerge, std::move(l), std::move(r)); }
ExprPtr Expr::comm_merge(ExprPtr l, ExprPtr r) { return binary(ExprKind::CommMerge, std::move(l), std::move(r)); }
ExprPtr Expr::star(ExprPtr l, ExprPtr r) { return binary(ExprKind::Star, std::move(l), std::move(r)); }

ExprPtr Expr::omega(ExprPtr x) {
  if (!x) throw Error("missing operand");
  return make(ExprKind::Omega, std::move(x));
}

ExprPtr Expr::encap(std::set<std::string> h, ExprPtr x) {
  if (!x) throw Error("missing operand");
  if (h.count(kTau)) throw Error("tau cannot be encapsulated");
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Encap;
  e->labels = std::move(h);
  e->left = std::move(x);
  return e;
}

ExprPtr Expr::hide(std::set<std::string> i, ExprPtr x) {
  if (!x) throw Error("missing operand");
  if (i.count(kTau)) throw Error("tau cannot be abstracted from");
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Hide;
  e->labels = std::move(i);
  e->left = std::move(x);
  return e;
}

bool equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->name != b->name || a->labels != b->labels) return false;
  return equal(a->left, b->left) && equal(a->right, b->right);
}

namespace {

void collect_vars(const ExprPtr& p, std::set<std::string>& out) {
  if (!p) return;
  if (p->kind == ExprKind::Var) out.insert(p->name);
  collect_vars(p->left, out);
  collect_vars(p->right, out);
}

}  // namespace

std::set<std::string> free_vars(const ExprPtr& p) {
  std::set<std::string> out;
  collect_vars(p, out);
  return out;
}

bool is_closed(const ExprPtr& p) { return free_vars(p).empty(); }

std::size_t size(const ExprPtr& p) {
  if (!p) return 0;
  return 1 + size(p->left) + size(p->right);
}

namespace {

bool is_mid(ExprKind k) {
  return k == ExprKind::Par || k == ExprKind::LeftMerge || k == ExprKind::CommMerge || k == ExprKind::Star;
}

int level(ExprKind k) {
  switch (k) {
    case ExprKind::Alt:
      return 1;
    case ExprKind::Par:
    case ExprKind::LeftMerge:
    case ExprKind::CommMerge:
    case ExprKind::Star:
      return 2;
    case ExprKind::Seq:
      return 3;
    case ExprKind::Omega:
      return 4;
    default:
      return 5;
  }
}

const char* op_text(ExprKind k) {
  switch (k) {
    case ExprKind::Alt:
      return "+";
    case ExprKind::Seq:
      return ".";
    case ExprKind::Par:
      return "||";
    case ExprKind::LeftMerge:
      return "||_";
    case ExprKind::CommMerge:
      return "|";
    case ExprKind::Star:
      return "*";
    default:
      return "";
  }
}

class Printer {
 public:
  explicit Printer(bool spaced) : spaced_(spaced) {}

  std::string run(const ExprPtr& p) {
    print(p);
    return os_.str();
  }

 private:
  void child(const ExprPtr& c, bool parens) {
    if (parens) os_ << '(';
    print(c);
    if (parens) os_ << ')';
  }

  void labelset(const std::set<std::string>& s) {
    os_ << '{';
    bool first = true;
    for (const auto& a : s) {
      if (!first) os_ << ',';
      first = false;
      os_ << a;
    }
    os_ << '}';
  }

  void print(const ExprPtr& p) {
    switch (p->kind) {
      case ExprKind::Var:
      case ExprKind::Atom:
        os_ << p->name;
        return;
      case ExprKind::Tau:
        os_ << kTau;
        return;
      case ExprKind::Delta:
        os_ << kDelta;
        return;
      case ExprKind::Omega:
        child(p->left, level(p->left->kind) < 4);
        os_ << "^omega";
        return;
      case ExprKind::Encap:
      case ExprKind::Hide:
        os_ << (p->kind == ExprKind::Encap ? "encap(" : "hide(");
        labelset(p->labels);
        os_ << (spaced_ ? ", " : ",");
        print(p->left);
        os_ << ')';
        return;
      default:
        break;
    }
    int lv = level(p->kind);
    ExprKind lk = p->left->kind;
    ExprKind rk = p->right->kind;
    bool lparen = level(lk) < lv || (lv == 2 && is_mid(lk) && lk != p->kind);
    bool rparen = level(rk) <= lv;
    child(p->left, lparen);
    if (p->kind == ExprKind::Seq) {
      os_ << '.';
    } else if (spaced_) {
      os_ << ' ' << op_text(p->kind) << ' ';
    } else {
      os_ << op_text(p->kind);
    }
    child(p->right, rparen);
  }

  bool spaced_;
  std::ostringstream os_;
};

}  // namespace

std::string print_expr(const ExprPtr& p) { return Printer(true).run(p); }
std::string print_compact(const ExprPtr& p) { return Printer(false).run(p); }

namespace {

void flatten_alt(const ExprPtr& p, std::vector<ExprPtr>& out) {
  if (p->kind == ExprKind::Alt) {
    flatten_alt(p->left, out);
    flatten_alt(p->right, out);
  } else {
    out.push_back(p);
  }
}

// Right-nests x.r where x is already normal.
ExprPtr seq_right(const ExprPtr& x, const ExprPtr& r) {
  if (x->kind == ExprKind::Seq) return Expr::seq(x->left, seq_right(x->right, r));
  return Expr::seq(x, r);
}

}  // namespace

ExprPtr normalize(const ExprPtr& p) {
  switch (p->kind) {
    case ExprKind::Var:
    case ExprKind::Atom:
    case ExprKind::Tau:
    case ExprKind::Delta:
      return p;
    case ExprKind::Alt: {
      std::vector<ExprPtr> parts;
      flatten_alt(p, parts);
      std::vector<std::pair<std::string, ExprPtr>> keyed;
      for (const auto& part : parts) {
        auto n = normalize(part);
        std::vector<ExprPtr> inner;
        flatten_alt(n, inner);
        for (auto& i : inner) keyed.emplace_back(print_compact(i), i);
      }
      std::stable_sort(keyed.begin(), keyed.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
      ExprPtr out = keyed.front().second;
      for (std::size_t i = 1; i < keyed.size(); ++i) out = Expr::alt(out, keyed[i].second);
      return out;
    }
    case ExprKind::Seq:
      return seq_right(normalize(p->left), normalize(p->right));
    case ExprKind::Omega:
      return Expr::omega(normalize(p->left));
    case ExprKind::Encap:
      return Expr::encap(p->labels, normalize(p->left));
    case ExprKind::Hide:
      return Expr::hide(p->labels, normalize(p->left));
    default: {
      auto e = std::make_shared<Expr>(*p);
      e->left = normalize(p->left);
      e->right = normalize(p->right);
      return e;
    }
  }
}

ExprPtr substitute(const ExprPtr& p, const std::map<std::string, ExprPtr>& bindings) {
  if (p->kind == ExprKind::Var) {
    auto it = bindings.find(p->name);
    if (it == bindings.end()) throw Error("unbound variable '" + p->name + "'");
    return it->second;
  }
  if (!p->left) return p;
  auto e = std::make_shared<Expr>(*p);
  e->left = substitute(p->left, bindings);
  if (p->right) e->right = substitute(p->right, bindings);
  return e;
}

}  // namespace prockit
