#include <algorithm>
#include <deque>
#include <unordered_map>

#include "prockit/error.hpp"
#include "prockit/expr.hpp"

namespace prockit {

namespace {

class Stepper {
 public:
  Stepper(const CommFn& g, const Defs* defs) : g_(g), defs_(defs) {}

  std::vector<SosMove> step(const ExprPtr& p, std::size_t depth = 0) {
    if (depth > kMaxUnfold) throw Error("unguarded recursion while stepping " + print_expr(p));
    std::vector<SosMove> out;
    switch (p->kind) {
      case ExprKind::Atom:
        out.push_back({p->name, nullptr});
        break;
      case ExprKind::Tau:
        out.push_back({kTau, nullptr});
        break;
      case ExprKind::Delta:
        break;
      case ExprKind::Var: {
        if (defs_ == nullptr) throw Error("open term: variable '" + p->name + "' has no definition");
        auto it = defs_->find(p->name);
        if (it == defs_->end()) throw Error("undefined variable '" + p->name + "'");
        return step(it->second, depth + 1);
      }
      case ExprKind::Alt: {
        out = step(p->left, depth);
        auto r = step(p->right, depth);
        out.insert(out.end(), r.begin(), r.end());
        break;
      }
      case ExprKind::Seq:
        for (auto& m : step(p->left, depth)) {
          out.push_back({m.label, m.target ? Expr::seq(m.target, p->right) : p->right});
        }
        break;
      case ExprKind::Star:
        for (auto& m : step(p->left, depth)) out.push_back({m.label, m.target ? Expr::seq(m.target, p) : p});
        for (auto& m : step(p->right, depth)) out.push_back(m);
        break;
      case ExprKind::Omega:
        for (auto& m : step(p->left, depth)) out.push_back({m.label, m.target ? Expr::seq(m.target, p) : p});
        break;
      case ExprKind::Par: {
        auto ls = step(p->left, depth);
        auto rs = step(p->right, depth);
        for (auto& m : ls) out.push_back({m.label, m.target ? Expr::par(m.target, p->right) : p->right});
        for (auto& m : rs) out.push_back({m.label, m.target ? Expr::par(p->left, m.target) : p->left});
        sync(ls, rs, out);
        break;
      }
      case ExprKind::LeftMerge:
        for (auto& m : step(p->left, depth)) {
          out.push_back({m.label, m.target ? Expr::par(m.target, p->right) : p->right});
        }
        break;
      case ExprKind::CommMerge:
        sync(step(p->left, depth), step(p->right, depth), out);
        break;
      case ExprKind::Encap:
        for (auto& m : step(p->left, depth)) {
          if (p->labels.count(m.label)) continue;
          out.push_back({m.label, m.target ? Expr::encap(p->labels, m.target) : nullptr});
        }
        break;
      case ExprKind::Hide:
        for (auto& m : step(p->left, depth)) {
          std::string label = p->labels.count(m.label) ? kTau : m.label;
          out.push_back({label, m.target ? Expr::hide(p->labels, m.target) : nullptr});
        }
        break;
    }
    return out;
  }

 private:
  static constexpr std::size_t kMaxUnfold = 10000;

  void sync(const std::vector<SosMove>& ls, const std::vector<SosMove>& rs, std::vector<SosMove>& out) const {
    for (const auto& a : ls) {
      if (is_tau(a.label)) continue;
      for (const auto& b : rs) {
        if (is_tau(b.label)) continue;
        auto c = g_.get(a.label, b.label);
        if (!c) continue;
        ExprPtr target;
        if (a.target && b.target) {
          target = Expr::par(a.target, b.target);
        } else if (a.target) {
          target = a.target;
        } else {
          target = b.target;
        }
        out.push_back({*c, target});
      }
    }
  }

  const CommFn& g_;
  const Defs* defs_;
};

std::string state_name(const ExprPtr& p) { return p ? print_compact(p) : kDoneState; }

}  // namespace

std::vector<SosMove> sos_step(const ExprPtr& p, const CommFn& g, const Defs* defs) {
  if (defs == nullptr && !is_closed(p)) throw Error("open term: " + print_expr(p));
  auto moves = Stepper(g, defs).step(p);
  std::vector<std::pair<std::pair<std::string, std::string>, SosMove>> keyed;
  for (auto& m : moves) keyed.push_back({{m.label, state_name(m.target)}, std::move(m)});
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<SosMove> out;
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    if (i > 0 && keyed[i].first == keyed[i - 1].first) continue;
    out.push_back(std::move(keyed[i].second));
  }
  return out;
}

Exploration sos_lts(const ExprPtr& p, const CommFn& g, std::size_t bound, const Defs* defs) {
  if (bound == 0) throw Error("state budget must be positive");
  if (defs == nullptr && !is_closed(p)) throw Error("open term: " + print_expr(p));
  auto report = validate_comm(g);
  if (!report.ok()) throw Error("invalid communication function: " + report.problems.front());
  Exploration ex;
  Stepper stepper(g, defs);
  std::deque<std::pair<std::size_t, ExprPtr>> queue;
  ExprPtr init = normalize(p);
  std::size_t i0 = ex.lts.add_state(state_name(init));
  ex.lts.set_initial(i0);
  queue.emplace_back(i0, init);
  while (!queue.empty()) {
    auto [src, term] = queue.front();
    queue.pop_front();
    std::vector<std::pair<std::string, ExprPtr>> moves;
    for (auto& m : stepper.step(term)) moves.emplace_back(m.label, m.target ? normalize(m.target) : nullptr);
    std::vector<std::tuple<std::string, std::string, ExprPtr>> keyed;
    for (auto& [label, target] : moves) keyed.emplace_back(label, state_name(target), target);
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return std::tie(std::get<0>(a), std::get<1>(a)) <
                                                        std::tie(std::get<0>(b), std::get<1>(b)); });
    bool cut = false;
    for (auto& [label, name, target] : keyed) {
      std::size_t dst;
      if (ex.lts.has_state(name)) {
        dst = ex.lts.index_of(name);
      } else {
        if (ex.lts.num_states() >= bound) {
          cut = true;
          continue;
        }
        dst = ex.lts.add_state(name);
        if (target) {
          queue.emplace_back(dst, target);
        } else {
          ex.lts.set_terminating(dst);
        }
      }
      ex.lts.add_transition(src, label, dst);
    }
    if (cut) {
      ex.complete = false;
      ex.frontier.push_back(ex.lts.state(src));
    }
  }
  return ex;
}

}  // namespace prockit
