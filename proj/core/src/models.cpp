#include "prockit/models.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

#include "prockit/error.hpp"

namespace prockit::models {
namespace {

const std::string kNone = "*";
const std::string kEmpty = "ε";

std::string act(std::string_view family, int port, const std::string& arg) {
  return std::string(family) + std::to_string(port) + "(" + arg + ")";
}

std::string call(std::string_view f, const std::string& arg) { return std::string(f) + "(" + arg + ")"; }

std::string tuple(std::initializer_list<std::string> parts) {
  std::string out = "(";
  bool first = true;
  for (const auto& p : parts) {
    if (!first) out += ',';
    out += p;
    first = false;
  }
  return out + ")";
}

std::string flip(const std::string& b) { return b == "0" ? "1" : "0"; }

void require(bool ok, const std::string& what) {
  if (!ok) throw Error("parameter out of range: " + what);
}

void require_data(const Data& d, std::size_t max = 16) {
  require(!d.empty() && d.size() <= max, "data set must have 1.." + std::to_string(max) + " elements");
  for (const auto& x : d) require(is_valid_token(x) && x != kNone, "datum '" + x + "'");
}

// All sequences over `d` of length at most `l`, shortest first.
std::vector<std::vector<std::string>> sequences(const Data& d, unsigned l) {
  std::vector<std::vector<std::string>> out{{}};
  std::size_t begin = 0;
  for (unsigned len = 1; len <= l; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (const auto& x : d) {
        auto s = out[i];
        s.insert(s.begin(), x);
        out.push_back(std::move(s));
        require(out.size() <= kMaxBufferStates, "too many buffer states");
      }
    }
    begin = end;
  }
  return out;
}

std::string sum(const std::vector<std::string>& terms) {
  if (terms.empty()) return kDelta;
  std::string out;
  for (const auto& t : terms) {
    if (!out.empty()) out += " + ";
    out += t;
  }
  return out;
}

RecSpec spec(const std::string& name, const std::vector<std::pair<std::string, std::string>>& eqs) {
  RecSpec s;
  s.name = name;
  for (const auto& [v, rhs] : eqs) s.add(v, parse_expr(rhs));
  check_spec(s);
  return s;
}

Data bits_with_none() { return {"0", "1", kNone}; }

Data frames(const Data& d) {
  Data f;
  for (const auto& x : d) {
    for (const auto& b : bits()) f.push_back(x + "," + b);
  }
  return f;
}

}  // namespace

Data bits() { return {"0", "1"}; }

Data data(std::size_t n) {
  Data d;
  for (std::size_t i = 0; i < n; ++i) d.push_back("d" + std::to_string(i));
  return d;
}

std::string seq_name(const std::vector<std::string>& items) {
  if (items.empty()) return kEmpty;
  bool short_items = std::all_of(items.begin(), items.end(), [](const std::string& s) { return s.size() == 1; });
  std::string out;
  for (const auto& x : items) {
    if (!short_items && !out.empty()) out += '.';
    out += x;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Counters, buffers, connections

Lts counter(unsigned k) {
  require(k >= 1 && k <= kMaxCounter, "counter bound");
  Lts l("counter" + std::to_string(k));
  l.set_initial("0");
  for (unsigned i = 0; i < k; ++i) {
    l.add_transition(std::to_string(i), "inc", std::to_string(i + 1));
    l.add_transition(std::to_string(i + 1), "dec", std::to_string(i));
  }
  return l;
}

Lts counter_mod(unsigned k) {
  Lts l = counter(k);
  l.set_name("counter_mod" + std::to_string(k));
  l.add_transition(std::to_string(k), "inc", "0");
  l.add_transition("0", "dec", std::to_string(k));
  return l;
}

Lts unreliable_counter(unsigned k) {
  Lts l = counter(k);
  l.set_name("unreliable_counter" + std::to_string(k));
  l.add_transition(std::to_string(k), "inc", "err");
  return l;
}

Lts buffer(unsigned l, const Data& d, const std::string& add, const std::string& rem) {
  require(l >= 1, "buffer capacity");
  require_data(d);
  Lts t("buffer" + std::to_string(l));
  t.set_initial(kEmpty);
  for (const auto& s : sequences(d, l)) {
    t.add_state(seq_name(s));
    if (s.size() < l) {
      for (const auto& x : d) {
        auto longer = s;
        longer.insert(longer.begin(), x);
        t.add_transition(seq_name(s), call(add, x), seq_name(longer));
      }
    }
    if (!s.empty()) {
      auto shorter = s;
      shorter.pop_back();
      t.add_transition(seq_name(s), call(rem, s.back()), seq_name(shorter));
    }
  }
  return t;
}

Lts unreliable_buffer(unsigned l, const Data& d) {
  Lts t = buffer(l, d);
  t.set_name("unreliable_buffer" + std::to_string(l));
  for (const auto& s : sequences(d, l)) {
    if (s.size() != l) continue;
    for (const auto& x : d) t.add_transition(seq_name(s), call("add", x), "err");
  }
  return t;
}

TwoBuffers two_buffers(unsigned l1, unsigned l2, const Data& d) {
  TwoBuffers t;
  for (const auto& x : d) {
    t.comm.set(call("rem1", x), call("add2", x), call("trf", x));
    t.blocked.insert(call("rem1", x));
    t.blocked.insert(call("add2", x));
    t.internal.insert(call("trf", x));
  }
  t.composed = encap(t.blocked, parallel(buffer(l1, d, "add1", "rem1"), buffer(l2, d, "add2", "rem2"), t.comm));
  t.hidden = hide(t.internal, t.composed);
  t.target = buffer(l1 + l2, d, "add1", "rem2");
  return t;
}

Lts split(const Data& d, int k, int l, int m) {
  require_data(d);
  Lts t("split");
  t.set_initial(kNone);
  for (const auto& x : d) {
    t.add_transition(kNone, act("r", k, x), x);
    t.add_transition(x, act("s", l, x), kNone);
    t.add_transition(x, act("s", m, x), kNone);
  }
  return t;
}

Lts split_like(const Data& d, int k, int l, int m) {
  require_data(d);
  Lts t("split_like");
  std::string init = tuple({std::to_string(k), kNone});
  t.set_initial(init);
  for (int i : {l, m}) {
    for (const auto& x : d) {
      std::string mid = tuple({std::to_string(i), x});
      t.add_transition(init, act("r", k, x), mid);
      t.add_transition(mid, act("s", i, x), init);
    }
  }
  return t;
}

Lts merge(const Data& d, int k, int l, int m) {
  require_data(d);
  Lts t("merge");
  std::string init = tuple({std::to_string(m), kNone});
  t.set_initial(init);
  for (int i : {k, l}) {
    for (const auto& x : d) {
      std::string mid = tuple({std::to_string(i), x});
      t.add_transition(init, act("r", i, x), mid);
      t.add_transition(mid, act("s", m, x), init);
    }
  }
  return t;
}

Lts merge_alt(const Data& d, int k, int l, int m) {
  require_data(d);
  Lts t("merge_alt");
  t.set_initial(kNone);
  for (const auto& x : d) {
    t.add_transition(kNone, act("r", k, x), x);
    t.add_transition(kNone, act("r", l, x), x);
    t.add_transition(x, act("s", m, x), kNone);
  }
  return t;
}

Lts sink(const Data& d, int k) {
  require_data(d);
  Lts t("sink");
  t.set_initial(kNone);
  for (const auto& x : d) t.add_transition(kNone, act("r", k, x), kNone);
  return t;
}

Lts wire(const Data& d, unsigned capacity, int m, int l) {
  require(capacity >= 1 && capacity <= kMaxWire, "wire capacity");
  Lts t = buffer(capacity, d, "r" + std::to_string(m), "s" + std::to_string(l));
  t.set_name("wire" + std::to_string(capacity));
  return t;
}

MergeWire merge_wire(const Data& d, unsigned capacity) {
  MergeWire mw;
  for (const auto& x : d) {
    for (int port : {2, 3}) {
      mw.blocked.insert(act("s", port, x));
      mw.blocked.insert(act("r", port, x));
      mw.internal.insert(act("c", port, x));
    }
  }
  CommFn g = handshaking(d, {"2", "3"});
  mw.composed = encap(mw.blocked, parallel(merge_alt(d, 1, 2, 3), wire(d, capacity, 3, 2), g));
  mw.hidden = hide(mw.internal, mw.composed);
  return mw;
}

Exploration unbounded_buffer(const Data& d, std::size_t bound) {
  require_data(d);
  require(bound >= 1, "state budget");
  Exploration ex;
  ex.lts.set_name("unbounded_buffer");
  ex.lts.set_initial(kEmpty);
  for (const auto& x : d) {
    ex.lts.add_action(call("add", x));
    ex.lts.add_action(call("rem", x));
  }
  std::map<std::string, std::vector<std::string>> contents{{kEmpty, {}}};
  std::deque<std::string> queue{kEmpty};
  while (!queue.empty()) {
    std::string name = queue.front();
    queue.pop_front();
    std::vector<std::string> s = contents[name];
    std::vector<std::pair<std::string, std::vector<std::string>>> moves;
    for (const auto& x : d) {
      auto longer = s;
      longer.insert(longer.begin(), x);
      moves.emplace_back(call("add", x), std::move(longer));
    }
    if (!s.empty()) {
      auto shorter = s;
      shorter.pop_back();
      moves.emplace_back(call("rem", s.back()), std::move(shorter));
    }
    bool cut = false;
    for (auto& [label, target] : moves) {
      std::string tname = seq_name(target);
      if (!ex.lts.has_state(tname)) {
        if (ex.lts.num_states() >= bound) {
          cut = true;
          continue;
        }
        contents[tname] = target;
        queue.push_back(tname);
      }
      ex.lts.add_transition(name, label, tname);
    }
    if (cut) {
      ex.complete = false;
      ex.frontier.push_back(name);
    }
  }
  return ex;
}

// ---------------------------------------------------------------------------
// Silent-step examples

namespace {

Lts tau_system(const Data& d, bool with_tau, bool with_s3, const std::string& name) {
  require_data(d);
  Lts t(name);
  std::string init = tuple({kNone, "0"});
  t.set_initial(init);
  for (const auto& x : d) {
    std::string one = tuple({x, "1"});
    std::string two = tuple({x, "2"});
    t.add_transition(init, act("r", 1, x), one);
    if (with_tau && with_s3) {
      t.add_transition(one, act("s", 2, x), init);
      t.add_transition(one, kTau, two);
      t.add_transition(two, act("s", 3, x), init);
    } else if (with_tau) {
      t.add_transition(one, kTau, two);
      t.add_transition(two, act("s", 2, x), init);
    } else {
      t.add_transition(one, act("s", 2, x), init);
      if (with_s3) t.add_transition(one, act("s", 3, x), init);
    }
  }
  return t;
}

}  // namespace

Lts tau_noninert_first(const Data& d) { return tau_system(d, true, true, "noninert_first"); }
Lts tau_noninert_second(const Data& d) { return tau_system(d, false, true, "noninert_second"); }
Lts tau_inert_first(const Data& d) { return tau_system(d, true, false, "inert_first"); }
Lts tau_inert_second(const Data& d) { return tau_system(d, false, false, "inert_second"); }

// ---------------------------------------------------------------------------
// Programs

namespace {

Lts flow(const std::string& name, const std::vector<std::tuple<int, std::string, int>>& edges, int final) {
  Lts t(name);
  t.set_initial("0");
  for (const auto& [a, label, b] : edges) t.add_transition(std::to_string(a), label, std::to_string(b));
  t.set_terminating(std::to_string(final));
  return t;
}

}  // namespace

Lts factorial_flow() {
  return flow("factorial",
              {{0, "read(n)", 1},
               {1, "i:=0", 2},
               {2, "f:=1", 3},
               {3, "i<n", 4},
               {4, "i:=i+1", 5},
               {5, "f:=f*i", 3},
               {3, "NOT(i<n)", 6},
               {6, "write(f)", 7}},
              7);
}

Lts gcd_flow() {
  return flow("gcd",
              {{0, "read(m)", 1},
               {1, "read(n)", 2},
               {2, "m>n", 3},
               {3, "m:=m-n", 2},
               {2, "NOT(m>n)", 4},
               {4, "n>m", 5},
               {5, "n:=n-m", 4},
               {4, "NOT(n>m)", 6},
               {6, "NOT(m=n)", 2},
               {6, "m=n", 7},
               {7, "write(m)", 8}},
              8);
}

Lts calculator(int min, int max) {
  require(min <= max && max - min < 16, "calculator range");
  const std::vector<std::string> ops{"add", "sub", "mul", "div", "eq", "clr"};
  Lts t("calculator");
  std::string init = tuple({kNone, kNone});
  t.set_initial(init);
  auto in_range = [&](long v) { return v >= min && v <= max; };
  for (int i = min; i <= max; ++i) {
    std::string si = std::to_string(i);
    t.add_transition(init, call("rd", si), tuple({si, kNone}));
    t.add_transition(tuple({si, "clr"}), call("wr", "0"), init);
    t.add_transition(tuple({si, "eq"}), call("wr", si), tuple({si, kNone}));
    for (const auto& o : ops) t.add_transition(tuple({si, kNone}), call("rd", o), tuple({si, o}));
    for (int j = min; j <= max; ++j) {
      std::string sj = std::to_string(j);
      auto apply = [&](const std::string& op, long v) {
        if (in_range(v)) t.add_transition(tuple({si, op}), call("rd", sj), tuple({std::to_string(v), kNone}));
      };
      apply("add", static_cast<long>(i) + j);
      apply("sub", static_cast<long>(i) - j);
      apply("mul", static_cast<long>(i) * j);
      if (j != 0) apply("div", static_cast<long>(i) / j);
    }
  }
  return t;
}

Lts peterson_flow(unsigned component) {
  require(component <= 1, "Peterson component");
  std::string c = std::to_string(component);
  std::string o = std::to_string(1 - component);
  std::string guard = "c" + o + "=false_OR_t=" + o;
  Lts t = flow("p" + c,
               {{0, "true", 1},
                {1, "c" + c + ":=true", 2},
                {2, "t:=" + c, 3},
                {3, "NOT(" + guard + ")", 3},
                {3, guard, 4},
                {4, "enter" + c, 5},
                {5, "leave" + c, 6},
                {6, "c" + c + ":=false", 0},
                {0, "NOT(true)", 7}},
               7);
  t.set_terminating("7", false);
  return t;
}

std::string machine_label(const std::string& flow_label) { return "~" + flow_label; }
std::string synced_label(const std::string& flow_label) { return flow_label + "*"; }

Lts peterson_machine() {
  Lts t("machine");
  auto name = [](bool c0, bool c1, int tv) {
    return tuple({c0 ? "true" : "false", c1 ? "true" : "false", std::to_string(tv)});
  };
  t.set_initial(name(false, false, 0));
  for (bool c0 : {false, true}) {
    for (bool c1 : {false, true}) {
      for (int tv : {0, 1}) {
        std::string s = name(c0, c1, tv);
        t.add_transition(s, machine_label("c0:=false"), name(false, c1, tv));
        t.add_transition(s, machine_label("c0:=true"), name(true, c1, tv));
        t.add_transition(s, machine_label("c1:=false"), name(c0, false, tv));
        t.add_transition(s, machine_label("c1:=true"), name(c0, true, tv));
        t.add_transition(s, machine_label("t:=0"), name(c0, c1, 0));
        t.add_transition(s, machine_label("t:=1"), name(c0, c1, 1));
        t.add_transition(s, machine_label("true"), s);
        const std::string g0 = "c1=false_OR_t=1";
        const std::string g1 = "c0=false_OR_t=0";
        t.add_transition(s, machine_label(!c1 || tv == 1 ? g0 : "NOT(" + g0 + ")"), s);
        t.add_transition(s, machine_label(!c0 || tv == 0 ? g1 : "NOT(" + g1 + ")"), s);
      }
    }
  }
  return t;
}

CommFn peterson_comm() {
  CommFn g;
  for (unsigned c : {0U, 1U}) {
    Lts flow = peterson_flow(c);
    for (const auto& a : flow.alphabet()) g.set(a, machine_label(a), synced_label(a));
  }
  return g;
}

// ---------------------------------------------------------------------------
// Nets

Net memory_cell() {
  Net n;
  n.name = "memory_cell";
  for (const std::string b : {"0", "1"}) {
    std::string rtr = tuple({b, "rtr"});
    std::string sto = tuple({b, "sto"});
    std::string nb = flip(b);
    n.add_transition({rtr}, call("rtr", b), {rtr});
    n.add_transition({sto}, call("sto", b), {sto});
    n.add_transition({rtr, sto}, call("sto", nb), {tuple({nb, "rtr"}), tuple({nb, "sto"})});
  }
  n.mark(tuple({"0", "rtr"}));
  n.mark(tuple({"0", "sto"}));
  return n;
}

namespace {

std::string place(unsigned i, const char* what) { return tuple({std::to_string(i), what}); }

void require_scheduler(unsigned n) { require(n >= 2 && n <= kMaxScheduler, "number of scheduled processes"); }

}  // namespace

Net scheduler_net(unsigned n) {
  require_scheduler(n);
  Net net;
  net.name = "scheduler";
  for (unsigned i = 1; i <= n; ++i) {
    unsigned nxt = i < n ? i + 1 : 1;
    std::string si = std::to_string(i);
    net.add_transition({place(i, "idle"), place(i, "sch")}, call("start", si),
                       {place(i, "busy"), place(nxt, "sch")});
    net.add_transition({place(i, "busy")}, call("finish", si), {place(i, "idle")});
    net.mark(place(i, "idle"));
  }
  net.mark(place(1, "sch"));
  return net;
}

Net scheduler_process(unsigned i) {
  require(i >= 1 && i <= kMaxScheduler, "process number");
  Net net;
  net.name = "P" + std::to_string(i);
  std::string si = std::to_string(i);
  net.add_transition({place(i, "idle")}, call("request", si), {place(i, "busy")});
  net.add_transition({place(i, "busy")}, call("finish", si), {place(i, "idle")});
  net.mark(place(i, "idle"));
  return net;
}

Net scheduler_ring(unsigned n) {
  require_scheduler(n);
  Net net;
  net.name = "S";
  for (unsigned i = 1; i <= n; ++i) {
    unsigned nxt = i < n ? i + 1 : 1;
    net.add_transition({place(i, "sch")}, call("grant", std::to_string(i)), {place(nxt, "sch")});
  }
  net.mark(place(1, "sch"));
  return net;
}

CommFn scheduler_comm(unsigned n) {
  CommFn g;
  for (unsigned i = 1; i <= n; ++i) {
    std::string si = std::to_string(i);
    g.set(call("request", si), call("grant", si), call("start", si));
  }
  return g;
}

Labels scheduler_blocked(unsigned n) {
  Labels h;
  for (unsigned i = 1; i <= n; ++i) {
    h.insert(call("request", std::to_string(i)));
    h.insert(call("grant", std::to_string(i)));
  }
  return h;
}

Net counter_net() {
  Net n;
  n.name = "counter_net";
  for (int i : {0, 1}) {
    n.add_transition({std::to_string(i)}, "inc", {std::to_string(i + 1)});
    n.add_transition({std::to_string(i + 1)}, "dec", {std::to_string(i)});
  }
  n.mark("0");
  return n;
}

Net counter_net_alt() {
  Net n;
  n.name = "counter_net_alt";
  n.add_transition({"0"}, "inc", {"1"});
  n.add_transition({"1", "2"}, kTau, {"0", "3"});
  n.add_transition({"3"}, "dec", {"2"});
  n.mark("0");
  n.mark("2");
  return n;
}

// ---------------------------------------------------------------------------
// Alternating bit protocol

namespace {

void require_abp(const Data& d) { require_data(d, kMaxAbpData); }

}  // namespace

Lts abp_sender(const Data& d) {
  require_abp(d);
  Lts t("S");
  t.set_initial(tuple({kNone, "0", "0"}));
  for (const auto& b : bits()) {
    std::string nb = flip(b);
    for (const auto& x : d) {
      std::string s1 = tuple({x, b, "1"});
      std::string s2 = tuple({x, b, "2"});
      t.add_transition(tuple({kNone, b, "0"}), act("r", 1, x), s1);
      t.add_transition(s1, act("s", 3, x + "," + b), s2);
      t.add_transition(s2, act("r", 5, b), tuple({kNone, nb, "0"}));
      t.add_transition(s2, act("r", 5, nb), s1);
      t.add_transition(s2, act("r", 5, kNone), s1);
    }
  }
  return t;
}

Lts abp_receiver(const Data& d) {
  require_abp(d);
  Lts t("R");
  t.set_initial(tuple({kNone, "0", "0"}));
  for (const auto& b : bits()) {
    std::string nb = flip(b);
    std::string wait = tuple({kNone, b, "0"});
    for (const auto& x : d) {
      std::string got = tuple({x, b, "1"});
      t.add_transition(wait, act("r", 4, x + "," + b), got);
      t.add_transition(wait, act("r", 4, x + "," + nb), tuple({kNone, nb, "2"}));
      t.add_transition(got, act("s", 2, x), tuple({kNone, b, "2"}));
    }
    t.add_transition(wait, act("r", 4, kNone), tuple({kNone, nb, "2"}));
    t.add_transition(tuple({kNone, b, "2"}), act("s", 6, b), tuple({kNone, nb, "0"}));
  }
  return t;
}

namespace {

// Channel receiving `msgs` at port `in` and delivering them, or a corrupted
// `*`, at port `out` after an internal choice `i`.
Lts channel(const std::string& name, const Data& msgs, int in, int out) {
  Lts t(name);
  std::string idle = tuple({kNone, "0"});
  t.set_initial(idle);
  for (const auto& f : msgs) {
    std::string pf = msgs.front().find(',') != std::string::npos ? "(" + f + ")" : f;
    std::string s1 = tuple({pf, "1"});
    std::string s2 = tuple({pf, "2"});
    std::string s3 = tuple({pf, "3"});
    t.add_transition(idle, act("r", in, f), s1);
    t.add_transition(s1, "i", s2);
    t.add_transition(s1, "i", s3);
    t.add_transition(s2, act("s", out, f), idle);
    t.add_transition(s3, act("s", out, kNone), idle);
  }
  return t;
}

}  // namespace

Lts abp_channel_k(const Data& d) {
  require_abp(d);
  return channel("K", frames(d), 3, 4);
}

Lts abp_channel_l(const Data& d) {
  require_abp(d);
  return channel("L", bits(), 6, 5);
}

CommFn abp_comm(const Data& d) {
  require_abp(d);
  Data values = frames(d);
  for (const auto& b : bits_with_none()) values.push_back(b);
  return handshaking(values, {"3", "4", "5", "6"});
}

Labels abp_blocked(const Data& d) {
  require_abp(d);
  Labels h;
  auto both = [&](int port, const std::string& v) {
    h.insert(act("s", port, v));
    h.insert(act("r", port, v));
  };
  for (const auto& f : frames(d)) {
    both(3, f);
    both(4, f);
  }
  both(4, kNone);
  for (const auto& b : bits_with_none()) both(5, b);
  for (const auto& b : bits()) both(6, b);
  return h;
}

Labels abp_internal(const Data& d) {
  require_abp(d);
  Labels i{"i"};
  for (const auto& f : frames(d)) {
    i.insert(act("c", 3, f));
    i.insert(act("c", 4, f));
  }
  i.insert(act("c", 4, kNone));
  for (const auto& b : bits_with_none()) i.insert(act("c", 5, b));
  for (const auto& b : bits()) i.insert(act("c", 6, b));
  return i;
}

Lts abp_composed(const Data& d) {
  CommFn g = abp_comm(d);
  Lts sys = parallel(parallel(parallel(abp_sender(d), abp_channel_k(d), g), abp_channel_l(d), g), abp_receiver(d), g);
  Lts out = encap(abp_blocked(d), sys);
  out.set_name("abp");
  return out;
}

Lts abp_hidden(const Data& d) {
  Lts out = hide(abp_internal(d), abp_composed(d));
  out.set_name("abp_hidden");
  return out;
}

Lts abp_target(const Data& d) {
  require_abp(d);
  Lts t("buffer1");
  t.set_initial(kNone);
  for (const auto& x : d) {
    t.add_transition(kNone, act("r", 1, x), x);
    t.add_transition(x, act("s", 2, x), kNone);
  }
  return t;
}

AbpPipeline abp_pipeline(const Data& d) {
  AbpPipeline p;
  p.composed = abp_composed(d);
  p.hidden = hide(abp_internal(d), p.composed);
  p.hidden.set_name("abp_hidden");
  p.target_buffer = abp_target(d);
  return p;
}

namespace {

std::string channel_expr_text(const Data& msgs, int in, int out) {
  std::vector<std::string> terms;
  for (const auto& f : msgs) {
    terms.push_back(act("r", in, f) + " . (i . " + act("s", out, f) + " + i . " + act("s", out, kNone) + ")");
  }
  return "(" + sum(terms) + ")^omega";
}

}  // namespace

ExprPtr abp_sender_expr(const Data& d) {
  require_abp(d);
  std::vector<std::string> halves;
  for (const auto& b : bits()) {
    std::string nb = flip(b);
    std::vector<std::string> terms;
    for (const auto& x : d) {
      std::string frame = act("s", 3, x + "," + b);
      terms.push_back(act("r", 1, x) + " . " + frame + " . (((" + act("r", 5, nb) + " + " + act("r", 5, kNone) +
                      ") . " + frame + ") * " + act("r", 5, b) + ")");
    }
    halves.push_back("(" + sum(terms) + ")");
  }
  return parse_expr("(" + halves[0] + " . " + halves[1] + ")^omega");
}

ExprPtr abp_receiver_expr(const Data& d) {
  require_abp(d);
  std::vector<std::string> halves;
  for (const auto& b : bits()) {
    std::string nb = flip(b);
    std::vector<std::string> wrong;
    std::vector<std::string> right;
    for (const auto& x : d) {
      wrong.push_back(act("r", 4, x + "," + nb));
      right.push_back(act("r", 4, x + "," + b) + " . " + act("s", 2, x) + " . " + act("s", 6, b));
    }
    wrong.push_back(act("r", 4, kNone));
    halves.push_back("(((" + sum(wrong) + ") . " + act("s", 6, nb) + ") * (" + sum(right) + "))");
  }
  return parse_expr("(" + halves[0] + " . " + halves[1] + ")^omega");
}

ExprPtr abp_channel_k_expr(const Data& d) {
  require_abp(d);
  return parse_expr(channel_expr_text(frames(d), 3, 4));
}

ExprPtr abp_channel_l_expr(const Data& d) {
  require_abp(d);
  return parse_expr(channel_expr_text(bits(), 6, 5));
}

RecSpec abp_sender_spec(const Data& d) {
  require_abp(d);
  std::vector<std::pair<std::string, std::string>> eqs{{"S", "S'_0"}};
  for (const auto& b : bits()) {
    std::vector<std::string> terms;
    for (const auto& x : d) terms.push_back(act("r", 1, x) + " . " + act("s", 3, x + "," + b) + " . S''_" + x + "_" + b);
    eqs.emplace_back("S'_" + b, sum(terms));
  }
  for (const auto& b : bits()) {
    std::string nb = flip(b);
    for (const auto& x : d) {
      std::string var = "S''_" + x + "_" + b;
      eqs.emplace_back(var, "(" + act("r", 5, nb) + " + " + act("r", 5, kNone) + ") . " + act("s", 3, x + "," + b) +
                                " . " + var + " + " + act("r", 5, b) + " . S'_" + nb);
    }
  }
  return spec("sender", eqs);
}

RecSpec abp_receiver_spec(const Data& d) {
  require_abp(d);
  std::vector<std::pair<std::string, std::string>> eqs{{"R", "R'_0"}};
  for (const auto& b : bits()) {
    std::string nb = flip(b);
    std::vector<std::string> wrong;
    std::vector<std::string> right;
    for (const auto& x : d) {
      wrong.push_back(act("r", 4, x + "," + nb));
      right.push_back(act("r", 4, x + "," + b) + " . " + act("s", 2, x) + " . " + act("s", 6, b) + " . R'_" + nb);
    }
    wrong.push_back(act("r", 4, kNone));
    eqs.emplace_back("R'_" + b, "(" + sum(wrong) + ") . " + act("s", 6, nb) + " . R'_" + b + " + " + sum(right));
  }
  return spec("receiver", eqs);
}

namespace {

RecSpec channel_spec(const std::string& name, const std::string& var, const Data& msgs, int in, int out) {
  std::vector<std::string> terms;
  for (const auto& f : msgs) {
    terms.push_back(act("r", in, f) + " . (i . " + act("s", out, f) + " + i . " + act("s", out, kNone) + ") . " + var);
  }
  return spec(name, {{var, sum(terms)}});
}

}  // namespace

RecSpec abp_channel_k_spec(const Data& d) {
  require_abp(d);
  return channel_spec("channel_k", "K", frames(d), 3, 4);
}

RecSpec abp_channel_l_spec(const Data& d) {
  require_abp(d);
  return channel_spec("channel_l", "L", bits(), 6, 5);
}

// ---------------------------------------------------------------------------
// Small recursive specifications and expressions

RecSpec counter2_spec() { return spec("counter2", {{"C2_0", "inc . C2_1"}, {"C2_1", "dec . C2_0 + inc . dec . C2_1"}}); }

RecSpec unbounded_counter_spec() {
  return spec("counter_unbounded", {{"C", "inc . C' . C"}, {"C'", "dec + inc . C' . C'"}});
}

RecSpec unbounded_counter_alt_spec() { return spec("counter_unbounded_alt", {{"C", "inc . (dec || C)"}}); }

RecSpec buffer1_spec() { return spec("buffer1", {{"B1", "(add(0) . rem(0) + add(1) . rem(1)) . B1"}}); }

RecSpec buffer2_spec() {
  std::vector<std::pair<std::string, std::string>> eqs{{"B2", "add(0) . B2'_0 + add(1) . B2'_1"}};
  for (const auto& x : bits()) {
    eqs.emplace_back("B2'_" + x, "rem(" + x + ") . B2 + add(0) . rem(" + x + ") . B2'_0 + add(1) . rem(" + x +
                                     ") . B2'_1");
  }
  return spec("buffer2", eqs);
}

RecSpec split_spec(int k, int l, int m) {
  std::vector<std::string> terms;
  for (const auto& x : bits()) {
    terms.push_back(act("r", k, x) + " . (" + act("s", l, x) + " + " + act("s", m, x) + ")");
  }
  return spec("split", {{"Split", "(" + sum(terms) + ") . Split"}});
}

RecSpec merge_spec(int k, int l, int m) {
  std::vector<std::string> terms;
  for (const auto& x : bits()) {
    terms.push_back("(" + act("r", k, x) + " + " + act("r", l, x) + ") . " + act("s", m, x));
  }
  return spec("merge", {{"Merge", "(" + sum(terms) + ") . Merge"}});
}

ExprPtr memory_cell_expr() {
  return parse_expr("(((rtr(0) + sto(0)) * sto(1)) . ((rtr(1) + sto(1)) * sto(0)))^omega");
}

ExprPtr scheduler_process_expr(unsigned i) {
  require(i >= 1 && i <= kMaxScheduler, "process number");
  std::string si = std::to_string(i);
  return parse_expr("(" + call("request", si) + " . " + call("finish", si) + ")^omega");
}

ExprPtr scheduler_ring_expr(unsigned n) {
  require_scheduler(n);
  std::string body;
  for (unsigned i = 1; i <= n; ++i) {
    if (!body.empty()) body += " . ";
    body += call("grant", std::to_string(i));
  }
  return parse_expr("(" + body + ")^omega");
}

// ---------------------------------------------------------------------------
// Workcell

Workcell workcell(unsigned n_max, const Data& products) {
  require(n_max >= 1 && n_max <= kMaxWorkcell, "workcell bound");
  require_data(products, 2);
  const std::string kOk = "ok";
  const std::string kNok = "nok";
  auto produce = [](unsigned n) { return "produce(" + std::to_string(n) + ")"; };
  auto proc = [](const std::string& p, const std::string& q) { return "proc(" + p + "," + q + ")"; };
  // Processed products, each with a short code used in variable names.
  std::vector<std::pair<std::string, std::string>> outs;
  for (std::size_t k = 0; k < products.size(); ++k) {
    outs.emplace_back(proc(products[k], kOk), std::to_string(k) + "o");
    outs.emplace_back(proc(products[k], kNok), std::to_string(k) + "n");
  }

  Workcell w;
  std::vector<std::pair<std::string, std::string>> eqs;

  // Controller.
  {
    std::vector<std::string> start;
    for (unsigned n = 0; n <= n_max; ++n) start.push_back(act("r", 1, produce(n)) + " . C'_" + std::to_string(n));
    eqs = {{"C", sum(start)}, {"C'_0", act("s", 2, "ready") + " . C"}};
    for (unsigned n = 1; n <= n_max; ++n) {
      eqs.emplace_back("C'_" + std::to_string(n), act("s", 7, produce(n)) + " . " + act("s", 5, produce(n)) + " . " +
                                                      act("s", 3, produce(n)) + " . C''_0");
    }
    std::string readies = act("r", 8, "ready") + " . " + act("r", 6, "ready") + " . " + act("r", 4, "ready");
    for (unsigned n = 0; n <= n_max; ++n) {
      std::string rhs = readies + " . C'_" + std::to_string(n);
      if (n < n_max) rhs += " + " + act("r", 8, "reject") + " . C''_" + std::to_string(n + 1);
      eqs.emplace_back("C''_" + std::to_string(n), rhs);
    }
    w.controller = spec("workcell_controller", eqs);
  }

  // Workstation.
  {
    std::vector<std::string> start;
    for (unsigned n = 0; n <= n_max; ++n) start.push_back(act("r", 3, produce(n)) + " . W'_" + std::to_string(n));
    eqs = {{"W", sum(start)}, {"W'_0", act("s", 4, "ready") + " . W"}};
    for (unsigned n = 1; n <= n_max; ++n) {
      std::vector<std::string> terms;
      for (const auto& p : products) {
        terms.push_back(act("r", 9, p) + " . (i . " + act("s", 10, proc(p, kOk)) + " + i . " +
                        act("s", 10, proc(p, kNok)) + ") . W'_" + std::to_string(n - 1));
      }
      eqs.emplace_back("W'_" + std::to_string(n), sum(terms));
    }
    w.workstation = spec("workcell_workstation", eqs);
  }

  // Transport service. Queue contents are lists of product codes, newest first.
  {
    auto var = [](unsigned n, const std::vector<std::string>& codes) {
      std::string s = "T'_" + std::to_string(n) + "_";
      if (codes.empty()) return s + "e";
      for (const auto& c : codes) s += c;
      return s;
    };
    std::map<std::string, std::string> code_of;
    std::map<std::string, std::string> label_of;
    for (const auto& [label, code] : outs) {
      code_of[label] = code;
      label_of[code] = label;
    }
    std::vector<std::string> start;
    for (unsigned n = 0; n <= n_max; ++n) start.push_back(act("r", 5, produce(n)) + " . " + var(n, {}));
    eqs = {{"T", sum(start)}};
    std::vector<std::string> codes;
    for (const auto& [label, code] : outs) codes.push_back(code);
    Data code_data(codes.begin(), codes.end());
    for (unsigned n = 0; n <= n_max; ++n) {
      for (const auto& queue : sequences(code_data, n_max - n)) {
        std::vector<std::string> terms;
        if (n > 0) {
          for (const auto& c : codes) {
            auto longer = queue;
            longer.insert(longer.begin(), c);
            terms.push_back(act("r", 10, label_of[c]) + " . " + var(n - 1, longer));
          }
        }
        if (!queue.empty()) {
          auto shorter = queue;
          shorter.pop_back();
          terms.push_back(act("s", 11, label_of[queue.back()]) + " . " + var(n, shorter));
        }
        if (n == 0 && queue.empty()) terms.push_back(act("s", 6, "ready") + " . T");
        eqs.emplace_back(var(n, queue), sum(terms));
      }
    }
    w.transport = spec("workcell_transport", eqs);
  }

  // Quality checker.
  {
    std::vector<std::string> start;
    for (unsigned n = 0; n <= n_max; ++n) start.push_back(act("r", 7, produce(n)) + " . Q'_" + std::to_string(n));
    eqs = {{"Q", sum(start)}, {"Q'_0", act("s", 8, "ready") + " . Q"}};
    for (unsigned n = 1; n <= n_max; ++n) {
      std::string next = "Q'_" + std::to_string(n - 1);
      std::vector<std::string> terms;
      for (const auto& p : products) {
        terms.push_back(act("r", 11, proc(p, kOk)) + " . " + act("s", 12, proc(p, kOk)) + " . " + next);
      }
      for (const auto& p : products) {
        terms.push_back(act("r", 11, proc(p, kNok)) + " . " + act("s", 8, "reject") + " . " + next);
      }
      eqs.emplace_back("Q'_" + std::to_string(n), sum(terms));
    }
    w.checker = spec("workcell_checker", eqs);
  }

  const std::string& p0 = products.front();
  w.supplier = spec("workcell_supplier", {{"S", act("s", 9, p0) + " . S"}});

  // Intended behaviour together with the supplier.
  {
    std::vector<std::string> start;
    for (unsigned n = 0; n <= n_max; ++n) {
      start.push_back(act("r", 1, produce(n)) + " . V'_" + std::to_string(n) + " . V");
    }
    eqs = {{"V", sum(start)}, {"V'_0", act("s", 2, "ready")}};
    for (unsigned n = 1; n <= n_max; ++n) {
      eqs.emplace_back("V'_" + std::to_string(n), act("s", 12, proc(p0, kOk)) + " . V'_" + std::to_string(n - 1));
    }
    w.target = spec("workcell_target", eqs);
  }

  Data messages{"ready", "reject"};
  for (unsigned n = 0; n <= n_max; ++n) messages.push_back(produce(n));
  for (const auto& [label, code] : outs) messages.push_back(label);
  for (const auto& p : products) messages.push_back(p);
  w.comm = handshaking(messages, {"3", "4", "5", "6", "7", "8", "9", "10", "11"});

  auto both = [](Labels& h, Labels& i, int port, const std::string& m) {
    h.insert(act("s", port, m));
    h.insert(act("r", port, m));
    i.insert(act("c", port, m));
  };
  for (int port : {3, 5, 7}) {
    for (unsigned n = 0; n <= n_max; ++n) both(w.blocked, w.internal, port, produce(n));
  }
  for (int port : {4, 6, 8}) {
    for (const std::string m : {"ready", "reject"}) both(w.blocked, w.internal, port, m);
  }
  for (int port : {10, 11}) {
    for (const auto& [label, code] : outs) both(w.blocked, w.internal, port, label);
  }
  w.internal.insert("i");
  for (const auto& p : products) both(w.supply_blocked, w.supply_internal, 9, p);
  return w;
}

// ---------------------------------------------------------------------------
// Catalog

namespace {

unsigned number(const std::vector<std::string>& params, std::size_t i, const std::string& what) {
  if (i >= params.size()) throw Error("missing parameter: " + what);
  const std::string& s = params[i];
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }) ||
      s.size() > 6) {
    throw Error("parameter '" + what + "' must be a non-negative integer, got '" + s + "'");
  }
  return static_cast<unsigned>(std::stoul(s));
}

int integer(const std::vector<std::string>& params, std::size_t i, const std::string& what) {
  if (i >= params.size()) throw Error("missing parameter: " + what);
  try {
    std::size_t used = 0;
    int v = std::stoi(params[i], &used);
    if (used == params[i].size()) return v;
  } catch (const std::exception&) {
  }
  throw Error("parameter '" + what + "' must be an integer, got '" + params[i] + "'");
}

Data data_list(const std::vector<std::string>& params, std::size_t i) {
  if (i >= params.size()) return bits();
  Data d;
  std::string cur;
  for (char c : params[i] + ",") {
    if (c == ',') {
      if (cur.empty()) throw Error("empty datum in '" + params[i] + "'");
      d.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  return d;
}

Data abp_data(const std::vector<std::string>& params, std::size_t i) {
  unsigned n = i < params.size() ? number(params, i, "data count") : 1;
  require(n >= 1 && n <= kMaxAbpData, "ABP data count");
  return data(n);
}

struct Entry {
  const char* name;
  const char* usage;
  std::function<Model(const std::vector<std::string>&)> make;
};

const std::vector<Entry>& entries() {
  using P = const std::vector<std::string>&;
  static const std::vector<Entry> table{
      {"counter", "k", [](P p) -> Model { return counter(number(p, 0, "k")); }},
      {"counter_mod", "k", [](P p) -> Model { return counter_mod(number(p, 0, "k")); }},
      {"unreliable_counter", "k", [](P p) -> Model { return unreliable_counter(number(p, 0, "k")); }},
      {"buffer", "l [data]", [](P p) -> Model { return buffer(number(p, 0, "l"), data_list(p, 1)); }},
      {"unreliable_buffer", "l [data]",
       [](P p) -> Model { return unreliable_buffer(number(p, 0, "l"), data_list(p, 1)); }},
      {"two_buffers", "l1 l2 [data]",
       [](P p) -> Model { return two_buffers(number(p, 0, "l1"), number(p, 1, "l2"), data_list(p, 2)).hidden; }},
      {"split", "[data]", [](P p) -> Model { return split(data_list(p, 0)); }},
      {"split_like", "[data]", [](P p) -> Model { return split_like(data_list(p, 0)); }},
      {"merge", "[data]", [](P p) -> Model { return merge(data_list(p, 0)); }},
      {"merge_alt", "[data]", [](P p) -> Model { return merge_alt(data_list(p, 0)); }},
      {"sink", "[data]", [](P p) -> Model { return sink(data_list(p, 0)); }},
      {"wire", "capacity [data]", [](P p) -> Model { return wire(data_list(p, 1), number(p, 0, "capacity")); }},
      {"merge_wire", "capacity [data]",
       [](P p) -> Model { return merge_wire(data_list(p, 1), number(p, 0, "capacity")).hidden; }},
      {"tau_noninert_first", "[data]", [](P p) -> Model { return tau_noninert_first(data_list(p, 0)); }},
      {"tau_noninert_second", "[data]", [](P p) -> Model { return tau_noninert_second(data_list(p, 0)); }},
      {"tau_inert_first", "[data]", [](P p) -> Model { return tau_inert_first(data_list(p, 0)); }},
      {"tau_inert_second", "[data]", [](P p) -> Model { return tau_inert_second(data_list(p, 0)); }},
      {"factorial_flow", "", [](P) -> Model { return factorial_flow(); }},
      {"gcd_flow", "", [](P) -> Model { return gcd_flow(); }},
      {"calculator", "min max",
       [](P p) -> Model { return calculator(integer(p, 0, "min"), integer(p, 1, "max")); }},
      {"peterson_p0", "", [](P) -> Model { return peterson_flow(0); }},
      {"peterson_p1", "", [](P) -> Model { return peterson_flow(1); }},
      {"peterson_machine", "", [](P) -> Model { return peterson_machine(); }},
      {"memory_cell", "", [](P) -> Model { return memory_cell(); }},
      {"scheduler_net", "n", [](P p) -> Model { return scheduler_net(number(p, 0, "n")); }},
      {"scheduler_process", "i", [](P p) -> Model { return scheduler_process(number(p, 0, "i")); }},
      {"scheduler_ring", "n", [](P p) -> Model { return scheduler_ring(number(p, 0, "n")); }},
      {"counter_net", "", [](P) -> Model { return counter_net(); }},
      {"counter_net_alt", "", [](P) -> Model { return counter_net_alt(); }},
      {"abp_sender", "[n]", [](P p) -> Model { return abp_sender(abp_data(p, 0)); }},
      {"abp_receiver", "[n]", [](P p) -> Model { return abp_receiver(abp_data(p, 0)); }},
      {"abp_channel_k", "[n]", [](P p) -> Model { return abp_channel_k(abp_data(p, 0)); }},
      {"abp_channel_l", "[n]", [](P p) -> Model { return abp_channel_l(abp_data(p, 0)); }},
      {"abp_composed", "[n]", [](P p) -> Model { return abp_composed(abp_data(p, 0)); }},
      {"abp_hidden", "[n]", [](P p) -> Model { return abp_hidden(abp_data(p, 0)); }},
      {"abp_target", "[n]", [](P p) -> Model { return abp_target(abp_data(p, 0)); }},
      {"abp_sender_spec", "[n]", [](P p) -> Model { return abp_sender_spec(abp_data(p, 0)); }},
      {"abp_receiver_spec", "[n]", [](P p) -> Model { return abp_receiver_spec(abp_data(p, 0)); }},
      {"abp_channel_k_spec", "[n]", [](P p) -> Model { return abp_channel_k_spec(abp_data(p, 0)); }},
      {"abp_channel_l_spec", "[n]", [](P p) -> Model { return abp_channel_l_spec(abp_data(p, 0)); }},
      {"counter2_spec", "", [](P) -> Model { return counter2_spec(); }},
      {"counter_unbounded_spec", "", [](P) -> Model { return unbounded_counter_spec(); }},
      {"counter_unbounded_alt_spec", "", [](P) -> Model { return unbounded_counter_alt_spec(); }},
      {"buffer1_spec", "", [](P) -> Model { return buffer1_spec(); }},
      {"buffer2_spec", "", [](P) -> Model { return buffer2_spec(); }},
      {"split_spec", "", [](P) -> Model { return split_spec(); }},
      {"merge_spec", "", [](P) -> Model { return merge_spec(); }},
      {"workcell_controller", "N", [](P p) -> Model { return workcell(number(p, 0, "N"), {"p0"}).controller; }},
      {"workcell_workstation", "N", [](P p) -> Model { return workcell(number(p, 0, "N"), {"p0"}).workstation; }},
      {"workcell_transport", "N", [](P p) -> Model { return workcell(number(p, 0, "N"), {"p0"}).transport; }},
      {"workcell_checker", "N", [](P p) -> Model { return workcell(number(p, 0, "N"), {"p0"}).checker; }},
      {"workcell_supplier", "N", [](P p) -> Model { return workcell(number(p, 0, "N"), {"p0"}).supplier; }},
      {"workcell_target", "N", [](P p) -> Model { return workcell(number(p, 0, "N"), {"p0"}).target; }},
  };
  return table;
}

}  // namespace

Model build(std::string_view name, const std::vector<std::string>& params) {
  for (const auto& e : entries()) {
    if (name == e.name) return e.make(params);
  }
  throw Error("unknown model '" + std::string(name) + "'");
}

std::vector<std::string> catalog() {
  std::vector<std::string> out;
  for (const auto& e : entries()) {
    std::string line = e.name;
    if (*e.usage != '\0') line += std::string(" ") + e.usage;
    out.push_back(line);
  }
  return out;
}

}  // namespace prockit::models
