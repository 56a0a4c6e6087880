// Command-line front end: parse, generate, compose, compare and export
// transition systems.
//
// Exit codes: 0 ok / equivalent, 1 not equivalent, 2 usage, 3 parse error,
// 4 budget exhausted.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "prockit/compose.hpp"
#include "prockit/equiv.hpp"
#include "prockit/error.hpp"
#include "prockit/expr.hpp"
#include "prockit/lts.hpp"
#include "prockit/models.hpp"
#include "prockit/petri.hpp"
#include "prockit/recspec.hpp"

namespace {

using namespace prockit;

constexpr int kOk = 0;
constexpr int kDiffer = 1;
constexpr int kUsage = 2;
constexpr int kParse = 3;
constexpr int kTruncated = 4;

// Thrown when an exploration hits its budget.
struct Truncated : Error {
  using Error::Error;
};

struct UsageError : Error {
  using Error::Error;
};

// Parse error tagged with the file it came from.
struct FileParseError : Error {
  FileParseError(const std::string& path, const ParseError& e)
      : Error(path + ":" + e.what()) {}
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + out_path + "'");
  out << text;
}

enum class Kind { Lts, Expr, Spec, Net, Comm };

Kind kind_of(const std::string& path, const std::string& forced) {
  std::string ext = forced;
  if (ext.empty()) {
    auto dot = path.rfind('.');
    if (dot == std::string::npos) throw UsageError("cannot tell the format of '" + path + "'; use --format");
    ext = path.substr(dot + 1);
  }
  if (ext == "lts") return Kind::Lts;
  if (ext == "expr") return Kind::Expr;
  if (ext == "spec") return Kind::Spec;
  if (ext == "net") return Kind::Net;
  if (ext == "comm") return Kind::Comm;
  throw UsageError("unknown format '" + ext + "' (expected lts, expr, spec, net or comm)");
}

// Expression files hold one expression; `#` starts a comment line.
std::string strip_comments(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string out;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first != std::string::npos && line[first] == '#') line.clear();
    out += line + '\n';
  }
  return out;
}

template <typename F>
auto parsing(const std::string& path, F f) {
  try {
    return f(read_file(path));
  } catch (const ParseError& e) {
    throw FileParseError(path, e);
  }
}

CommFn load_comm(const std::string& path) {
  if (path.empty()) return {};
  return parsing(path, [](const std::string& t) { return parse_comm(t); });
}

Lts expect_complete(Exploration ex, std::size_t bound) {
  if (!ex.complete) {
    throw Truncated("truncated: state budget " + std::to_string(bound) + " exhausted with " +
                    std::to_string(ex.frontier.size()) + " unexplored states");
  }
  return std::move(ex.lts);
}

struct Loaded {
  Lts lts;
  bool complete = true;
  std::size_t frontier = 0;
};

// Turns any supported input into a transition system. Truncation is
// reported through `complete` rather than thrown.
Loaded load_any(const std::string& path, const std::string& format, const CommFn& g, std::size_t bound) {
  Exploration ex;
  switch (kind_of(path, format)) {
    case Kind::Lts:
      ex.lts = parsing(path, [](const std::string& t) { return parse_lts(t); });
      break;
    case Kind::Expr: {
      auto p = parsing(path, [](const std::string& t) { return parse_expr(strip_comments(t)); });
      ex = sos_lts(p, g, bound);
      break;
    }
    case Kind::Spec: {
      auto s = parsing(path, [](const std::string& t) { return parse_spec(t); });
      ex = unfold(s, g, bound);
      break;
    }
    case Kind::Net: {
      auto n = parsing(path, [](const std::string& t) { return parse_net(t); });
      ex = trsy(n, bound);
      break;
    }
    case Kind::Comm:
      throw UsageError("'" + path + "' is a communication table, not a process");
  }
  return {std::move(ex.lts), ex.complete, ex.frontier.size()};
}

Lts load_complete(const std::string& path, const std::string& format, const CommFn& g, std::size_t bound) {
  Loaded l = load_any(path, format, g, bound);
  if (!l.complete) {
    throw Truncated("truncated: state budget " + std::to_string(bound) + " exhausted for '" + path + "' with " +
                    std::to_string(l.frontier) + " unexplored states");
  }
  return std::move(l.lts);
}

std::set<std::string> load_labels(const std::vector<std::string>& inline_labels, const std::string& file) {
  std::set<std::string> out(inline_labels.begin(), inline_labels.end());
  if (!file.empty()) {
    std::istringstream in(read_file(file));
    std::string word;
    while (in >> word) {
      if (word[0] == '#') {
        std::string rest;
        std::getline(in, rest);
        continue;
      }
      out.insert(word);
    }
  }
  return out;
}

std::string render(const Lts& l, bool dot) { return dot ? lts_to_dot(l) : print_lts(l); }

std::string join(const Trace& t) {
  if (t.empty()) return "(empty trace)";
  std::string out;
  for (const auto& a : t) {
    if (!out.empty()) out += ' ';
    out += a;
  }
  return out;
}

// Prints the verdict block for a comparison and returns the exit code.
int report(const std::string& rel, const Lts& a, const Lts& b, const EquivResult& r, bool verbose,
           std::optional<Bisim> kind) {
  std::cout << "RESULT: " << rel << ' ' << (r.equivalent ? "true" : "false") << '\n';
  if (r.witness) {
    std::cout << "witness: " << r.witness->size() << " pairs";
    if (kind) {
      auto bad = verify_witness(a, b, *r.witness, *kind);
      std::cout << (bad ? " (verification failed: " + *bad + ")" : " (verified)");
    }
    std::cout << '\n';
    if (verbose) {
      for (const auto& [x, y] : named(a, b, *r.witness)) std::cout << "  " << x << " ~ " << y << '\n';
    }
  }
  if (r.distinguisher) {
    std::cout << "distinguisher: " << join(*r.distinguisher)
              << (r.distinguisher_terminating ? " (terminating trace of one side only)" : " (trace of one side only)")
              << '\n';
  }
  if (r.unmatched_move) std::cout << "distinguisher: unmatched move " << *r.unmatched_move << '\n';
  if (!r.note.empty()) std::cout << "note: " << r.note << '\n';
  return r.equivalent ? kOk : kDiffer;
}

struct Common {
  std::string comm;
  std::size_t bound = 10000;
  std::string out;
  bool dot = false;
  std::string format;
};

void add_common(CLI::App* sub, Common& c, bool output) {
  sub->add_option("--comm", c.comm, "communication table (.comm)")->check(CLI::ExistingFile);
  sub->add_option("--bound", c.bound, "state budget for generation")->check(CLI::PositiveNumber);
  sub->add_option("--format", c.format, "input format: lts, expr, spec or net (default: file extension)");
  if (output) {
    sub->add_option("--out", c.out, "write the result to this file");
    sub->add_flag("--dot", c.dot, "emit Graphviz instead of the .lts format");
  }
}

int cmd_parse(const std::vector<std::string>& files, const std::string& format) {
  for (const auto& path : files) {
    switch (kind_of(path, format)) {
      case Kind::Lts: {
        Lts l = parsing(path, [](const std::string& t) { return parse_lts(t); });
        auto rep = validate(l);
        std::cout << path << ": lts, " << l.num_states() << " states, " << l.num_transitions() << " transitions\n";
        for (const auto& p : rep.problems) std::cout << "  warning: " << p << '\n';
        break;
      }
      case Kind::Expr: {
        auto p = parsing(path, [](const std::string& t) { return parse_expr(strip_comments(t)); });
        std::cout << path << ": expr " << print_expr(p) << '\n';
        break;
      }
      case Kind::Spec: {
        auto s = parsing(path, [](const std::string& t) { return parse_spec(t); });
        std::cout << path << ": spec " << s.name << ", " << s.equations.size() << " equations, "
                  << (is_guarded(s) ? "guarded" : "unguarded") << ", " << (is_linear(s) ? "linear" : "not linear")
                  << '\n';
        break;
      }
      case Kind::Net: {
        Net n = parsing(path, [](const std::string& t) { return parse_net(t); });
        auto rep = validate_net(n);
        std::cout << path << ": net " << n.name << ", " << n.places.size() << " places, " << n.transitions.size()
                  << " transitions\n";
        for (const auto& p : rep.problems) std::cout << "  warning: " << p << '\n';
        break;
      }
      case Kind::Comm: {
        CommFn g = load_comm(path);
        auto rep = validate_comm(g);
        std::cout << path << ": comm, " << g.size() << " entries\n";
        for (const auto& p : rep.problems) std::cout << "  warning: " << p << '\n';
        break;
      }
    }
  }
  return kOk;
}

int cmd_lts(const std::string& file, const Common& c) {
  Loaded l = load_any(file, c.format, load_comm(c.comm), c.bound);
  write_output(c.out, render(l.lts, c.dot));
  if (!l.complete) {
    std::cerr << "note: truncated: state budget " << c.bound << " exhausted with " << l.frontier
              << " unexplored states\n";
    return kTruncated;
  }
  return kOk;
}

int cmd_compose(const std::string& op, const std::vector<std::string>& files, const std::vector<std::string>& labels,
                const std::string& labels_file, const Common& c) {
  CommFn g = load_comm(c.comm);
  auto operand = [&](std::size_t i) { return load_complete(files[i], c.format, g, c.bound); };
  auto need = [&](std::size_t n) {
    if (files.size() != n) {
      throw UsageError("compose " + op + " takes " + std::to_string(n) + " operand" + (n == 1 ? "" : "s"));
    }
  };
  Lts result;
  if (op == "par" || op == "alt" || op == "seq" || op == "star") {
    need(2);
    Lts a = operand(0);
    Lts b = operand(1);
    if (op == "par") result = parallel(a, b, g);
    if (op == "alt") result = alt(a, b);
    if (op == "seq") result = seq(a, b);
    if (op == "star") result = star(a, b);
  } else if (op == "omega") {
    need(1);
    result = omega(operand(0));
  } else if (op == "encap" || op == "hide") {
    need(1);
    auto set = load_labels(labels, labels_file);
    result = op == "encap" ? encap(set, operand(0)) : hide(set, operand(0));
  } else {
    throw UsageError("unknown operator '" + op + "' (expected par, alt, seq, star, omega, encap or hide)");
  }
  write_output(c.out, render(result, c.dot));
  return kOk;
}

int cmd_check(const std::string& rel, const std::vector<std::string>& files, const Common& c, bool verbose) {
  if (files.size() != 2) throw UsageError("check takes two operands");
  CommFn g = load_comm(c.comm);
  Lts a = load_complete(files[0], c.format, g, c.bound);
  Lts b = load_complete(files[1], c.format, g, c.bound);
  if (rel == "iso") {
    auto iso = find_isomorphism(a, b);
    std::cout << "RESULT: iso " << (iso ? "true" : "false") << '\n';
    if (iso && verbose) {
      for (const auto& [x, y] : *iso) std::cout << "  " << x << " -> " << y << '\n';
    }
    return iso ? kOk : kDiffer;
  }
  if (rel == "trace") return report(rel, a, b, trace_eq(a, b), verbose, std::nullopt);
  if (rel == "lang") return report(rel, a, b, lang_eq(a, b), verbose, std::nullopt);
  if (rel == "bisim") return report(rel, a, b, strong_bisim(a, b), verbose, Bisim::Strong);
  if (rel == "branching") return report(rel, a, b, branching_bisim(a, b), verbose, Bisim::Branching);
  if (rel == "rbranching") {
    return report(rel, a, b, rooted_branching_bisim(a, b), verbose, Bisim::RootedBranching);
  }
  throw UsageError("unknown relation '" + rel + "' (expected iso, trace, lang, bisim, branching or rbranching)");
}

int cmd_minimize(const std::string& file, bool branching, const Common& c) {
  Lts l = load_complete(file, c.format, load_comm(c.comm), c.bound);
  write_output(c.out, render(minimize(l, branching ? Reduction::Branching : Reduction::Strong), c.dot));
  return kOk;
}

int cmd_classify(const std::string& file, const Common& c) {
  Lts l = load_complete(file, c.format, load_comm(c.comm), c.bound);
  auto cl = classify(l);
  auto yes = [](bool b) { return b ? "true" : "false"; };
  std::cout << "states " << l.num_states() << '\n'
            << "transitions " << l.num_transitions() << '\n'
            << "connected " << yes(cl.connected) << '\n'
            << "finite " << yes(cl.finite) << '\n'
            << "regular " << yes(cl.regular) << '\n'
            << "finitely_branching " << yes(cl.finitely_branching) << '\n'
            << "deterministic " << yes(cl.deterministic) << '\n'
            << "determinate " << yes(is_determinate(l)) << '\n';
  return kOk;
}

int cmd_dot(const std::string& file, const Common& c) {
  if (kind_of(file, c.format) == Kind::Net) {
    Net n = parsing(file, [](const std::string& t) { return parse_net(t); });
    write_output(c.out, net_to_dot(n));
    return kOk;
  }
  Loaded l = load_any(file, c.format, load_comm(c.comm), c.bound);
  write_output(c.out, lts_to_dot(l.lts));
  return l.complete ? kOk : kTruncated;
}

int cmd_model(const std::string& name, const std::vector<std::string>& params, bool list, const Common& c) {
  if (list || name.empty()) {
    for (const auto& line : models::catalog()) std::cout << line << '\n';
    return kOk;
  }
  auto m = models::build(name, params);
  std::string text;
  if (auto* l = std::get_if<Lts>(&m)) text = render(*l, c.dot);
  if (auto* n = std::get_if<Net>(&m)) text = c.dot ? net_to_dot(*n) : print_net(*n);
  if (auto* s = std::get_if<RecSpec>(&m)) text = print_spec(*s);
  write_output(c.out, text);
  return kOk;
}

// Demo pipelines print one RESULT line per verdict; the exit code is 0 only
// when every verdict is the expected one.
struct Demo {
  bool ok = true;
  void verdict(const std::string& what, bool got, bool expected = true) {
    std::cout << "RESULT: " << what << ' ' << (got ? "true" : "false") << '\n';
    ok = ok && got == expected;
  }
};

int demo_abp() {
  Demo d;
  for (std::size_t n : {1, 2}) {
    auto data = models::data(n);
    auto p = models::abp_pipeline(data);
    std::cout << "abp |D|=" << n << ": composed " << reduct(p.composed).num_states() << " states, hidden "
              << reduct(p.hidden).num_states() << " states\n";
    d.verdict("branching abp_hidden buffer1", branching_bisim(p.hidden, p.target_buffer).equivalent);
    d.verdict("rbranching abp_hidden buffer1", rooted_branching_bisim(p.hidden, p.target_buffer).equivalent);
  }
  auto data = models::data(1);
  d.verdict("determinate abp_hidden", is_determinate(models::abp_hidden(data)));
  d.verdict("determinate channel_k", is_determinate(models::abp_channel_k(data)), false);
  d.verdict("determinate channel_l", is_determinate(models::abp_channel_l(data)), false);
  return d.ok ? kOk : kDiffer;
}

int demo_buffers() {
  Demo d;
  for (auto [l1, l2] : {std::pair{1U, 1U}, {1U, 2U}, {2U, 2U}}) {
    auto t = models::two_buffers(l1, l2, models::bits());
    std::string tag = std::to_string(l1) + "+" + std::to_string(l2);
    std::cout << "buffers " << tag << ": composed " << reduct(t.composed).num_states() << " states\n";
    d.verdict("branching two_buffers(" + tag + ") buffer" + std::to_string(l1 + l2),
              branching_bisim(t.hidden, t.target).equivalent);
  }
  return d.ok ? kOk : kDiffer;
}

int demo_scheduler() {
  Demo d;
  const unsigned n = 3;
  const std::size_t bound = 100000;
  CommFn g = models::scheduler_comm(n);
  Net procs = models::scheduler_process(1);
  for (unsigned i = 2; i <= n; ++i) procs = par_nets(procs, models::scheduler_process(i), g);
  Net ring = models::scheduler_ring(n);
  Net joined = par_nets(procs, ring, g);
  auto h = models::scheduler_blocked(n);
  Lts via_nets = expect_complete(trsy(encap_net(h, joined, bound), bound), bound);
  Lts via_lts = encap(h, parallel(expect_complete(trsy(procs, bound), bound),
                                  expect_complete(trsy(ring, bound), bound), g));
  Lts direct = expect_complete(trsy(models::scheduler_net(n), bound), bound);
  std::cout << "scheduler n=" << n << ": " << direct.num_states() << " reachable markings\n";
  d.verdict("bisim trsy(encap(P||S)) encap(trsy(P)||trsy(S))", strong_bisim(via_nets, via_lts).equivalent);
  d.verdict("bisim trsy(encap(P||S)) scheduler_net", strong_bisim(via_nets, direct).equivalent);
  return d.ok ? kOk : kDiffer;
}

int cmd_demo(const std::string& which) {
  if (which == "abp") return demo_abp();
  if (which == "buffers") return demo_buffers();
  if (which == "scheduler") return demo_scheduler();
  throw UsageError("unknown demo '" + which + "' (expected abp, buffers or scheduler)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prockit: process algebra and transition system toolkit"};
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("--verbose,-v", verbose, "print witness pairs and isomorphisms");

  Common c;
  std::vector<std::string> files;
  std::string file;
  std::string op;
  std::string rel;
  std::string which;
  std::vector<std::string> labels;
  std::string labels_file;
  bool branching = false;
  bool list = false;
  std::vector<std::string> params;

  auto* parse = app.add_subcommand("parse", "check the syntax of expr/spec/net/lts/comm files");
  parse->add_option("files", files, "input files")->required();
  parse->add_option("--format", c.format, "input format (default: file extension)");

  auto* lts = app.add_subcommand("lts", "generate a transition system from an expr, spec or net");
  lts->add_option("file", file, "input file");
  lts->add_option("--expr", file, "expression file")->excludes(lts->get_option("file"));
  lts->add_option("--spec", file, "recursive specification file")->excludes(lts->get_option("file"));
  lts->add_option("--net", file, "net file")->excludes(lts->get_option("file"));
  add_common(lts, c, true);

  auto* unfold_cmd = app.add_subcommand("unfold", "unfold a recursive specification");
  unfold_cmd->add_option("spec", file, "specification file")->required();
  add_common(unfold_cmd, c, true);

  auto* compose = app.add_subcommand("compose", "apply an operator to transition systems");
  compose->add_option("op", op, "par, alt, seq, star, omega, encap or hide")->required();
  compose->add_option("files", files, "operands")->required();
  compose->add_option("--labels", labels, "labels for encap/hide")->delimiter(',');
  compose->add_option("--labels-file", labels_file, "whitespace-separated labels for encap/hide")
      ->check(CLI::ExistingFile);
  add_common(compose, c, true);

  auto* check = app.add_subcommand("check", "compare two systems");
  check->add_option("relation", rel, "iso, trace, lang, bisim, branching or rbranching")->required();
  check->add_option("files", files, "the two systems")->required();
  add_common(check, c, false);

  auto* minimize_cmd = app.add_subcommand("minimize", "quotient by the coarsest bisimulation");
  minimize_cmd->add_option("file", file, "input")->required();
  minimize_cmd->add_flag("--branching", branching, "use branching instead of strong bisimulation");
  add_common(minimize_cmd, c, true);

  auto* classify_cmd = app.add_subcommand("classify", "structural properties of a system");
  classify_cmd->add_option("file", file, "input")->required();
  add_common(classify_cmd, c, false);

  auto* dot = app.add_subcommand("dot", "Graphviz export");
  dot->add_option("file", file, "input")->required();
  add_common(dot, c, true);

  auto* demo = app.add_subcommand("demo", "run a verification pipeline");
  demo->add_option("which", which, "abp, buffers or scheduler")->required();

  auto* model = app.add_subcommand("model", "print a built-in model");
  model->add_option("name", file, "model name");
  model->add_option("params", params, "model parameters");
  model->add_flag("--list", list, "list the available models");
  add_common(model, c, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*parse) return cmd_parse(files, c.format);
    if (*lts) {
      if (file.empty()) throw UsageError("lts needs an input file");
      return cmd_lts(file, c);
    }
    if (*unfold_cmd) {
      if (c.format.empty()) c.format = "spec";
      return cmd_lts(file, c);
    }
    if (*compose) return cmd_compose(op, files, labels, labels_file, c);
    if (*check) return cmd_check(rel, files, c, verbose);
    if (*minimize_cmd) return cmd_minimize(file, branching, c);
    if (*classify_cmd) return cmd_classify(file, c);
    if (*dot) return cmd_dot(file, c);
    if (*demo) return cmd_demo(which);
    if (*model) return cmd_model(file, params, list, c);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const FileParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const Truncated& e) {
    std::cerr << "note: " << e.what() << '\n';
    return kTruncated;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
