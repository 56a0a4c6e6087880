// Writes the example files under data/ from the model builders, or with
// --check compares the existing files against them.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "prockit/compose.hpp"
#include "prockit/expr.hpp"
#include "prockit/lts.hpp"
#include "prockit/models.hpp"
#include "prockit/petri.hpp"
#include "prockit/recspec.hpp"

namespace {

using namespace prockit;
namespace m = prockit::models;

std::string labels_text(const std::set<std::string>& labels) {
  std::string out;
  for (const auto& l : labels) out += l + '\n';
  return out;
}

std::map<std::string, std::string> files() {
  std::map<std::string, std::string> f;
  auto lts = [&](const std::string& name, const Lts& l) { f[name + ".lts"] = print_lts(l); };
  auto net = [&](const std::string& name, const Net& n) { f[name + ".net"] = print_net(n); };
  auto spec = [&](const std::string& name, const RecSpec& s) { f[name + ".spec"] = print_spec(s); };
  auto expr = [&](const std::string& name, const ExprPtr& p) { f[name + ".expr"] = print_expr(p) + '\n'; };
  auto comm = [&](const std::string& name, const CommFn& g) { f[name + ".comm"] = print_comm(g); };
  auto labels = [&](const std::string& name, const std::set<std::string>& l) { f[name + ".labels"] = labels_text(l); };

  const auto bits = m::bits();
  lts("counter2", m::counter(2));
  lts("counter_mod2", m::counter_mod(2));
  lts("unreliable_counter2", m::unreliable_counter(2));
  lts("buffer2", m::buffer(2, bits));
  lts("unreliable_buffer2", m::unreliable_buffer(2, bits));
  lts("split", m::split(bits));
  lts("splitlike", m::split_like(bits));
  lts("merge", m::merge(bits));
  lts("mergealt", m::merge_alt(bits));
  lts("sink", m::sink(bits));
  lts("wire2", m::wire(bits, 2));
  lts("tau_noninert_first", m::tau_noninert_first(bits));
  lts("tau_noninert_second", m::tau_noninert_second(bits));
  lts("tau_inert_first", m::tau_inert_first(bits));
  lts("tau_inert_second", m::tau_inert_second(bits));
  lts("factorial_flow", m::factorial_flow());
  lts("gcd_flow", m::gcd_flow());
  lts("calculator", m::calculator(0, 2));

  lts("peterson_p0", m::peterson_flow(0));
  lts("peterson_p1", m::peterson_flow(1));
  lts("peterson_machine", m::peterson_machine());
  comm("peterson", m::peterson_comm());

  // Two-buffer composition, capacities 1 and 1.
  lts("buffer_add1_rem1", m::buffer(1, bits, "add1", "rem1"));
  lts("buffer_add2_rem2", m::buffer(1, bits, "add2", "rem2"));
  lts("buffer2_add1_rem2", m::buffer(2, bits, "add1", "rem2"));
  auto two = m::two_buffers(1, 1, bits);
  comm("buffers", two.comm);
  labels("buffers_blocked", two.blocked);
  labels("buffers_internal", two.internal);

  net("memory_cell", m::memory_cell());
  expr("memory_cell", m::memory_cell_expr());
  net("scheduler3", m::scheduler_net(3));
  for (unsigned i = 1; i <= 3; ++i) {
    net("scheduler_p" + std::to_string(i), m::scheduler_process(i));
    expr("scheduler_p" + std::to_string(i), m::scheduler_process_expr(i));
  }
  net("scheduler_ring3", m::scheduler_ring(3));
  expr("scheduler_ring3", m::scheduler_ring_expr(3));
  comm("scheduler3", m::scheduler_comm(3));
  labels("scheduler3_blocked", m::scheduler_blocked(3));
  net("counter_net", m::counter_net());
  net("counter_net_alt", m::counter_net_alt());

  const auto d = m::data(1);
  lts("abp_sender", m::abp_sender(d));
  lts("abp_receiver", m::abp_receiver(d));
  lts("abp_channel_k", m::abp_channel_k(d));
  lts("abp_channel_l", m::abp_channel_l(d));
  lts("abp_hidden", m::abp_hidden(d));
  lts("buffer1", m::abp_target(d));
  comm("abp", m::abp_comm(d));
  labels("abp_blocked", m::abp_blocked(d));
  labels("abp_internal", m::abp_internal(d));
  expr("abp_sender", m::abp_sender_expr(d));
  expr("abp_receiver", m::abp_receiver_expr(d));
  expr("abp_channel_k", m::abp_channel_k_expr(d));
  expr("abp_channel_l", m::abp_channel_l_expr(d));
  spec("abp_sender", m::abp_sender_spec(d));
  spec("abp_receiver", m::abp_receiver_spec(d));
  spec("abp_channel_k", m::abp_channel_k_spec(d));
  spec("abp_channel_l", m::abp_channel_l_spec(d));

  spec("counter2", m::counter2_spec());
  spec("counter_unbounded", m::unbounded_counter_spec());
  spec("counter_unbounded_alt", m::unbounded_counter_alt_spec());
  spec("buffer1", m::buffer1_spec());
  spec("buffer2", m::buffer2_spec());
  spec("split", m::split_spec());
  spec("merge", m::merge_spec());

  for (unsigned n = 1; n <= m::kMaxWorkcell; ++n) {
    auto w = m::workcell(n, {"p0"});
    std::string tag = "workcell" + std::to_string(n) + "_";
    spec(tag + "controller", w.controller);
    spec(tag + "workstation", w.workstation);
    spec(tag + "transport", w.transport);
    spec(tag + "checker", w.checker);
    spec(tag + "supplier", w.supplier);
    spec(tag + "target", w.target);
    comm(tag.substr(0, tag.size() - 1), w.comm);
    auto blocked = w.blocked;
    blocked.insert(w.supply_blocked.begin(), w.supply_blocked.end());
    auto internal = w.internal;
    internal.insert(w.supply_internal.begin(), w.supply_internal.end());
    labels(tag + "blocked", blocked);
    labels(tag + "internal", internal);
  }
  return f;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generate or check the example data files"};
  std::string dir;
  bool check = false;
  app.add_option("dir", dir, "data directory")->required();
  app.add_flag("--check", check, "compare instead of writing");
  CLI11_PARSE(app, argc, argv);

  namespace fs = std::filesystem;
  int mismatches = 0;
  for (const auto& [name, text] : files()) {
    fs::path p = fs::path(dir) / name;
    if (check) {
      if (!fs::exists(p)) {
        std::cout << "missing " << name << '\n';
        ++mismatches;
      } else if (slurp(p) != text) {
        std::cout << "differs " << name << '\n';
        ++mismatches;
      }
    } else {
      fs::create_directories(dir);
      std::ofstream(p, std::ios::binary) << text;
    }
  }
  if (check) std::cout << (mismatches == 0 ? "all data files match\n" : "data files out of date\n");
  return mismatches == 0 ? 0 : 1;
}
