#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "prockit/compose.hpp"
#include "prockit/expr.hpp"
#include "prockit/lts.hpp"
#include "prockit/petri.hpp"
#include "prockit/recspec.hpp"

// Builders for the worked examples. State names follow the tuples used in the
// text: `*` stands for "no datum" and `ε` for the empty sequence.
namespace prockit::models {

using Data = std::vector<std::string>;
using Labels = std::set<std::string>;

// Parameter caps keeping every model at desk scale.
inline constexpr unsigned kMaxCounter = 64;
inline constexpr unsigned kMaxBufferStates = 4096;
inline constexpr std::size_t kMaxAbpData = 4;
inline constexpr unsigned kMaxWire = 8;
inline constexpr unsigned kMaxScheduler = 8;
inline constexpr unsigned kMaxWorkcell = 2;

// {"0", "1", ...}.
Data bits();
// {"d0", ..., "d<n-1>"}.
Data data(std::size_t n);
// Name of a sequence of data: `ε` when empty, otherwise the items in order,
// concatenated when every item is a single character and dot-joined otherwise.
std::string seq_name(const std::vector<std::string>& items);

// Bounded counters.
Lts counter(unsigned k);
Lts counter_mod(unsigned k);
Lts unreliable_counter(unsigned k);

// Bounded buffer with capacity `l`; `add`/`rem` name the two action families.
Lts buffer(unsigned l, const Data& d, const std::string& add = "add", const std::string& rem = "rem");
Lts unreliable_buffer(unsigned l, const Data& d);

// Buffers of capacity l1 (add1/rem1) and l2 (add2/rem2) joined by
// trf(d) = gamma(rem1(d), add2(d)), and a buffer of capacity l1 + l2 with
// actions add1/rem2 to compare the hidden system with.
struct TwoBuffers {
  Lts composed;  // encapsulated, before abstraction
  Lts hidden;
  Lts target;
  CommFn comm;
  Labels blocked;
  Labels internal;
};
TwoBuffers two_buffers(unsigned l1, unsigned l2, const Data& d);

// Connections with input port k and output ports l, m (split) or input ports
// k, l and output port m (merge).
Lts split(const Data& d, int k = 1, int l = 2, int m = 3);
Lts split_like(const Data& d, int k = 1, int l = 2, int m = 3);
Lts merge(const Data& d, int k = 1, int l = 2, int m = 3);
Lts merge_alt(const Data& d, int k = 1, int l = 2, int m = 3);
Lts sink(const Data& d, int k = 1);
// Wire from port m to port l holding at most `capacity` data.
Lts wire(const Data& d, unsigned capacity, int m = 3, int l = 2);

// Merge connection whose output is fed back into its second input through a
// wire of the given capacity, after encapsulation and abstraction.
struct MergeWire {
  Lts composed;  // encapsulated, before abstraction
  Lts hidden;
  Labels blocked;
  Labels internal;
};
MergeWire merge_wire(const Data& d, unsigned capacity);

// Unbounded buffer explored breadth-first up to `bound` states.
Exploration unbounded_buffer(const Data& d, std::size_t bound);

// Silent-step examples: a first system and the system it is compared with.
Lts tau_noninert_first(const Data& d);
Lts tau_noninert_second(const Data& d);
Lts tau_inert_first(const Data& d);
Lts tau_inert_second(const Data& d);

// Program flows (abstract execution).
Lts factorial_flow();
Lts gcd_flow();
Lts calculator(int min, int max);

// Peterson's protocol: flows of component 0 and 1, the machine, and the
// communication function pairing each flow action with the machine's.
Lts peterson_flow(unsigned component);
Lts peterson_machine();
CommFn peterson_comm();
// Machine label for a flow label, and the label left after synchronisation.
std::string machine_label(const std::string& flow_label);
std::string synced_label(const std::string& flow_label);

// Nets.
Net memory_cell();
Net scheduler_net(unsigned n);
Net scheduler_process(unsigned i);
Net scheduler_ring(unsigned n);
CommFn scheduler_comm(unsigned n);
Labels scheduler_blocked(unsigned n);
// Counter with bound 2 as a net, and the variant with a silent transfer.
Net counter_net();
Net counter_net_alt();

// Alternating bit protocol.
Lts abp_sender(const Data& d);
Lts abp_receiver(const Data& d);
Lts abp_channel_k(const Data& d);
Lts abp_channel_l(const Data& d);
CommFn abp_comm(const Data& d);
Labels abp_blocked(const Data& d);
Labels abp_internal(const Data& d);
Lts abp_composed(const Data& d);
Lts abp_hidden(const Data& d);
// One-place buffer with actions r1(d) and s2(d).
Lts abp_target(const Data& d);

struct AbpPipeline {
  Lts composed;
  Lts hidden;
  Lts target_buffer;
};
AbpPipeline abp_pipeline(const Data& d);

// Component expressions built from +, . and iteration.
ExprPtr abp_sender_expr(const Data& d);
ExprPtr abp_receiver_expr(const Data& d);
ExprPtr abp_channel_k_expr(const Data& d);
ExprPtr abp_channel_l_expr(const Data& d);

// Component recursive specifications.
RecSpec abp_sender_spec(const Data& d);
RecSpec abp_receiver_spec(const Data& d);
RecSpec abp_channel_k_spec(const Data& d);
RecSpec abp_channel_l_spec(const Data& d);

// Recursive specifications and expressions of the smaller examples.
RecSpec counter2_spec();
RecSpec unbounded_counter_spec();
RecSpec unbounded_counter_alt_spec();
RecSpec buffer1_spec();
RecSpec buffer2_spec();
RecSpec split_spec(int k = 1, int l = 2, int m = 3);
RecSpec merge_spec(int k = 1, int l = 2, int m = 3);
ExprPtr memory_cell_expr();
ExprPtr scheduler_process_expr(unsigned i);
ExprPtr scheduler_ring_expr(unsigned n);

// Workcell with quality check: controller, workstation, transport service,
// quality checker, supplier, and the specification of the intended behaviour.
struct Workcell {
  RecSpec controller;
  RecSpec workstation;
  RecSpec transport;
  RecSpec checker;
  RecSpec supplier;
  RecSpec target;
  CommFn comm;
  Labels blocked;       // ports 3..8, 10, 11
  Labels internal;      // their communications and i
  Labels supply_blocked;
  Labels supply_internal;
};
Workcell workcell(unsigned n_max, const Data& products);

// Catalog lookup: builds a model by name from string parameters.
using Model = std::variant<Lts, Net, RecSpec>;
Model build(std::string_view name, const std::vector<std::string>& params);
std::vector<std::string> catalog();

}  // namespace prockit::models
