#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace gridras {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// Malformed case/config text (bad JSON, wrong types, missing fields).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structurally invalid case (dangling references, duplicate ids, ...).
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated an operation's contract.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Simulation cannot proceed (unsolvable base case, incomplete oracle, ...).
class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested remedial policy does not exist in this state (e.g. the islanding
/// scheme has no further level). The switching layer treats the policy as
/// absent rather than failing the run.
class PolicyUnavailableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Static network description
// ---------------------------------------------------------------------------

enum class BusKind { Slack, Generation, Load };

struct Bus {
  int id = 0;
  double base_kv = 0.0;
  BusKind kind = BusKind::Load;
  double v_min = 0.9;   // pu, lower bound of the acceptable operating range
  double v_max = 1.12;  // pu, upper bound
};

struct Branch {
  int id = 0;
  int from_bus = 0;
  int to_bus = 0;
  double r = 0.0;        // pu
  double x = 0.0;        // pu, must be nonzero
  double b_shunt = 0.0;  // pu, total line charging
  double rating_mva = 0.0;
  double secure_rating_mva = 0.0;  // always 1.1 * rating_mva
  bool in_service = true;
};

struct Generator {
  int id = 0;
  int bus = 0;
  double p_set_mw = 0.0;
  double q_min_mvar = 0.0;
  double q_max_mvar = 0.0;
  double v_setpoint_pu = 1.0;
  double p_max_mw = 0.0;
  bool in_service = true;
};

struct Load {
  int id = 0;
  int bus = 0;
  double p_demand_mw = 0.0;
  double q_demand_mvar = 0.0;
  double scale = 1.0;  // current shed multiplier, in [0, 1]
  bool in_service = true;
};

/// One pre-planned split of the network. Applying levels 1..k cumulatively
/// opens all their tie branches and must yield exactly the partitions
/// declared at level k.
struct IslandLevel {
  std::vector<std::vector<int>> partitions;  // bus ids
  std::vector<int> tie_branches;             // branch ids opened by this level
};

struct IslandingScheme {
  std::vector<IslandLevel> levels;  // at most 2
};

/// Immutable grid description. Built by parse_case (or a test helper) and
/// then shared read-only across every state copy and rollout thread.
class NetworkCase {
 public:
  double base_mva = 100.0;
  std::vector<Bus> buses;
  std::vector<Branch> branches;
  std::vector<Generator> generators;
  std::vector<Load> loads;
  IslandingScheme islanding_scheme;

  // Derived lookups, filled by finalize().
  int slack_bus = -1;  // index into buses
  std::map<int, int> bus_index_by_id;
  std::map<int, int> branch_index_by_id;
  std::vector<std::vector<int>> branches_at_bus;    // branch indices per bus
  std::vector<std::vector<int>> generators_at_bus;  // generator indices per bus
  std::vector<std::vector<int>> loads_at_bus;       // load indices per bus

  /// Validates every structural invariant and builds the lookup tables.
  /// Throws IntegrityError on violation.
  void finalize();

  int bus_index(int id) const;     // -1 when absent
  int branch_index(int id) const;  // -1 when absent

  /// Finds a branch by its endpoint bus ids (either orientation); with
  /// parallel branches the lowest branch id wins. Returns -1 when absent.
  int branch_index_by_endpoints(int bus_a, int bus_b) const;

  /// Total load demand of the pristine case in MVA (sum of per-load |P+jQ|
  /// at scale 1, everything in service). The reward normalization constant.
  double total_load_mva() const { return total_load_mva_; }

 private:
  double total_load_mva_ = 0.0;
};

// ---------------------------------------------------------------------------
// Dynamic snapshot
// ---------------------------------------------------------------------------

/// Everything that changes during a simulation. A plain value: copying one
/// is how concurrent rollouts get independent worlds.
struct SystemState {
  std::shared_ptr<const NetworkCase> net;

  std::vector<std::uint8_t> bus_in_service;
  std::vector<std::uint8_t> branch_in_service;
  std::vector<std::uint8_t> gen_in_service;
  std::vector<std::uint8_t> load_in_service;
  std::vector<double> load_scale;   // shed multiplier per load, in [0, 1]
  std::vector<double> load_noise;   // rollout-local multiplicative perturbation

  std::vector<std::complex<double>> voltage;  // pu phasor per bus; 0 when dead

  std::vector<std::vector<int>> islands;  // bus indices, each sorted ascending
  std::vector<int> island_slack;          // bus index per island, -1 if none

  std::int64_t scan_count = 0;     // relay scans elapsed since t = 0
  double relay_step_s = 0.1;       // clock granularity
  int islanding_level_applied = 0;

  // Relay bookkeeping: consecutive out-of-bounds scans per bus, consecutive
  // overload scans per branch.
  std::vector<int> bus_oob_scans;
  std::vector<int> branch_overload_scans;

  // Cached by the engine after each solve+scan.
  bool last_solve_ok = true;    // every energized island converged
  bool last_acceptable = true;  // the B flag of the latest solution

  double clock() const { return static_cast<double>(scan_count) * relay_step_s; }

  bool any_relay_counter_pending() const;
  bool any_bus_in_service() const;
};

/// Pristine state for a case: everything in service, flat voltage profile,
/// one island covering the whole network.
SystemState make_initial_state(std::shared_ptr<const NetworkCase> net);

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Parses the JSON case format. Throws ParseError for malformed text or
/// fields, IntegrityError for structurally invalid cases.
NetworkCase parse_case(const std::string& text);

/// Inverse of parse_case up to structural identity.
std::string serialize_case(const NetworkCase& net);

/// Sum over in-service loads of scale * noise * |P + jQ|, in MVA.
double total_operational_load(const SystemState& state);

struct LossMetrics {
  int buses = 0;
  int generators = 0;
  int loads = 0;  // fully lost: out of service or scale 0
  int lines = 0;

  bool operator==(const LossMetrics&) const = default;
};

/// Elements in service in `baseline` but lost in `state`.
/// Throws UsageError when the two states reference different cases.
LossMetrics loss_metrics(const SystemState& state, const SystemState& baseline);

}  // namespace gridras
