// model.hpp - shared domain types: city graph, fleet, requests, config, metrics.
#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace evd {

// Cost assigned to vehicle/request pairs that must never be dispatched.
// Compared by exact equality; every legitimate cost must stay below
// kCostValidationLimit so the dispatch filter can separate them.
inline constexpr double kInfeasibleCost = 1e6;
inline constexpr double kCostValidationLimit = 1e5;

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct DataError : std::runtime_error {
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Deterministic RNG. Distribution helpers are hand-rolled so that frozen
// test values are portable across standard libraries.
struct Rng {
  std::mt19937_64 eng;

  explicit Rng(std::uint64_t seed) : eng(seed) {}

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // uniform integer in [lo, hi] inclusive
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(uniform() * (static_cast<double>(hi) - lo + 1.0));
  }

  bool bernoulli(double p) { return uniform() < p; }
};

// Dense row-major matrix of doubles. Small helper, not a linear algebra type.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> v;

  Matrix() = default;
  Matrix(int r, int c, double fill = 0.0)
      : rows(r), cols(c), v(static_cast<std::size_t>(r) * c, fill) {}

  double& at(int i, int j) { return v[static_cast<std::size_t>(i) * cols + j]; }
  double at(int i, int j) const { return v[static_cast<std::size_t>(i) * cols + j]; }

  bool same_shape(const Matrix& o) const { return rows == o.rows && cols == o.cols; }
};

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  double d = 0;
  for (std::size_t k = 0; k < a.v.size(); ++k) d = std::max(d, std::fabs(a.v[k] - b.v[k]));
  return d;
}

enum class Activity { Idle, ToPickup, Riding, ToCharger, Charging };
enum class RideStatus { Pending, Assigned, Completed, Missed };
enum class ChargeStatus { Pending, Assigned, Expired };
enum class SocBand { Low, Mid, High };
enum class Scenario { Fossil, BusinessAsUsual, Case1, Case2 };
enum class Weather { Sunny, CloudyMorning, CloudyAfternoon };

const char* to_string(Scenario s);
const char* to_string(Weather w);
Scenario scenario_from_string(const std::string& s);
Weather weather_from_string(const std::string& s);

// Region graph. Node ids are 1-based, matching the edge-list file format.
// hop_distance comes from per-source BFS, so it is symmetric, zero on the
// diagonal and satisfies the triangle inequality by construction.
struct CityGraph {
  int node_count = 0;
  std::vector<std::pair<int, int>> edges;  // u < v, 1-based ids
  std::vector<int> facility_nodes;         // sorted, subset of 1..node_count
  std::vector<std::vector<int>> hop;       // [u-1][v-1] minimum hop count
  std::vector<std::vector<int>> next;      // next node id on a shortest path
  int minutes_per_hop = 10;

  int hops(int u, int v) const { return hop[u - 1][v - 1]; }
  bool is_facility(int v) const;
  bool has_node(int v) const { return v >= 1 && v <= node_count; }

  // Shortest path from u to v, excluding u, including v. Empty when u == v.
  std::vector<int> path_between(int u, int v) const;
};

CityGraph build_graph(int node_count, const std::vector<std::pair<int, int>>& edges,
                      const std::vector<int>& facilities);

// The 9-node, 18-edge default instance with charging facilities at {3,5,8,9}.
CityGraph build_default_graph();

struct OnboardPassenger {
  long ride_id = -1;
  int destination = 0;
  int board_minute = 0;
  int deadline_minute = 0;  // extended by 4 per passenger boarded afterwards
  bool willing = false;
};

struct PendingPickup {
  long ride_id = -1;
  int origin = 0;
  int destination = 0;
  bool willing = false;
};

struct Ev {
  int id = 0;
  int location = 1;
  double soc = 0.0;  // kWh
  double battery_capacity = 50.0;
  Activity activity = Activity::Idle;
  std::vector<OnboardPassenger> onboard;
  int seats_total = 4;

  // route state
  std::vector<int> path;     // nodes still to reach, front = next
  int minutes_into_hop = 0;  // progress toward path.front()
  int dwell_minutes = 0;     // boarding pause, no driving or draining
  std::vector<PendingPickup> pending_pickups;
  long committed_ride = -1;
  long committed_charge = -1;
  int charge_facility = -1;

  // energy bookkeeping
  double drained_kwh = 0.0;
  double gained_kwh = 0.0;

  int free_seats() const {
    return seats_total - static_cast<int>(onboard.size()) -
           static_cast<int>(pending_pickups.size());
  }
};

struct RideRequest {
  long id = -1;
  int submit_minute = 0;
  int origin = 0;
  int destination = 0;
  double bid = 0.0;  // h_j in [0, h_max]
  bool willing_to_share = false;
  RideStatus status = RideStatus::Pending;
  int assigned_minute = -1;
};

struct ChargeRequest {
  long id = -1;
  int facility = 0;
  int issue_minute = 0;
  ChargeStatus status = ChargeStatus::Pending;
};

// Per-epoch cost data. Entries equal to kInfeasibleCost mark pairs the
// feasibility rules exclude; everything else must be < kCostValidationLimit.
struct CostMatrices {
  Matrix ride_cost;        // C, m x p
  Matrix charge_cost;      // D, m x q
  Matrix dropoff_cost;     // A, m x p
  Matrix fixed_incentive;  // W, m x p (0 where the ride pair is infeasible)
};

// Incentive blocks over the real (unpadded) index sets; virtual rows and
// columns are implicitly zero.
struct Incentives {
  Matrix ride;    // m x p, entries in [r_min, r_max]
  Matrix charge;  // m x q, entries in [l_min, l_max]
};

// Per-facility PV generation series in kW, one sample per simulation minute.
struct PvProfile {
  Weather label = Weather::Sunny;
  int minutes = 0;
  std::vector<int> facility_nodes;
  Matrix kw;  // facility index x minute

  double power(int facility_node, int minute) const;
  double peak(int facility_node) const;
};

struct ScenarioConfig {
  // fleet
  int fleet_size = 100;
  double battery_capacity = 50.0;        // kWh
  double drive_drain = 0.1;              // kWh per driving minute
  double charge_gain = 0.2;              // kWh per charging minute (1.15 = DC fast)
  double p_ch = 12.0;                    // per-EV draw in kW; 60 * charge_gain
  bool fast_charge = false;
  int seats_total = 4;

  // assignment
  int assignment_period = 1;             // minutes between epochs
  int ride_hop_limit = 2;
  int charge_hop_limit = 1;
  double soc_charge_eligibility = 2.0 / 3.0;  // above this fraction: no charge requests
  double soc_low_threshold = 0.10;
  double soc_high_threshold = 0.60;
  double cost_per_hop = 1.0;

  // incentives
  double h_max = 4.0;
  double alpha = 0.5;
  double beta = 0.5;
  double r_min = std::nan("");  // auto: -h_max
  double r_max = std::nan("");  // auto: +h_max
  double l_min = 0.0;
  double l_max = std::nan("");  // auto: 2 * c_rer * p_ch
  double b_min = 0.0;
  double b_max = std::nan("");  // auto per facility: c_rer * peak PV
  double c_rer = 0.1;           // currency per kWh of renewable generation
  std::vector<double> c_rer_schedule;  // optional per-minute override

  // bargaining
  int bargain_max_iters = 20;
  double y_tolerance = 1e-9;
  double merit_epsilon = 1e-6;

  // simulation
  int sim_minutes = 1080;  // 6:00 to 24:00
  int minutes_per_hop = 10;
  int max_wait_minutes = 10;
  int detour_delay_per_passenger = 4;
  double willingness = 1.0;
  Scenario scenario = Scenario::Case1;
  Weather weather = Weather::Sunny;
  bool initial_soc_full = false;
  std::uint64_t rng_seed = 1;

  // demand and data sources
  int synthetic_requests = 2462;
  std::string tlc_csv;
  std::string region_map;
  std::string tlc_date = "2022-03-01";
  int sample_size = 2462;
  std::string pv_csv;
  std::string graph_file;
  std::map<int, int> stations_per_facility = {{3, 2}, {5, 3}, {8, 2}, {9, 3}};
  double station_peak_kw = 25.0;

  // Resolve auto fields and keep charge_gain / p_ch consistent.
  void finalize();
  double c_rer_at(int minute) const;
  double soc_charge_cutoff() const { return soc_charge_eligibility * battery_capacity; }
};

SocBand soc_band(const Ev& ev, const ScenarioConfig& cfg);

// One row of the per-minute time series (plot-ready counters).
struct MinuteRow {
  int minute = 0;
  int idle = 0, to_pickup = 0, riding = 0, to_charger = 0, charging = 0;
  int soc_low = 0, soc_mid = 0, soc_high = 0;
  double pv_total_kw = 0, charge_power_kw = 0;
  std::vector<double> facility_pv_kw;
  std::vector<double> facility_charge_kw;
  double ride_incentives = 0, charge_incentives = 0;
  long cum_missed = 0;
};

struct Metrics {
  long received = 0;
  long missed = 0;
  long completed = 0;
  long pending_end = 0;  // still Pending or Assigned when the day ends

  double pv_available_kwh = 0;
  double pv_used_kwh = 0;
  bool pl_valid = false;

  long drive_minutes = 0;
  long charge_minutes = 0;
  double drained_kwh = 0;
  double gained_kwh = 0;
  double initial_soc_sum = 0;
  double final_soc_sum = 0;

  double ride_incentive_total = 0;
  double charge_incentive_total = 0;
  long charge_requests_issued = 0;
  long charge_requests_expired = 0;
  long charge_requests_served = 0;

  long epochs = 0;
  long bargain_sweeps = 0;
  long bargain_converged = 0;

  std::vector<MinuteRow> series;

  double qos() const {
    return received > 0 ? 1.0 - static_cast<double>(missed) / static_cast<double>(received)
                        : 1.0;
  }
  double pl() const {
    return pv_available_kwh > 0 ? 1.0 - pv_used_kwh / pv_available_kwh : 0.0;
  }
};

}  // namespace evd
