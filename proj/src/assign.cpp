#include "evd/assign.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace evd {

Matrix LapSolution::to_matrix() const {
  int h = static_cast<int>(row_to_col.size());
  Matrix x(h, h, 0.0);
  for (int i = 0; i < h; ++i) x.at(i, row_to_col[i]) = 1.0;
  return x;
}

namespace {

double ride_energy_kwh(const CityGraph& g, const ScenarioConfig& cfg, int hops) {
  return hops * g.minutes_per_hop * cfg.drive_drain;
}

}  // namespace

CostMatrices build_cost_matrices(const std::vector<Ev>& evs,
                                 const std::vector<RideRequest>& rides,
                                 const std::vector<ChargeRequest>& charges,
                                 const CityGraph& graph, const ScenarioConfig& cfg,
                                 const PoolPredicate& pool_ok) {
  if (cfg.cost_per_hop < 0) throw ConfigError("cost_per_hop must be nonnegative");
  const int m = static_cast<int>(evs.size());
  const int p = static_cast<int>(rides.size());
  const int q = static_cast<int>(charges.size());
  const double kappa = cfg.cost_per_hop;
  const bool sharing = cfg.scenario == Scenario::Case2;

  for (const auto& r : rides)
    if (!graph.has_node(r.origin) || !graph.has_node(r.destination))
      throw DataError("ride request references unknown node");
  for (const auto& c : charges)
    if (!graph.has_node(c.facility)) throw DataError("charge request references unknown node");

  CostMatrices out;
  out.ride_cost = Matrix(m, p, kInfeasibleCost);
  out.charge_cost = Matrix(m, q, kInfeasibleCost);
  out.dropoff_cost = Matrix(m, p, 0.0);
  out.fixed_incentive = Matrix(m, p, 0.0);

  for (int i = 0; i < m; ++i) {
    const Ev& ev = evs[i];
    const double seat_bonus = sharing ? cfg.beta * ev.free_seats() : 0.0;

    if (ev.activity == Activity::Idle) {
      for (int j = 0; j < p; ++j) {
        const RideRequest& r = rides[j];
        int hp = graph.hops(ev.location, r.origin);
        if (hp > cfg.ride_hop_limit) continue;
        int ht = graph.hops(r.origin, r.destination);
        if (ev.soc - ride_energy_kwh(graph, cfg, hp + ht) < 0) continue;
        double c = kappa * (hp + ht);
        out.ride_cost.at(i, j) = c;
        out.dropoff_cost.at(i, j) = c;
        out.fixed_incentive.at(i, j) = r.bid - cfg.alpha * c + seat_bonus;
      }
      for (int j = 0; j < q; ++j) {
        const ChargeRequest& c = charges[j];
        int hc = graph.hops(ev.location, c.facility);
        if (hc > cfg.charge_hop_limit) continue;
        if (ev.soc > cfg.soc_charge_cutoff()) continue;
        if (ev.soc - ride_energy_kwh(graph, cfg, hc) < 0) continue;
        out.charge_cost.at(i, j) = kappa * hc;
      }
    } else if (ev.activity == Activity::Riding && pool_ok) {
      for (int j = 0; j < p; ++j) {
        const RideRequest& r = rides[j];
        if (!pool_ok(ev, r)) continue;
        int hp = graph.hops(ev.location, r.origin);
        int ht = graph.hops(r.origin, r.destination);
        if (ev.soc - ride_energy_kwh(graph, cfg, hp + ht) < 0) continue;
        double c = kappa * (hp + ht);
        out.ride_cost.at(i, j) = c;
        out.dropoff_cost.at(i, j) = c;
        out.fixed_incentive.at(i, j) = r.bid - cfg.alpha * c + seat_bonus;
      }
    }
    // Committed, charging or en-route EVs keep the all-infeasible rows.
  }

  for (double c : out.ride_cost.v)
    if (c != kInfeasibleCost && c >= kCostValidationLimit)
      throw DataError("ride cost exceeds the validation limit");
  for (double c : out.charge_cost.v)
    if (c != kInfeasibleCost && c >= kCostValidationLimit)
      throw DataError("charge cost exceeds the validation limit");
  return out;
}

LapInstance pad_symmetric(const CostMatrices& costs, const Incentives& y, int m, int p,
                          int q) {
  LapInstance inst;
  inst.m = m;
  inst.p = p;
  inst.q = q;
  inst.h = std::max(m, p + q);
  inst.net = Matrix(inst.h, inst.h, 0.0);
  for (int i = 0; i < inst.h; ++i) {
    for (int j = 0; j < inst.h; ++j) {
      double c;
      if (i < m && j < p) {
        double base = costs.ride_cost.at(i, j);
        c = (base == kInfeasibleCost) ? kInfeasibleCost : base - y.ride.at(i, j);
      } else if (i < m && j < p + q) {
        double base = costs.charge_cost.at(i, j - p);
        c = (base == kInfeasibleCost) ? kInfeasibleCost : base - y.charge.at(i, j - p);
      } else if (i >= m && j >= p + q) {
        c = 0.0;  // virtual EV serving a virtual request
      } else {
        c = kInfeasibleCost;  // virtual against real
      }
      inst.net.at(i, j) = c;
    }
  }
  return inst;
}

namespace {

// Shortest-augmenting-path Kuhn-Munkres. Returns the matched column per row
// plus the dual potentials, which certify optimality: an entry can belong to
// an optimal assignment only if its reduced cost is (numerically) zero.
void kuhn_munkres(const Matrix& cost, std::vector<int>& row_to_col, std::vector<double>& u,
                  std::vector<double>& v) {
  const int n = cost.rows;
  const double inf = std::numeric_limits<double>::infinity();
  u.assign(n + 1, 0.0);
  v.assign(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      int i0 = p[j0], j1 = 0;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = cost.at(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  row_to_col.assign(n, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j]) row_to_col[p[j] - 1] = j - 1;
}

// Depth-first reassignment over tight edges: tries to move `row` to another
// tight column, cascading through current owners. Columns owned by rows below
// `bound` are frozen. `vis` marks columns already claimed on this attempt.
bool reassign(int row, int bound, const std::vector<std::vector<int>>& tight,
              std::vector<int>& owner, std::vector<int>& match, std::vector<char>& vis) {
  for (int j : tight[row]) {
    if (vis[j]) continue;
    int o = owner[j];
    if (o != -1 && o < bound) continue;
    vis[j] = 1;
    if (o == -1 || reassign(o, bound, tight, owner, match, vis)) {
      match[row] = j;
      owner[j] = row;
      return true;
    }
  }
  return false;
}

// Among all optimal assignments (perfect matchings on the tight-edge graph
// certified by the duals), pick the lexicographically smallest row_to_col.
void lexicographic_minimum(const Matrix& cost, const std::vector<double>& u,
                           const std::vector<double>& v, std::vector<int>& match) {
  const int n = cost.rows;
  // Absolute slack tolerance: large enough to absorb the solver's accumulated
  // rounding for h up to a few hundred, small enough that deliberate cost
  // differences stay separated.
  const double eps = 1e-6;
  std::vector<std::vector<int>> tight(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (cost.at(i, j) - u[i + 1] - v[j + 1] <= eps) tight[i].push_back(j);

  std::vector<int> owner(n, -1);
  for (int i = 0; i < n; ++i) owner[match[i]] = i;

  for (int i = 0; i < n; ++i) {
    for (int j : tight[i]) {
      if (j >= match[i]) break;
      int r = owner[j];
      if (r != -1 && r < i) continue;  // column belongs to an already-fixed row
      int old = match[i];
      owner[old] = -1;
      match[i] = -1;
      std::vector<char> vis(n, 0);
      vis[j] = 1;
      bool ok = (r == -1) || reassign(r, i, tight, owner, match, vis);
      if (ok) {
        match[i] = j;
        owner[j] = i;
        break;
      }
      match[i] = old;
      owner[old] = i;
    }
  }
}

}  // namespace

LapSolution solve_lap(const LapInstance& inst) {
  LapSolution sol;
  if (inst.h == 0) return sol;
  std::vector<double> u, v;
  kuhn_munkres(inst.net, sol.row_to_col, u, v);
  lexicographic_minimum(inst.net, u, v, sol.row_to_col);
  sol.objective = 0.0;
  for (int i = 0; i < inst.h; ++i) sol.objective += inst.net.at(i, sol.row_to_col[i]);
  return sol;
}

std::vector<DispatchPair> assignment_to_dispatch(const LapSolution& sol,
                                                 const CostMatrices& costs, int m, int p,
                                                 int q) {
  std::vector<DispatchPair> out;
  for (int i = 0; i < m && i < static_cast<int>(sol.row_to_col.size()); ++i) {
    int j = sol.row_to_col[i];
    if (j < p) {
      if (costs.ride_cost.at(i, j) < kCostValidationLimit)
        out.push_back({i, false, j});
    } else if (j < p + q) {
      if (costs.charge_cost.at(i, j - p) < kCostValidationLimit)
        out.push_back({i, true, j - p});
    }
    // j >= p + q: matched to a virtual request, EV stays unassigned
  }
  return out;
}

std::vector<std::pair<int, long>> assignment_to_dispatch(
    const LapSolution& sol, const CostMatrices& costs, const std::vector<Ev>& evs,
    const std::vector<RideRequest>& rides, const std::vector<ChargeRequest>& charges) {
  auto pairs = assignment_to_dispatch(sol, costs, static_cast<int>(evs.size()),
                                      static_cast<int>(rides.size()),
                                      static_cast<int>(charges.size()));
  std::vector<std::pair<int, long>> out;
  out.reserve(pairs.size());
  for (const auto& d : pairs)
    out.emplace_back(evs[d.ev_row].id,
                     d.is_charge ? charges[d.request_col].id : rides[d.request_col].id);
  return out;
}

}  // namespace evd
