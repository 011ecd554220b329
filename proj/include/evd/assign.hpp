// assign.hpp - the ride-service provider's assignment problem: cost matrices,
// symmetric padding with virtual agents, and an exact LAP solver.
#pragma once

#include <functional>
#include <vector>

#include "evd/model.hpp"

namespace evd {

// Square net-cost instance over the padded index sets. Real EV x real request
// entries hold (cost - incentive); virtual pairings carry the sentinel policy:
// kInfeasibleCost against real counterparts, 0 virtual-to-virtual.
struct LapInstance {
  Matrix net;  // h x h
  int m = 0, p = 0, q = 0, h = 0;
};

struct LapSolution {
  std::vector<int> row_to_col;
  double objective = 0.0;

  Matrix to_matrix() const;
};

// Extra feasibility hook for ride-sharing candidates: called for EVs that are
// already carrying passengers, decides whether a pooled pickup is allowed.
using PoolPredicate = std::function<bool(const Ev&, const RideRequest&)>;

// Builds C, D, A and W for one epoch. Idle EVs follow the standard hop/SOC/
// battery feasibility rules; Riding EVs are only feasible for rides accepted
// by pool_ok. Everything else is marked with the infeasible sentinel.
CostMatrices build_cost_matrices(const std::vector<Ev>& evs,
                                 const std::vector<RideRequest>& rides,
                                 const std::vector<ChargeRequest>& charges,
                                 const CityGraph& graph, const ScenarioConfig& cfg,
                                 const PoolPredicate& pool_ok = {});

LapInstance pad_symmetric(const CostMatrices& costs, const Incentives& y, int m, int p,
                          int q);

// Exact minimum-cost assignment (Kuhn-Munkres with shortest augmenting paths).
// Ties are broken toward the lexicographically smallest row_to_col vector
// among the optimal assignments.
LapSolution solve_lap(const LapInstance& inst);

struct DispatchPair {
  int ev_row = -1;
  bool is_charge = false;
  int request_col = -1;  // index into the ride or charge vector
};

// Filters virtual matches and pairs whose underlying C/D entry carries the
// infeasible sentinel; what remains is safe to dispatch.
std::vector<DispatchPair> assignment_to_dispatch(const LapSolution& sol,
                                                 const CostMatrices& costs, int m, int p,
                                                 int q);

// Convenience overload returning (ev id, request id) pairs.
std::vector<std::pair<int, long>> assignment_to_dispatch(
    const LapSolution& sol, const CostMatrices& costs, const std::vector<Ev>& evs,
    const std::vector<RideRequest>& rides, const std::vector<ChargeRequest>& charges);

}  // namespace evd
