#include "evd/model.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace evd {

const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::Fossil: return "fossil";
    case Scenario::BusinessAsUsual: return "business_as_usual";
    case Scenario::Case1: return "case1";
    case Scenario::Case2: return "case2";
  }
  return "?";
}

const char* to_string(Weather w) {
  switch (w) {
    case Weather::Sunny: return "sunny";
    case Weather::CloudyMorning: return "cloudy_morning";
    case Weather::CloudyAfternoon: return "cloudy_afternoon";
  }
  return "?";
}

Scenario scenario_from_string(const std::string& s) {
  if (s == "fossil") return Scenario::Fossil;
  if (s == "business_as_usual" || s == "bau") return Scenario::BusinessAsUsual;
  if (s == "case1") return Scenario::Case1;
  if (s == "case2") return Scenario::Case2;
  throw ConfigError("unknown scenario: " + s);
}

Weather weather_from_string(const std::string& s) {
  if (s == "sunny") return Weather::Sunny;
  if (s == "cloudy_morning") return Weather::CloudyMorning;
  if (s == "cloudy_afternoon") return Weather::CloudyAfternoon;
  throw ConfigError("unknown weather: " + s);
}

bool CityGraph::is_facility(int v) const {
  return std::binary_search(facility_nodes.begin(), facility_nodes.end(), v);
}

std::vector<int> CityGraph::path_between(int u, int v) const {
  std::vector<int> out;
  int cur = u;
  while (cur != v) {
    cur = next[cur - 1][v - 1];
    out.push_back(cur);
  }
  return out;
}

CityGraph build_graph(int node_count, const std::vector<std::pair<int, int>>& edges,
                      const std::vector<int>& facilities) {
  if (node_count <= 0) throw DataError("graph must have at least one node");
  CityGraph g;
  g.node_count = node_count;

  std::set<std::pair<int, int>> seen;
  std::vector<std::vector<int>> adj(node_count);
  for (auto [u, v] : edges) {
    if (u < 1 || u > node_count || v < 1 || v > node_count)
      throw DataError("edge references unknown node");
    if (u == v) throw DataError("self-loop edge");
    auto e = std::minmax(u, v);
    if (!seen.insert({e.first, e.second}).second) continue;  // drop duplicates
    g.edges.emplace_back(e.first, e.second);
    adj[u - 1].push_back(v);
    adj[v - 1].push_back(u);
  }
  for (auto& nb : adj) std::sort(nb.begin(), nb.end());

  g.facility_nodes = facilities;
  std::sort(g.facility_nodes.begin(), g.facility_nodes.end());
  g.facility_nodes.erase(std::unique(g.facility_nodes.begin(), g.facility_nodes.end()),
                         g.facility_nodes.end());
  for (int f : g.facility_nodes)
    if (f < 1 || f > node_count) throw DataError("facility references unknown node");

  // BFS from every source; neighbors visited in ascending id order so the
  // next-hop table (and therefore every route) is deterministic.
  g.hop.assign(node_count, std::vector<int>(node_count, -1));
  g.next.assign(node_count, std::vector<int>(node_count, 0));
  for (int s = 1; s <= node_count; ++s) {
    auto& dist = g.hop[s - 1];
    std::vector<int> parent(node_count, 0);
    dist[s - 1] = 0;
    std::deque<int> bfs{s};
    while (!bfs.empty()) {
      int u = bfs.front();
      bfs.pop_front();
      for (int w : adj[u - 1]) {
        if (dist[w - 1] < 0) {
          dist[w - 1] = dist[u - 1] + 1;
          parent[w - 1] = u;
          bfs.push_back(w);
        }
      }
    }
    for (int t = 1; t <= node_count; ++t) {
      if (dist[t - 1] < 0) throw DataError("graph is not connected");
      // walk the BFS tree backwards to find the first step from s toward t
      int cur = t;
      while (cur != s && parent[cur - 1] != s) cur = parent[cur - 1];
      g.next[s - 1][t - 1] = (t == s) ? s : cur;
    }
  }
  return g;
}

CityGraph build_default_graph() {
  // 3x3 grid (rows 1-2-3 / 4-5-6 / 7-8-9) plus six diagonals, 18 edges total.
  std::vector<std::pair<int, int>> edges = {
      {1, 2}, {2, 3}, {4, 5}, {5, 6}, {7, 8}, {8, 9},   // horizontal
      {1, 4}, {4, 7}, {2, 5}, {5, 8}, {3, 6}, {6, 9},   // vertical
      {1, 5}, {2, 6}, {4, 8}, {5, 9}, {2, 4}, {6, 8}};  // diagonals
  return build_graph(9, edges, {3, 5, 8, 9});
}

double PvProfile::power(int facility_node, int minute) const {
  if (minute < 0 || minute >= minutes) return 0.0;
  for (std::size_t i = 0; i < facility_nodes.size(); ++i)
    if (facility_nodes[i] == facility_node) return kw.at(static_cast<int>(i), minute);
  return 0.0;
}

double PvProfile::peak(int facility_node) const {
  double best = 0.0;
  for (std::size_t i = 0; i < facility_nodes.size(); ++i)
    if (facility_nodes[i] == facility_node)
      for (int t = 0; t < minutes; ++t) best = std::max(best, kw.at(static_cast<int>(i), t));
  return best;
}

void ScenarioConfig::finalize() {
  if (fleet_size <= 0) throw ConfigError("fleet_size must be positive");
  if (battery_capacity <= 0) throw ConfigError("battery_capacity must be positive");
  if (cost_per_hop < 0) throw ConfigError("cost_per_hop must be nonnegative");
  if (h_max < 0) throw ConfigError("h_max must be nonnegative");
  if (willingness < 0 || willingness > 1) throw ConfigError("willingness must be in [0,1]");
  if (fast_charge) charge_gain = 1.15;
  // p_ch tracks charge_gain unless explicitly overridden to something else.
  if (std::fabs(p_ch - 60.0 * charge_gain) > 1e-12 && p_ch == 12.0)
    p_ch = 60.0 * charge_gain;
  if (std::isnan(r_min)) r_min = -h_max;
  if (std::isnan(r_max)) r_max = h_max;
  if (r_min > r_max) throw ConfigError("r_min > r_max");
  if (std::isnan(l_max)) l_max = 2.0 * c_rer * p_ch;
  if (l_min > l_max) throw ConfigError("l_min > l_max");
  if (!std::isnan(b_max) && b_min > b_max) throw ConfigError("b_min > b_max");
}

double ScenarioConfig::c_rer_at(int minute) const {
  if (!c_rer_schedule.empty()) {
    int i = std::clamp(minute, 0, static_cast<int>(c_rer_schedule.size()) - 1);
    return c_rer_schedule[static_cast<std::size_t>(i)];
  }
  return c_rer;
}

SocBand soc_band(const Ev& ev, const ScenarioConfig& cfg) {
  double cap = ev.battery_capacity;
  if (ev.soc < cfg.soc_low_threshold * cap) return SocBand::Low;
  if (ev.soc > cfg.soc_high_threshold * cap) return SocBand::High;
  return SocBand::Mid;
}

}  // namespace evd
