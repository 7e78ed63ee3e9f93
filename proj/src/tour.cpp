#include "jra/tour.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace jra {

std::size_t edge_difference(const EdgeSet& a, const EdgeSet& b) {
  std::size_t common = 0;
  for (const Edge& e : a) {
    if (b.contains(e)) ++common;
  }
  return a.size() + b.size() - 2 * common;
}

void validate_tour(const Instance& inst, const Tour& t) {
  const int n = inst.n();
  if (static_cast<int>(t.q_I.size()) != n || static_cast<int>(t.q_P.size()) != n) {
    throw ValidationError("tour sequence lengths (" + std::to_string(t.q_I.size()) + ", " +
                          std::to_string(t.q_P.size()) + ") != n = " + std::to_string(n));
  }
  std::vector<bool> seen(2 * n + 1, false);
  for (NodeId v : t.q_I) {
    if (!inst.is_item(v)) {
      throw ValidationError("q_I contains non-item id " + std::to_string(v));
    }
    if (seen[v]) {
      throw ValidationError("q_I repeats item " + std::to_string(v));
    }
    seen[v] = true;
  }
  for (NodeId v : t.q_P) {
    if (!inst.is_placeholder(v)) {
      throw ValidationError("q_P contains non-placeholder id " + std::to_string(v));
    }
    if (seen[v]) {
      throw ValidationError("q_P repeats placeholder " + std::to_string(v));
    }
    seen[v] = true;
  }
  if (inst.fixed_pair_enabled()) {
    const NodeId goal = inst.goal_item();
    const NodeId start = inst.start_placeholder();
    bool found = false;
    for (int k = 0; k < n; ++k) {
      if (t.q_I[k] == goal &&
          (t.q_P[k] == start || t.q_P[(k + n - 1) % n] == start)) {
        found = true;
        break;
      }
    }
    if (!found) {
      throw ValidationError("fixed pair edge (" + std::to_string(goal) + ", " +
                            std::to_string(start) + ") missing from tour");
    }
  }
}

double tour_cost(const Instance& inst, const Tour& t) {
  validate_tour(inst, t);
  const int n = t.n();
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    total += inst.cost(t.q_I[k], t.q_P[(k + n - 1) % n]);
    total += inst.cost(t.q_I[k], t.q_P[k]);
  }
  return total;
}

EdgeSet edges_of(const Tour& t) {
  EdgeSet edges;
  const int n = t.n();
  for (int k = 0; k < n; ++k) {
    edges.insert(t.q_I[k], t.q_P[(k + n - 1) % n]);
    edges.insert(t.q_I[k], t.q_P[k]);
  }
  return edges;
}

Tour cycle_path(const EdgeSet& edges, int n) {
  if (static_cast<int>(edges.size()) != 2 * n) {
    throw ValidationError("cycle_path needs exactly 2n = " + std::to_string(2 * n) +
                          " edges, got " + std::to_string(edges.size()));
  }
  // Adjacency: every node must end up with exactly two neighbors.
  std::vector<std::vector<NodeId>> adj(2 * n + 1);
  for (const Edge& e : edges) {
    if (e.item < 1 || e.item > n || e.placeholder <= n || e.placeholder > 2 * n) {
      throw ValidationError("edge (" + std::to_string(e.item) + ", " +
                            std::to_string(e.placeholder) + ") is not item-placeholder for n = " +
                            std::to_string(n));
    }
    adj[e.item].push_back(e.placeholder);
    adj[e.placeholder].push_back(e.item);
  }
  for (NodeId v = 1; v <= 2 * n; ++v) {
    if (adj[v].size() != 2) {
      throw DegreeError("node " + std::to_string(v) + " has degree " +
                        std::to_string(adj[v].size()) + ", expected 2", v);
    }
    std::sort(adj[v].begin(), adj[v].end());
  }

  Tour t;
  t.q_I.reserve(n);
  t.q_P.reserve(n);
  std::vector<bool> visited(2 * n + 1, false);
  NodeId current = 1;
  NodeId next = adj[1][0];  // smaller placeholder neighbor fixes orientation
  visited[current] = true;
  t.q_I.push_back(current);
  while (next != 1) {
    visited[next] = true;
    if (next > n) {
      t.q_P.push_back(next);
    } else {
      t.q_I.push_back(next);
    }
    // Walk to the neighbor we did not come from.
    const NodeId chosen = (adj[next][0] == current) ? adj[next][1] : adj[next][0];
    current = next;
    next = chosen;
  }
  if (static_cast<int>(t.q_I.size()) != n) {
    // The walk closed early: report component sizes in pairs.
    std::vector<int> components;
    std::vector<bool> comp_seen(2 * n + 1, false);
    for (NodeId start = 1; start <= 2 * n; ++start) {
      if (comp_seen[start]) continue;
      int nodes = 0;
      NodeId prev = 0, at = start;
      do {
        comp_seen[at] = true;
        ++nodes;
        const NodeId step = (adj[at][0] == prev) ? adj[at][1] : adj[at][0];
        prev = at;
        at = step;
      } while (at != start);
      components.push_back(nodes / 2);
    }
    std::sort(components.begin(), components.end());
    std::string msg = "edge set splits into " + std::to_string(components.size()) +
                      " cycles with pair sizes [";
    for (std::size_t i = 0; i < components.size(); ++i) {
      msg += (i ? "," : "") + std::to_string(components[i]);
    }
    msg += "]";
    throw SubtourError(msg, components);
  }
  return t;
}

std::string tour_to_json(const Instance& inst, const Tour& t) {
  nlohmann::json j;
  j["q_I"] = t.q_I;
  j["q_P"] = t.q_P;
  j["cost"] = tour_cost(inst, t);
  return j.dump(2) + "\n";
}

Tour tour_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("malformed tour JSON: ") + e.what());
  }
  if (!j.contains("q_I") || !j.contains("q_P") || !j["q_I"].is_array() || !j["q_P"].is_array()) {
    throw SchemaError("tour JSON requires array fields 'q_I' and 'q_P'");
  }
  Tour t;
  t.q_I = j["q_I"].get<std::vector<NodeId>>();
  t.q_P = j["q_P"].get<std::vector<NodeId>>();
  if (t.q_I.size() != t.q_P.size()) {
    throw SchemaError("tour JSON: q_I and q_P lengths differ");
  }
  return t;
}

void save_tour(const Instance& inst, const Tour& t, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) {
    throw Error("cannot write tour file: " + file.string());
  }
  out << tour_to_json(inst, t);
}

Tour load_tour(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw SchemaError("cannot open tour file: " + file.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return tour_from_json(buf.str());
}

}  // namespace jra
