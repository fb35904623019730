#include "picheck/universe.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace picheck {

std::string to_string(const Constraint& c) {
  std::ostringstream os;
  os << "u" << c.lo.id << (c.rel == Constraint::Strict ? " < " : " <= ")
     << "u" << c.hi.id;
  return os.str();
}

bool Assignment::satisfies(const Constraint& c) const {
  auto lo = values.find(c.lo.id);
  auto hi = values.find(c.hi.id);
  if (lo == values.end() || hi == values.end()) return false;
  return c.rel == Constraint::Strict ? lo->second < hi->second
                                     : lo->second <= hi->second;
}

void ConstraintSet::add_level(const Level& l) {
  if (level_index_.count(l.id)) return;
  level_index_[l.id] = levels_.size();
  levels_.push_back(l);
}

void ConstraintSet::add(const Constraint& c) {
  add_level(c.lo);
  add_level(c.hi);
  auto key = std::make_tuple(c.lo.id, static_cast<int>(c.rel), c.hi.id);
  if (edge_index_.count(key)) return;
  edge_index_[key] = constraints_.size();
  constraints_.push_back(c);
}

void ConstraintSet::add_all(const std::vector<Constraint>& delta) {
  for (const Constraint& c : delta) add(c);
}

ConstraintSet ConstraintSet::merged(const ConstraintSet& a,
                                    const ConstraintSet& b) {
  ConstraintSet out = a;
  for (const Level& l : b.levels_) out.add_level(l);
  for (const Constraint& c : b.constraints_) out.add(c);
  return out;
}

bool ConstraintSet::same_constraints(const ConstraintSet& other) const {
  if (constraints_.size() != other.constraints_.size()) return false;
  for (const Constraint& c : constraints_) {
    auto key = std::make_tuple(c.lo.id, static_cast<int>(c.rel), c.hi.id);
    if (!other.edge_index_.count(key)) return false;
  }
  return true;
}

namespace {

struct Graph {
  // Dense renumbering of the mentioned level ids, in first-seen order.
  std::vector<Level> levels;
  std::map<std::uint32_t, std::size_t> index;
  // adj[v] lists (target, weight, constraint position).
  std::vector<std::vector<std::tuple<std::size_t, int, std::size_t>>> adj;
};

Graph build_graph(const ConstraintSet& set) {
  Graph g;
  for (const Level& l : set.levels()) {
    g.index[l.id] = g.levels.size();
    g.levels.push_back(l);
  }
  g.adj.resize(g.levels.size());
  const auto& cs = set.constraints();
  for (std::size_t i = 0; i < cs.size(); i++) {
    std::size_t lo = g.index.at(cs[i].lo.id);
    std::size_t hi = g.index.at(cs[i].hi.id);
    int w = cs[i].rel == Constraint::Strict ? 1 : 0;
    g.adj[lo].push_back({hi, w, i});
  }
  return g;
}

// Tarjan strongly connected components, iterative. Returns the component id
// of each vertex; component ids are in reverse topological order.
std::vector<std::size_t> tarjan_scc(const Graph& g, std::size_t& scc_count) {
  std::size_t n = g.levels.size();
  std::vector<std::size_t> low(n), num(n), comp(n, SIZE_MAX);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0;
  scc_count = 0;

  struct Frame {
    std::size_t v;
    std::size_t edge = 0;
  };
  std::vector<bool> visited(n, false);
  for (std::size_t root = 0; root < n; root++) {
    if (visited[root]) continue;
    std::vector<Frame> call;
    call.push_back({root});
    visited[root] = true;
    num[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.edge < g.adj[f.v].size()) {
        std::size_t w = std::get<0>(g.adj[f.v][f.edge++]);
        if (!visited[w]) {
          visited[w] = true;
          num[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], num[w]);
        }
      } else {
        if (low[f.v] == num[f.v]) {
          while (true) {
            std::size_t w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp[w] = scc_count;
            if (w == f.v) break;
          }
          scc_count++;
        }
        std::size_t v = f.v;
        call.pop_back();
        if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      }
    }
  }
  return comp;
}

// Fewest-edge cycle through the strict edge at `strict_pos`: BFS from the
// edge's head back to its tail, restricted to the component they share.
std::vector<Constraint> minimal_cycle(const ConstraintSet& set, const Graph& g,
                                      const std::vector<std::size_t>& comp,
                                      std::size_t strict_pos) {
  const auto& cs = set.constraints();
  std::size_t tail = g.index.at(cs[strict_pos].lo.id);
  std::size_t head = g.index.at(cs[strict_pos].hi.id);
  if (tail == head) return {cs[strict_pos]};  // reflexive strict constraint

  std::vector<std::size_t> pred_edge(g.levels.size(), SIZE_MAX);
  std::vector<bool> seen(g.levels.size(), false);
  std::deque<std::size_t> queue;
  queue.push_back(head);
  seen[head] = true;
  while (!queue.empty() && !seen[tail]) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (const auto& [w, weight, pos] : g.adj[v]) {
      if (comp[w] != comp[tail] || seen[w]) continue;
      seen[w] = true;
      pred_edge[w] = pos;
      queue.push_back(w);
    }
  }
  std::vector<Constraint> cycle{cs[strict_pos]};
  std::size_t v = tail;
  while (v != head) {
    std::size_t pos = pred_edge[v];
    cycle.push_back(cs[pos]);
    v = g.index.at(cs[pos].lo.id);
  }
  std::reverse(cycle.begin() + 1, cycle.end());
  return cycle;
}

}  // namespace

SatResult satisfiable(const ConstraintSet& set) {
  Graph g = build_graph(set);
  std::size_t scc_count = 0;
  std::vector<std::size_t> comp = tarjan_scc(g, scc_count);

  // A positive cycle exists iff some strict edge has both ends in one
  // component (reflexive strict edges included).
  const auto& cs = set.constraints();
  std::optional<std::size_t> best_pos;
  std::size_t best_len = SIZE_MAX;
  for (std::size_t i = 0; i < cs.size(); i++) {
    if (cs[i].rel != Constraint::Strict) continue;
    std::size_t lo = g.index.at(cs[i].lo.id);
    std::size_t hi = g.index.at(cs[i].hi.id);
    if (comp[lo] != comp[hi]) continue;
    std::vector<Constraint> cyc = minimal_cycle(set, g, comp, i);
    if (cyc.size() < best_len) {
      best_len = cyc.size();
      best_pos = i;
    }
  }
  if (best_pos) return Unsat{minimal_cycle(set, g, comp, *best_pos)};

  // Longest-path labeling over the condensation. Tarjan numbers components
  // in reverse topological order, so iterating components from high to low
  // visits sources first; within a component every edge is lax, so all its
  // members share one value.
  std::vector<std::uint64_t> comp_value(scc_count, 0);
  std::vector<std::vector<std::size_t>> members(scc_count);
  for (std::size_t v = 0; v < g.levels.size(); v++) members[comp[v]].push_back(v);
  for (std::size_t c = scc_count; c-- > 0;) {
    for (std::size_t v : members[c]) {
      for (const auto& [w, weight, pos] : g.adj[v]) {
        if (comp[w] == c) continue;
        comp_value[comp[w]] = std::max(comp_value[comp[w]],
                                       comp_value[c] + std::uint64_t(weight));
      }
    }
  }
  Assignment a;
  for (std::size_t v = 0; v < g.levels.size(); v++)
    a.values[g.levels[v].id] = comp_value[comp[v]];
  return a;
}

bool is_sat(const SatResult& r) { return std::holds_alternative<Assignment>(r); }

}  // namespace picheck
