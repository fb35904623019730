#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "picheck/term.hpp"

namespace picheck {

// lo < hi (strict) or lo <= hi (lax). `at` is the command that required the
// relation; it is diagnostic payload and does not participate in identity.
struct Constraint {
  enum Rel { Lax, Strict };
  Level lo;
  Rel rel = Lax;
  Level hi;
  SrcLoc at;

  friend bool operator==(const Constraint& a, const Constraint& b) {
    return a.lo == b.lo && a.rel == b.rel && a.hi == b.hi;
  }
};

std::string to_string(const Constraint& c);

// Satisfying witness: one natural number per level.
struct Assignment {
  std::map<std::uint32_t, std::uint64_t> values;

  std::uint64_t value_of(const Level& l) const { return values.at(l.id); }
  bool satisfies(const Constraint& c) const;
};

struct Unsat {
  std::vector<Constraint> core;  // a cycle with at least one strict edge
};

using SatResult = std::variant<Assignment, Unsat>;

// The accumulated relation graph of a checking session. Duplicate
// constraints (same lo/rel/hi) collapse to one edge; insertion order is
// preserved so diagnostics and witnesses are deterministic.
class ConstraintSet {
 public:
  void add_level(const Level& l);
  void add(const Constraint& c);
  void add_all(const std::vector<Constraint>& delta);

  // Union of levels and constraints. Level ids must come from one shared
  // allocator; merging sets from separate sessions is meaningless.
  static ConstraintSet merged(const ConstraintSet& a, const ConstraintSet& b);

  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::vector<Level>& levels() const { return levels_; }
  std::size_t size() const { return constraints_.size(); }

  bool same_constraints(const ConstraintSet& other) const;

 private:
  std::vector<Constraint> constraints_;
  std::vector<Level> levels_;
  std::map<std::uint32_t, std::size_t> level_index_;
  std::map<std::tuple<std::uint32_t, int, std::uint32_t>, std::size_t> edge_index_;
};

// Decides whether some assignment of naturals satisfies every constraint.
// Strict edges carry weight 1 and lax edges weight 0; the set is
// unsatisfiable exactly when some cycle has positive total weight. On
// success the witness is the longest-path labeling of the condensation; on
// failure the core is a positive-weight cycle, minimal in edge count among
// the cycles through some strict edge.
SatResult satisfiable(const ConstraintSet& set);

bool is_sat(const SatResult& r);

// Issues level ids for one checking session. Ids are never reused, even
// when the command that allocated them is rolled back.
class LevelAlloc {
 public:
  Level fresh(const SrcLoc& origin) {
    return Level{next_++, origin};
  }
  std::uint32_t issued() const { return next_; }

 private:
  std::uint32_t next_ = 0;
};

}  // namespace picheck
