#pragma once

#include <cstddef>
#include <vector>

namespace motzkin {

// Integral flow feasibility with lower and upper arc bounds, reduced to a
// single max-flow by the usual circulation construction.
class BoundedFlow {
 public:
  explicit BoundedFlow(std::size_t nodes) : nodes_(nodes) {}

  // Returns the arc id.
  std::size_t add_arc(std::size_t from, std::size_t to, long lower, long upper);

  // Looks for a feasible source-to-sink flow of any value. Returns false when
  // no flow meets every bound.
  bool solve(std::size_t source, std::size_t sink);

  // Flow on an arc after a successful solve.
  long flow(std::size_t arc) const { return flows_.at(arc); }
  std::size_t arcs() const { return arcs_.size(); }

 private:
  struct Arc {
    std::size_t from, to;
    long lower, upper;
  };
  std::size_t nodes_;
  std::vector<Arc> arcs_;
  std::vector<long> flows_;
};

}  // namespace motzkin
