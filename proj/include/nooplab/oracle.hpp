#pragma once

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "nooplab/structural.hpp"

namespace nooplab {

// Independent subtype decision procedure for differential testing against
// structSubtype: each type is lowered to its canonical term graph (states are
// distinct subterms modulo unfolding), then the greatest simulation over the
// union state space is computed by iterative refinement. Building one oracle
// for a batch of types amortizes the refinement across all ordered pairs.
class SimulationOracle {
 public:
  explicit SimulationOracle(const std::vector<StructType>& roots);

  // Whether roots[i] <: roots[j] under the greatest simulation.
  bool subtype(size_t i, size_t j) const;

  size_t stateCount() const { return states_.size(); }

 private:
  struct MethodEdge {
    std::vector<size_t> params;
    size_t ret;
  };
  struct State {
    std::vector<std::pair<MemberLabel, size_t>> fields;
    std::vector<std::pair<MemberLabel, MethodEdge>> methods;
  };

  size_t stateOf(const StructType& t);
  void refine();
  bool related(size_t u, size_t v) const {
    size_t bit = u * states_.size() + v;
    return (rel_[bit >> 6] >> (bit & 63)) & 1;
  }
  void clearRelated(size_t u, size_t v) {
    size_t bit = u * states_.size() + v;
    rel_[bit >> 6] &= ~(uint64_t{1} << (bit & 63));
  }

  std::vector<State> states_;
  std::vector<size_t> rootStates_;
  std::vector<uint64_t> rel_;  // bit (u, v): state u simulates-below state v
  std::unordered_map<StructType, size_t, StructTypeHash> index_;
};

bool oracleSubtype(const StructType& s, const StructType& t);

}  // namespace nooplab
