#include "nooplab/oracle.hpp"

#include <cassert>

namespace nooplab {

namespace {

StructType normalizeMu(StructType t) {
  while (t.kind() == StructType::Kind::Mu) t = unfoldOnce(t);
  return t;
}

}  // namespace

SimulationOracle::SimulationOracle(const std::vector<StructType>& roots) {
  for (const auto& r : roots) rootStates_.push_back(stateOf(r));
  refine();
}

size_t SimulationOracle::stateOf(const StructType& t) {
  StructType rec = normalizeMu(t);
  assert(rec.kind() == StructType::Kind::Record);
  auto it = index_.find(rec);
  if (it != index_.end()) return it->second;
  size_t id = states_.size();
  index_.emplace(rec, id);
  states_.emplace_back();
  State state;
  for (const auto& [label, ft] : rec.fields()) {
    state.fields.emplace_back(label, stateOf(ft));
  }
  for (const auto& [label, mt] : rec.methods()) {
    MethodEdge edge;
    for (const auto& p : mt.params) edge.params.push_back(stateOf(p));
    edge.ret = stateOf(mt.ret);
    state.methods.emplace_back(label, std::move(edge));
  }
  states_[id] = std::move(state);
  return id;
}

void SimulationOracle::refine() {
  size_t n = states_.size();
  rel_.assign((n * n + 63) / 64, ~uint64_t{0});
  auto lookupField = [](const State& s, const MemberLabel& l) -> const size_t* {
    for (const auto& [fl, id] : s.fields) {
      if (fl == l) return &id;
    }
    return nullptr;
  };
  auto lookupMethod = [](const State& s, const MemberLabel& l) -> const MethodEdge* {
    for (const auto& [ml, e] : s.methods) {
      if (ml == l) return &e;
    }
    return nullptr;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t u = 0; u < n; ++u) {
      for (size_t v = 0; v < n; ++v) {
        if (!related(u, v)) continue;
        const State& sv = states_[v];
        bool ok = true;
        for (const auto& [label, want] : sv.fields) {
          const size_t* have = lookupField(states_[u], label);
          if (have == nullptr || !related(*have, want)) {
            ok = false;
            break;
          }
        }
        if (ok) {
          for (const auto& [label, want] : sv.methods) {
            const MethodEdge* have = lookupMethod(states_[u], label);
            if (have == nullptr || have->params.size() != want.params.size() ||
                !related(have->ret, want.ret)) {
              ok = false;
              break;
            }
            for (size_t i = 0; i < want.params.size(); ++i) {
              if (!related(want.params[i], have->params[i])) {  // contravariant
                ok = false;
                break;
              }
            }
            if (!ok) break;
          }
        }
        if (!ok) {
          clearRelated(u, v);
          changed = true;
        }
      }
    }
  }
}

bool SimulationOracle::subtype(size_t i, size_t j) const {
  return related(rootStates_[i], rootStates_[j]);
}

bool oracleSubtype(const StructType& s, const StructType& t) {
  SimulationOracle oracle({s, t});
  return oracle.subtype(0, 1);
}

}  // namespace nooplab
