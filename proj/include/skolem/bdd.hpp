#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "skolem/circuit.hpp"

namespace skolem {

inline constexpr std::size_t kDefaultBddNodeCap = std::size_t{1} << 22;

class BddSizeLimit : public std::runtime_error {
 public:
  explicit BddSizeLimit(std::size_t cap)
      : std::runtime_error("BDD node table exceeded " + std::to_string(cap) + " nodes") {}
};

/// Reduced ordered BDD store without complement edges. Index 0 is the false
/// terminal and index 1 the true terminal.
class BddManager {
 public:
  using Ref = std::uint32_t;
  static constexpr Ref kFalse = 0;
  static constexpr Ref kTrue = 1;

  struct Node {
    std::uint32_t level = 0;
    Ref low = 0;
    Ref high = 0;
  };

  /// `order` lists variables from the root level down.
  explicit BddManager(std::vector<VarId> order, std::size_t node_cap = kDefaultBddNodeCap);

  Ref var(VarId v);
  Ref make_not(Ref f);
  Ref make_and(Ref f, Ref g);
  Ref make_or(Ref f, Ref g);
  Ref ite(Ref f, Ref g, Ref h);
  Ref from_circuit(const Circuit& c);

  bool is_terminal(Ref f) const { return f <= kTrue; }
  const Node& node(Ref f) const { return nodes_[f]; }
  VarId var_at_level(std::uint32_t level) const { return order_[level]; }
  std::uint32_t level_of(VarId v) const;
  const std::vector<VarId>& order() const { return order_; }
  std::size_t table_size() const { return nodes_.size(); }

  /// Internal nodes reachable from `f`.
  std::size_t internal_nodes(Ref f) const;
  bool evaluate(Ref f, const Assignment& a) const;

 private:
  Ref make(std::uint32_t level, Ref low, Ref high);
  std::uint32_t top_level(Ref f) const;

  std::vector<VarId> order_;
  std::unordered_map<VarId, std::uint32_t> level_;
  std::size_t cap_;
  struct Triple {
    std::uint32_t a, b, c;
    bool operator==(const Triple&) const = default;
  };
  struct TripleHash {
    std::size_t operator()(const Triple& t) const;
  };

  std::vector<Node> nodes_;
  std::unordered_map<Triple, Ref, TripleHash> unique_;
  std::unordered_map<Triple, Ref, TripleHash> ite_cache_;
};

/// A BDD root together with the store it lives in.
struct Bdd {
  std::shared_ptr<BddManager> manager;
  BddManager::Ref root = BddManager::kFalse;

  std::size_t internal_nodes() const { return manager->internal_nodes(root); }
  bool evaluate(const Assignment& a) const { return manager->evaluate(root, a); }
  std::string to_dot() const;
};

/// Static order: outputs and inputs each sorted by transitive fan-in count
/// (fewest first, then id) and interleaved, outputs first.
std::vector<VarId> static_bdd_order(const Spec& spec);

/// BDD of the spec circuit under `order`, which must cover its support.
/// Throws BddSizeLimit.
Bdd build_bdd(const Spec& spec, std::span<const VarId> order, std::size_t node_cap = kDefaultBddNodeCap);

/// Shannon expansion of every node, (not v and low) or (v and high), sharing
/// compiled sub-diagrams. The result is weakly decomposable.
Circuit bdd_to_wdnnf(const Bdd& bdd);

/// The spec with its circuit recompiled through a BDD.
Spec bdd_pipeline_spec(const Spec& spec, std::size_t node_cap = kDefaultBddNodeCap);

}  // namespace skolem
