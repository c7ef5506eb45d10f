#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "skolem/aig.hpp"
#include "skolem/circuit.hpp"

namespace skolem {

/// F = AND_i (x_i <-> y_i) with x_i = i and y_i = n + i. n = 0 gives the
/// constant-true spec.
Spec gen_equality_spec(std::size_t n);

/// Variable layout of a clique reduction instance.
struct CliqueLayout {
  std::size_t n = 0;
  /// Vertex selectors x_1..x_n (outputs).
  std::vector<VarId> vertices;
  /// Edge inputs y_{i,j} for i < j, keyed by the 1-based vertex pair.
  std::map<std::pair<std::size_t, std::size_t>, VarId> edges;
  /// Bits of k, least significant first.
  std::vector<VarId> k_bits;
};

struct CliqueInstance {
  Spec spec;
  CliqueLayout layout;
  /// Same function as an AIG, for AIGER output.
  Aig aig;
  Aig::Lit root = Aig::kFalse;
};

/// Width of the clique-size counter for n vertices: ceil(log2(n + 1)).
std::size_t clique_counter_width(std::size_t n);

/// "Does the graph on the edge inputs contain a clique of exactly k selected
/// vertices": every selected pair must be an edge, and the number of selected
/// vertices, summed by a tree of adders, must equal k.
CliqueInstance gen_clique_spec(std::size_t n);

/// Text sidecar with the graph and clique-existence bit for each sampled input.
/// `samples` are assignments to the spec inputs.
std::string clique_ground_truth(const CliqueInstance& inst, const std::vector<Assignment>& samples);

/// Independent check: does the graph with `adjacent` (1-based pairs i < j)
/// have a k-vertex clique?
bool has_clique(std::size_t n, const std::map<std::pair<std::size_t, std::size_t>, bool>& adjacent, std::size_t k);

}  // namespace skolem
