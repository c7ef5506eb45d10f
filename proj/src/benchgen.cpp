#include "skolem/benchgen.hpp"

#include <bit>
#include <sstream>

#include "skolem/nnf.hpp"

namespace skolem {

Spec gen_equality_spec(std::size_t n) {
  Spec spec;
  CircuitBuilder b;
  std::vector<NodeId> parts;
  for (std::size_t i = 1; i <= n; ++i) {
    const auto x = static_cast<VarId>(i);
    const auto y = static_cast<VarId>(n + i);
    spec.outputs.push_back(x);
    spec.inputs.push_back(y);
    spec.names[x] = "x" + std::to_string(i);
    spec.names[y] = "y" + std::to_string(i);
    parts.push_back(b.make_or(b.make_and(b.literal(x), b.literal(y)),
                              b.make_and(b.literal(x, false), b.literal(y, false))));
  }
  spec.circuit = b.build(b.make_and(std::move(parts)));
  return spec;
}

std::size_t clique_counter_width(std::size_t n) { return std::bit_width(n); }

namespace {

using Word = std::vector<Aig::Lit>;

// Sum of two little-endian words, one bit wider than the longer one.
Word add_words(Aig& aig, const Word& a, const Word& b) {
  Word out;
  Aig::Lit carry = Aig::kFalse;
  const std::size_t w = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < w; ++i) {
    const Aig::Lit p = i < a.size() ? a[i] : Aig::kFalse;
    const Aig::Lit q = i < b.size() ? b[i] : Aig::kFalse;
    const Aig::Lit pq = aig.make_xor(p, q);
    out.push_back(aig.make_xor(pq, carry));
    carry = aig.make_or(aig.make_and(p, q), aig.make_and(pq, carry));
  }
  out.push_back(carry);
  return out;
}

}  // namespace

CliqueInstance gen_clique_spec(std::size_t n) {
  CliqueInstance inst;
  CliqueLayout& lay = inst.layout;
  Spec& spec = inst.spec;
  lay.n = n;
  VarId next = 1;
  for (std::size_t v = 1; v <= n; ++v) {
    lay.vertices.push_back(next);
    spec.names[next] = "x" + std::to_string(v);
    spec.outputs.push_back(next++);
  }
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) {
      lay.edges[{i, j}] = next;
      spec.names[next] = "y" + std::to_string(i) + "_" + std::to_string(j);
      spec.inputs.push_back(next++);
    }
  const std::size_t width = clique_counter_width(n);
  for (std::size_t k = 0; k < width; ++k) {
    lay.k_bits.push_back(next);
    spec.names[next] = "z" + std::to_string(k);
    spec.inputs.push_back(next++);
  }

  Aig& aig = inst.aig;
  for (VarId x : spec.outputs) aig.input(x);
  for (VarId y : spec.inputs) aig.input(y);

  std::vector<Aig::Lit> edge_ok;
  for (const auto& [pair, y] : lay.edges) {
    const Aig::Lit xi = aig.input(lay.vertices[pair.first - 1]);
    const Aig::Lit xj = aig.input(lay.vertices[pair.second - 1]);
    edge_ok.push_back(aig.make_or(aig.negate(aig.make_and(xi, xj)), aig.input(y)));
  }
  const Aig::Lit edges_ok = aig.make_and(edge_ok);

  std::vector<Word> level;
  for (VarId x : lay.vertices) level.push_back({aig.input(x)});
  while (level.size() > 1) {
    std::vector<Word> up;
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) up.push_back(add_words(aig, level[i], level[i + 1]));
    if (level.size() % 2) up.push_back(level.back());
    level = std::move(up);
  }
  const Word count = level.empty() ? Word{} : level.front();

  std::vector<Aig::Lit> equal;
  for (std::size_t i = 0; i < std::max(count.size(), width); ++i) {
    const Aig::Lit c = i < count.size() ? count[i] : Aig::kFalse;
    const Aig::Lit z = i < width ? aig.input(lay.k_bits[i]) : Aig::kFalse;
    equal.push_back(aig.make_iff(c, z));
  }
  const Aig::Lit size_ok = aig.make_and(equal);

  inst.root = aig.make_and(edges_ok, size_ok);
  spec.circuit = to_nnf(aig, inst.root);
  return inst;
}

bool has_clique(std::size_t n, const std::map<std::pair<std::size_t, std::size_t>, bool>& adjacent,
                std::size_t k) {
  if (k > n) return false;
  // Choose k vertices in increasing order, each adjacent to all earlier picks.
  std::vector<std::size_t> chosen;
  auto extend = [&](auto&& self, std::size_t from) -> bool {
    if (chosen.size() == k) return true;
    for (std::size_t v = from; v <= n; ++v) {
      bool ok = true;
      for (std::size_t u : chosen)
        if (auto it = adjacent.find({u, v}); it == adjacent.end() || !it->second) ok = false;
      if (!ok) continue;
      chosen.push_back(v);
      if (self(self, v + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  return extend(extend, 1);
}

std::string clique_ground_truth(const CliqueInstance& inst, const std::vector<Assignment>& samples) {
  const CliqueLayout& lay = inst.layout;
  std::ostringstream out;
  out << "n " << lay.n << '\n';
  out << "counter_width " << lay.k_bits.size() << '\n';
  for (const Assignment& a : samples) {
    std::map<std::pair<std::size_t, std::size_t>, bool> adj;
    out << "sample edges";
    for (const auto& [pair, y] : lay.edges) {
      adj[pair] = a.get(y);
      if (adj[pair]) out << ' ' << pair.first << '-' << pair.second;
    }
    std::size_t k = 0;
    for (std::size_t i = 0; i < lay.k_bits.size(); ++i)
      if (a.get(lay.k_bits[i])) k |= std::size_t{1} << i;
    out << " k " << k << " clique " << (has_clique(lay.n, adj, k) ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace skolem
