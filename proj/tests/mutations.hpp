// Deliberate corruptions of a DecompositionResult, used to check that
// verify_result notices every kind of damage.
#pragma once

#include <array>
#include <optional>
#include <random>
#include <string>

#include "cwq/decomposer.hpp"

namespace cwq::testing {

enum class Mutation { DropBagElement, SplitPart, FlipColor, DropTreeEdge, MoveRainbow, OversizeBag };

inline constexpr std::array<Mutation, 6> kAllMutations{Mutation::DropBagElement, Mutation::SplitPart,
                                                       Mutation::FlipColor,      Mutation::DropTreeEdge,
                                                       Mutation::MoveRainbow,    Mutation::OversizeBag};

inline std::string mutation_name(Mutation m) {
  switch (m) {
    case Mutation::DropBagElement: return "bag element removed";
    case Mutation::SplitPart: return "part split";
    case Mutation::FlipColor: return "colour flipped";
    case Mutation::DropTreeEdge: return "tree edge removed";
    case Mutation::MoveRainbow: return "rainbow node reassigned";
    case Mutation::OversizeBag: return "oversized bag";
  }
  return "?";
}

template <class T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& xs) {
  return xs[rng() % xs.size()];
}

// Returns nullopt when the mutation cannot be applied to r.
inline std::optional<DecompositionResult> mutate(const DecompositionResult& r, Mutation m, std::mt19937_64& rng) {
  DecompositionResult out = r;
  const std::size_t nodes = out.tree.bags.size();
  switch (m) {
    case Mutation::DropBagElement: {
      std::vector<std::size_t> filled;
      for (std::size_t t = 0; t < nodes; ++t) {
        if (!out.tree.bags[t].empty()) filled.push_back(t);
      }
      if (filled.empty()) return std::nullopt;
      auto& bag = out.tree.bags[pick(rng, filled)];
      auto it = bag.begin();
      std::advance(it, static_cast<std::ptrdiff_t>(rng() % bag.size()));
      bag.erase(it);
      return out;
    }
    case Mutation::SplitPart: {
      std::vector<PartId> big;
      for (const auto& [id, members] : out.partition.parts()) {
        if (members.size() >= 2) big.push_back(id);
      }
      if (big.empty()) return std::nullopt;
      const PartId victim = pick(rng, big);
      auto parts = out.partition.parts();
      VertexSet rest = parts.at(victim);
      VertexSet moved{*rest.begin()};
      rest.erase(rest.begin());
      parts[victim] = rest;
      const PartId fresh = victim + "#split";
      parts[fresh] = moved;
      out.partition = Partition(parts);
      out.part_colors[fresh] = out.part_colors.at(victim);
      return out;
    }
    case Mutation::FlipColor: {
      if (out.part_colors.empty() || out.k < 2) return std::nullopt;
      auto it = out.part_colors.begin();
      std::advance(it, static_cast<std::ptrdiff_t>(rng() % out.part_colors.size()));
      it->second = it->second % out.k + 1;
      return out;
    }
    case Mutation::DropTreeEdge: {
      if (out.tree.edges.empty()) return std::nullopt;
      out.tree.edges.erase(out.tree.edges.begin() + static_cast<std::ptrdiff_t>(rng() % out.tree.edges.size()));
      return out;
    }
    case Mutation::MoveRainbow: {
      if (nodes < 2) return std::nullopt;
      TreeNode t = rng() % (nodes - 1);
      if (t >= out.rainbow_node) ++t;
      out.rainbow_node = t;
      return out;
    }
    case Mutation::OversizeBag: {
      auto& bag = out.tree.bags[rng() % nodes];
      for (const auto& [id, members] : out.partition.parts()) {
        if (static_cast<int>(bag.size()) > out.k) break;
        bag.insert(id);
      }
      if (static_cast<int>(bag.size()) <= out.k) return std::nullopt;
      return out;
    }
  }
  return std::nullopt;
}

}  // namespace cwq::testing
