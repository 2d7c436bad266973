#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <utility>

#include "twindh/digraph.hpp"
#include "twindh/pruning.hpp"

namespace twindh {

/// Random source shared by the generators: MT19937-64 (the standard
/// std::mt19937_64 engine, whose output sequence is fixed by the C++
/// standard) with distribution code written out here so that results do not
/// depend on the standard library implementation.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1) from the top 53 bits of one draw.
  double unit();
  /// Uniform in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Index i with probability weights[i] / sum; weights nonnegative, sum > 0.
  template <std::size_t N>
  std::size_t weighted(const std::array<double, N>& weights);

private:
  std::mt19937_64 engine_;
};

struct GenConfig {
  int n = 1;
  std::uint64_t seed = 0;
  /// Indexed by PruningOp: PP, PM, FT, TIT, TOT, TBT.
  std::array<double, kPruningOpCount> weights{1, 1, 1, 1, 1, 1};
  /// Relabel vertices by a random permutation after construction.
  bool shuffle_ids = true;
};

/// Random member with its certificate. For vertex i = 1..n-1 one draw picks
/// the operation by weight, then one draw picks the anchor uniformly among
/// 0..i-1. With shuffle_ids a Fisher-Yates pass (i = n-1 down to 1, one draw
/// each) renames the vertices. Throws InputError on an invalid config.
std::pair<Digraph, PruningSequence> random_member(const GenConfig& cfg);

/// Probabilities of the four states of an unordered pair {u, v}, u < v:
/// no arc, (u,v) only, (v,u) only, both arcs.
using ArcStateProbs = std::array<double, 4>;

/// Pairs are visited in lexicographic order with one draw each. Throws
/// InputError unless the probabilities are nonnegative and sum to 1.
Digraph random_digraph(int n, const ArcStateProbs& probs, std::uint64_t seed);

}  // namespace twindh
