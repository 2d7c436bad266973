#include "twindh/generator.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "twindh/errors.hpp"

namespace twindh {

double Rng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t bound) {
  // Reject the lowest (2^64 mod bound) values so every residue is equally likely.
  const std::uint64_t threshold = (0 - bound) % bound;
  std::uint64_t x = next();
  while (x < threshold) x = next();
  return x % bound;
}

template <std::size_t N>
std::size_t Rng::weighted(const std::array<double, N>& weights) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  const double r = unit() * total;
  double acc = 0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < N; ++i) {
    if (weights[i] <= 0) continue;
    acc += weights[i];
    last = i;
    if (r < acc) return i;
  }
  return last;
}

template std::size_t Rng::weighted(const std::array<double, kPruningOpCount>&);
template std::size_t Rng::weighted(const std::array<double, 4>&);

std::pair<Digraph, PruningSequence> random_member(const GenConfig& cfg) {
  if (cfg.n < 1) throw InputError("generator needs n >= 1");
  bool positive = false;
  for (double w : cfg.weights) {
    if (!(w >= 0) || !std::isfinite(w)) throw InputError("operation weights must be finite and nonnegative");
    positive = positive || w > 0;
  }
  if (!positive) throw InputError("at least one operation weight must be positive");

  Rng rng(cfg.seed);
  PruningSequence seq;
  seq.root = 0;
  seq.steps.reserve(static_cast<std::size_t>(cfg.n) - 1);
  for (int i = 1; i < cfg.n; ++i) {
    const auto op = static_cast<PruningOp>(rng.weighted(cfg.weights));
    const auto anchor = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(i)));
    seq.steps.push_back({i, op, anchor});
  }

  if (cfg.shuffle_ids) {
    std::vector<Vertex> perm(static_cast<std::size_t>(cfg.n));
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = cfg.n - 1; i >= 1; --i)
      std::swap(perm[i], perm[rng.below(static_cast<std::uint64_t>(i) + 1)]);
    seq = remap_sequence(seq, perm);
  }
  return {apply_sequence(seq), seq};
}

Digraph random_digraph(int n, const ArcStateProbs& probs, std::uint64_t seed) {
  if (n < 0) throw InputError("negative vertex count");
  double total = 0;
  for (double p : probs) {
    if (!(p >= 0) || !std::isfinite(p)) throw InputError("arc-state probabilities must be nonnegative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw InputError("arc-state probabilities must sum to 1");

  Rng rng(seed);
  std::vector<Arc> arcs;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) {
      const std::size_t state = rng.weighted(probs);
      if (state == 1 || state == 3) arcs.emplace_back(u, v);
      if (state == 2 || state == 3) arcs.emplace_back(v, u);
    }
  return Digraph(n, arcs);
}

}  // namespace twindh
