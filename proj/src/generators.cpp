#include "covpack/generators.hpp"

#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

namespace covpack {
namespace {

// mt19937_64 with hand-rolled mappings so the output stream is identical on
// every platform (the std distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t r = gen_();
      if (r >= threshold) return r % bound;
    }
  }

  double unit() {  // uniform in [0, 1)
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace

NormalizedInstance gen_random_rs(Index n_rows, Index n_cols, Index k,
                                 double a_max_target, std::uint64_t seed) {
  if (n_rows < 1 || n_cols < 1) {
    throw std::invalid_argument("gen_random_rs: dimensions must be >= 1");
  }
  if (k < 1 || k > n_cols) {
    throw std::invalid_argument("gen_random_rs: k must lie in [1, n_cols]");
  }
  if (!(a_max_target >= 1.0)) {
    throw std::invalid_argument("gen_random_rs: a_max_target must be >= 1");
  }
  Rng rng(seed);
  std::vector<Index> scratch(n_cols);
  std::iota(scratch.begin(), scratch.end(), 0);
  std::vector<Entry> entries;
  entries.reserve(static_cast<std::size_t>(n_rows) * k);
  for (Index i = 0; i < n_rows; ++i) {
    const Index count = 1 + static_cast<Index>(rng.below(static_cast<std::uint64_t>(k)));
    // Partial Fisher-Yates over the column ids gives `count` distinct picks.
    for (Index t = 0; t < count; ++t) {
      const Index swap_at =
          t + static_cast<Index>(rng.below(static_cast<std::uint64_t>(n_cols - t)));
      std::swap(scratch[t], scratch[swap_at]);
      const double value = 1.0 + rng.unit() * (a_max_target - 1.0);
      entries.push_back(Entry{i, scratch[t], value});
    }
  }
  return NormalizedInstance(SparseNonNegMatrix(n_rows, n_cols, std::move(entries)));
}

NormalizedInstance gen_vertex_cover_lp(
    const std::vector<std::pair<Index, Index>>& edges) {
  std::set<std::pair<Index, Index>> seen;
  Index n_vertices = 0;
  std::vector<Entry> entries;
  entries.reserve(edges.size() * 2);
  for (std::size_t t = 0; t < edges.size(); ++t) {
    const auto [u, v] = edges[t];
    if (u < 0 || v < 0) throw std::invalid_argument("gen_vertex_cover_lp: negative vertex id");
    if (u == v) throw std::invalid_argument("gen_vertex_cover_lp: self-loop");
    const auto key = std::minmax(u, v);
    if (!seen.insert(key).second) {
      throw std::invalid_argument("gen_vertex_cover_lp: duplicate edge");
    }
    n_vertices = std::max(n_vertices, std::max(u, v) + 1);
    const Index row = static_cast<Index>(t);
    entries.push_back(Entry{row, u, 1.0});
    entries.push_back(Entry{row, v, 1.0});
  }
  return NormalizedInstance(
      SparseNonNegMatrix(static_cast<Index>(edges.size()), n_vertices, std::move(entries)));
}

NormalizedInstance gen_set_cover(Index element_count,
                                 const std::vector<std::vector<Index>>& sets) {
  if (element_count < 0) {
    throw std::invalid_argument("gen_set_cover: negative element count");
  }
  std::vector<Entry> entries;
  for (std::size_t s = 0; s < sets.size(); ++s) {
    for (Index e : sets[s]) {
      if (e < 0 || e >= element_count) {
        throw std::invalid_argument("gen_set_cover: element id out of range");
      }
      entries.push_back(Entry{e, static_cast<Index>(s), 1.0});
    }
  }
  // An element in no set leaves its row empty; construction rejects that as
  // an infeasible covering instance.
  return NormalizedInstance(
      SparseNonNegMatrix(element_count, static_cast<Index>(sets.size()), std::move(entries)));
}

}  // namespace covpack
