#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "trustrec/handles.hpp"

namespace trustrec {

/// Undirected friendship graph stored as sorted adjacency lists.
///
/// Construction symmetrizes one-sided edges, drops self-loops and removes
/// duplicates, so friends(u) is always sorted and unique and
/// v in friends(u) iff u in friends(v).
class SocialGraph {
 public:
  SocialGraph() = default;
  SocialGraph(std::size_t num_users, std::span<const std::pair<std::uint32_t, std::uint32_t>> edges);

  std::size_t num_users() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  /// Undirected edge count.
  std::size_t num_edges() const noexcept { return adjacency_.size() / 2; }

  std::span<const std::uint32_t> friends(UserHandle u) const {
    check(u);
    return {adjacency_.data() + offsets_[u.value], offsets_[u.value + 1] - offsets_[u.value]};
  }
  std::size_t degree(UserHandle u) const { return friends(u).size(); }
  bool linked(UserHandle u, UserHandle v) const;

  /// Each undirected edge once, smaller handle first, sorted.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges() const;

  bool operator==(const SocialGraph&) const = default;

 private:
  void check(UserHandle u) const;

  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> adjacency_;
};

/// 1 when u and v are friends, else 0.
double rel_direct(const SocialGraph& g, UserHandle u, UserHandle v);

/// |F(u) ∩ F(v)| / |F(u) ∪ F(v)| over the stored friend sets; 0 when both are empty.
double jaccard(const SocialGraph& g, UserHandle u, UserHandle v);

/// 1 for direct friends, otherwise the Jaccard overlap of their friend sets.
double rel_social_intersection(const SocialGraph& g, UserHandle u, UserHandle v);

}  // namespace trustrec
