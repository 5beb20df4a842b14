#include "trustrec/social_graph.hpp"

#include <algorithm>

#include "trustrec/error.hpp"

namespace trustrec {

SocialGraph::SocialGraph(std::size_t num_users, std::span<const std::pair<std::uint32_t, std::uint32_t>> edges) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> directed;
  directed.reserve(edges.size() * 2);
  for (const auto& [a, b] : edges) {
    if (a >= num_users || b >= num_users) throw UnknownUser("friend edge references an unknown user");
    if (a == b) continue;
    directed.emplace_back(a, b);
    directed.emplace_back(b, a);
  }
  std::sort(directed.begin(), directed.end());
  directed.erase(std::unique(directed.begin(), directed.end()), directed.end());

  offsets_.assign(num_users + 1, 0);
  adjacency_.reserve(directed.size());
  for (const auto& [a, b] : directed) {
    ++offsets_[a + 1];
    adjacency_.push_back(b);
  }
  for (std::size_t u = 0; u < num_users; ++u) offsets_[u + 1] += offsets_[u];
}

void SocialGraph::check(UserHandle u) const {
  if (u.value >= num_users()) throw UnknownUser("unknown user handle " + std::to_string(u.value));
}

bool SocialGraph::linked(UserHandle u, UserHandle v) const {
  auto fu = friends(u);
  auto fv = friends(v);
  if (fv.size() < fu.size()) {
    std::swap(fu, fv);
    std::swap(u, v);
  }
  return std::binary_search(fu.begin(), fu.end(), v.value);
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> SocialGraph::edges() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  out.reserve(num_edges());
  for (std::uint32_t u = 0; u < num_users(); ++u) {
    for (std::uint32_t v : friends(UserHandle{u})) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

double rel_direct(const SocialGraph& g, UserHandle u, UserHandle v) { return g.linked(u, v) ? 1.0 : 0.0; }

double jaccard(const SocialGraph& g, UserHandle u, UserHandle v) {
  const auto fu = g.friends(u);
  const auto fv = g.friends(v);
  std::size_t common = 0;
  auto a = fu.begin();
  auto b = fv.begin();
  while (a != fu.end() && b != fv.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++common;
      ++a;
      ++b;
    }
  }
  const std::size_t unite = fu.size() + fv.size() - common;
  if (unite == 0) return 0.0;
  return static_cast<double>(common) / static_cast<double>(unite);
}

double rel_social_intersection(const SocialGraph& g, UserHandle u, UserHandle v) {
  if (g.linked(u, v)) return 1.0;
  return jaccard(g, u, v);
}

}  // namespace trustrec
