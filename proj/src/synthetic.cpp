#include "trustrec/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

namespace trustrec {

namespace {

constexpr std::size_t kFactors = 4;
using Factor = std::array<double, kFactors>;

std::string make_id(char prefix, std::size_t k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%c%07zu", prefix, k);
  return buf;
}

std::uint64_t long_tail(std::mt19937_64& rng, double location, double scale) {
  std::lognormal_distribution<double> dist(location, scale);
  return static_cast<std::uint64_t>(std::floor(dist(rng)));
}

}  // namespace

Dataset make_synthetic(const SyntheticParams& params) {
  std::mt19937_64 rng(params.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const std::size_t nu = params.users;
  const std::size_t ni = params.items;
  const std::size_t communities = std::max<std::size_t>(1, params.communities);

  std::vector<Factor> centers(communities);
  for (auto& c : centers) {
    for (double& x : c) x = normal(rng);
  }
  std::vector<std::size_t> community(nu);
  std::vector<Factor> user_factor(nu);
  std::vector<double> user_bias(nu);
  std::vector<double> activity(nu);
  std::uniform_int_distribution<std::size_t> pick_community(0, communities - 1);
  std::lognormal_distribution<double> activity_dist(0.0, 0.9);
  for (std::size_t u = 0; u < nu; ++u) {
    community[u] = pick_community(rng);
    for (std::size_t k = 0; k < kFactors; ++k) user_factor[u][k] = centers[community[u]][k] + 0.4 * normal(rng);
    user_bias[u] = 0.35 * normal(rng);
    activity[u] = activity_dist(rng);
  }

  std::vector<Factor> item_factor(ni);
  std::vector<double> item_bias(ni);
  std::vector<double> popularity(ni);
  for (std::size_t i = 0; i < ni; ++i) {
    for (double& x : item_factor[i]) x = normal(rng) * 0.5;
    item_bias[i] = 0.3 * normal(rng);
    popularity[i] = 1.0 / std::pow(static_cast<double>(i) + 10.0, params.popularity_skew);
  }
  std::shuffle(popularity.begin(), popularity.end(), rng);

  DatasetBuilder b(Provenance::Synthetic);
  std::vector<std::string> uid(nu), iid(ni);
  for (std::size_t u = 0; u < nu; ++u) {
    uid[u] = make_id('u', u);
    b.add_user(uid[u]);
  }
  const std::size_t num_categories = std::max<std::size_t>(1, params.categories);
  std::uniform_int_distribution<std::size_t> pick_category(0, num_categories - 1);
  std::uniform_int_distribution<int> category_count(0, 3);
  for (std::size_t i = 0; i < ni; ++i) {
    iid[i] = make_id('i', i);
    b.touch_item(iid[i]);
    const int count = category_count(rng);
    for (int c = 0; c < count; ++c) b.add_category(iid[i], make_id('c', pick_category(rng)));
  }

  const std::size_t target = nu == 0 || ni == 0 ? 0 : std::min(params.ratings, nu * ni);
  if (target > 0) {
    std::discrete_distribution<std::size_t> pick_user(activity.begin(), activity.end());
    std::discrete_distribution<std::size_t> pick_item(popularity.begin(), popularity.end());
    std::uniform_int_distribution<std::size_t> uniform_item(0, ni - 1);
    std::uniform_int_distribution<std::size_t> any_rater(0, nu - 1);
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(target * 2);
    std::size_t attempts = 0;
    while (seen.size() < target) {
      // Dense regimes fall back to uniform picks to avoid rejection stalls.
      const bool uniform = ++attempts > 4 * target;
      const std::size_t u = uniform ? any_rater(rng) : pick_user(rng);
      const std::size_t i = uniform ? uniform_item(rng) : pick_item(rng);
      if (!seen.insert(static_cast<std::uint64_t>(u) * ni + i).second) continue;
      double score = 3.6 + user_bias[u] + item_bias[i] + 0.6 * normal(rng);
      for (std::size_t k = 0; k < kFactors; ++k) score += 0.5 * user_factor[u][k] * item_factor[i][k];
      const double value = std::clamp(std::round(score), kMinRating, kMaxRating);
      ReviewCounters rc;
      rc.useful = long_tail(rng, 0.2 + 0.3 * user_bias[u], 1.0);
      rc.funny = long_tail(rng, -0.8, 1.0);
      rc.cool = long_tail(rng, -0.5, 1.0);
      rc.nhelpful = long_tail(rng, -1.0, 1.0);
      b.add_review(uid[u], iid[i], value, rc);
    }
  }

  if (nu > 1) {
    std::vector<std::vector<std::size_t>> members(communities);
    for (std::size_t u = 0; u < nu; ++u) members[community[u]].push_back(u);
    std::poisson_distribution<int> degree(std::max(0.0, params.mean_friends / 2.0));
    std::uniform_int_distribution<std::size_t> any_user(0, nu - 1);
    std::bernoulli_distribution local(0.8);
    for (std::size_t u = 0; u < nu; ++u) {
      const int edges = degree(rng);
      const auto& group = members[community[u]];
      for (int e = 0; e < edges; ++e) {
        std::size_t v = any_user(rng);
        if (local(rng) && group.size() > 1) {
          std::uniform_int_distribution<std::size_t> pick(0, group.size() - 1);
          v = group[pick(rng)];
        }
        if (v != u) b.add_friendship(uid[u], uid[v]);
      }
    }
  }

  std::bernoulli_distribution is_elite(0.15);
  std::uniform_int_distribution<std::uint64_t> elite_years(1, 8);
  std::poisson_distribution<int> tips(1.0);
  for (std::size_t u = 0; u < nu; ++u) {
    FeedbackRecord& fb = b.feedback(uid[u]);
    fb[FeedbackRecord::kEliteYears] = is_elite(rng) ? elite_years(rng) : 0;
    fb[FeedbackRecord::kMore] = long_tail(rng, 0.0, 1.5);
    fb[FeedbackRecord::kThx] = long_tail(rng, 0.3, 1.5);
    fb[FeedbackRecord::kGw] = long_tail(rng, -0.2, 1.5);
    fb[FeedbackRecord::kFans] = long_tail(rng, 0.5, 1.3);
    fb[FeedbackRecord::kTipCount] = static_cast<std::uint64_t>(tips(rng));
    fb[FeedbackRecord::kTipLikes] = fb[FeedbackRecord::kTipCount] > 0 ? long_tail(rng, -1.0, 1.0) : 0;
  }
  return b.build();
}

}  // namespace trustrec
