#include "trustrec/recommender.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "trustrec/error.hpp"

namespace trustrec {

std::string_view similarity_mode_name(SimilarityMode m) {
  switch (m) {
    case SimilarityMode::Pearson:
      return "pearson";
    case SimilarityMode::RelDirect:
      return "rel_direct";
    case SimilarityMode::RelIntersection:
      return "rel_intersection";
  }
  return "pearson";
}

std::optional<SimilarityMode> parse_similarity_mode(std::string_view name) {
  if (name == "pearson") return SimilarityMode::Pearson;
  if (name == "rel_direct") return SimilarityMode::RelDirect;
  if (name == "rel_intersection") return SimilarityMode::RelIntersection;
  return std::nullopt;
}

void InfluenceConfig::validate() const {
  if (!(beta >= 0.0 && beta <= 1.0)) throw UsageError("beta must lie in [0, 1]");
  if (neighbor_count < 1) throw UsageError("neighbor count must be positive");
  if (min_pearson_overlap < 1) throw UsageError("minimum Pearson overlap must be positive");
  weights.validate();
}

namespace {

constexpr std::array<std::string_view, 10> kConfigNames = {
    "U2UCF", "U2USocial", "MTR-U", "MTR-S", "MTR-F", "MTR-FS", "MTR-US", "MTR", "MTRTrust1", "MTRTrust2",
};

void include(FacetWeights& w, std::initializer_list<Facet> facets) {
  for (Facet f : facets) w[f] = 1.0;
}

constexpr auto kProfileFacets = {Facet::Elite, Facet::Lup, Facet::OpLeader, Facet::Vis};
constexpr auto kContributionFacets = {Facet::Fb, Facet::FRev};

}  // namespace

std::span<const std::string_view> configuration_names() { return kConfigNames; }

InfluenceConfig make_config(std::string_view name, double beta, std::size_t neighbor_count) {
  InfluenceConfig c;
  c.name = std::string(name);
  c.beta = beta;
  c.neighbor_count = neighbor_count;
  FacetWeights& w = c.weights;

  if (name == "U2UCF") {
    c.beta = 1.0;
  } else if (name == "U2USocial") {
    c.similarity = SimilarityMode::RelIntersection;
    c.beta = 1.0;
  } else if (name == "MTR-U") {
    include(w, kContributionFacets);
    include(w, {Facet::Rel});
    w.rel_mode = RelMode::Direct;
  } else if (name == "MTR-S") {
    include(w, kProfileFacets);
    include(w, kContributionFacets);
  } else if (name == "MTR-F") {
    include(w, kProfileFacets);
    include(w, {Facet::Rel});
    w.rel_mode = RelMode::Direct;
  } else if (name == "MTR-FS") {
    include(w, kProfileFacets);
  } else if (name == "MTR-US") {
    include(w, kContributionFacets);
  } else if (name == "MTR") {
    include(w, kProfileFacets);
    include(w, kContributionFacets);
    include(w, {Facet::Rel});
    w.rel_mode = RelMode::Direct;
  } else if (name == "MTRTrust1") {
    include(w, kProfileFacets);
    include(w, kContributionFacets);
    c.similarity = SimilarityMode::RelDirect;
  } else if (name == "MTRTrust2") {
    include(w, kProfileFacets);
    include(w, kContributionFacets);
    c.similarity = SimilarityMode::RelIntersection;
  } else {
    std::string valid;
    for (std::string_view n : kConfigNames) {
      if (!valid.empty()) valid += ", ";
      valid += n;
    }
    throw UnknownConfiguration("unknown configuration '" + std::string(name) + "'; valid: " + valid);
  }
  c.validate();
  return c;
}

double pearson_from_pairs(std::span<const double> xs, std::span<const double> ys, std::size_t min_overlap) {
  const std::size_t n = xs.size();
  if (n < std::max<std::size_t>(min_overlap, 2)) return 0.0;
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double dx = xs[k] - mx;
    const double dy = ys[k] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) return 0.0;
  const double r = sxy / std::sqrt(sxx * syy);
  // An exact zero correlation can surface as +1e-16; keep such pairs out of
  // the neighborhood like any other uncorrelated pair.
  if (r <= kPearsonNoise) return 0.0;
  return snap_score(std::min(r, 1.0));
}

double pearson(const RatingStore& train, UserHandle u, UserHandle v, std::size_t min_overlap) {
  const auto iu = train.items_of(u);
  const auto ru = train.ratings_of(u);
  const auto iv = train.items_of(v);
  const auto rv = train.ratings_of(v);
  std::vector<double> xs, ys;
  std::size_t a = 0, b = 0;
  while (a < iu.size() && b < iv.size()) {
    if (iu[a] < iv[b]) {
      ++a;
    } else if (iv[b] < iu[a]) {
      ++b;
    } else {
      xs.push_back(ru[a++]);
      ys.push_back(rv[b++]);
    }
  }
  return pearson_from_pairs(xs, ys, min_overlap);
}

TrainedModel::TrainedModel(std::shared_ptr<const RatingStore> train, std::shared_ptr<const TrustProfiles> profiles,
                           std::shared_ptr<const SocialGraph> graph, InfluenceConfig config)
    : train_(std::move(train)),
      profiles_(std::move(profiles)),
      graph_(std::move(graph)),
      config_(std::move(config)),
      fuser_((config_.validate(), *profiles_), *graph_, config_.weights) {
  if (profiles_->num_users() != train_->num_users() || graph_->num_users() != train_->num_users()) {
    throw UsageError("training store, trust profiles and social graph disagree on the user count");
  }
}

UserScorer::UserScorer(const TrainedModel& model)
    : model_(&model),
      dense_(model.train().num_items(), 0.0),
      dense_stamp_(model.train().num_items(), 0),
      sigma_(model.train().num_users(), 0.0),
      sigma_stamp_(model.train().num_users(), 0) {}

void UserScorer::bind(UserHandle u) {
  if (u.value >= model_->train().num_users()) throw UnknownUser("unknown user handle " + std::to_string(u.value));
  if (++epoch_ == 0) {
    std::fill(dense_stamp_.begin(), dense_stamp_.end(), 0);
    std::fill(sigma_stamp_.begin(), sigma_stamp_.end(), 0);
    epoch_ = 1;
  }
  user_ = u;
  bound_ = true;
  const auto items = model_->train().items_of(u);
  const auto values = model_->train().ratings_of(u);
  for (std::size_t k = 0; k < items.size(); ++k) {
    dense_[items[k]] = values[k];
    dense_stamp_[items[k]] = epoch_;
  }
}

double UserScorer::similarity(UserHandle v) {
  if (!bound_) throw UsageError("scorer used before bind()");
  if (sigma_stamp_[v.value] == epoch_) return sigma_[v.value];
  double s = 0.0;
  switch (model_->config().similarity) {
    case SimilarityMode::Pearson: {
      xs_.clear();
      ys_.clear();
      const auto items = model_->train().items_of(v);
      const auto values = model_->train().ratings_of(v);
      for (std::size_t k = 0; k < items.size(); ++k) {
        if (dense_stamp_[items[k]] != epoch_) continue;
        xs_.push_back(dense_[items[k]]);
        ys_.push_back(values[k]);
      }
      s = pearson_from_pairs(xs_, ys_, model_->config().min_pearson_overlap);
      break;
    }
    case SimilarityMode::RelDirect:
      s = rel_direct(model_->graph(), user_, v);
      break;
    case SimilarityMode::RelIntersection:
      s = snap_score(rel_social_intersection(model_->graph(), user_, v));
      break;
  }
  sigma_[v.value] = s;
  sigma_stamp_[v.value] = epoch_;
  return s;
}

double UserScorer::influence_with(UserHandle v, double frev) {
  const double beta = model_->config().beta;
  const double sigma = beta > 0.0 ? similarity(v) : 0.0;
  if (!model_->fuser().active()) return beta * sigma;
  return beta * sigma + (1.0 - beta) * model_->fuser().fuse(user_, v, frev);
}

double UserScorer::influence(UserHandle v, ItemHandle i) {
  const double frev = model_->fuser().review_weight() > 0.0 ? model_->profiles().review().at(v, i) : 0.0;
  return influence_with(v, frev);
}

void UserScorer::select(ItemHandle i) {
  if (!bound_) throw UsageError("scorer used before bind()");
  candidates_.clear();
  const RatingStore& train = model_->train();
  const auto raters = train.raters_of(i);
  const auto values = train.ratings_for(i);

  const bool want_frev = model_->fuser().review_weight() > 0.0;
  std::span<const std::uint32_t> rev_users;
  std::span<const double> rev_values;
  if (want_frev && i.value < model_->profiles().review().num_items()) {
    rev_users = model_->profiles().review().users(i);
    rev_values = model_->profiles().review().values(i);
  }
  std::size_t cursor = 0;

  for (std::size_t k = 0; k < raters.size(); ++k) {
    const UserHandle v{raters[k]};
    if (v == user_) continue;
    double frev = 0.0;
    if (want_frev) {
      // Both lists are sorted by user handle.
      while (cursor < rev_users.size() && rev_users[cursor] < v.value) ++cursor;
      if (cursor < rev_users.size() && rev_users[cursor] == v.value) frev = rev_values[cursor];
    }
    const double infl = influence_with(v, frev);
    if (infl > 0.0) candidates_.push_back({{v, infl}, values[k] - train.mean(v)});
  }

  const auto better = [](const Candidate& a, const Candidate& b) {
    if (a.neighbor.influence != b.neighbor.influence) return a.neighbor.influence > b.neighbor.influence;
    return a.neighbor.user < b.neighbor.user;
  };
  const std::size_t n = model_->config().neighbor_count;
  if (candidates_.size() > n) {
    std::nth_element(candidates_.begin(), candidates_.begin() + static_cast<std::ptrdiff_t>(n), candidates_.end(),
                     better);
    candidates_.resize(n);
  }
  std::sort(candidates_.begin(), candidates_.end(), better);
}

std::vector<Neighbor> UserScorer::neighbors(ItemHandle i) {
  select(i);
  std::vector<Neighbor> out;
  out.reserve(candidates_.size());
  for (const Candidate& c : candidates_) out.push_back(c.neighbor);
  return out;
}

Prediction UserScorer::predict(ItemHandle i) {
  if (!bound_) throw UsageError("scorer used before bind()");
  const RatingStore& train = model_->train();
  if (!train.has_ratings(user_)) {
    throw UnknownUser("user " + std::to_string(user_.value) + " has no training ratings");
  }
  const double base = train.mean(user_);
  select(i);
  if (candidates_.empty()) return {base, PredictionKind::Fallback};
  double numerator = 0.0;
  double denominator = 0.0;
  for (const Candidate& c : candidates_) {
    numerator += c.neighbor.influence * c.deviation;
    denominator += std::abs(c.neighbor.influence);
  }
  return {std::clamp(base + numerator / denominator, kMinRating, kMaxRating), PredictionKind::Model};
}

double influence(const TrainedModel& m, UserHandle u, UserHandle v, ItemHandle i) {
  UserScorer scorer(m);
  scorer.bind(u);
  return scorer.influence(v, i);
}

std::vector<Neighbor> select_neighbors(const TrainedModel& m, UserHandle u, ItemHandle i) {
  UserScorer scorer(m);
  scorer.bind(u);
  return scorer.neighbors(i);
}

Prediction predict(const TrainedModel& m, UserHandle u, ItemHandle i) {
  UserScorer scorer(m);
  scorer.bind(u);
  return scorer.predict(i);
}

}  // namespace trustrec
