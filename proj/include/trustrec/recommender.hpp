#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trustrec/dataset.hpp"
#include "trustrec/social_graph.hpp"
#include "trustrec/trust.hpp"

namespace trustrec {

enum class SimilarityMode { Pearson, RelDirect, RelIntersection };

std::string_view similarity_mode_name(SimilarityMode m);
std::optional<SimilarityMode> parse_similarity_mode(std::string_view name);

/// One recommender configuration: sigma, trust weights, beta and neighborhood size.
struct InfluenceConfig {
  std::string name;
  SimilarityMode similarity = SimilarityMode::Pearson;
  FacetWeights weights;
  double beta = 1.0;
  std::size_t neighbor_count = 50;
  std::size_t min_pearson_overlap = 2;

  void validate() const;
  bool operator==(const InfluenceConfig&) const = default;
};

/// Builds a named configuration. U2UCF and U2USocial ignore the requested
/// beta and always run with beta = 1 and no trust weights.
InfluenceConfig make_config(std::string_view name, double beta, std::size_t neighbor_count = 50);

/// Names accepted by make_config.
std::span<const std::string_view> configuration_names();

/// Correlations at or below this value count as 0.
inline constexpr double kPearsonNoise = 1e-12;

/// Pearson correlation over co-rated items using co-rated means, with
/// negatives clamped to 0. Returns 0 below min_overlap co-ratings or when
/// either side has zero variance.
double pearson(const RatingStore& train, UserHandle u, UserHandle v, std::size_t min_overlap = 2);

/// Pearson over paired values; same clamping rules as pearson().
double pearson_from_pairs(std::span<const double> xs, std::span<const double> ys, std::size_t min_overlap);

enum class PredictionKind { Model, Fallback };

struct Prediction {
  double value = 0.0;
  PredictionKind kind = PredictionKind::Fallback;
};

struct Neighbor {
  UserHandle user;
  double influence = 0.0;
  bool operator==(const Neighbor&) const = default;
};

/// A configuration bound to one training fold.
class TrainedModel {
 public:
  TrainedModel(std::shared_ptr<const RatingStore> train, std::shared_ptr<const TrustProfiles> profiles,
               std::shared_ptr<const SocialGraph> graph, InfluenceConfig config);

  const RatingStore& train() const noexcept { return *train_; }
  const TrustProfiles& profiles() const noexcept { return *profiles_; }
  const SocialGraph& graph() const noexcept { return *graph_; }
  const InfluenceConfig& config() const noexcept { return config_; }
  const TrustFuser& fuser() const noexcept { return fuser_; }

  /// Training mean of u.
  double mean(UserHandle u) const { return train_->mean(u); }

 private:
  std::shared_ptr<const RatingStore> train_;
  std::shared_ptr<const TrustProfiles> profiles_;
  std::shared_ptr<const SocialGraph> graph_;
  InfluenceConfig config_;
  TrustFuser fuser_;
};

/// Per-thread scoring state bound to one target user.
///
/// bind() scatters u's training ratings into a dense item-indexed buffer and
/// resets the similarity cache, so every sigma(u, v) afterwards costs
/// O(|ratings of v|) once and O(1) on repeat. Not thread-safe; use one scorer
/// per worker over a shared TrainedModel.
class UserScorer {
 public:
  explicit UserScorer(const TrainedModel& model);

  void bind(UserHandle u);
  UserHandle bound() const noexcept { return user_; }

  double similarity(UserHandle v);
  double influence(UserHandle v, ItemHandle i);
  /// Top-n raters of i by influence (descending, ties by ascending handle);
  /// only strictly positive influences qualify.
  std::vector<Neighbor> neighbors(ItemHandle i);
  Prediction predict(ItemHandle i);

 private:
  struct Candidate {
    Neighbor neighbor;
    double deviation;  // r_vi - mean_v
  };

  double influence_with(UserHandle v, double frev);
  void select(ItemHandle i);

  const TrainedModel* model_;
  UserHandle user_{};
  bool bound_ = false;
  std::vector<double> dense_;
  std::vector<std::uint32_t> dense_stamp_;
  std::vector<double> sigma_;
  std::vector<std::uint32_t> sigma_stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<double> xs_;
  std::vector<double> ys_;
  std::vector<Candidate> candidates_;
};

double influence(const TrainedModel& m, UserHandle u, UserHandle v, ItemHandle i);
std::vector<Neighbor> select_neighbors(const TrainedModel& m, UserHandle u, ItemHandle i);
/// Throws UnknownUser when u has no training ratings.
Prediction predict(const TrainedModel& m, UserHandle u, ItemHandle i);

}  // namespace trustrec
