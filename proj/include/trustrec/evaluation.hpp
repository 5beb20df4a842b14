#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "trustrec/dataset.hpp"
#include "trustrec/recommender.hpp"

namespace trustrec {

/// Assignment of every rating index to one of `folds` folds.
struct FoldPlan {
  std::uint64_t seed = 0;
  std::size_t folds = 0;
  std::vector<std::uint32_t> assignment;

  std::size_t fold_size(std::size_t fold) const;
  bool operator==(const FoldPlan&) const = default;
};

/// Uniform random balanced partition: a seeded shuffle of the rating indices
/// dealt round-robin into folds, so sizes differ by at most one. The
/// shuffle uses its own Fisher-Yates over mt19937_64 and is identical on
/// every platform.
FoldPlan split_folds(std::size_t num_ratings, std::size_t folds, std::uint64_t seed);
FoldPlan split_folds(const Dataset& d, std::size_t folds, std::uint64_t seed);

struct RecommendationEntry {
  ItemHandle item;
  double predicted = 0.0;
  PredictionKind kind = PredictionKind::Fallback;
};

/// Sorted by predicted rating descending, ties by ascending item handle.
struct RecommendationList {
  UserHandle user;
  std::vector<RecommendationEntry> entries;
};

/// Orders scored entries and keeps the first k.
RecommendationList rank_entries(UserHandle u, std::vector<RecommendationEntry> entries, std::size_t k);

/// Predicts every candidate for u and keeps the k best.
RecommendationList top_k(const TrainedModel& m, UserHandle u, std::span<const ItemHandle> candidates, std::size_t k);
RecommendationList top_k(UserScorer& scorer, std::span<const ItemHandle> candidates, std::size_t k);

struct AccuracyMetrics {
  double rmse = 0.0;
  double mae = 0.0;
};

/// Over (predicted, actual) pairs. Throws EmptyInput on an empty list.
AccuracyMetrics accuracy_metrics(std::span<const std::pair<double, double>> predictions);

struct RankingMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double mrr = 0.0;
};

/// Sorted relevant items per user.
using RelevanceSets = std::unordered_map<UserHandle, std::vector<ItemHandle>>;

/// Macro-averages over users with a non-empty list; recall skips users
/// without relevant items. f1 is the harmonic mean of the averaged
/// precision and recall.
RankingMetrics ranking_metrics(std::span<const RecommendationList> lists, const RelevanceSets& relevance,
                               std::size_t k);

double harmonic_mean(double a, double b);

/// Binary-incidence cosine between two sorted category sets; 0 when either is empty.
double category_cosine(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

/// Mean pairwise dissimilarity over i <= j of the list, divided by k(k+1)/2
/// with k the list length. An item is identical to itself, so diagonal terms
/// add nothing and the value is at most (k-1)/(k+1).
double intra_diversity(const RecommendationList& list, const ItemCategories& categories);

struct Coverage {
  double value = 0.0;
  bool defined = false;
};

/// Fraction of test users with at least one Model prediction in their
/// (untruncated) prediction list. Users absent from `lists` count as uncovered.
Coverage user_coverage(std::span<const RecommendationList> lists, std::span<const UserHandle> test_users);

struct MetricSet {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double rmse = 0.0;
  double mae = 0.0;
  double mrr = 0.0;
  double diversity = 0.0;
  double user_coverage = 0.0;
  bool operator==(const MetricSet&) const = default;
};

struct FoldResult {
  MetricSet metrics;
  std::size_t model_predictions = 0;
  std::size_t fallback_predictions = 0;
  /// Test users without any training rating; nothing can be predicted for them.
  std::size_t cold_users = 0;
  std::size_t test_users = 0;
  bool operator==(const FoldResult&) const = default;
};

struct ReportRow {
  InfluenceConfig config;
  /// Beta requested by the caller; differs from config.beta for
  /// configurations that pin beta (U2UCF, U2USocial).
  double grid_beta = 0.0;
  MetricSet metrics;
  std::size_t model_predictions = 0;
  std::size_t fallback_predictions = 0;
  /// Folds without a single Model prediction; they are left out of RMSE/MAE.
  std::size_t folds_without_accuracy = 0;
  std::vector<FoldResult> folds;
  bool operator==(const ReportRow&) const = default;
};

struct EvaluationReport {
  std::size_t k = 10;
  double tau = 4.0;
  std::size_t folds = 0;
  std::uint64_t seed = 0;
  std::vector<ReportRow> rows;
  bool operator==(const EvaluationReport&) const = default;
};

struct RunOptions {
  std::size_t threads = 1;
};

/// Cross-validates every configuration over the same folds. Trust profiles
/// come from the full dataset; ratings of the held-out fold are hidden from
/// similarity, means and neighbor search.
EvaluationReport run_experiment(const Dataset& d, std::span<const InfluenceConfig> configs, const FoldPlan& plan,
                                std::size_t k, double tau, const RunOptions& options = {});

/// One row per configuration: config, beta and the eight metric columns.
void write_report_tsv(const EvaluationReport& report, std::ostream& out);
/// Structured summary with fold breakdown and prediction counts.
void write_report_json(const EvaluationReport& report, std::ostream& out);

}  // namespace trustrec
