#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "model_bundle.hpp"
#include "trustrec/error.hpp"
#include "trustrec/evaluation.hpp"
#include "trustrec/synthetic.hpp"

using namespace trustrec;

namespace {

RecommendationList list_of(std::uint32_t user, std::vector<std::uint32_t> items,
                           PredictionKind kind = PredictionKind::Model) {
  RecommendationList l;
  l.user = UserHandle{user};
  double score = 5.0;
  for (auto i : items) {
    l.entries.push_back({ItemHandle{i}, score, kind});
    score -= 0.1;
  }
  return l;
}

ItemCategories categories(std::vector<std::vector<std::uint32_t>> per_item, std::size_t names) {
  std::vector<std::string> n;
  for (std::size_t k = 0; k < names; ++k) n.push_back("c" + std::to_string(k));
  return ItemCategories(std::move(n), std::move(per_item));
}

Dataset small_synthetic(std::uint64_t seed = 3) {
  SyntheticParams p;
  p.users = 120;
  p.items = 60;
  p.ratings = 1800;
  p.seed = seed;
  return make_synthetic(p);
}

}  // namespace

TEST_CASE("fold plans on 1,000 and 1,005 ratings") {
  const FoldPlan a = split_folds(1000, 10, 42);
  for (std::size_t f = 0; f < 10; ++f) CHECK(a.fold_size(f) == 100);
  CHECK(split_folds(1000, 10, 42) == a);
  CHECK_FALSE(split_folds(1000, 10, 43) == a);

  const FoldPlan b = split_folds(1005, 10, 1);
  std::size_t big = 0, small = 0;
  for (std::size_t f = 0; f < 10; ++f) {
    if (b.fold_size(f) == 101) ++big;
    if (b.fold_size(f) == 100) ++small;
  }
  CHECK(big == 5);
  CHECK(small == 5);
  CHECK_THROWS_AS(split_folds(10, 1, 1), UsageError);
}

TEST_CASE("fold plan is pinned across platforms") {
  // Fixed reference assignment; changes here break reproducibility of reports.
  const FoldPlan p = split_folds(12, 3, 1);
  std::vector<std::uint32_t> sizes(3, 0);
  for (auto f : p.assignment) ++sizes[f];
  CHECK(sizes == std::vector<std::uint32_t>{4, 4, 4});
  std::ostringstream os;
  for (auto f : p.assignment) os << f;
  CHECK(os.str() == "012100102221");
}

TEST_CASE("top_k ordering and truncation") {
  std::vector<RecommendationEntry> entries;
  for (std::uint32_t i = 0; i < 12; ++i) {
    entries.push_back({ItemHandle{i}, 1.0 + 0.3 * static_cast<double>((i * 5) % 12), PredictionKind::Model});
  }
  const RecommendationList l = rank_entries(UserHandle{0}, entries, 10);
  REQUIRE(l.entries.size() == 10);
  for (std::size_t k = 1; k < l.entries.size(); ++k) CHECK(l.entries[k - 1].predicted > l.entries[k].predicted);
  auto sorted = entries;
  std::sort(sorted.begin(), sorted.end(), [](auto& a, auto& b) { return a.predicted > b.predicted; });
  for (std::size_t k = 0; k < 10; ++k) CHECK(l.entries[k].item == sorted[k].item);

  std::vector<RecommendationEntry> tied = {{ItemHandle{3}, 4.0, PredictionKind::Model},
                                           {ItemHandle{1}, 4.0, PredictionKind::Model}};
  const RecommendationList t = rank_entries(UserHandle{0}, tied, 10);
  CHECK(t.entries[0].item.value == 1);
  CHECK(rank_entries(UserHandle{0}, {tied[0]}, 10).entries.size() == 1);
}

TEST_CASE("top_k through a trained model") {
  const Dataset d = small_synthetic();
  const auto bundle = testsupport::make_bundle(d);
  const TrainedModel m = bundle.model(make_config("U2UCF", 1.0));
  std::vector<ItemHandle> candidates;
  for (std::uint32_t i = 0; i < 12; ++i) candidates.push_back(ItemHandle{i});
  const RecommendationList l = top_k(m, UserHandle{0}, candidates, 10);
  CHECK(l.entries.size() == 10);
  CHECK(top_k(m, UserHandle{0}, std::span<const ItemHandle>{}, 10).entries.empty());
}

TEST_CASE("accuracy metrics") {
  const std::vector<std::pair<double, double>> perfect = {{3, 3}, {4, 4}};
  CHECK(accuracy_metrics(perfect).rmse == 0.0);
  CHECK(accuracy_metrics(perfect).mae == 0.0);
  const std::vector<std::pair<double, double>> errs = {{3, 3}, {5, 3}};
  CHECK(accuracy_metrics(errs).rmse == std::sqrt(2.0));
  CHECK(accuracy_metrics(errs).mae == 1.0);
  const std::vector<std::pair<double, double>> one = {{3.5, 5}};
  CHECK(accuracy_metrics(one).rmse == 1.5);
  CHECK(accuracy_metrics(one).mae == 1.5);
  CHECK_THROWS_AS(accuracy_metrics({}), EmptyInput);
}

TEST_CASE("precision 0.4, recall 0.5, F1 4/9") {
  const std::vector<RecommendationList> lists = {list_of(0, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9})};
  RelevanceSets rel;
  rel[UserHandle{0}] = {ItemHandle{1}, ItemHandle{3}, ItemHandle{5}, ItemHandle{7},
                        ItemHandle{20}, ItemHandle{21}, ItemHandle{22}, ItemHandle{23}};
  const RankingMetrics m = ranking_metrics(lists, rel, 10);
  CHECK(m.precision == 0.4);
  CHECK(m.recall == 0.5);
  CHECK(m.f1 == doctest::Approx(4.0 / 9.0).epsilon(1e-15));
  CHECK(m.mrr == 0.5);
}

TEST_CASE("reciprocal rank cases") {
  RelevanceSets rel;
  rel[UserHandle{0}] = {ItemHandle{4}};
  rel[UserHandle{1}] = {ItemHandle{99}};
  const std::vector<RecommendationList> first = {list_of(0, {4, 5, 6})};
  CHECK(ranking_metrics(first, rel, 10).mrr == 1.0);
  const std::vector<RecommendationList> miss = {list_of(1, {4, 5, 6})};
  CHECK(ranking_metrics(miss, rel, 10).mrr == 0.0);
  const std::vector<RecommendationList> both = {first[0], miss[0]};
  CHECK(ranking_metrics(both, rel, 10).mrr == 0.5);
}

TEST_CASE("recall skips users without relevant items") {
  RelevanceSets rel;
  rel[UserHandle{0}] = {ItemHandle{1}};
  const std::vector<RecommendationList> lists = {list_of(0, {1, 2}), list_of(1, {3})};
  const RankingMetrics m = ranking_metrics(lists, rel, 10);
  CHECK(m.recall == 1.0);
  CHECK(m.precision == 0.25);
}

TEST_CASE("list equal to the relevant set") {
  RelevanceSets rel;
  rel[UserHandle{0}] = {ItemHandle{1}, ItemHandle{2}, ItemHandle{3}};
  const std::vector<RecommendationList> lists = {list_of(0, {3, 1, 2})};
  const RankingMetrics m = ranking_metrics(lists, rel, 10);
  CHECK(m.precision == 1.0);
  CHECK(m.recall == 1.0);
}

TEST_CASE("intra-diversity") {
  const ItemCategories same = categories({{0, 1}, {0, 1}, {0, 1}}, 2);
  CHECK(intra_diversity(list_of(0, {0, 1, 2}), same) == 0.0);
  const ItemCategories disjoint = categories({{0}, {1}}, 2);
  CHECK(intra_diversity(list_of(0, {0, 1}), disjoint) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  std::vector<std::vector<std::uint32_t>> none(10);
  const ItemCategories empty = categories(none, 0);
  const auto ten = list_of(0, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
  CHECK(intra_diversity(ten, empty) == doctest::Approx(9.0 / 11.0).epsilon(1e-15));
  CHECK(intra_diversity(RecommendationList{}, empty) == 0.0);
  CHECK(category_cosine(std::vector<std::uint32_t>{0, 1}, std::vector<std::uint32_t>{1, 2}) ==
        doctest::Approx(0.5));
}

TEST_CASE("intra-diversity is bounded and order-free") {
  std::mt19937_64 rng(6);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, 12)(rng);
    std::vector<std::vector<std::uint32_t>> per(k);
    for (auto& c : per) {
      for (std::uint32_t x = 0; x < 5; ++x) {
        if (rng() % 3 == 0) c.push_back(x);
      }
    }
    const ItemCategories cats = categories(per, 5);
    std::vector<std::uint32_t> items(k);
    for (std::uint32_t i = 0; i < k; ++i) items[i] = i;
    const double base = intra_diversity(list_of(0, items), cats);
    CHECK(base >= 0.0);
    CHECK(base <= (static_cast<double>(k) - 1.0) / (static_cast<double>(k) + 1.0) + 1e-15);
    std::shuffle(items.begin(), items.end(), rng);
    CHECK(intra_diversity(list_of(0, items), cats) == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("user coverage") {
  const std::vector<UserHandle> users = {UserHandle{0}, UserHandle{1}, UserHandle{2}, UserHandle{3}};
  const std::vector<RecommendationList> all = {list_of(0, {1}), list_of(1, {1}), list_of(2, {1}), list_of(3, {1})};
  CHECK(user_coverage(all, users).value == 1.0);
  const std::vector<RecommendationList> half = {list_of(0, {1}), list_of(1, {1}),
                                                list_of(2, {1}, PredictionKind::Fallback),
                                                list_of(3, {1, 2}, PredictionKind::Fallback)};
  CHECK(user_coverage(half, users).value == 0.5);
  const Coverage none = user_coverage(half, {});
  CHECK_FALSE(none.defined);
  CHECK(none.value == 0.0);
}

TEST_CASE("experiment reports are deterministic") {
  const Dataset d = small_synthetic();
  const FoldPlan plan = split_folds(d, 10, 9);
  const std::vector<InfluenceConfig> configs = {make_config("U2UCF", 0.1)};
  const EvaluationReport a = run_experiment(d, configs, plan, 10, 4.0);
  const EvaluationReport b = run_experiment(d, configs, plan, 10, 4.0, RunOptions{4});
  CHECK(a == b);
  std::ostringstream ta, tb, ja, jb;
  write_report_tsv(a, ta);
  write_report_tsv(b, tb);
  write_report_json(a, ja);
  write_report_json(b, jb);
  CHECK(ta.str() == tb.str());
  CHECK(ja.str() == jb.str());
}

TEST_CASE("MTR without trust weights reproduces U2UCF") {
  const Dataset d = small_synthetic(5);
  const FoldPlan plan = split_folds(d, 5, 1);
  InfluenceConfig zero = make_config("MTR", 0.5);
  zero.name = "MTR-zero";
  zero.weights = FacetWeights{};
  const std::vector<InfluenceConfig> configs = {zero, make_config("U2UCF", 0.5)};
  const EvaluationReport r = run_experiment(d, configs, plan, 10, 4.0);
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[0].metrics == r.rows[1].metrics);
  CHECK(r.rows[0].model_predictions == r.rows[1].model_predictions);
}

TEST_CASE("beta sweep yields one row per grid value") {
  const Dataset d = small_synthetic(6);
  const FoldPlan plan = split_folds(d, 3, 1);
  std::vector<InfluenceConfig> configs;
  for (int k = 0; k <= 10; ++k) configs.push_back(make_config("MTRTrust2", k / 10.0));
  const EvaluationReport r = run_experiment(d, configs, plan, 10, 4.0);
  CHECK(r.rows.size() == 11);
  for (const auto& row : r.rows) {
    const auto& m = row.metrics;
    for (double v : {m.precision, m.recall, m.f1, m.mrr, m.diversity, m.user_coverage}) {
      CHECK(std::isfinite(v));
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
    CHECK(std::isfinite(m.rmse));
    CHECK(m.f1 == doctest::Approx(harmonic_mean(m.precision, m.recall)));
  }
}

TEST_CASE("every rating is tested exactly once") {
  const Dataset d = small_synthetic(8);
  const FoldPlan plan = split_folds(d, 4, 2);
  const std::vector<InfluenceConfig> configs = {make_config("U2UCF", 1.0)};
  const EvaluationReport r = run_experiment(d, configs, plan, 10, 4.0);
  const ReportRow& row = r.rows[0];
  std::size_t tested = 0;
  for (const auto& f : row.folds) tested += f.model_predictions + f.fallback_predictions;
  std::size_t cold = 0;
  for (std::size_t f = 0; f < plan.folds; ++f) {
    for (std::uint32_t u = 0; u < d.num_users(); ++u) {
      const std::size_t begin = d.ratings().user_begin(UserHandle{u});
      const std::size_t n = d.ratings().items_of(UserHandle{u}).size();
      std::size_t held = 0;
      for (std::size_t k = begin; k < begin + n; ++k) held += plan.assignment[k] == f;
      if (held == n) cold += n;
    }
  }
  CHECK(tested + cold == d.ratings().size());
}

TEST_CASE("run_experiment input checks") {
  const Dataset d = small_synthetic();
  const FoldPlan plan = split_folds(d, 10, 9);
  CHECK_THROWS_AS(run_experiment(d, {}, plan, 10, 4.0), EmptyInput);
  const std::vector<InfluenceConfig> configs = {make_config("U2UCF", 0.1)};
  CHECK_THROWS_AS(run_experiment(d, configs, split_folds(5, 2, 1), 10, 4.0), UsageError);
}
