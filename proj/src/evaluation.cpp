#include "trustrec/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <ostream>
#include <random>

#include <json.hpp>

#include "parallel.hpp"
#include "trustrec/error.hpp"
#include "trustrec/trust.hpp"

namespace trustrec {

std::size_t FoldPlan::fold_size(std::size_t fold) const {
  return static_cast<std::size_t>(std::count(assignment.begin(), assignment.end(), static_cast<std::uint32_t>(fold)));
}

namespace {

// Unbiased draw from [0, n) by rejection; independent of the standard
// library's distribution implementations.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  while (true) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % n;
  }
}

}  // namespace

FoldPlan split_folds(std::size_t num_ratings, std::size_t folds, std::uint64_t seed) {
  if (folds < 2) throw UsageError("fold count must be at least 2");
  std::vector<std::uint32_t> order(num_ratings);
  for (std::size_t k = 0; k < num_ratings; ++k) order[k] = static_cast<std::uint32_t>(k);
  std::mt19937_64 rng(seed);
  for (std::size_t k = num_ratings; k > 1; --k) {
    std::swap(order[k - 1], order[bounded(rng, k)]);
  }
  FoldPlan plan;
  plan.seed = seed;
  plan.folds = folds;
  plan.assignment.resize(num_ratings);
  for (std::size_t p = 0; p < num_ratings; ++p) plan.assignment[order[p]] = static_cast<std::uint32_t>(p % folds);
  return plan;
}

FoldPlan split_folds(const Dataset& d, std::size_t folds, std::uint64_t seed) {
  return split_folds(d.ratings().size(), folds, seed);
}

RecommendationList rank_entries(UserHandle u, std::vector<RecommendationEntry> entries, std::size_t k) {
  std::sort(entries.begin(), entries.end(), [](const RecommendationEntry& a, const RecommendationEntry& b) {
    if (a.predicted != b.predicted) return a.predicted > b.predicted;
    return a.item < b.item;
  });
  if (entries.size() > k) entries.resize(k);
  return {u, std::move(entries)};
}

RecommendationList top_k(UserScorer& scorer, std::span<const ItemHandle> candidates, std::size_t k) {
  std::vector<RecommendationEntry> entries;
  entries.reserve(candidates.size());
  for (ItemHandle i : candidates) {
    const Prediction p = scorer.predict(i);
    entries.push_back({i, p.value, p.kind});
  }
  return rank_entries(scorer.bound(), std::move(entries), k);
}

RecommendationList top_k(const TrainedModel& m, UserHandle u, std::span<const ItemHandle> candidates, std::size_t k) {
  if (candidates.empty()) return {u, {}};
  UserScorer scorer(m);
  scorer.bind(u);
  return top_k(scorer, candidates, k);
}

AccuracyMetrics accuracy_metrics(std::span<const std::pair<double, double>> predictions) {
  if (predictions.empty()) throw EmptyInput("accuracy metrics need at least one prediction");
  double se = 0.0;
  double ae = 0.0;
  for (const auto& [predicted, actual] : predictions) {
    const double e = predicted - actual;
    se += e * e;
    ae += std::abs(e);
  }
  const double n = static_cast<double>(predictions.size());
  return {std::sqrt(se / n), ae / n};
}

// Reciprocal form: 2/(1/0.4 + 1/0.5) rounds to the double nearest 4/9,
// 2*0.4*0.5/0.9 lands one ulp above it.
double harmonic_mean(double a, double b) { return a > 0.0 && b > 0.0 ? 2.0 / (1.0 / a + 1.0 / b) : 0.0; }

RankingMetrics ranking_metrics(std::span<const RecommendationList> lists, const RelevanceSets& relevance,
                               std::size_t k) {
  RankingMetrics m;
  double precision = 0.0;
  double recall = 0.0;
  double rr = 0.0;
  std::size_t listed = 0;
  std::size_t recalled = 0;
  static const std::vector<ItemHandle> kNone;
  for (const RecommendationList& list : lists) {
    const std::size_t len = std::min(k, list.entries.size());
    if (len == 0) continue;
    const auto found = relevance.find(list.user);
    const std::vector<ItemHandle>& rel = found == relevance.end() ? kNone : found->second;
    std::size_t hits = 0;
    double reciprocal = 0.0;
    for (std::size_t r = 0; r < len; ++r) {
      if (std::binary_search(rel.begin(), rel.end(), list.entries[r].item)) {
        ++hits;
        if (reciprocal == 0.0) reciprocal = 1.0 / static_cast<double>(r + 1);
      }
    }
    ++listed;
    precision += static_cast<double>(hits) / static_cast<double>(len);
    rr += reciprocal;
    if (!rel.empty()) {
      ++recalled;
      recall += static_cast<double>(hits) / static_cast<double>(rel.size());
    }
  }
  if (listed > 0) {
    m.precision = precision / static_cast<double>(listed);
    m.mrr = rr / static_cast<double>(listed);
  }
  if (recalled > 0) m.recall = recall / static_cast<double>(recalled);
  m.f1 = harmonic_mean(m.precision, m.recall);
  return m;
}

double category_cosine(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  if (a.empty() || b.empty()) return 0.0;
  std::size_t common = 0;
  auto x = a.begin();
  auto y = b.begin();
  while (x != a.end() && y != b.end()) {
    if (*x < *y) {
      ++x;
    } else if (*y < *x) {
      ++y;
    } else {
      ++common;
      ++x;
      ++y;
    }
  }
  return static_cast<double>(common) / std::sqrt(static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

double intra_diversity(const RecommendationList& list, const ItemCategories& categories) {
  const std::size_t k = list.entries.size();
  if (k == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t a = 0; a < k; ++a) {
    // Diagonal: an item is identical to itself.
    for (std::size_t b = a + 1; b < k; ++b) {
      sum += 1.0 - category_cosine(categories.of(list.entries[a].item), categories.of(list.entries[b].item));
    }
  }
  return sum / (static_cast<double>(k) * static_cast<double>(k + 1) / 2.0);
}

Coverage user_coverage(std::span<const RecommendationList> lists, std::span<const UserHandle> test_users) {
  Coverage c;
  if (test_users.empty()) return c;
  c.defined = true;
  std::vector<UserHandle> covered;
  for (const RecommendationList& list : lists) {
    const bool any = std::any_of(list.entries.begin(), list.entries.end(),
                                 [](const RecommendationEntry& e) { return e.kind == PredictionKind::Model; });
    if (any) covered.push_back(list.user);
  }
  std::sort(covered.begin(), covered.end());
  std::size_t hits = 0;
  for (UserHandle u : test_users) {
    if (std::binary_search(covered.begin(), covered.end(), u)) ++hits;
  }
  c.value = static_cast<double>(hits) / static_cast<double>(test_users.size());
  return c;
}

namespace {

struct TestCase {
  ItemHandle item;
  double actual;
};

struct UserOutcome {
  RecommendationList full;
};

FoldResult evaluate_fold(const TrainedModel& model, const Dataset& d, std::span<const UserHandle> users,
                         const std::vector<std::vector<TestCase>>& tests, std::size_t k, double tau,
                         std::size_t threads, bool& has_accuracy) {
  std::vector<RecommendationList> full(users.size());
  const std::size_t workers = detail::resolve_threads(threads);
  std::vector<std::unique_ptr<UserScorer>> scorers(workers);
  detail::parallel_for(users.size(), threads, [&](std::size_t w, std::size_t idx) {
    const UserHandle u = users[idx];
    full[idx].user = u;
    if (!model.train().has_ratings(u)) return;
    if (!scorers[w]) scorers[w] = std::make_unique<UserScorer>(model);
    UserScorer& scorer = *scorers[w];
    scorer.bind(u);
    std::vector<RecommendationEntry> entries;
    entries.reserve(tests[u.value].size());
    for (const TestCase& t : tests[u.value]) {
      const Prediction p = scorer.predict(t.item);
      entries.push_back({t.item, p.value, p.kind});
    }
    full[idx] = rank_entries(u, std::move(entries), std::numeric_limits<std::size_t>::max());
  });

  FoldResult result;
  result.test_users = users.size();
  std::vector<std::pair<double, double>> pairs;
  std::vector<RecommendationList> truncated;
  truncated.reserve(users.size());
  RelevanceSets relevance;
  for (std::size_t idx = 0; idx < users.size(); ++idx) {
    const UserHandle u = users[idx];
    const auto& cases = tests[u.value];
    if (!model.train().has_ratings(u)) ++result.cold_users;
    for (const RecommendationEntry& e : full[idx].entries) {
      if (e.kind == PredictionKind::Fallback) {
        ++result.fallback_predictions;
        continue;
      }
      ++result.model_predictions;
      const auto it = std::lower_bound(cases.begin(), cases.end(), e.item,
                                       [](const TestCase& t, ItemHandle i) { return t.item < i; });
      pairs.emplace_back(e.predicted, it->actual);
    }
    std::vector<ItemHandle> rel;
    for (const TestCase& t : cases) {
      if (t.actual >= tau) rel.push_back(t.item);
    }
    if (!rel.empty()) relevance.emplace(u, std::move(rel));
    RecommendationList top{u, {}};
    const std::size_t len = std::min(k, full[idx].entries.size());
    top.entries.assign(full[idx].entries.begin(), full[idx].entries.begin() + static_cast<std::ptrdiff_t>(len));
    truncated.push_back(std::move(top));
  }
  // Users with no training ratings get no list and stay out of the ranking
  // averages; coverage still counts them as test users.
  std::vector<RecommendationList> ranked;
  for (auto& l : truncated) {
    if (!l.entries.empty()) ranked.push_back(l);
  }
  const RankingMetrics rank = ranking_metrics(ranked, relevance, k);
  result.metrics.precision = rank.precision;
  result.metrics.recall = rank.recall;
  result.metrics.f1 = rank.f1;
  result.metrics.mrr = rank.mrr;
  has_accuracy = !pairs.empty();
  if (has_accuracy) {
    const AccuracyMetrics acc = accuracy_metrics(pairs);
    result.metrics.rmse = acc.rmse;
    result.metrics.mae = acc.mae;
  }
  double diversity = 0.0;
  for (const auto& l : ranked) diversity += intra_diversity(l, d.categories());
  if (!ranked.empty()) result.metrics.diversity = diversity / static_cast<double>(ranked.size());
  result.metrics.user_coverage = user_coverage(full, users).value;
  return result;
}

}  // namespace

EvaluationReport run_experiment(const Dataset& d, std::span<const InfluenceConfig> configs, const FoldPlan& plan,
                                std::size_t k, double tau, const RunOptions& options) {
  if (configs.empty()) throw EmptyInput("run_experiment needs at least one configuration");
  if (plan.assignment.size() != d.ratings().size()) {
    throw UsageError("fold plan covers " + std::to_string(plan.assignment.size()) + " ratings, dataset has " +
                     std::to_string(d.ratings().size()));
  }
  if (k == 0) throw UsageError("k must be positive");
  for (const auto& c : configs) c.validate();

  EvaluationReport report;
  report.k = k;
  report.tau = tau;
  report.folds = plan.folds;
  report.seed = plan.seed;
  for (const auto& c : configs) {
    ReportRow row;
    row.config = c;
    row.grid_beta = c.beta;
    report.rows.push_back(std::move(row));
  }

  const auto profiles = std::make_shared<const TrustProfiles>(build_profiles(d));
  const auto graph = std::make_shared<const SocialGraph>(d.social());
  const std::vector<Rating> all = d.ratings().triples();
  std::vector<std::vector<MetricSet>> per_fold(configs.size());
  std::vector<std::vector<bool>> accuracy_ok(configs.size());

  for (std::size_t f = 0; f < plan.folds; ++f) {
    std::vector<Rating> train;
    train.reserve(all.size());
    std::vector<std::vector<TestCase>> tests(d.num_users());
    std::vector<UserHandle> users;
    for (std::size_t idx = 0; idx < all.size(); ++idx) {
      const Rating& r = all[idx];
      if (plan.assignment[idx] == f) {
        // Index order is user-major, so each user's cases arrive sorted by item.
        if (tests[r.user].empty()) users.push_back(UserHandle{r.user});
        tests[r.user].push_back({ItemHandle{r.item}, r.value});
      } else {
        train.push_back(r);
      }
    }
    const auto store = std::make_shared<const RatingStore>(d.num_users(), d.num_items(), std::move(train));
    for (std::size_t c = 0; c < configs.size(); ++c) {
      const TrainedModel model(store, profiles, graph, configs[c]);
      bool ok = false;
      FoldResult fr = evaluate_fold(model, d, users, tests, k, tau, options.threads, ok);
      ReportRow& row = report.rows[c];
      row.model_predictions += fr.model_predictions;
      row.fallback_predictions += fr.fallback_predictions;
      if (!ok) ++row.folds_without_accuracy;
      per_fold[c].push_back(fr.metrics);
      accuracy_ok[c].push_back(ok);
      row.folds.push_back(std::move(fr));
    }
  }

  for (std::size_t c = 0; c < configs.size(); ++c) {
    MetricSet& m = report.rows[c].metrics;
    const auto& folds = per_fold[c];
    if (folds.empty()) continue;
    const double n = static_cast<double>(folds.size());
    std::size_t accurate = 0;
    for (std::size_t f = 0; f < folds.size(); ++f) {
      m.precision += folds[f].precision / n;
      m.recall += folds[f].recall / n;
      m.mrr += folds[f].mrr / n;
      m.diversity += folds[f].diversity / n;
      m.user_coverage += folds[f].user_coverage / n;
      if (accuracy_ok[c][f]) {
        ++accurate;
        m.rmse += folds[f].rmse;
        m.mae += folds[f].mae;
      }
    }
    if (accurate > 0) {
      m.rmse /= static_cast<double>(accurate);
      m.mae /= static_cast<double>(accurate);
    }
    m.f1 = harmonic_mean(m.precision, m.recall);
  }
  return report;
}

namespace {

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

constexpr const char* kMetricColumns[] = {"precision", "recall", "f1",        "rmse",
                                          "mae",       "mrr",    "diversity", "user_coverage"};

std::array<double, 8> metric_values(const MetricSet& m) {
  return {m.precision, m.recall, m.f1, m.rmse, m.mae, m.mrr, m.diversity, m.user_coverage};
}

nlohmann::ordered_json metrics_json(const MetricSet& m) {
  nlohmann::ordered_json j;
  const auto values = metric_values(m);
  for (std::size_t c = 0; c < values.size(); ++c) j[kMetricColumns[c]] = values[c];
  return j;
}

}  // namespace

void write_report_tsv(const EvaluationReport& report, std::ostream& out) {
  out << "config\tbeta";
  for (const char* col : kMetricColumns) out << '\t' << col;
  out << '\n';
  for (const ReportRow& row : report.rows) {
    out << row.config.name << '\t' << fixed(row.grid_beta, 2);
    for (double v : metric_values(row.metrics)) out << '\t' << fixed(v);
    out << '\n';
  }
}

void write_report_json(const EvaluationReport& report, std::ostream& out) {
  nlohmann::ordered_json j;
  j["k"] = report.k;
  j["tau"] = report.tau;
  j["folds"] = report.folds;
  j["seed"] = report.seed;
  auto& rows = j["rows"] = nlohmann::ordered_json::array();
  for (const ReportRow& row : report.rows) {
    nlohmann::ordered_json r;
    r["config"] = row.config.name;
    r["beta"] = row.grid_beta;
    r["effective_beta"] = row.config.beta;
    r["similarity"] = std::string(similarity_mode_name(row.config.similarity));
    r["rel_mode"] = std::string(rel_mode_name(row.config.weights.rel_mode));
    nlohmann::ordered_json weights;
    for (Facet f : kAllFacets) {
      const double w = row.config.weights.weights[static_cast<std::size_t>(f)];
      if (w != 0.0) weights[std::string(facet_name(f))] = w;
    }
    r["weights"] = weights.is_null() ? nlohmann::ordered_json::object() : weights;
    r["neighbors"] = row.config.neighbor_count;
    r["metrics"] = metrics_json(row.metrics);
    r["model_predictions"] = row.model_predictions;
    r["fallback_predictions"] = row.fallback_predictions;
    r["folds_without_accuracy"] = row.folds_without_accuracy;
    auto& folds = r["fold_results"] = nlohmann::ordered_json::array();
    for (const FoldResult& fr : row.folds) {
      nlohmann::ordered_json f;
      f["metrics"] = metrics_json(fr.metrics);
      f["model_predictions"] = fr.model_predictions;
      f["fallback_predictions"] = fr.fallback_predictions;
      f["cold_users"] = fr.cold_users;
      f["test_users"] = fr.test_users;
      folds.push_back(std::move(f));
    }
    rows.push_back(std::move(r));
  }
  out << j.dump(2) << '\n';
}

}  // namespace trustrec
