// One PASS/FAIL/SKIP line per acceptance criterion. Exit status is nonzero
// when any criterion fails.
//
//   acceptance [--only NAME]... [--perf-users N --perf-items N --perf-ratings N]

#include <sys/resource.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "model_bundle.hpp"
#include "oracle.hpp"
#include "random_instance.hpp"
#include "trustrec/error.hpp"
#include "trustrec/evaluation.hpp"
#include "trustrec/ingest.hpp"
#include "trustrec/stats.hpp"
#include "trustrec/synthetic.hpp"
#include "trustrec/trust.hpp"

using namespace trustrec;
using Clock = std::chrono::steady_clock;

namespace {

enum class Outcome { Pass, Fail, Skip };

struct Result {
  Outcome outcome = Outcome::Pass;
  std::string detail;
};

/// Collects the first few failures of one criterion.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (++failures_ <= 3) messages_.push_back(what);
  }
  bool ok() const { return failures_ == 0; }
  Result result(std::string detail) const {
    if (ok()) return {Outcome::Pass, std::move(detail)};
    std::string m = std::to_string(failures_) + " failure(s)";
    for (const auto& s : messages_) m += "; " + s;
    return {Outcome::Fail, m};
  }

 private:
  std::size_t failures_ = 0;
  std::vector<std::string> messages_;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double peak_rss_gb() {
  rusage ru{};
  getrusage(RUSAGE_SELF, &ru);
  return static_cast<double>(ru.ru_maxrss) / (1024.0 * 1024.0);  // kB on Linux
}

const std::filesystem::path kFixtures = TRUSTREC_FIXTURES;
const std::filesystem::path kDataDir = TRUSTREC_DATA_DIR;

// ---------------------------------------------------------------------------

Result oracle_equivalence() {
  const auto start = Clock::now();
  std::mt19937_64 rng(20240601);
  Checker ck;
  std::size_t compared = 0;
  double worst = 0.0;
  for (int inst = 0; inst < 200; ++inst) {
    const Dataset d = testsupport::random_dataset(rng);
    auto train = testsupport::random_training(rng, d);
    const oracle::Reference ref = oracle::make_reference(d, train);
    const auto bundle = testsupport::make_bundle(d, std::move(train));
    const InfluenceConfig c = testsupport::random_config(rng);
    const TrainedModel m = bundle.model(c);
    UserScorer scorer(m);
    for (std::uint32_t u = 0; u < d.num_users(); ++u) {
      if (!m.train().has_ratings(UserHandle{u})) continue;
      scorer.bind(UserHandle{u});
      for (std::uint32_t i = 0; i < d.num_items(); ++i) {
        const Prediction got = scorer.predict(ItemHandle{i});
        const oracle::RefPrediction want = oracle::predict(ref, c, u, i);
        const double diff = std::abs(got.value - want.value);
        worst = std::max(worst, diff);
        ++compared;
        ck.expect(diff <= 1e-9, "instance " + std::to_string(inst) + " " + c.name + fmt(" diff %.3g", diff));
        ck.expect((got.kind == PredictionKind::Model) == want.model,
                  "instance " + std::to_string(inst) + " prediction kind differs");
      }
    }
  }
  const double secs = seconds_since(start);
  ck.expect(secs < 60.0, fmt("runtime %.1f s", secs));
  return ck.result(std::to_string(compared) + fmt(" predictions, max diff %.2g, %.2f s", worst, secs));
}

Result u2ucf_equivalence() {
  std::mt19937_64 rng(77);
  Checker ck;
  double worst = 0.0;
  std::size_t compared = 0;
  for (int inst = 0; inst < 200; ++inst) {
    const Dataset d = testsupport::random_dataset(rng);
    const auto bundle = testsupport::make_bundle(d, testsupport::random_training(rng, d));
    const TrainedModel cf = bundle.model(make_config("U2UCF", 0.5));
    UserScorer s_cf(cf);
    for (double beta : {0.1, 0.5, 0.9}) {
      InfluenceConfig zero = make_config("MTR", beta);
      zero.weights = FacetWeights{};
      const TrainedModel mz = bundle.model(zero);
      UserScorer s_z(mz);
      for (std::uint32_t u = 0; u < d.num_users(); ++u) {
        if (!cf.train().has_ratings(UserHandle{u})) continue;
        s_cf.bind(UserHandle{u});
        s_z.bind(UserHandle{u});
        for (std::uint32_t i = 0; i < d.num_items(); ++i) {
          const Prediction a = s_cf.predict(ItemHandle{i});
          const Prediction b = s_z.predict(ItemHandle{i});
          const double diff = std::abs(a.value - b.value);
          worst = std::max(worst, diff);
          ++compared;
          ck.expect(diff <= 1e-12 && a.kind == b.kind,
                    "instance " + std::to_string(inst) + fmt(" beta %.1f diff %.3g", beta, diff));
        }
      }
    }
  }
  return ck.result(std::to_string(compared) + fmt(" predictions, max diff %.2g", worst));
}

std::vector<std::pair<std::string, Dataset>> fixture_datasets() {
  std::vector<std::pair<std::string, Dataset>> out;
  out.emplace_back("yelp fixture", ingest_yelp_dir(kFixtures / "yelp").dataset);
  out.emplace_back("librarything fixture", ingest_librarything_dir(kFixtures / "librarything").dataset);
  SyntheticParams p;
  p.users = 60;
  p.items = 40;
  p.ratings = 700;
  p.seed = 11;
  out.emplace_back("synthetic fixture", make_synthetic(p));
  return out;
}

double mean_of(const std::map<std::uint32_t, double>& m) {
  double s = 0;
  for (const auto& [k, v] : m) s += v;
  return s / static_cast<double>(m.size());
}

/// Neighbors and prediction from a single per-pair score, written out directly.
struct ScoredPrediction {
  std::vector<std::uint32_t> neighbors;
  double value;
  bool model;
};

ScoredPrediction predict_by_score(const oracle::Reference& r, std::uint32_t u, std::uint32_t i, std::size_t n,
                                  const std::function<double(std::uint32_t)>& score) {
  std::vector<std::pair<double, std::uint32_t>> cand;
  for (std::uint32_t v = 0; v < r.train.size(); ++v) {
    if (v == u || !r.train[v].count(i)) continue;
    const double s = score(v);
    if (s > 0) cand.emplace_back(-s, v);
  }
  std::sort(cand.begin(), cand.end());
  if (cand.size() > n) cand.resize(n);
  ScoredPrediction p{{}, mean_of(r.train[u]), !cand.empty()};
  double num = 0, den = 0;
  for (const auto& [neg, v] : cand) {
    p.neighbors.push_back(v);
    num += -neg * (r.train[v].at(i) - mean_of(r.train[v]));
    den += -neg;
  }
  if (p.model) p.value = std::clamp(p.value + num / den, 1.0, 5.0);
  return p;
}

Result beta_boundaries() {
  Checker ck;
  std::size_t compared = 0;
  for (const auto& [label, d] : fixture_datasets()) {
    const auto train = d.ratings().triples();
    const oracle::Reference ref = oracle::make_reference(d, train);
    const auto bundle = testsupport::make_bundle(d, train);
    for (const char* name : {"MTR", "MTRTrust2", "MTR-U"}) {
      for (std::size_t n : {std::size_t{50}, std::size_t{3}}) {
        const InfluenceConfig one = make_config(name, 1.0, n);
        const InfluenceConfig zero = make_config(name, 0.0, n);
        const TrainedModel m1 = bundle.model(one);
        const TrainedModel m0 = bundle.model(zero);
        UserScorer s1(m1), s0(m0);
        for (std::uint32_t u = 0; u < d.num_users(); ++u) {
          if (ref.train[u].empty()) continue;
          s1.bind(UserHandle{u});
          s0.bind(UserHandle{u});
          for (std::uint32_t i = 0; i < d.num_items(); ++i) {
            const auto sim = predict_by_score(ref, u, i, n, [&](std::uint32_t v) {
              return oracle::sigma(ref, one, u, v);
            });
            const auto tr = predict_by_score(ref, u, i, n,
                                             [&](std::uint32_t v) { return oracle::trust(ref, zero.weights, u, v, i); });
            const auto check = [&](UserScorer& s, const ScoredPrediction& want, const char* side) {
              std::vector<std::uint32_t> got;
              for (const Neighbor& nb : s.neighbors(ItemHandle{i})) got.push_back(nb.user.value);
              const Prediction p = s.predict(ItemHandle{i});
              const std::string where = label + " " + name + " " + side;
              ck.expect(got == want.neighbors, where + " neighbor set differs");
              ck.expect(std::abs(p.value - want.value) <= 1e-12, where + fmt(" prediction %.12g vs %.12g", p.value, want.value));
              ck.expect((p.kind == PredictionKind::Model) == want.model, where + " prediction kind differs");
              ++compared;
            };
            check(s1, sim, "beta=1");
            check(s0, tr, "beta=0");
          }
        }
      }
    }
  }
  return ck.result(std::to_string(compared) + " neighbor sets and predictions");
}

RecommendationList list_of(std::vector<std::uint32_t> items, PredictionKind kind = PredictionKind::Model) {
  RecommendationList l;
  double score = 5.0;
  for (auto i : items) {
    l.entries.push_back({ItemHandle{i}, score, kind});
    score -= 0.1;
  }
  return l;
}

Result metric_goldens() {
  Checker ck;
  const std::vector<std::pair<double, double>> errs = {{3, 3}, {5, 3}};
  const AccuracyMetrics a = accuracy_metrics(errs);
  ck.expect(a.rmse == std::sqrt(2.0), fmt("rmse %.17g", a.rmse));
  ck.expect(a.mae == 1.0, fmt("mae %.17g", a.mae));

  RelevanceSets rel;
  rel[UserHandle{0}] = {ItemHandle{1}, ItemHandle{3}, ItemHandle{5}, ItemHandle{7},
                        ItemHandle{20}, ItemHandle{21}, ItemHandle{22}, ItemHandle{23}};
  const std::vector<RecommendationList> ten = {list_of({0, 1, 2, 3, 4, 5, 6, 7, 8, 9})};
  const RankingMetrics r = ranking_metrics(ten, rel, 10);
  ck.expect(r.precision == 0.4, fmt("precision %.17g", r.precision));
  ck.expect(r.recall == 0.5, fmt("recall %.17g", r.recall));
  ck.expect(r.f1 == 4.0 / 9.0, fmt("f1 %.17g", r.f1));

  RelevanceSets one;
  one[UserHandle{0}] = {ItemHandle{4}};
  ck.expect(ranking_metrics(std::vector{list_of({4, 5, 6})}, one, 10).mrr == 1.0, "mrr at rank 1");
  ck.expect(ranking_metrics(std::vector{list_of({5, 4, 6})}, one, 10).mrr == 0.5, "mrr at rank 2");
  ck.expect(ranking_metrics(std::vector{list_of({5, 6, 7})}, one, 10).mrr == 0.0, "mrr without a hit");

  const ItemCategories disjoint({"a", "b"}, {{0}, {1}});
  const double two = intra_diversity(list_of({0, 1}), disjoint);
  ck.expect(two == 1.0 / 3.0, fmt("diversity of two disjoint items %.17g", two));
  const ItemCategories none({}, std::vector<std::vector<std::uint32_t>>(10));
  const double bound = intra_diversity(list_of({0, 1, 2, 3, 4, 5, 6, 7, 8, 9}), none);
  ck.expect(bound == 9.0 / 11.0, fmt("diversity bound %.17g", bound));
  return ck.result("rmse, mae, precision, recall, f1, mrr, diversity");
}

Result indicator_bounds() {
  std::mt19937_64 rng(1000);
  Checker ck;
  for (int table = 0; table < 1000; ++table) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 80)(rng);
    std::geometric_distribution<std::uint64_t> g(0.03);
    std::vector<std::uint64_t> counts(n), contrib(n);
    for (std::size_t k = 0; k < n; ++k) {
      counts[k] = rng() % 5 == 0 ? 0 : g(rng);
      contrib[k] = rng() % 4 == 0 ? 0 : g(rng);
    }
    const std::uint64_t top = *std::max_element(counts.begin(), counts.end());
    const auto f = indicator_fendors(counts);
    const auto c = indicator_fcontr(counts);
    const auto vis = indicator_visibility(counts, contrib);
    for (std::size_t k = 0; k < n; ++k) {
      ck.expect(f[k] >= 0.0 && f[k] <= 1.0, "fEndors out of range");
      ck.expect(c[k] >= 0.0 && c[k] <= 1.0, "fContr out of range");
      ck.expect(vis[k] >= 0.0 && vis[k] <= 1.0, "vis out of range");
      if (top > 0) {
        ck.expect((f[k] == 1.0) == (counts[k] == top), "fEndors argmax is not exactly 1");
        ck.expect((c[k] == 1.0) == (counts[k] == top), "fContr argmax is not exactly 1");
      }
    }

    // fRev on a random review table.
    const std::size_t items = std::uniform_int_distribution<std::size_t>(1, 10)(rng);
    std::vector<ReviewFeedback::Entry> entries;
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (std::size_t k = 0; k < 3 * n; ++k) {
      const auto u = static_cast<std::uint32_t>(rng() % n);
      const auto i = static_cast<std::uint32_t>(rng() % items);
      if (!seen.insert({u, i}).second) continue;
      entries.push_back({u, i, ReviewCounters{g(rng), rng() % 3, rng() % 2, rng() % 4 == 0 ? g(rng) : 0}});
    }
    const ReviewFeedback rf(n, items, entries);
    const ReviewTrustMatrix m = indicator_frev(rf, items);
    for (std::uint32_t i = 0; i < items; ++i) {
      std::uint64_t item_top = 0;
      for (const auto& e : entries) {
        if (e.item == i) item_top = std::max(item_top, e.counters.total());
      }
      for (const auto& e : entries) {
        if (e.item != i) continue;
        const double v = m.at(UserHandle{e.user}, ItemHandle{i});
        ck.expect(v >= 0.0 && v <= 1.0, "fRev out of range");
        if (item_top > 0) ck.expect((v == 1.0) == (e.counters.total() == item_top), "fRev argmax is not exactly 1");
      }
    }
  }

  // Every indicator of random full datasets, and fusion monotonicity.
  for (int rep = 0; rep < 200; ++rep) {
    const Dataset d = testsupport::random_dataset(rng);
    const TrustProfiles p = build_profiles(d);
    for (Facet f : kAllFacets) {
      if (!is_user_facet(f) || !p.has(f)) continue;
      const auto v = p.vector(f);
      for (double x : v) ck.expect(x >= 0.0 && x <= 1.0, std::string(facet_name(f)) + " out of range");
    }

    FacetWeights w;
    for (Facet f : kAllFacets) w[f] = std::uniform_int_distribution<int>(0, 10)(rng) / 10.0;
    w.rel_mode = rng() % 2 ? RelMode::Direct : RelMode::DirectIntersection;
    if (!w.any()) w[Facet::Fb] = 1.0;
    std::vector<Facet> facets;
    for (Facet f : kAllFacets) {
      if (is_user_facet(f) && p.has(f)) facets.push_back(f);
    }
    if (facets.empty()) continue;
    for (int k = 0; k < 20; ++k) {
      const Facet f = facets[rng() % facets.size()];
      const auto v = UserHandle{static_cast<std::uint32_t>(rng() % d.num_users())};
      const auto u = UserHandle{static_cast<std::uint32_t>(rng() % d.num_users())};
      const auto i = ItemHandle{static_cast<std::uint32_t>(rng() % d.num_items())};
      TrustProfiles raised = p;
      auto values = std::vector<double>(p.vector(f).begin(), p.vector(f).end());
      const double before_value = values[v.value];
      values[v.value] = std::min(1.0, before_value + std::uniform_real_distribution<double>(0.0, 1.0)(rng));
      raised.set(f, values);
      const double before = fuse_trust(p, d.social(), w, u, v, i);
      const double after = fuse_trust(raised, d.social(), w, u, v, i);
      ck.expect(after >= before, "fusion decreased after raising " + std::string(facet_name(f)));
      if (w[f] > 0 && values[v.value] > before_value + 1e-9) {
        ck.expect(after > before, "fusion ignored a weighted increase of " + std::string(facet_name(f)));
      }
    }
  }
  return ck.result("1000 tables, 200 datasets, 4000 monotonicity probes");
}

Result fold_properties() {
  std::mt19937_64 rng(100);
  Checker ck;
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(0, 20000)(rng);
    const std::size_t folds = std::uniform_int_distribution<std::size_t>(2, 20)(rng);
    const std::uint64_t seed = rng();
    const FoldPlan p = split_folds(n, folds, seed);
    ck.expect(p.assignment.size() == n, "assignment size");
    std::vector<std::size_t> sizes(folds, 0);
    bool in_range = true;
    for (auto f : p.assignment) {
      if (f >= folds) {
        in_range = false;
        continue;
      }
      ++sizes[f];
    }
    ck.expect(in_range, "fold index out of range");
    std::size_t total = 0;
    for (auto s : sizes) total += s;
    ck.expect(total == n, "folds do not partition the ratings");
    const auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
    ck.expect(*hi - *lo <= 1, "fold sizes differ by more than one");
    ck.expect(split_folds(n, folds, seed) == p, "same seed gave a different plan");
    if (n >= 50) ck.expect(split_folds(n, folds, seed + 1).assignment != p.assignment, "seed has no effect");
  }
  return ck.result("100 random sizes");
}

struct PerfSize {
  std::size_t users = 25000;
  std::size_t items = 75000;
  std::size_t ratings = 1300000;
};

Result performance(const PerfSize& size) {
  const auto start = Clock::now();
  SyntheticParams p;
  p.users = size.users;
  p.items = size.items;
  p.ratings = size.ratings;
  p.mean_friends = 24.0;
  p.seed = 1;
  const Dataset d = make_synthetic(p);
  const double built = seconds_since(start);
  const FoldPlan plan = split_folds(d, 10, 1);
  const std::vector<InfluenceConfig> configs = {make_config("MTRTrust2", 0.1)};
  const EvaluationReport r = run_experiment(d, configs, plan, 10, 4.0, RunOptions{0});
  const double secs = seconds_since(start);
  const double rss = peak_rss_gb();
  Checker ck;
  ck.expect(secs < 7200.0, fmt("runtime %.0f s", secs));
  ck.expect(rss < 8.0, fmt("peak RSS %.2f GB", rss));
  ck.expect(std::isfinite(r.rows.at(0).metrics.rmse), "rmse not finite");
  return ck.result(std::to_string(d.num_users()) + "/" + std::to_string(d.num_items()) + "/" +
                   std::to_string(d.ratings().size()) +
                   fmt(", 10 folds in %.0f s (dataset %.1f s), peak RSS %.2f GB", secs, built, rss) +
                   fmt(", rmse %.4f", r.rows[0].metrics.rmse));
}

const char* env(const char* name) {
  const char* v = std::getenv(name);
  return v && *v ? v : nullptr;
}

EvaluationReport trend_report(const Dataset& d, const std::vector<std::string>& names) {
  std::vector<InfluenceConfig> configs;
  for (const auto& n : names) configs.push_back(make_config(n, 0.1, 50));
  return run_experiment(d, configs, split_folds(d, 10, 1), 10, 4.0, RunOptions{0});
}

Result dataset_trends() {
  const char* yelp = env("TRUSTREC_YELP_DIR");
  const char* lt = env("TRUSTREC_LT_DIR");
  if (!yelp && !lt) return {Outcome::Skip, "set TRUSTREC_YELP_DIR and/or TRUSTREC_LT_DIR to the raw dumps"};
  Checker ck;
  std::string detail;
  if (yelp) {
    const Dataset raw = ingest_yelp_dir(yelp).dataset;
    const Dataset d = apply_filters(raw, 20, load_category_closure(kDataDir / "yelp_restaurants_food_closure.txt"));
    const StatsReport s = compute_stats(d);
    ck.expect(s.users == 26600, "users " + std::to_string(s.users));
    ck.expect(s.items == 76317, "items " + std::to_string(s.items));
    ck.expect(s.ratings == 1326409, "ratings " + std::to_string(s.ratings));
    ck.expect(s.friend_relations == 645020, "friend relations " + std::to_string(s.friend_relations));
    if (const StatsRow* f = s.find("friends")) {
      ck.expect(std::abs(f->summary.mean - 24.2488) < 5e-5, fmt("mean friends %.4f", f->summary.mean));
    }
    const EvaluationReport r = trend_report(d, {"U2UCF", "MTRTrust2", "MTR"});
    const double cf = r.rows[0].metrics.rmse, t2 = r.rows[1].metrics.rmse, mtr = r.rows[2].metrics.rmse;
    ck.expect(t2 < cf, fmt("yelp MTRTrust2 %.4f not below U2UCF %.4f", t2, cf));
    ck.expect(mtr < cf, fmt("yelp MTR %.4f not below U2UCF %.4f", mtr, cf));
    ck.expect(std::abs(cf - 1.0518) <= 0.05, fmt("yelp U2UCF rmse %.4f", cf));
    ck.expect(std::abs(t2 - 1.0233) <= 0.05, fmt("yelp MTRTrust2 rmse %.4f", t2));
    ck.expect(std::abs(mtr - 1.045) <= 0.05, fmt("yelp MTR rmse %.4f", mtr));
    detail += fmt("yelp rmse U2UCF %.4f MTRTrust2 %.4f MTR %.4f", cf, t2, mtr);
  }
  if (lt) {
    const Dataset d = apply_filters(ingest_librarything_dir(lt).dataset, 20);
    const EvaluationReport r = trend_report(d, {"U2UCF", "MTRTrust2"});
    const double cf = r.rows[0].metrics.rmse, t2 = r.rows[1].metrics.rmse;
    ck.expect(cf < t2, fmt("librarything U2UCF %.4f not below MTRTrust2 %.4f", cf, t2));
    if (!detail.empty()) detail += "; ";
    detail += fmt("librarything rmse U2UCF %.4f MTRTrust2 %.4f", cf, t2);
  }
  if (!yelp) detail += " (yelp skipped)";
  if (!lt) detail += " (librarything skipped)";
  return ck.result(detail);
}

}  // namespace

int main(int argc, char** argv) {
  std::set<std::string> only;
  PerfSize perf;
  for (int k = 1; k < argc; ++k) {
    const std::string a = argv[k];
    const auto next = [&]() -> std::string {
      if (k + 1 >= argc) {
        std::fprintf(stderr, "missing value after %s\n", a.c_str());
        std::exit(2);
      }
      return argv[++k];
    };
    if (a == "--only") {
      only.insert(next());
    } else if (a == "--perf-users") {
      perf.users = std::stoul(next());
    } else if (a == "--perf-items") {
      perf.items = std::stoul(next());
    } else if (a == "--perf-ratings") {
      perf.ratings = std::stoul(next());
    } else {
      std::fprintf(stderr, "unknown argument %s\n", a.c_str());
      return 2;
    }
  }

  const std::vector<std::pair<std::string, std::function<Result()>>> criteria = {
      {"oracle_equivalence", oracle_equivalence},
      {"u2ucf_equivalence", u2ucf_equivalence},
      {"beta_boundaries", beta_boundaries},
      {"metric_goldens", metric_goldens},
      {"indicator_bounds", indicator_bounds},
      {"fold_properties", fold_properties},
      {"performance", [&] { return performance(perf); }},
      {"dataset_trends", dataset_trends},
  };

  int failed = 0;
  for (const auto& [name, run] : criteria) {
    if (!only.empty() && !only.count(name)) continue;
    Result r;
    try {
      r = run();
    } catch (const std::exception& e) {
      r = {Outcome::Fail, std::string("exception: ") + e.what()};
    }
    const char* tag = r.outcome == Outcome::Pass ? "PASS" : r.outcome == Outcome::Fail ? "FAIL" : "SKIP";
    if (r.outcome == Outcome::Fail) ++failed;
    std::printf("%s %s: %s\n", tag, name.c_str(), r.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
