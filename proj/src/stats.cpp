#include "trustrec/stats.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>

namespace trustrec {

Summary summarize(std::vector<double> values) {
  Summary s;
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  s.defined = true;
  s.min = values.front();
  s.max = values.back();
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  const std::size_t n = values.size();
  s.median = n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
  // Smallest most frequent value.
  std::size_t best_run = 0;
  for (std::size_t k = 0; k < n;) {
    std::size_t j = k;
    while (j < n && values[j] == values[k]) ++j;
    if (j - k > best_run) {
      best_run = j - k;
      s.mode = values[k];
    }
    k = j;
  }
  return s;
}

const StatsRow* StatsReport::find(const std::string& name) const {
  for (const auto& row : rows) {
    if (row.name == name) return &row;
  }
  return nullptr;
}

namespace {

template <class Fn>
StatsRow per_user(const Dataset& d, std::string name, Fn&& fn) {
  std::vector<double> values;
  values.reserve(d.num_users());
  for (std::uint32_t u = 0; u < d.num_users(); ++u) values.push_back(static_cast<double>(fn(UserHandle{u})));
  return {std::move(name), summarize(std::move(values))};
}

StatsRow per_review(const Dataset& d, std::string name, auto&& fn) {
  std::vector<double> values;
  values.reserve(d.reviews().size());
  for (const auto& e : d.reviews().entries()) values.push_back(static_cast<double>(fn(e.counters)));
  return {std::move(name), summarize(std::move(values))};
}

}  // namespace

StatsReport compute_stats(const Dataset& d) {
  using C = FeedbackRecord;
  StatsReport r;
  r.provenance = std::string(provenance_name(d.provenance()));
  r.users = d.num_users();
  r.items = d.num_items();
  r.ratings = d.ratings().size();
  for (std::uint32_t i = 0; i < d.num_items(); ++i) {
    if (!d.ratings().raters_of(ItemHandle{i}).empty()) ++r.rated_items;
  }
  r.friend_relations = 2 * d.social().num_edges();
  if (r.users > 0 && r.items > 0) {
    r.sparsity_defined = true;
    const double nu = static_cast<double>(r.users);
    r.rating_sparsity = 1.0 - static_cast<double>(r.ratings) / (nu * static_cast<double>(r.items));
    r.friend_sparsity = 1.0 - static_cast<double>(r.friend_relations) / (nu * nu);
  }

  const auto fb = [&](UserHandle u) -> const FeedbackRecord& { return d.feedback(u); };
  const bool yelp = d.provenance() != Provenance::LibraryThing;
  const bool lt = d.provenance() != Provenance::Yelp;
  if (yelp) {
    r.rows.push_back(per_user(d, "elite_years", [&](UserHandle u) { return fb(u)[C::kEliteYears]; }));
    r.rows.push_back(per_user(d, "compliments", [&](UserHandle u) { return fb(u).compliments(); }));
    r.rows.push_back(per_user(d, "fans", [&](UserHandle u) { return fb(u)[C::kFans]; }));
    r.rows.push_back(per_user(d, "review_appreciations_per_user", [&](UserHandle u) {
      return fb(u)[C::kReviewUseful] + fb(u)[C::kReviewFunny] + fb(u)[C::kReviewCool];
    }));
    r.rows.push_back(per_user(d, "tip_likes_per_user", [&](UserHandle u) { return fb(u)[C::kTipLikes]; }));
    r.rows.push_back(per_review(d, "appreciations_per_review",
                                [](const ReviewCounters& c) { return c.useful + c.funny + c.cool; }));
  }
  if (lt) {
    r.rows.push_back(per_user(d, "nhelpful_per_user", [&](UserHandle u) { return fb(u)[C::kNhelpfulTotal]; }));
    r.rows.push_back(per_review(d, "nhelpful_per_review", [](const ReviewCounters& c) { return c.nhelpful; }));
  }
  r.rows.push_back(per_user(d, "friends", [&](UserHandle u) { return d.social().degree(u); }));
  return r;
}

void print_stats(const StatsReport& report, std::ostream& out) {
  const auto flags = out.flags();
  out << "provenance\t" << report.provenance << '\n'
      << "users\t" << report.users << '\n'
      << "items\t" << report.items << '\n'
      << "rated_items\t" << report.rated_items << '\n'
      << "ratings\t" << report.ratings << '\n'
      << "friend_relations\t" << report.friend_relations << '\n';
  if (report.sparsity_defined) {
    out << std::fixed << std::setprecision(5) << "rating_sparsity\t" << report.rating_sparsity << '\n'
        << "friend_sparsity\t" << report.friend_sparsity << '\n';
  } else {
    out << "rating_sparsity\tundefined\nfriend_sparsity\tundefined\n";
  }
  out << "indicator\tmin\tmax\tmean\tmedian\tmode\n";
  for (const auto& row : report.rows) {
    out << row.name;
    if (!row.summary.defined) {
      out << "\tundefined\tundefined\tundefined\tundefined\tundefined\n";
      continue;
    }
    out << std::defaultfloat << std::setprecision(6) << '\t' << row.summary.min << '\t' << row.summary.max << '\t'
        << std::fixed << std::setprecision(4) << row.summary.mean << std::defaultfloat << std::setprecision(6)
        << '\t' << row.summary.median << '\t' << row.summary.mode << '\n';
  }
  out.flags(flags);
}

}  // namespace trustrec
