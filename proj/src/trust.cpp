#include "trustrec/trust.hpp"

#include <algorithm>
#include <string>

#include "trustrec/error.hpp"

namespace trustrec {

namespace {

constexpr std::array<std::string_view, kFacetCount> kFacetNames = {
    "elite", "lup", "opLeader", "vis", "fb", "fRev", "rel", "fEndors", "fContr",
};

std::size_t index(Facet f) { return static_cast<std::size_t>(f); }

std::vector<double> normalize_by_max(std::span<const std::uint64_t> counts) {
  std::vector<double> out(counts.size(), 0.0);
  const std::uint64_t top = counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
  if (top == 0) return out;
  for (std::size_t v = 0; v < counts.size(); ++v) {
    out[v] = static_cast<double>(counts[v]) / static_cast<double>(top);
  }
  return out;
}

}  // namespace

std::string_view facet_name(Facet f) { return kFacetNames.at(index(f)); }

std::optional<Facet> parse_facet(std::string_view name) {
  for (std::size_t k = 0; k < kFacetNames.size(); ++k) {
    if (kFacetNames[k] == name) return static_cast<Facet>(k);
  }
  return std::nullopt;
}

std::string_view rel_mode_name(RelMode m) {
  switch (m) {
    case RelMode::None:
      return "none";
    case RelMode::Direct:
      return "direct";
    case RelMode::DirectIntersection:
      return "intersection";
  }
  return "none";
}

std::optional<RelMode> parse_rel_mode(std::string_view name) {
  if (name == "none" || name.empty()) return RelMode::None;
  if (name == "direct") return RelMode::Direct;
  if (name == "intersection" || name == "direct+intersection") return RelMode::DirectIntersection;
  return std::nullopt;
}

std::vector<double> indicator_fendors(std::span<const std::uint64_t> counts) { return normalize_by_max(counts); }

std::vector<double> indicator_visibility(std::span<const std::uint64_t> apprec,
                                         std::span<const std::uint64_t> contrib) {
  if (apprec.size() != contrib.size()) throw UsageError("visibility inputs differ in length");
  std::vector<double> out(apprec.size(), 0.0);
  const std::uint64_t top = apprec.empty() ? 0 : *std::max_element(apprec.begin(), apprec.end());
  if (top == 0) return out;
  for (std::size_t v = 0; v < apprec.size(); ++v) {
    if (contrib[v] == 0) continue;
    const double ratio =
        static_cast<double>(apprec[v]) / (static_cast<double>(top) * static_cast<double>(contrib[v]));
    out[v] = std::clamp(ratio, 0.0, 1.0);
  }
  return out;
}

std::vector<double> indicator_fcontr(std::span<const std::uint64_t> sums) { return normalize_by_max(sums); }

ReviewTrustMatrix::ReviewTrustMatrix(std::size_t num_items, std::vector<std::size_t> offsets,
                                     std::vector<std::uint32_t> users, std::vector<double> values)
    : offsets_(std::move(offsets)), users_(std::move(users)), values_(std::move(values)) {
  if (offsets_.size() != num_items + 1 || users_.size() != values_.size() || offsets_.back() != users_.size()) {
    throw UsageError("inconsistent review trust matrix");
  }
}

double ReviewTrustMatrix::at(UserHandle v, ItemHandle i) const {
  if (i.value >= num_items()) return 0.0;
  const auto raters = users(i);
  const auto it = std::lower_bound(raters.begin(), raters.end(), v.value);
  if (it == raters.end() || *it != v.value) return 0.0;
  return values(i)[static_cast<std::size_t>(it - raters.begin())];
}

ReviewTrustMatrix indicator_frev(const ReviewFeedback& rf, std::size_t num_items) {
  std::vector<std::size_t> offsets(num_items + 1, 0);
  for (const auto& e : rf.entries()) ++offsets[e.item + 1];
  for (std::size_t i = 0; i < num_items; ++i) offsets[i + 1] += offsets[i];

  std::vector<std::uint32_t> users(rf.size());
  std::vector<double> values(rf.size());
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  // Entries are user-major, so each item's raters come out sorted.
  for (const auto& e : rf.entries()) {
    const std::size_t slot = cursor[e.item]++;
    users[slot] = e.user;
    const std::uint64_t top = rf.item_max(ItemHandle{e.item});
    values[slot] = top == 0 ? 0.0 : static_cast<double>(e.counters.total()) / static_cast<double>(top);
  }
  return ReviewTrustMatrix(num_items, std::move(offsets), std::move(users), std::move(values));
}

void TrustProfiles::set(Facet f, std::vector<double> values) {
  if (!is_user_facet(f)) throw UsageError(std::string(facet_name(f)) + " is not a per-user indicator");
  if (values.size() != num_users_) throw UsageError("indicator length differs from user count");
  vectors_[index(f)] = std::move(values);
  present_[index(f)] = true;
}

bool TrustProfiles::has(Facet f) const {
  if (f == Facet::FRev) return has_review_;
  if (f == Facet::Rel) return false;
  return present_[index(f)];
}

double TrustProfiles::value(Facet f, UserHandle v) const {
  if (!present_[index(f)]) return 0.0;
  return vectors_[index(f)][v.value];
}

std::span<const double> TrustProfiles::vector(Facet f) const { return vectors_[index(f)]; }

std::vector<std::string_view> TrustProfiles::names() const {
  std::vector<std::string_view> out;
  for (Facet f : kAllFacets) {
    if (has(f)) out.push_back(facet_name(f));
  }
  return out;
}

double FacetWeights::total() const {
  double sum = 0.0;
  for (double w : weights) sum += w;
  return sum;
}

void FacetWeights::validate() const {
  for (Facet f : kAllFacets) {
    const double w = (*this)[f];
    if (!(w >= 0.0 && w <= 1.0)) {
      throw UsageError("weight of " + std::string(facet_name(f)) + " must lie in [0, 1]");
    }
  }
  if ((*this)[Facet::Rel] > 0.0 && rel_mode == RelMode::None) {
    throw UsageError("a weighted rel facet needs rel mode direct or intersection");
  }
}

namespace {

std::vector<std::uint64_t> counter_column(const Dataset& d, auto&& extract) {
  std::vector<std::uint64_t> out(d.num_users());
  for (std::size_t v = 0; v < out.size(); ++v) out[v] = extract(d.feedback(UserHandle{static_cast<std::uint32_t>(v)}));
  return out;
}

void add_yelp_indicators(const Dataset& d, TrustProfiles& p) {
  using C = FeedbackRecord;
  const auto elite = counter_column(d, [](const C& r) { return r[C::kEliteYears]; });
  const auto compliments = counter_column(d, [](const C& r) { return r.compliments(); });
  const auto fans = counter_column(d, [](const C& r) { return r[C::kFans]; });
  const auto contributions = counter_column(d, [](const C& r) { return r[C::kReviewCount] + r[C::kTipCount]; });
  const auto contribution_feedback = counter_column(d, [](const C& r) {
    return r[C::kReviewUseful] + r[C::kReviewFunny] + r[C::kReviewCool] + r[C::kTipLikes];
  });
  p.set(Facet::Elite, indicator_fendors(elite));
  p.set(Facet::Lup, indicator_fendors(compliments));
  p.set(Facet::OpLeader, indicator_fendors(fans));
  p.set(Facet::Vis, indicator_visibility(compliments, contributions));
  p.set(Facet::Fb, indicator_fcontr(contribution_feedback));
  p.set_review(indicator_frev(d.reviews(), d.num_items()));
}

}  // namespace

TrustProfiles build_yelp_profiles(const Dataset& d) {
  if (d.provenance() != Provenance::Yelp) throw WrongProvenance("Yelp indicators need a yelp dataset");
  TrustProfiles p(d.num_users());
  add_yelp_indicators(d, p);
  return p;
}

TrustProfiles build_librarything_profiles(const Dataset& d) {
  if (d.provenance() != Provenance::LibraryThing) {
    throw WrongProvenance("LibraryThing indicators need a librarything dataset");
  }
  TrustProfiles p(d.num_users());
  const auto helpful = counter_column(d, [](const FeedbackRecord& r) { return r[FeedbackRecord::kNhelpfulTotal]; });
  p.set(Facet::Fb, indicator_fcontr(helpful));
  p.set_review(indicator_frev(d.reviews(), d.num_items()));
  return p;
}

TrustProfiles build_profiles(const Dataset& d) {
  switch (d.provenance()) {
    case Provenance::Yelp:
      return build_yelp_profiles(d);
    case Provenance::LibraryThing:
      return build_librarything_profiles(d);
    case Provenance::Synthetic:
      break;
  }
  using C = FeedbackRecord;
  TrustProfiles p(d.num_users());
  add_yelp_indicators(d, p);
  const auto endorsements = counter_column(d, [](const C& r) { return r.compliments() + r[C::kFans]; });
  const auto contribution_feedback = counter_column(d, [](const C& r) {
    return r[C::kReviewUseful] + r[C::kReviewFunny] + r[C::kReviewCool] + r[C::kTipLikes] + r[C::kNhelpfulTotal];
  });
  p.set(Facet::FEndors, indicator_fendors(endorsements));
  p.set(Facet::FContr, indicator_fcontr(contribution_feedback));
  return p;
}

double social_relation(const SocialGraph& g, RelMode mode, UserHandle u, UserHandle v) {
  switch (mode) {
    case RelMode::None:
      return 0.0;
    case RelMode::Direct:
      return rel_direct(g, u, v);
    case RelMode::DirectIntersection:
      return rel_social_intersection(g, u, v);
  }
  return 0.0;
}

double fuse_trust(const TrustProfiles& p, const SocialGraph& g, const FacetWeights& w, UserHandle u, UserHandle v,
                  ItemHandle i) {
  double numerator = 0.0;
  double denominator = 0.0;
  for (Facet f : kAllFacets) {
    const double weight = w[f];
    if (weight <= 0.0) continue;
    double value = 0.0;
    if (f == Facet::FRev) {
      value = p.review().at(v, i);
    } else if (f == Facet::Rel) {
      value = social_relation(g, w.rel_mode, u, v);
    } else {
      value = p.value(f, v);
    }
    numerator += weight * value;
    denominator += weight;
  }
  if (denominator <= 0.0) throw AllWeightsZero();
  return snap_score(std::clamp(numerator / denominator, 0.0, 1.0));
}

TrustFuser::TrustFuser(const TrustProfiles& p, const SocialGraph& g, const FacetWeights& w)
    : profiles_(&p), graph_(&g), rel_mode_(w.rel_mode) {
  w.validate();
  total_ = w.total();
  review_weight_ = w[Facet::FRev];
  rel_weight_ = w[Facet::Rel];
  user_part_.assign(p.num_users(), 0.0);
  for (Facet f : kAllFacets) {
    if (!is_user_facet(f) || w[f] <= 0.0 || !p.has(f)) continue;
    const auto values = p.vector(f);
    for (std::size_t v = 0; v < user_part_.size(); ++v) user_part_[v] += w[f] * values[v];
  }
}

double TrustFuser::fuse(UserHandle u, UserHandle v, double frev) const {
  if (total_ <= 0.0) throw AllWeightsZero();
  double numerator = user_part_[v.value] + review_weight_ * frev;
  if (rel_weight_ > 0.0) numerator += rel_weight_ * social_relation(*graph_, rel_mode_, u, v);
  return snap_score(std::clamp(numerator / total_, 0.0, 1.0));
}

}  // namespace trustrec
