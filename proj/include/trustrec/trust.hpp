#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "trustrec/dataset.hpp"
#include "trustrec/handles.hpp"
#include "trustrec/social_graph.hpp"

namespace trustrec {

/// Trust indicators that can take part in fusion.
///  - Elite, Lup, OpLeader, Vis: feedback on the user profile.
///  - Fb: feedback on all of the user's contributions.
///  - FRev: feedback on the user's review of the target item.
///  - Rel: social relation between the target user and the candidate.
///  - FEndors, FContr: generic profile / contribution indicators.
enum class Facet : std::uint8_t { Elite, Lup, OpLeader, Vis, Fb, FRev, Rel, FEndors, FContr };

inline constexpr std::size_t kFacetCount = 9;
inline constexpr std::array<Facet, kFacetCount> kAllFacets = {Facet::Elite, Facet::Lup,     Facet::OpLeader,
                                                              Facet::Vis,   Facet::Fb,      Facet::FRev,
                                                              Facet::Rel,   Facet::FEndors, Facet::FContr};

/// Similarities and fused trust are kept on a 2^-36 grid. Two scores that
/// agree up to rounding noise then compare equal, and neighbor ties break
/// by handle whichever order the sums were taken in.
inline double snap_score(double x) { return std::ldexp(std::nearbyint(std::ldexp(x, 36)), -36); }

std::string_view facet_name(Facet f);
std::optional<Facet> parse_facet(std::string_view name);

/// True for facets stored as one value per user.
constexpr bool is_user_facet(Facet f) { return f != Facet::FRev && f != Facet::Rel; }

enum class RelMode { None, Direct, DirectIntersection };

std::string_view rel_mode_name(RelMode m);
std::optional<RelMode> parse_rel_mode(std::string_view name);

/// count_v / max_a count_a. All-zero input gives all zeros.
std::vector<double> indicator_fendors(std::span<const std::uint64_t> counts);

/// apprec_v / (max_a apprec_a * contrib_v), clamped to [0, 1]; 0 when either
/// the population maximum or contrib_v is zero.
std::vector<double> indicator_visibility(std::span<const std::uint64_t> apprec,
                                         std::span<const std::uint64_t> contrib);

/// sum_v / max_a sum_a over per-user feedback totals.
std::vector<double> indicator_fcontr(std::span<const std::uint64_t> sums);

/// Normalized review feedback, stored item-major with raters sorted by handle.
class ReviewTrustMatrix {
 public:
  ReviewTrustMatrix() = default;
  ReviewTrustMatrix(std::size_t num_items, std::vector<std::size_t> offsets, std::vector<std::uint32_t> users,
                    std::vector<double> values);

  std::size_t num_items() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::span<const std::uint32_t> users(ItemHandle i) const {
    return {users_.data() + offsets_[i.value], offsets_[i.value + 1] - offsets_[i.value]};
  }
  std::span<const double> values(ItemHandle i) const {
    return {values_.data() + offsets_[i.value], offsets_[i.value + 1] - offsets_[i.value]};
  }

  /// fRev of v for item i; 0 when v did not review i.
  double at(UserHandle v, ItemHandle i) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> users_;
  std::vector<double> values_;
};

/// feedback(v, i) / max_a feedback(a, i) using ReviewCounters::total().
ReviewTrustMatrix indicator_frev(const ReviewFeedback& rf, std::size_t num_items);

/// Per-user indicator vectors plus the review-feedback matrix.
class TrustProfiles {
 public:
  TrustProfiles() = default;
  explicit TrustProfiles(std::size_t num_users) : num_users_(num_users) {}

  std::size_t num_users() const noexcept { return num_users_; }

  void set(Facet f, std::vector<double> values);
  void set_review(ReviewTrustMatrix m) {
    review_ = std::move(m);
    has_review_ = true;
  }

  bool has(Facet f) const;
  /// Missing indicators read as 0: the dataset holds no such evidence.
  double value(Facet f, UserHandle v) const;
  std::span<const double> vector(Facet f) const;
  const ReviewTrustMatrix& review() const noexcept { return review_; }

  /// Names of the indicators present, in facet order.
  std::vector<std::string_view> names() const;

 private:
  std::size_t num_users_ = 0;
  std::array<std::vector<double>, kFacetCount> vectors_{};
  std::array<bool, kFacetCount> present_{};
  ReviewTrustMatrix review_;
  bool has_review_ = false;
};

/// Fusion weights w_x, one per facet, plus how rel is computed.
struct FacetWeights {
  std::array<double, kFacetCount> weights{};
  RelMode rel_mode = RelMode::None;

  double operator[](Facet f) const { return weights[static_cast<std::size_t>(f)]; }
  double& operator[](Facet f) { return weights[static_cast<std::size_t>(f)]; }

  double total() const;
  bool any() const { return total() > 0.0; }

  /// Weights in [0, 1]; a weighted Rel facet needs a rel mode.
  void validate() const;

  bool operator==(const FacetWeights&) const = default;
};

TrustProfiles build_yelp_profiles(const Dataset& d);
TrustProfiles build_librarything_profiles(const Dataset& d);
/// Dispatches on provenance. Synthetic datasets get every indicator.
TrustProfiles build_profiles(const Dataset& d);

/// t_uvi = sum_x w_x f_x / sum_x w_x over facets with positive weight.
double fuse_trust(const TrustProfiles& p, const SocialGraph& g, const FacetWeights& w, UserHandle u, UserHandle v,
                  ItemHandle i);

/// Social relation under the given mode; RelMode::None reads as 0.
double social_relation(const SocialGraph& g, RelMode mode, UserHandle u, UserHandle v);

/// Precomputed form of fuse_trust for one weight profile.
///
/// The user-only facets collapse into one number per candidate, so a fused
/// value costs one fRev lookup and at most one social lookup.
class TrustFuser {
 public:
  TrustFuser(const TrustProfiles& p, const SocialGraph& g, const FacetWeights& w);

  bool active() const noexcept { return total_ > 0.0; }
  double review_weight() const noexcept { return review_weight_; }

  /// Fused trust given v's fRev for the item (caller looks it up).
  double fuse(UserHandle u, UserHandle v, double frev) const;
  double fuse(UserHandle u, UserHandle v, ItemHandle i) const { return fuse(u, v, profiles_->review().at(v, i)); }

 private:
  const TrustProfiles* profiles_;
  const SocialGraph* graph_;
  RelMode rel_mode_;
  double total_ = 0.0;
  double review_weight_ = 0.0;
  double rel_weight_ = 0.0;
  std::vector<double> user_part_;
};

}  // namespace trustrec
