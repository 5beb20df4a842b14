#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "trustrec/handles.hpp"
#include "trustrec/social_graph.hpp"

namespace trustrec {

inline constexpr double kMinRating = 1.0;
inline constexpr double kMaxRating = 5.0;

struct Rating {
  std::uint32_t user = 0;
  std::uint32_t item = 0;
  double value = 0.0;
  bool operator==(const Rating&) const = default;
};

/// Sparse rating matrix with user-major and item-major views over the same
/// triples. Position k in the user-major order is the rating's index; fold
/// plans refer to ratings by that index.
class RatingStore {
 public:
  RatingStore() = default;

  /// Triples must be unique per (user, item). Order is irrelevant.
  RatingStore(std::size_t num_users, std::size_t num_items, std::vector<Rating> triples);

  std::size_t num_users() const noexcept { return user_offsets_.empty() ? 0 : user_offsets_.size() - 1; }
  std::size_t num_items() const noexcept { return item_offsets_.empty() ? 0 : item_offsets_.size() - 1; }
  std::size_t size() const noexcept { return user_items_.size(); }

  std::span<const std::uint32_t> items_of(UserHandle u) const { return segment(user_items_, user_offsets_, u.value); }
  std::span<const double> ratings_of(UserHandle u) const { return segment(user_values_, user_offsets_, u.value); }
  std::span<const std::uint32_t> raters_of(ItemHandle i) const { return segment(item_users_, item_offsets_, i.value); }
  std::span<const double> ratings_for(ItemHandle i) const { return segment(item_values_, item_offsets_, i.value); }

  /// First rating index of user u in the user-major order.
  std::size_t user_begin(UserHandle u) const { return user_offsets_[u.value]; }

  /// Arithmetic mean of u's ratings; 0 when u has none.
  double mean(UserHandle u) const { return means_[u.value]; }
  bool has_ratings(UserHandle u) const { return user_offsets_[u.value + 1] > user_offsets_[u.value]; }

  std::optional<double> rating(UserHandle u, ItemHandle i) const;

  /// All triples in user-major order (index order).
  std::vector<Rating> triples() const;

  bool operator==(const RatingStore& other) const;

 private:
  template <class T>
  static std::span<const T> segment(const std::vector<T>& data, const std::vector<std::size_t>& offsets,
                                    std::uint32_t k) {
    return {data.data() + offsets[k], offsets[k + 1] - offsets[k]};
  }

  std::vector<std::size_t> user_offsets_;
  std::vector<std::uint32_t> user_items_;
  std::vector<double> user_values_;
  std::vector<std::size_t> item_offsets_;
  std::vector<std::uint32_t> item_users_;
  std::vector<double> item_values_;
  std::vector<double> means_;
};

/// Per-user feedback counters. Review-derived fields (reviewCount and the
/// review appreciation sums) are recomputed from ReviewFeedback whenever a
/// Dataset is built.
struct FeedbackRecord {
  enum Counter : std::size_t {
    kEliteYears,
    kMore,
    kThx,
    kGw,
    kFans,
    kTipLikes,
    kReviewUseful,
    kReviewFunny,
    kReviewCool,
    kNhelpfulTotal,
    kReviewCount,
    kTipCount,
    kCounterCount
  };

  std::array<std::uint64_t, kCounterCount> counters{};

  std::uint64_t& operator[](Counter c) { return counters[c]; }
  std::uint64_t operator[](Counter c) const { return counters[c]; }

  std::uint64_t compliments() const { return counters[kMore] + counters[kThx] + counters[kGw]; }

  static std::string_view name(Counter c);
  static std::optional<Counter> parse(std::string_view name);

  bool operator==(const FeedbackRecord&) const = default;
};

/// Appreciations attached to one review.
struct ReviewCounters {
  std::uint64_t useful = 0;
  std::uint64_t funny = 0;
  std::uint64_t cool = 0;
  std::uint64_t nhelpful = 0;

  /// Total appreciation; a given dump populates either the Yelp triple or nhelpful.
  std::uint64_t total() const { return useful + funny + cool + nhelpful; }

  bool operator==(const ReviewCounters&) const = default;
};

/// Sparse (user, item) -> ReviewCounters, user-major, with a per-item max cache.
class ReviewFeedback {
 public:
  struct Entry {
    std::uint32_t user = 0;
    std::uint32_t item = 0;
    ReviewCounters counters;
    bool operator==(const Entry&) const = default;
  };

  ReviewFeedback() = default;
  ReviewFeedback(std::size_t num_users, std::size_t num_items, std::vector<Entry> entries);

  std::size_t size() const noexcept { return entries_.size(); }
  std::span<const Entry> entries() const { return entries_; }
  std::span<const Entry> of(UserHandle u) const {
    return {entries_.data() + user_offsets_[u.value], user_offsets_[u.value + 1] - user_offsets_[u.value]};
  }
  const ReviewCounters* find(UserHandle u, ItemHandle i) const;

  /// Maximum of ReviewCounters::total() over the reviews of item i.
  std::uint64_t item_max(ItemHandle i) const { return item_max_[i.value]; }

  bool operator==(const ReviewFeedback& other) const { return entries_ == other.entries_ && item_max_ == other.item_max_; }

 private:
  std::vector<std::size_t> user_offsets_;
  std::vector<Entry> entries_;
  std::vector<std::uint64_t> item_max_;
};

/// Item -> sorted set of category ids; ids index a sorted name table.
class ItemCategories {
 public:
  ItemCategories() = default;
  ItemCategories(std::vector<std::string> names, std::vector<std::vector<std::uint32_t>> per_item);

  std::size_t num_items() const noexcept { return per_item_.size(); }
  std::span<const std::uint32_t> of(ItemHandle i) const { return per_item_[i.value]; }
  const std::string& name(std::uint32_t category) const { return names_[category]; }
  std::span<const std::string> names() const { return names_; }

  bool operator==(const ItemCategories&) const = default;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<std::uint32_t>> per_item_;
};

enum class Provenance { Yelp, LibraryThing, Synthetic };

std::string_view provenance_name(Provenance p);
std::optional<Provenance> parse_provenance(std::string_view s);

/// Immutable bundle of ratings, friendships, feedback and categories.
/// Handles are assigned in lexicographic order of the external ids, so two
/// datasets with the same content always intern identically.
class Dataset {
 public:
  Dataset() = default;

  Provenance provenance() const noexcept { return provenance_; }
  std::size_t num_users() const noexcept { return user_ids_.size(); }
  std::size_t num_items() const noexcept { return item_ids_.size(); }

  const std::string& user_id(UserHandle u) const { return user_ids_[u.value]; }
  const std::string& item_id(ItemHandle i) const { return item_ids_[i.value]; }
  std::span<const std::string> user_ids() const { return user_ids_; }
  std::span<const std::string> item_ids() const { return item_ids_; }
  std::optional<UserHandle> find_user(std::string_view id) const;
  std::optional<ItemHandle> find_item(std::string_view id) const;

  const RatingStore& ratings() const noexcept { return ratings_; }
  const SocialGraph& social() const noexcept { return social_; }
  const FeedbackRecord& feedback(UserHandle u) const { return feedback_[u.value]; }
  std::span<const FeedbackRecord> feedback_records() const { return feedback_; }
  const ReviewFeedback& reviews() const noexcept { return reviews_; }
  const ItemCategories& categories() const noexcept { return categories_; }

  bool operator==(const Dataset&) const = default;

 private:
  friend class DatasetBuilder;

  Provenance provenance_ = Provenance::Synthetic;
  std::vector<std::string> user_ids_;
  std::vector<std::string> item_ids_;
  RatingStore ratings_;
  SocialGraph social_;
  std::vector<FeedbackRecord> feedback_;
  ReviewFeedback reviews_;
  ItemCategories categories_;
};

/// Accumulates records keyed by external ids and produces a Dataset.
///
/// Repeated ratings of the same (user, item) pair are resolved at build time:
/// the record with the lexicographically greatest timestamp wins, later
/// insertions winning ties. The number of discarded records is reported by
/// duplicate_ratings() after build().
class DatasetBuilder {
 public:
  explicit DatasetBuilder(Provenance provenance) : provenance_(provenance) {}

  void add_user(std::string_view id) { intern(user_index_, user_names_, id); }
  void add_item(std::string_view id) { intern(item_index_, item_names_, id); }

  void add_rating(std::string_view user, std::string_view item, double value, std::string timestamp = {});
  void add_review(std::string_view user, std::string_view item, double value, const ReviewCounters& counters,
                  std::string timestamp = {});
  /// Attaches review counters to an existing or future rating of the pair.
  void set_review_feedback(std::string_view user, std::string_view item, const ReviewCounters& counters);

  /// Endpoints not yet declared are resolved at build time; edges whose
  /// endpoints never become users are dropped.
  void add_friendship(std::string_view a, std::string_view b);
  void add_category(std::string_view item, std::string_view category);
  /// Declares an item without categories.
  void touch_item(std::string_view item) { add_item(item); }

  FeedbackRecord& feedback(std::string_view user);

  Dataset build();

  std::size_t duplicate_ratings() const noexcept { return duplicates_; }

 private:
  struct PendingRating {
    std::uint32_t user;
    std::uint32_t item;
    double value;
    std::string timestamp;
    std::uint64_t seq;
  };

  static std::uint32_t intern(std::unordered_map<std::string, std::uint32_t>& index,
                              std::vector<std::string>& names, std::string_view id);

  Provenance provenance_;
  std::unordered_map<std::string, std::uint32_t> user_index_;
  std::vector<std::string> user_names_;
  std::unordered_map<std::string, std::uint32_t> item_index_;
  std::vector<std::string> item_names_;
  std::vector<PendingRating> ratings_;
  static constexpr std::uint64_t kDetachedReview = ~std::uint64_t{0};

  std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, ReviewCounters>> review_counters_;
  std::vector<std::uint64_t> review_seq_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> friend_edges_;
  std::vector<std::pair<std::string, std::string>> pending_friend_names_;
  std::vector<std::pair<std::uint32_t, std::string>> item_category_names_;
  std::unordered_map<std::uint32_t, FeedbackRecord> feedback_;
  std::uint64_t seq_ = 0;
  std::size_t duplicates_ = 0;
};

}  // namespace trustrec
