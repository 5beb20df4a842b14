#include "trustrec/dataset.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "trustrec/error.hpp"

namespace trustrec {

RatingStore::RatingStore(std::size_t num_users, std::size_t num_items, std::vector<Rating> triples) {
  std::sort(triples.begin(), triples.end(), [](const Rating& a, const Rating& b) {
    return std::tie(a.user, a.item) < std::tie(b.user, b.item);
  });

  user_offsets_.assign(num_users + 1, 0);
  item_offsets_.assign(num_items + 1, 0);
  for (const Rating& r : triples) {
    if (r.user >= num_users || r.item >= num_items) throw UsageError("rating references an unknown handle");
    ++user_offsets_[r.user + 1];
    ++item_offsets_[r.item + 1];
  }
  std::partial_sum(user_offsets_.begin(), user_offsets_.end(), user_offsets_.begin());
  std::partial_sum(item_offsets_.begin(), item_offsets_.end(), item_offsets_.begin());

  user_items_.resize(triples.size());
  user_values_.resize(triples.size());
  item_users_.resize(triples.size());
  item_values_.resize(triples.size());

  // Filling the item view in user-major order leaves each item segment sorted by user.
  std::vector<std::size_t> cursor(item_offsets_.begin(), item_offsets_.end() - 1);
  for (std::size_t k = 0; k < triples.size(); ++k) {
    const Rating& r = triples[k];
    if (k > 0 && triples[k - 1].user == r.user && triples[k - 1].item == r.item) {
      throw UsageError("duplicate rating for one (user, item) pair");
    }
    user_items_[k] = r.item;
    user_values_[k] = r.value;
    const std::size_t slot = cursor[r.item]++;
    item_users_[slot] = r.user;
    item_values_[slot] = r.value;
  }

  means_.assign(num_users, 0.0);
  for (std::size_t u = 0; u < num_users; ++u) {
    const std::size_t b = user_offsets_[u], e = user_offsets_[u + 1];
    if (b == e) continue;
    double sum = 0.0;
    for (std::size_t k = b; k < e; ++k) sum += user_values_[k];
    means_[u] = sum / static_cast<double>(e - b);
  }
}

std::optional<double> RatingStore::rating(UserHandle u, ItemHandle i) const {
  const auto items = items_of(u);
  const auto it = std::lower_bound(items.begin(), items.end(), i.value);
  if (it == items.end() || *it != i.value) return std::nullopt;
  return ratings_of(u)[static_cast<std::size_t>(it - items.begin())];
}

std::vector<Rating> RatingStore::triples() const {
  std::vector<Rating> out;
  out.reserve(size());
  for (std::uint32_t u = 0; u < num_users(); ++u) {
    for (std::size_t k = user_offsets_[u]; k < user_offsets_[u + 1]; ++k) {
      out.push_back({u, user_items_[k], user_values_[k]});
    }
  }
  return out;
}

bool RatingStore::operator==(const RatingStore& other) const {
  // The item view and means are functions of the user view.
  return user_offsets_ == other.user_offsets_ && user_items_ == other.user_items_ &&
         user_values_ == other.user_values_ && num_items() == other.num_items();
}

namespace {

constexpr std::array<std::string_view, FeedbackRecord::kCounterCount> kCounterNames = {
    "eliteYears",   "more",        "thx",        "gw",            "fans",        "tipLikes",
    "reviewUseful", "reviewFunny", "reviewCool", "nhelpfulTotal", "reviewCount", "tipCount",
};

}  // namespace

std::string_view FeedbackRecord::name(Counter c) { return kCounterNames.at(c); }

std::optional<FeedbackRecord::Counter> FeedbackRecord::parse(std::string_view name) {
  for (std::size_t c = 0; c < kCounterNames.size(); ++c) {
    if (kCounterNames[c] == name) return static_cast<Counter>(c);
  }
  return std::nullopt;
}

ReviewFeedback::ReviewFeedback(std::size_t num_users, std::size_t num_items, std::vector<Entry> entries)
    : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const Entry& a, const Entry& b) { return std::tie(a.user, a.item) < std::tie(b.user, b.item); });
  user_offsets_.assign(num_users + 1, 0);
  item_max_.assign(num_items, 0);
  for (const Entry& e : entries_) {
    if (e.user >= num_users || e.item >= num_items) throw UsageError("review references an unknown handle");
    ++user_offsets_[e.user + 1];
    item_max_[e.item] = std::max(item_max_[e.item], e.counters.total());
  }
  std::partial_sum(user_offsets_.begin(), user_offsets_.end(), user_offsets_.begin());
}

const ReviewCounters* ReviewFeedback::find(UserHandle u, ItemHandle i) const {
  const auto rows = of(u);
  const auto it = std::lower_bound(rows.begin(), rows.end(), i.value,
                                   [](const Entry& e, std::uint32_t item) { return e.item < item; });
  if (it == rows.end() || it->item != i.value) return nullptr;
  return &it->counters;
}

ItemCategories::ItemCategories(std::vector<std::string> names, std::vector<std::vector<std::uint32_t>> per_item)
    : names_(std::move(names)), per_item_(std::move(per_item)) {
  for (auto& cats : per_item_) {
    std::sort(cats.begin(), cats.end());
    cats.erase(std::unique(cats.begin(), cats.end()), cats.end());
  }
}

std::string_view provenance_name(Provenance p) {
  switch (p) {
    case Provenance::Yelp:
      return "yelp";
    case Provenance::LibraryThing:
      return "librarything";
    case Provenance::Synthetic:
      return "synthetic";
  }
  return "synthetic";
}

std::optional<Provenance> parse_provenance(std::string_view s) {
  if (s == "yelp") return Provenance::Yelp;
  if (s == "librarything") return Provenance::LibraryThing;
  if (s == "synthetic") return Provenance::Synthetic;
  return std::nullopt;
}

namespace {

template <class Handle>
std::optional<Handle> find_sorted(std::span<const std::string> ids, std::string_view id) {
  const auto it = std::lower_bound(ids.begin(), ids.end(), id,
                                   [](const std::string& a, std::string_view b) { return a < b; });
  if (it == ids.end() || *it != id) return std::nullopt;
  return Handle{static_cast<std::uint32_t>(it - ids.begin())};
}

}  // namespace

std::optional<UserHandle> Dataset::find_user(std::string_view id) const {
  return find_sorted<UserHandle>(user_ids_, id);
}

std::optional<ItemHandle> Dataset::find_item(std::string_view id) const {
  return find_sorted<ItemHandle>(item_ids_, id);
}

std::uint32_t DatasetBuilder::intern(std::unordered_map<std::string, std::uint32_t>& index,
                                     std::vector<std::string>& names, std::string_view id) {
  auto [it, inserted] = index.try_emplace(std::string(id), static_cast<std::uint32_t>(names.size()));
  if (inserted) names.emplace_back(id);
  return it->second;
}

void DatasetBuilder::add_rating(std::string_view user, std::string_view item, double value, std::string timestamp) {
  const std::uint32_t u = intern(user_index_, user_names_, user);
  const std::uint32_t i = intern(item_index_, item_names_, item);
  ratings_.push_back({u, i, value, std::move(timestamp), seq_++});
}

void DatasetBuilder::add_review(std::string_view user, std::string_view item, double value,
                                const ReviewCounters& counters, std::string timestamp) {
  add_rating(user, item, value, std::move(timestamp));
  // Counters travel with the rating record so duplicate resolution keeps them paired.
  review_counters_.push_back({{ratings_.back().user, ratings_.back().item}, counters});
  review_seq_.push_back(ratings_.back().seq);
}

void DatasetBuilder::set_review_feedback(std::string_view user, std::string_view item,
                                         const ReviewCounters& counters) {
  const std::uint32_t u = intern(user_index_, user_names_, user);
  const std::uint32_t i = intern(item_index_, item_names_, item);
  review_counters_.push_back({{u, i}, counters});
  review_seq_.push_back(kDetachedReview);
}

void DatasetBuilder::add_friendship(std::string_view a, std::string_view b) {
  const auto ia = user_index_.find(std::string(a));
  const auto ib = user_index_.find(std::string(b));
  if (ia != user_index_.end() && ib != user_index_.end()) {
    friend_edges_.emplace_back(ia->second, ib->second);
  } else {
    pending_friend_names_.emplace_back(std::string(a), std::string(b));
  }
}

void DatasetBuilder::add_category(std::string_view item, std::string_view category) {
  const std::uint32_t i = intern(item_index_, item_names_, item);
  item_category_names_.emplace_back(i, std::string(category));
}

FeedbackRecord& DatasetBuilder::feedback(std::string_view user) {
  return feedback_[intern(user_index_, user_names_, user)];
}

namespace {

// Permutation placing names in lexicographic order: remap[old] = new.
std::vector<std::uint32_t> sorted_remap(std::vector<std::string>& names) {
  std::vector<std::uint32_t> order(names.size());
  std::iota(order.begin(), order.end(), 0U);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return names[a] < names[b]; });
  std::vector<std::uint32_t> remap(names.size());
  std::vector<std::string> sorted(names.size());
  for (std::uint32_t k = 0; k < order.size(); ++k) {
    remap[order[k]] = k;
    sorted[k] = std::move(names[order[k]]);
  }
  names = std::move(sorted);
  return remap;
}

}  // namespace

Dataset DatasetBuilder::build() {
  Dataset d;
  d.provenance_ = provenance_;

  for (const auto& [a, b] : pending_friend_names_) {
    const auto ia = user_index_.find(a);
    const auto ib = user_index_.find(b);
    if (ia != user_index_.end() && ib != user_index_.end()) friend_edges_.emplace_back(ia->second, ib->second);
  }
  pending_friend_names_.clear();

  const auto user_remap = sorted_remap(user_names_);
  const auto item_remap = sorted_remap(item_names_);
  const std::size_t nu = user_names_.size();
  const std::size_t ni = item_names_.size();

  // Duplicate resolution: greatest (timestamp, seq) per pair survives.
  for (auto& r : ratings_) {
    r.user = user_remap[r.user];
    r.item = item_remap[r.item];
  }
  std::sort(ratings_.begin(), ratings_.end(), [](const PendingRating& a, const PendingRating& b) {
    return std::tie(a.user, a.item, a.timestamp, a.seq) < std::tie(b.user, b.item, b.timestamp, b.seq);
  });
  std::vector<Rating> triples;
  std::vector<std::uint64_t> kept_seq;
  triples.reserve(ratings_.size());
  duplicates_ = 0;
  for (std::size_t k = 0; k < ratings_.size(); ++k) {
    const bool last_of_pair = k + 1 == ratings_.size() || ratings_[k + 1].user != ratings_[k].user ||
                              ratings_[k + 1].item != ratings_[k].item;
    if (!last_of_pair) {
      ++duplicates_;
      continue;
    }
    triples.push_back({ratings_[k].user, ratings_[k].item, ratings_[k].value});
    kept_seq.push_back(ratings_[k].seq);
  }
  d.ratings_ = RatingStore(nu, ni, triples);

  // Review counters: those attached to a surviving rating record, or detached
  // ones for a rated pair (last write wins).
  std::vector<std::uint64_t> surviving(kept_seq);
  std::sort(surviving.begin(), surviving.end());
  std::vector<ReviewFeedback::Entry> entries;
  for (std::size_t k = 0; k < review_counters_.size(); ++k) {
    const auto [pair, counters] = review_counters_[k];
    const std::uint64_t seq = review_seq_[k];
    if (seq != kDetachedReview && !std::binary_search(surviving.begin(), surviving.end(), seq)) continue;
    entries.push_back({user_remap[pair.first], item_remap[pair.second], counters});
  }
  // Keep the last entry per pair; stable sort preserves insertion order within a pair.
  std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return std::tie(a.user, a.item) < std::tie(b.user, b.item);
  });
  std::vector<ReviewFeedback::Entry> unique_entries;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const bool last = k + 1 == entries.size() || entries[k + 1].user != entries[k].user ||
                      entries[k + 1].item != entries[k].item;
    if (!last) continue;
    if (!d.ratings_.rating(UserHandle{entries[k].user}, ItemHandle{entries[k].item})) continue;
    unique_entries.push_back(entries[k]);
  }
  d.reviews_ = ReviewFeedback(nu, ni, std::move(unique_entries));

  for (auto& e : friend_edges_) e = {user_remap[e.first], user_remap[e.second]};
  d.social_ = SocialGraph(nu, friend_edges_);

  d.feedback_.assign(nu, FeedbackRecord{});
  for (const auto& [u, record] : feedback_) d.feedback_[user_remap[u]] = record;
  for (auto& record : d.feedback_) {
    record[FeedbackRecord::kReviewCount] = 0;
    record[FeedbackRecord::kReviewUseful] = 0;
    record[FeedbackRecord::kReviewFunny] = 0;
    record[FeedbackRecord::kReviewCool] = 0;
    record[FeedbackRecord::kNhelpfulTotal] = 0;
  }
  for (const auto& e : d.reviews_.entries()) {
    auto& record = d.feedback_[e.user];
    record[FeedbackRecord::kReviewCount] += 1;
    record[FeedbackRecord::kReviewUseful] += e.counters.useful;
    record[FeedbackRecord::kReviewFunny] += e.counters.funny;
    record[FeedbackRecord::kReviewCool] += e.counters.cool;
    record[FeedbackRecord::kNhelpfulTotal] += e.counters.nhelpful;
  }

  std::vector<std::string> category_names;
  for (const auto& [i, name] : item_category_names_) category_names.push_back(name);
  std::sort(category_names.begin(), category_names.end());
  category_names.erase(std::unique(category_names.begin(), category_names.end()), category_names.end());
  std::vector<std::vector<std::uint32_t>> per_item(ni);
  for (const auto& [i, name] : item_category_names_) {
    const auto it = std::lower_bound(category_names.begin(), category_names.end(), name);
    per_item[item_remap[i]].push_back(static_cast<std::uint32_t>(it - category_names.begin()));
  }
  d.categories_ = ItemCategories(std::move(category_names), std::move(per_item));

  d.user_ids_ = std::move(user_names_);
  d.item_ids_ = std::move(item_names_);

  const std::size_t duplicates = duplicates_;
  *this = DatasetBuilder(provenance_);
  duplicates_ = duplicates;
  return d;
}

}  // namespace trustrec
