#include "trustrec/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pyliteral.hpp"
#include "trustrec/error.hpp"

namespace trustrec {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::ifstream open_input(const fs::path& file) {
  if (!fs::is_regular_file(file)) throw MissingFile(file.string());
  std::ifstream in(file, std::ios::binary);
  if (!in) throw MissingFile(file.string());
  return in;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' || s.front() == '\n')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n')) {
    s.remove_suffix(1);
  }
  return s;
}

/// Calls fn(json, line_number) for every non-blank line of a JSON-lines file.
template <class Fn>
void for_each_json_line(const fs::path& file, Fn&& fn) {
  std::ifstream in = open_input(file);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (trim(line).empty()) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw MalformedRecord(file.string(), number, e.what());
    }
    if (!record.is_object()) throw MalformedRecord(file.string(), number, "record is not an object");
    try {
      fn(record, number);
    } catch (const json::exception& e) {
      throw MalformedRecord(file.string(), number, e.what());
    }
  }
}

std::string required_string(const json& record, const char* key, const fs::path& file, std::size_t line) {
  const auto it = record.find(key);
  if (it == record.end() || !it->is_string()) {
    throw MalformedRecord(file.string(), line, std::string("missing string field '") + key + "'");
  }
  return it->get<std::string>();
}

std::uint64_t count_field(const json& record, const char* key) {
  const auto it = record.find(key);
  if (it == record.end() || it->is_null()) return 0;
  if (it->is_number_integer()) {
    const auto v = it->get<std::int64_t>();
    return v < 0 ? 0 : static_cast<std::uint64_t>(v);
  }
  if (it->is_number()) {
    const double v = it->get<double>();
    return v < 0 ? 0 : static_cast<std::uint64_t>(v);
  }
  throw json::type_error::create(302, std::string("field '") + key + "' is not a number", &record);
}

/// Splits "a, b, c" style lists. "None" and "" give nothing.
std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  s = trim(s);
  if (s.empty() || s == "None") return out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t comma = s.find(',', start);
    const std::string_view part = trim(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start));
    if (!part.empty()) out.emplace_back(part);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

/// A Yelp list field that may be a comma-separated string or a JSON array.
std::vector<std::string> list_field(const json& record, const char* key) {
  const auto it = record.find(key);
  if (it == record.end() || it->is_null()) return {};
  if (it->is_string()) return split_list(it->get<std::string>());
  std::vector<std::string> out;
  if (it->is_array()) {
    for (const auto& v : *it) {
      if (v.is_string()) {
        out.push_back(v.get<std::string>());
      } else if (v.is_number()) {
        out.push_back(v.dump());
      }
    }
  }
  return out;
}

std::uint64_t first_present(const json& record, std::initializer_list<const char*> keys) {
  for (const char* k : keys) {
    if (record.contains(k)) return count_field(record, k);
  }
  return 0;
}

bool rating_in_scale(double v) { return v >= kMinRating && v <= kMaxRating; }

fs::path first_existing(const fs::path& dir, std::initializer_list<const char*> names) {
  for (const char* n : names) {
    if (fs::exists(dir / n)) return dir / n;
  }
  return dir / *names.begin();
}

}  // namespace

IngestResult ingest_yelp(const fs::path& business_file, const fs::path& review_file, const fs::path& user_file,
                         const fs::path& tip_file) {
  for (const auto* f : {&business_file, &review_file, &user_file, &tip_file}) {
    if (!fs::is_regular_file(*f)) throw MissingFile(f->string());
  }
  DatasetBuilder builder(Provenance::Yelp);
  IngestWarnings warnings;

  for_each_json_line(business_file, [&](const json& r, std::size_t line) {
    const std::string id = required_string(r, "business_id", business_file, line);
    builder.touch_item(id);
    for (const auto& category : list_field(r, "categories")) builder.add_category(id, category);
  });

  // Users are declared first so friend lists resolve on the second pass.
  for_each_json_line(user_file, [&](const json& r, std::size_t line) {
    builder.add_user(required_string(r, "user_id", user_file, line));
  });
  for_each_json_line(user_file, [&](const json& r, std::size_t line) {
    const std::string id = required_string(r, "user_id", user_file, line);
    FeedbackRecord& fb = builder.feedback(id);
    fb[FeedbackRecord::kEliteYears] = list_field(r, "elite").size();
    fb[FeedbackRecord::kFans] = count_field(r, "fans");
    fb[FeedbackRecord::kMore] = count_field(r, "compliment_more");
    fb[FeedbackRecord::kThx] = first_present(r, {"compliment_thx", "compliment_thanks", "compliment_plain"});
    fb[FeedbackRecord::kGw] = count_field(r, "compliment_writer");
    for (const auto& other : list_field(r, "friends")) builder.add_friendship(id, other);
  });

  for_each_json_line(review_file, [&](const json& r, std::size_t line) {
    const std::string user = required_string(r, "user_id", review_file, line);
    const std::string business = required_string(r, "business_id", review_file, line);
    const auto stars = r.find("stars");
    if (stars == r.end() || stars->is_null()) {
      ++warnings.unrated_reviews;
      return;
    }
    if (!stars->is_number()) throw MalformedRecord(review_file.string(), line, "stars is not a number");
    const double value = stars->get<double>();
    if (!rating_in_scale(value)) {
      ++warnings.out_of_scale_ratings;
      return;
    }
    ReviewCounters counters;
    counters.useful = count_field(r, "useful");
    counters.funny = count_field(r, "funny");
    counters.cool = count_field(r, "cool");
    std::string date = r.contains("date") && r["date"].is_string() ? r["date"].get<std::string>() : std::string();
    builder.add_user(user);
    builder.add_review(user, business, value, counters, std::move(date));
  });

  for_each_json_line(tip_file, [&](const json& r, std::size_t line) {
    const std::string user = required_string(r, "user_id", tip_file, line);
    FeedbackRecord& fb = builder.feedback(user);
    fb[FeedbackRecord::kTipCount] += 1;
    fb[FeedbackRecord::kTipLikes] += first_present(r, {"compliment_count", "likes"});
  });

  IngestResult result{builder.build(), warnings};
  result.warnings.duplicate_ratings = builder.duplicate_ratings();
  return result;
}

IngestResult ingest_yelp_dir(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw MissingFile(dir.string());
  return ingest_yelp(first_existing(dir, {"yelp_academic_dataset_business.json", "business.json"}),
                     first_existing(dir, {"yelp_academic_dataset_review.json", "review.json"}),
                     first_existing(dir, {"yelp_academic_dataset_user.json", "user.json"}),
                     first_existing(dir, {"yelp_academic_dataset_tip.json", "tip.json"}));
}

namespace {

std::string value_as_id(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  return {};
}

json parse_librarything_record(std::string_view line, const fs::path& file, std::size_t number) {
  const std::size_t open = line.find('{');
  const std::size_t close = line.rfind('}');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
    throw MalformedRecord(file.string(), number, "no dict literal on line");
  }
  try {
    return detail::parse_python_literal(line.substr(open, close - open + 1));
  } catch (const std::invalid_argument& e) {
    throw MalformedRecord(file.string(), number, e.what());
  }
}

}  // namespace

IngestResult ingest_librarything(const fs::path& review_file, const fs::path& friend_file) {
  if (!fs::is_regular_file(review_file)) throw MissingFile(review_file.string());
  if (!fs::is_regular_file(friend_file)) throw MissingFile(friend_file.string());
  DatasetBuilder builder(Provenance::LibraryThing);
  IngestWarnings warnings;

  {
    std::ifstream in = open_input(review_file);
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
      ++number;
      if (trim(line).empty()) continue;
      const json r = parse_librarything_record(line, review_file, number);
      if (!r.is_object()) throw MalformedRecord(review_file.string(), number, "record is not a dict");
      if (r.empty()) continue;
      const std::string user = r.contains("user") ? value_as_id(r["user"]) : std::string();
      const std::string work = r.contains("work") ? value_as_id(r["work"]) : std::string();
      if (user.empty() || work.empty()) {
        throw MalformedRecord(review_file.string(), number, "record lacks 'user' or 'work'");
      }
      builder.add_user(user);
      const auto stars = r.find("stars");
      if (stars == r.end() || stars->is_null()) {
        ++warnings.unrated_reviews;
        continue;
      }
      if (!stars->is_number()) throw MalformedRecord(review_file.string(), number, "stars is not a number");
      const double value = stars->get<double>();
      if (!rating_in_scale(value)) {
        ++warnings.out_of_scale_ratings;
        continue;
      }
      ReviewCounters counters;
      try {
        counters.nhelpful = count_field(r, "nhelpful");
      } catch (const json::exception& e) {
        throw MalformedRecord(review_file.string(), number, e.what());
      }
      std::string stamp;
      if (r.contains("unixtime") && r["unixtime"].is_number()) {
        std::ostringstream os;
        os << std::setw(20) << std::setfill('0') << r["unixtime"].get<std::int64_t>();
        stamp = os.str();
      }
      builder.add_review(user, work, value, counters, std::move(stamp));
    }
  }

  {
    std::ifstream in = open_input(friend_file);
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
      ++number;
      const std::string_view t = trim(line);
      if (t.empty() || t.front() == '#') continue;
      std::istringstream fields{std::string(t)};
      std::string a, b, extra;
      if (!(fields >> a >> b) || (fields >> extra)) {
        throw MalformedRecord(friend_file.string(), number, "expected two user ids");
      }
      builder.add_friendship(a, b);
    }
  }

  IngestResult result{builder.build(), warnings};
  result.warnings.duplicate_ratings = builder.duplicate_ratings();
  return result;
}

IngestResult ingest_librarything_dir(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw MissingFile(dir.string());
  return ingest_librarything(first_existing(dir, {"reviews.txt", "reviews.json"}),
                             first_existing(dir, {"edges.txt", "friends.txt"}));
}

Dataset apply_filters(const Dataset& d, std::size_t min_ratings, const std::optional<std::set<std::string>>& categories) {
  const std::size_t ni = d.num_items();
  const std::size_t nu = d.num_users();

  std::vector<bool> keep_item(ni, true);
  if (categories) {
    for (std::uint32_t i = 0; i < ni; ++i) {
      const auto cats = d.categories().of(ItemHandle{i});
      keep_item[i] = std::any_of(cats.begin(), cats.end(),
                                 [&](std::uint32_t c) { return categories->contains(d.categories().name(c)); });
    }
  }

  std::vector<bool> keep_user(nu, false);
  for (std::uint32_t u = 0; u < nu; ++u) {
    const auto items = d.ratings().items_of(UserHandle{u});
    const auto kept = static_cast<std::size_t>(
        std::count_if(items.begin(), items.end(), [&](std::uint32_t i) { return keep_item[i]; }));
    keep_user[u] = kept >= min_ratings;
  }

  DatasetBuilder builder(d.provenance());
  for (std::uint32_t i = 0; i < ni; ++i) {
    if (!keep_item[i]) continue;
    builder.touch_item(d.item_id(ItemHandle{i}));
    for (std::uint32_t c : d.categories().of(ItemHandle{i})) {
      builder.add_category(d.item_id(ItemHandle{i}), d.categories().name(c));
    }
  }
  for (std::uint32_t u = 0; u < nu; ++u) {
    if (!keep_user[u]) continue;
    const UserHandle uh{u};
    const std::string& uid = d.user_id(uh);
    builder.add_user(uid);
    builder.feedback(uid) = d.feedback(uh);
    const auto items = d.ratings().items_of(uh);
    const auto values = d.ratings().ratings_of(uh);
    for (std::size_t k = 0; k < items.size(); ++k) {
      if (!keep_item[items[k]]) continue;
      const ItemHandle ih{items[k]};
      if (const ReviewCounters* rc = d.reviews().find(uh, ih)) {
        builder.add_review(uid, d.item_id(ih), values[k], *rc);
      } else {
        builder.add_rating(uid, d.item_id(ih), values[k]);
      }
    }
  }
  for (const auto& [a, b] : d.social().edges()) {
    if (keep_user[a] && keep_user[b]) {
      builder.add_friendship(d.user_id(UserHandle{a}), d.user_id(UserHandle{b}));
    }
  }
  return builder.build();
}

std::set<std::string> load_category_closure(const fs::path& file) {
  std::ifstream in = open_input(file);
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    out.emplace(t);
  }
  return out;
}

}  // namespace trustrec
