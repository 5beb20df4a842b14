#include "trustrec/canonical_io.hpp"

#include <charconv>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "trustrec/error.hpp"

namespace trustrec {

namespace fs = std::filesystem;

namespace {

constexpr const char* kManifest = "manifest.txt";
constexpr const char* kRatings = "ratings.tsv";
constexpr const char* kFriends = "friends.tsv";
constexpr const char* kUserFeedback = "user_feedback.tsv";
constexpr const char* kReviewFeedback = "review_feedback.tsv";
constexpr const char* kItemCategories = "item_categories.tsv";

constexpr std::array<std::pair<std::string_view, std::uint64_t ReviewCounters::*>, 4> kReviewCounterFields = {{
    {"useful", &ReviewCounters::useful},
    {"funny", &ReviewCounters::funny},
    {"cool", &ReviewCounters::cool},
    {"nhelpful", &ReviewCounters::nhelpful},
}};

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void check_id(std::string_view id) {
  if (id.find_first_of("\t\n\r") != std::string_view::npos) {
    throw IoFailure("external id contains a tab or newline: cannot write canonical TSV");
  }
}

class Writer {
 public:
  explicit Writer(const fs::path& file) : path_(file), out_(file, std::ios::binary | std::ios::trunc) {
    if (!out_) throw IoFailure("cannot open " + file.string() + " for writing");
  }
  std::ofstream& stream() { return out_; }
  void close() {
    out_.close();
    if (!out_) throw IoFailure("failed writing " + path_.string());
  }

 private:
  fs::path path_;
  std::ofstream out_;
};

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    out.push_back(line.substr(start, tab == std::string_view::npos ? line.npos : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

/// Calls fn(fields, line_number) per non-empty line; missing file is IoFailure.
template <class Fn>
void for_each_row(const fs::path& file, std::size_t expected_fields, Fn&& fn) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoFailure("cannot read " + file.string());
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_tabs(line);
    if (fields.size() != expected_fields) {
      throw MalformedRecord(file.string(), number, "expected " + std::to_string(expected_fields) + " fields");
    }
    fn(fields, number);
  }
}

template <class T>
T parse_number(std::string_view s, const fs::path& file, std::size_t line) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw MalformedRecord(file.string(), line, "bad number '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

void canonical_save(const Dataset& d, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoFailure("cannot create " + dir.string() + ": " + ec.message());
  for (const auto& id : d.user_ids()) check_id(id);
  for (const auto& id : d.item_ids()) check_id(id);

  {
    Writer w(dir / kRatings);
    for (const Rating& r : d.ratings().triples()) {
      w.stream() << d.user_id(UserHandle{r.user}) << '\t' << d.item_id(ItemHandle{r.item}) << '\t'
                 << format_double(r.value) << '\n';
    }
    w.close();
  }
  {
    Writer w(dir / kFriends);
    for (const auto& [a, b] : d.social().edges()) {
      w.stream() << d.user_id(UserHandle{a}) << '\t' << d.user_id(UserHandle{b}) << '\n';
    }
    w.close();
  }
  {
    Writer w(dir / kUserFeedback);
    for (std::uint32_t u = 0; u < d.num_users(); ++u) {
      const FeedbackRecord& fb = d.feedback(UserHandle{u});
      for (std::size_t c = 0; c < FeedbackRecord::kCounterCount; ++c) {
        const auto counter = static_cast<FeedbackRecord::Counter>(c);
        w.stream() << d.user_id(UserHandle{u}) << '\t' << FeedbackRecord::name(counter) << '\t' << fb[counter]
                   << '\n';
      }
    }
    w.close();
  }
  {
    Writer w(dir / kReviewFeedback);
    for (const auto& e : d.reviews().entries()) {
      for (const auto& [name, field] : kReviewCounterFields) {
        w.stream() << d.user_id(UserHandle{e.user}) << '\t' << d.item_id(ItemHandle{e.item}) << '\t' << name << '\t'
                   << e.counters.*field << '\n';
      }
    }
    w.close();
  }
  {
    Writer w(dir / kItemCategories);
    for (std::uint32_t i = 0; i < d.num_items(); ++i) {
      const auto cats = d.categories().of(ItemHandle{i});
      if (cats.empty()) {
        w.stream() << d.item_id(ItemHandle{i}) << "\t\n";
        continue;
      }
      for (std::uint32_t c : cats) {
        check_id(d.categories().name(c));
        w.stream() << d.item_id(ItemHandle{i}) << '\t' << d.categories().name(c) << '\n';
      }
    }
    w.close();
  }
  {
    Writer w(dir / kManifest);
    w.stream() << "schema_version\t" << kCanonicalSchemaVersion << '\n'
               << "provenance\t" << provenance_name(d.provenance()) << '\n'
               << "users\t" << d.num_users() << '\n'
               << "items\t" << d.num_items() << '\n'
               << "ratings\t" << d.ratings().size() << '\n';
    w.close();
  }
}

Dataset canonical_load(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw IoFailure("not a directory: " + dir.string());
  for (const char* name : {kManifest, kRatings, kFriends, kUserFeedback, kReviewFeedback, kItemCategories}) {
    if (!fs::is_regular_file(dir / name)) throw IoFailure("missing " + (dir / name).string());
  }

  std::optional<Provenance> provenance;
  std::optional<int> version;
  for_each_row(dir / kManifest, 2, [&](const auto& f, std::size_t line) {
    if (f[0] == "schema_version") version = parse_number<int>(f[1], dir / kManifest, line);
    if (f[0] == "provenance") {
      provenance = parse_provenance(f[1]);
      if (!provenance) throw MalformedRecord((dir / kManifest).string(), line, "unknown provenance");
    }
  });
  if (!version) throw SchemaVersionMismatch("manifest lacks schema_version");
  if (*version != kCanonicalSchemaVersion) {
    throw SchemaVersionMismatch("schema version " + std::to_string(*version) + ", expected " +
                                std::to_string(kCanonicalSchemaVersion));
  }
  if (!provenance) throw MalformedRecord((dir / kManifest).string(), 0, "manifest lacks provenance");

  DatasetBuilder builder(*provenance);
  for_each_row(dir / kUserFeedback, 3, [&](const auto& f, std::size_t line) {
    const auto counter = FeedbackRecord::parse(f[1]);
    if (!counter) throw MalformedRecord((dir / kUserFeedback).string(), line, "unknown counter");
    builder.feedback(f[0])[*counter] = parse_number<std::uint64_t>(f[2], dir / kUserFeedback, line);
  });
  for_each_row(dir / kItemCategories, 2, [&](const auto& f, std::size_t) {
    if (f[1].empty()) {
      builder.touch_item(f[0]);
    } else {
      builder.add_category(f[0], f[1]);
    }
  });
  for_each_row(dir / kRatings, 3, [&](const auto& f, std::size_t line) {
    builder.add_rating(f[0], f[1], parse_number<double>(f[2], dir / kRatings, line));
  });
  {
    // Counters of one review arrive on consecutive lines.
    std::unordered_map<std::string, ReviewCounters> pending;
    for_each_row(dir / kReviewFeedback, 4, [&](const auto& f, std::size_t line) {
      std::string key = std::string(f[0]) + '\t' + std::string(f[1]);
      ReviewCounters& rc = pending[key];
      const auto value = parse_number<std::uint64_t>(f[3], dir / kReviewFeedback, line);
      bool known = false;
      for (const auto& [name, field] : kReviewCounterFields) {
        if (f[2] == name) {
          rc.*field = value;
          known = true;
        }
      }
      if (!known) throw MalformedRecord((dir / kReviewFeedback).string(), line, "unknown review counter");
    });
    for (const auto& [key, rc] : pending) {
      const std::size_t tab = key.find('\t');
      builder.set_review_feedback(std::string_view(key).substr(0, tab), std::string_view(key).substr(tab + 1), rc);
    }
  }
  for_each_row(dir / kFriends, 2, [&](const auto& f, std::size_t) { builder.add_friendship(f[0], f[1]); });
  return builder.build();
}

}  // namespace trustrec
