#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <string>

#include "trustrec/dataset.hpp"

namespace trustrec {

/// Records dropped or repaired during ingestion.
struct IngestWarnings {
  std::size_t duplicate_ratings = 0;     // same (user, item) twice; latest kept
  std::size_t unrated_reviews = 0;       // reviews without a rating
  std::size_t out_of_scale_ratings = 0;  // ratings outside [1, 5]
};

struct IngestResult {
  Dataset dataset;
  IngestWarnings warnings;
};

/// Line-delimited JSON files of the public Yelp dataset.
IngestResult ingest_yelp(const std::filesystem::path& business_file, const std::filesystem::path& review_file,
                         const std::filesystem::path& user_file, const std::filesystem::path& tip_file);

/// Locates the four Yelp files in dir, accepting both the
/// yelp_academic_dataset_<kind>.json and <kind>.json names.
IngestResult ingest_yelp_dir(const std::filesystem::path& dir);

/// LibraryThing reviews (one Python/JSON dict literal per line, optionally
/// prefixed by "reviews[...] = ") and whitespace-separated friend edges.
IngestResult ingest_librarything(const std::filesystem::path& review_file, const std::filesystem::path& friend_file);

/// Expects reviews.txt and edges.txt in dir.
IngestResult ingest_librarything_dir(const std::filesystem::path& dir);

/// Keeps items tagged with any category in `categories` (when given), then
/// users with at least min_ratings ratings on the kept items. Friendships and
/// reviews follow the surviving users and items.
Dataset apply_filters(const Dataset& d, std::size_t min_ratings,
                      const std::optional<std::set<std::string>>& categories = std::nullopt);

/// One category per line; blank lines and lines starting with '#' are ignored.
std::set<std::string> load_category_closure(const std::filesystem::path& file);

}  // namespace trustrec
