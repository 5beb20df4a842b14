#pragma once

#include <filesystem>

#include "trustrec/dataset.hpp"

namespace trustrec {

inline constexpr int kCanonicalSchemaVersion = 1;

/// Writes ratings.tsv, friends.tsv, user_feedback.tsv, review_feedback.tsv,
/// item_categories.tsv and manifest.txt. Output is byte-deterministic.
void canonical_save(const Dataset& d, const std::filesystem::path& dir);

Dataset canonical_load(const std::filesystem::path& dir);

}  // namespace trustrec
