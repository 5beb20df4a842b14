#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "trustrec/dataset.hpp"

namespace trustrec {

/// Min / max / mean / median / mode of one indicator. `defined` is false
/// when the population is empty.
struct Summary {
  bool defined = false;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double median = 0.0;
  double mode = 0.0;
};

Summary summarize(std::vector<double> values);

struct StatsRow {
  std::string name;
  Summary summary;
};

struct StatsReport {
  std::string provenance;
  std::size_t users = 0;
  std::size_t items = 0;
  std::size_t rated_items = 0;
  std::size_t ratings = 0;
  /// Friendships counted in both directions, as in a users x users matrix.
  std::size_t friend_relations = 0;
  bool sparsity_defined = false;
  double rating_sparsity = 0.0;
  double friend_sparsity = 0.0;
  std::vector<StatsRow> rows;

  const StatsRow* find(const std::string& name) const;
};

StatsReport compute_stats(const Dataset& d);

void print_stats(const StatsReport& report, std::ostream& out);

}  // namespace trustrec
