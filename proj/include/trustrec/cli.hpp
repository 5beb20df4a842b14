#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trustrec/recommender.hpp"

namespace trustrec {

/// A configuration given by its parts instead of a catalogue name.
struct InlineConfig {
  std::string name;
  SimilarityMode similarity = SimilarityMode::Pearson;
  FacetWeights weights;
};

/// Flat key=value experiment description. Repeated keys build lists:
///
///   dataset=data/yelp
///   config=U2UCF
///   config=MTRTrust2
///   inline=MTR-zero|pearson|none|
///   beta=0.1
///   neighbors=50
///   k=10
///   folds=10
///   seed=1
///   tau=4
///   output=reports/yelp
///
/// Inline entries read name|similarity|relmode|facet:weight,...
/// Relative paths resolve against the spec file's directory.
struct ExperimentSpec {
  std::filesystem::path dataset;
  std::vector<std::string> config_names;
  std::vector<InlineConfig> inline_configs;
  std::vector<double> betas;
  std::size_t neighbors = 50;
  std::size_t k = 10;
  std::size_t folds = 10;
  std::uint64_t seed = 1;
  double tau = 4.0;
  std::filesystem::path output;
  std::size_t threads = 1;
  std::size_t min_pearson_overlap = 2;
};

/// Throws UsageError naming the offending line.
ExperimentSpec parse_experiment_spec(std::istream& in, const std::filesystem::path& base_dir = {},
                                     std::string_view source = "spec");
ExperimentSpec load_experiment_spec(const std::filesystem::path& file);

InlineConfig parse_inline_config(std::string_view text);

/// Every (configuration, beta) pair, configuration-major. Named
/// configurations come first in file order, then inline ones; the beta of
/// each row is the grid value, even where the configuration pins beta.
std::vector<InfluenceConfig> expand_configs(const ExperimentSpec& spec, const std::vector<double>& betas);

/// "a:b:step" or a comma-separated list; every value must lie in [0, 1].
std::vector<double> parse_beta_grid(std::string_view text);

struct IngestArgs {
  std::string source;
  std::filesystem::path in;
  std::filesystem::path out;
  std::size_t min_ratings = 20;
  std::optional<std::filesystem::path> category_closure;
};

struct EvalOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> threads;
  std::optional<double> tau;
  std::optional<std::filesystem::path> out;
};

struct SynthArgs {
  std::filesystem::path out;
  std::size_t users = 200;
  std::size_t items = 100;
  std::size_t ratings = 2000;
  double mean_friends = 6.0;
  std::uint64_t seed = 1;
};

/// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitInternal = 3;

int cmd_ingest(const IngestArgs& args, std::ostream& out, std::ostream& err);
int cmd_eval(const std::filesystem::path& spec, const EvalOverrides& overrides, std::ostream& out,
             std::ostream& err);
int cmd_sweep(const std::filesystem::path& spec, const std::vector<double>& grid, const EvalOverrides& overrides,
              std::ostream& out, std::ostream& err);
int cmd_stats(const std::filesystem::path& dir, std::ostream& out, std::ostream& err);
int cmd_synth(const SynthArgs& args, std::ostream& out, std::ostream& err);

}  // namespace trustrec
