#include "trustrec/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>

#include "trustrec/canonical_io.hpp"
#include "trustrec/error.hpp"
#include "trustrec/evaluation.hpp"
#include "trustrec/ingest.hpp"
#include "trustrec/stats.hpp"
#include "trustrec/synthetic.hpp"

namespace trustrec {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <class T>
T parse_value(std::string_view text, std::string_view what) {
  text = trim(text);
  T v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError("bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return v;
}

double parse_beta(std::string_view text) {
  const double b = parse_value<double>(text, "beta");
  if (!(b >= 0.0 && b <= 1.0)) throw UsageError("beta " + std::string(trim(text)) + " outside [0, 1]");
  return b;
}

std::size_t parse_positive(std::string_view text, std::string_view what) {
  const auto v = parse_value<std::size_t>(text, what);
  if (v == 0) throw UsageError(std::string(what) + " must be positive");
  return v;
}

fs::path resolve(const fs::path& base, std::string_view value) {
  fs::path p{std::string(value)};
  if (p.is_relative() && !base.empty()) p = base / p;
  return p;
}

fs::path normalized_dir(fs::path p) {
  p = p.lexically_normal();
  if (!p.empty() && p.filename().empty()) p = p.parent_path();
  return p;
}

/// Fills a sibling staging directory, then moves it over `target`.
void write_staged(const fs::path& target_in, const std::function<void(const fs::path&)>& fill) {
  const fs::path target = normalized_dir(target_in);
  if (target.empty()) throw UsageError("empty output path");
  const fs::path staging = target.parent_path() / ("." + target.filename().string() + ".staging");
  std::error_code ec;
  fs::remove_all(staging, ec);
  fs::create_directories(staging, ec);
  if (ec) throw IoFailure("cannot create " + staging.string() + ": " + ec.message());
  try {
    fill(staging);
  } catch (...) {
    fs::remove_all(staging, ec);
    throw;
  }
  fs::remove_all(target, ec);
  if (ec) throw IoFailure("cannot replace " + target.string() + ": " + ec.message());
  fs::rename(staging, target, ec);
  if (ec) throw IoFailure("cannot move output into " + target.string() + ": " + ec.message());
}

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

std::string file_safe(std::string_view name) {
  std::string out(name);
  for (char& c : out) {
    const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' ||
                    c == '_';
    if (!ok) c = '_';
  }
  return out;
}

void write_file(const fs::path& file, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot open " + file.string() + " for writing");
  body(out);
  out.close();
  if (!out) throw IoFailure("failed writing " + file.string());
}

struct Prepared {
  ExperimentSpec spec;
  Dataset dataset;
  std::vector<InfluenceConfig> configs;
  std::vector<double> betas;
  fs::path output;
};

Prepared prepare(const fs::path& spec_file, const std::vector<double>& grid, const EvalOverrides& o) {
  Prepared p{load_experiment_spec(spec_file), {}, {}, {}, {}};
  if (o.seed) p.spec.seed = *o.seed;
  if (o.threads) p.spec.threads = *o.threads;
  if (o.tau) p.spec.tau = *o.tau;
  if (o.out) p.spec.output = *o.out;
  if (p.spec.dataset.empty()) throw UsageError("spec lacks dataset=");
  if (p.spec.output.empty()) throw UsageError("spec lacks output= and no --out was given");
  p.betas = grid.empty() ? p.spec.betas : grid;
  if (p.betas.empty()) p.betas = {0.1};
  p.configs = expand_configs(p.spec, p.betas);
  p.dataset = canonical_load(p.spec.dataset);
  p.output = p.spec.output;
  return p;
}

EvaluationReport evaluate(const Prepared& p) {
  const FoldPlan plan = split_folds(p.dataset, p.spec.folds, p.spec.seed);
  EvaluationReport report =
      run_experiment(p.dataset, p.configs, plan, p.spec.k, p.spec.tau, RunOptions{p.spec.threads});
  for (std::size_t r = 0; r < report.rows.size(); ++r) report.rows[r].grid_beta = p.betas[r % p.betas.size()];
  return report;
}

void write_reports(const EvaluationReport& report, const fs::path& dir) {
  write_file(dir / "report.tsv", [&](std::ostream& out) { write_report_tsv(report, out); });
  write_file(dir / "summary.json", [&](std::ostream& out) { write_report_json(report, out); });
}

}  // namespace

InlineConfig parse_inline_config(std::string_view text) {
  const auto parts = split(text, '|');
  if (parts.size() != 4) throw UsageError("inline config needs name|similarity|relmode|weights: " + std::string(text));
  InlineConfig c;
  c.name = std::string(trim(parts[0]));
  if (c.name.empty()) throw UsageError("inline config without a name");
  const auto sim = parse_similarity_mode(trim(parts[1]));
  if (!sim) throw UsageError("unknown similarity '" + std::string(trim(parts[1])) + "'");
  c.similarity = *sim;
  const auto rel = parse_rel_mode(trim(parts[2]));
  if (!rel) throw UsageError("unknown rel mode '" + std::string(trim(parts[2])) + "'");
  c.weights.rel_mode = *rel;
  const std::string_view weights = trim(parts[3]);
  if (!weights.empty()) {
    for (std::string_view entry : split(weights, ',')) {
      entry = trim(entry);
      const auto colon = entry.find(':');
      const auto facet = parse_facet(trim(entry.substr(0, colon)));
      if (!facet) throw UsageError("unknown facet '" + std::string(entry.substr(0, colon)) + "'");
      const double w = colon == std::string_view::npos ? 1.0 : parse_value<double>(entry.substr(colon + 1), "weight");
      c.weights.weights[static_cast<std::size_t>(*facet)] = w;
    }
  }
  c.weights.validate();
  return c;
}

ExperimentSpec parse_experiment_spec(std::istream& in, const fs::path& base_dir, std::string_view source) {
  ExperimentSpec spec;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string_view text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    const std::string where = std::string(source) + ":" + std::to_string(number) + ": ";
    if (eq == std::string_view::npos) throw UsageError(where + "expected key=value");
    const std::string key(trim(text.substr(0, eq)));
    const std::string_view value = trim(text.substr(eq + 1));
    try {
      if (key == "dataset") {
        spec.dataset = resolve(base_dir, value);
      } else if (key == "config") {
        spec.config_names.emplace_back(value);
      } else if (key == "inline") {
        spec.inline_configs.push_back(parse_inline_config(value));
      } else if (key == "beta") {
        for (double b : parse_beta_grid(value)) spec.betas.push_back(b);
      } else if (key == "neighbors") {
        spec.neighbors = parse_positive(value, key);
      } else if (key == "k") {
        spec.k = parse_positive(value, key);
      } else if (key == "folds") {
        spec.folds = parse_positive(value, key);
        if (spec.folds < 2) throw UsageError("folds must be at least 2");
      } else if (key == "seed") {
        spec.seed = parse_value<std::uint64_t>(value, key);
      } else if (key == "tau") {
        spec.tau = parse_value<double>(value, key);
      } else if (key == "output") {
        spec.output = resolve(base_dir, value);
      } else if (key == "threads") {
        spec.threads = parse_value<std::size_t>(value, key);
      } else if (key == "min_pearson_overlap") {
        spec.min_pearson_overlap = parse_positive(value, key);
      } else {
        throw UsageError("unknown key '" + key + "'");
      }
    } catch (const UsageError& e) {
      throw UsageError(where + e.what());
    }
  }
  if (spec.config_names.empty() && spec.inline_configs.empty()) {
    throw UsageError(std::string(source) + ": no config= or inline= entries");
  }
  return spec;
}

ExperimentSpec load_experiment_spec(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw UsageError("cannot read spec file " + file.string());
  return parse_experiment_spec(in, file.parent_path(), file.string());
}

std::vector<InfluenceConfig> expand_configs(const ExperimentSpec& spec, const std::vector<double>& betas) {
  if (betas.empty()) throw UsageError("empty beta grid");
  std::vector<InfluenceConfig> out;
  for (const auto& name : spec.config_names) {
    for (double b : betas) {
      InfluenceConfig c = make_config(name, b, spec.neighbors);
      c.min_pearson_overlap = spec.min_pearson_overlap;
      out.push_back(std::move(c));
    }
  }
  for (const auto& ic : spec.inline_configs) {
    for (double b : betas) {
      InfluenceConfig c;
      c.name = ic.name;
      c.similarity = ic.similarity;
      c.weights = ic.weights;
      c.beta = b;
      c.neighbor_count = spec.neighbors;
      c.min_pearson_overlap = spec.min_pearson_overlap;
      c.validate();
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::vector<double> parse_beta_grid(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw UsageError("empty beta grid");
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw UsageError("beta range needs start:stop:step");
    const double start = parse_beta(parts[0]);
    const double stop = parse_beta(parts[1]);
    const double step = parse_value<double>(parts[2], "beta step");
    if (!(step > 0.0) || stop < start) throw UsageError("beta range needs start <= stop and a positive step");
    const auto steps = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
    for (std::size_t s = 0; s <= steps; ++s) {
      // Rounded so that 0:1:0.1 yields 0.3 rather than 0.30000000000000004.
      const double b = std::round((start + static_cast<double>(s) * step) * 1e9) / 1e9;
      out.push_back(std::min(b, 1.0));
    }
    return out;
  }
  for (std::string_view part : split(text, ',')) out.push_back(parse_beta(part));
  return out;
}

int cmd_ingest(const IngestArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (args.out.empty()) throw UsageError("--out is required");
    if (!fs::is_directory(args.in)) throw MissingFile(args.in.string());
    IngestResult raw;
    if (args.source == "yelp") {
      raw = ingest_yelp_dir(args.in);
    } else if (args.source == "librarything") {
      raw = ingest_librarything_dir(args.in);
    } else {
      throw UsageError("unknown --source '" + args.source + "' (expected yelp or librarything)");
    }
    std::optional<std::set<std::string>> closure;
    if (args.category_closure) closure = load_category_closure(*args.category_closure);
    const Dataset filtered = apply_filters(raw.dataset, args.min_ratings, closure);
    if (raw.warnings.duplicate_ratings > 0) {
      err << "warning: dropped " << raw.warnings.duplicate_ratings << " duplicate ratings (latest kept)\n";
    }
    if (raw.warnings.unrated_reviews > 0) {
      err << "warning: " << raw.warnings.unrated_reviews << " reviews without a rating\n";
    }
    if (raw.warnings.out_of_scale_ratings > 0) {
      err << "warning: dropped " << raw.warnings.out_of_scale_ratings << " ratings outside [1, 5]\n";
    }
    write_staged(args.out, [&](const fs::path& dir) { canonical_save(filtered, dir); });
    print_stats(compute_stats(filtered), out);
    return kExitOk;
  });
}

int cmd_eval(const fs::path& spec, const EvalOverrides& overrides, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Prepared p = prepare(spec, {}, overrides);
    const EvaluationReport report = evaluate(p);
    write_staged(p.output, [&](const fs::path& dir) { write_reports(report, dir); });
    write_report_tsv(report, out);
    return kExitOk;
  });
}

int cmd_sweep(const fs::path& spec, const std::vector<double>& grid, const EvalOverrides& overrides,
              std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (grid.empty()) throw UsageError("--beta-grid must not be empty");
    for (double b : grid) {
      if (!(b >= 0.0 && b <= 1.0)) throw UsageError("beta grid value outside [0, 1]");
    }
    const Prepared p = prepare(spec, grid, overrides);
    const EvaluationReport report = evaluate(p);
    write_staged(p.output, [&](const fs::path& dir) {
      write_reports(report, dir);
      std::map<std::string, std::vector<const ReportRow*>> by_config;
      std::vector<std::string> order;
      for (const auto& row : report.rows) {
        auto& rows = by_config[row.config.name];
        if (rows.empty()) order.push_back(row.config.name);
        rows.push_back(&row);
      }
      for (const auto& name : order) {
        write_file(dir / ("beta_rmse_" + file_safe(name) + ".tsv"), [&](std::ostream& f) {
          f << "beta\trmse\n";
          for (const ReportRow* row : by_config[name]) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.2f\t%.6f\n", row->grid_beta, row->metrics.rmse);
            f << buf;
          }
        });
      }
    });
    write_report_tsv(report, out);
    return kExitOk;
  });
}

int cmd_stats(const fs::path& dir, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    print_stats(compute_stats(canonical_load(dir)), out);
    return kExitOk;
  });
}

int cmd_synth(const SynthArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (args.out.empty()) throw UsageError("--out is required");
    SyntheticParams params;
    params.users = args.users;
    params.items = args.items;
    params.ratings = args.ratings;
    params.mean_friends = args.mean_friends;
    params.seed = args.seed;
    const Dataset d = make_synthetic(params);
    write_staged(args.out, [&](const fs::path& dir) { canonical_save(d, dir); });
    print_stats(compute_stats(d), out);
    return kExitOk;
  });
}

}  // namespace trustrec
