#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <memory>
#include <sstream>

#include "trustrec/canonical_io.hpp"
#include "trustrec/error.hpp"
#include "trustrec/evaluation.hpp"
#include "trustrec/ingest.hpp"
#include "trustrec/recommender.hpp"
#include "trustrec/stats.hpp"
#include "trustrec/synthetic.hpp"
#include "trustrec/trust.hpp"

namespace py = pybind11;
using namespace trustrec;

namespace {

/// A configuration bound to a dataset, trained on all of its ratings or on a
/// subset given by rating index.
class Model {
 public:
  Model(std::shared_ptr<const Dataset> d, const InfluenceConfig& c, const std::vector<std::size_t>* keep)
      : dataset_(std::move(d)) {
    std::vector<Rating> triples = dataset_->ratings().triples();
    if (keep) {
      std::vector<Rating> subset;
      subset.reserve(keep->size());
      for (std::size_t k : *keep) {
        if (k >= triples.size()) throw UsageError("rating index out of range");
        subset.push_back(triples[k]);
      }
      triples = std::move(subset);
    }
    auto train = std::make_shared<const RatingStore>(dataset_->num_users(), dataset_->num_items(), std::move(triples));
    auto profiles = std::make_shared<const TrustProfiles>(build_profiles(*dataset_));
    auto graph = std::make_shared<const SocialGraph>(dataset_->social());
    model_ = std::make_unique<TrainedModel>(train, profiles, graph, c);
  }

  py::tuple predict(const std::string& user, const std::string& item) const {
    const Prediction p = trustrec::predict(*model_, user_handle(user), item_handle(item));
    return py::make_tuple(p.value, p.kind == PredictionKind::Model);
  }

  std::vector<std::pair<std::string, double>> neighbors(const std::string& user, const std::string& item) const {
    std::vector<std::pair<std::string, double>> out;
    for (const Neighbor& n : select_neighbors(*model_, user_handle(user), item_handle(item))) {
      out.emplace_back(dataset_->user_id(n.user), n.influence);
    }
    return out;
  }

  double influence(const std::string& u, const std::string& v, const std::string& item) const {
    return trustrec::influence(*model_, user_handle(u), user_handle(v), item_handle(item));
  }

  std::vector<py::tuple> top_k(const std::string& user, const std::vector<std::string>& candidates,
                               std::size_t k) const {
    std::vector<ItemHandle> items;
    for (const auto& c : candidates) items.push_back(item_handle(c));
    std::vector<py::tuple> out;
    for (const auto& e : trustrec::top_k(*model_, user_handle(user), items, k).entries) {
      out.push_back(py::make_tuple(dataset_->item_id(e.item), e.predicted, e.kind == PredictionKind::Model));
    }
    return out;
  }

  const InfluenceConfig& config() const { return model_->config(); }

 private:
  UserHandle user_handle(const std::string& id) const {
    const auto u = dataset_->find_user(id);
    if (!u) throw UnknownUser("unknown user '" + id + "'");
    return *u;
  }
  ItemHandle item_handle(const std::string& id) const {
    const auto i = dataset_->find_item(id);
    if (!i) throw UsageError("unknown item '" + id + "'");
    return *i;
  }

  std::shared_ptr<const Dataset> dataset_;
  std::unique_ptr<TrainedModel> model_;
};

py::dict stats_dict(const StatsReport& s) {
  py::dict out;
  out["provenance"] = s.provenance;
  out["users"] = s.users;
  out["items"] = s.items;
  out["rated_items"] = s.rated_items;
  out["ratings"] = s.ratings;
  out["friend_relations"] = s.friend_relations;
  out["rating_sparsity"] = s.sparsity_defined ? py::cast(s.rating_sparsity) : py::none();
  out["friend_sparsity"] = s.sparsity_defined ? py::cast(s.friend_sparsity) : py::none();
  py::dict rows;
  for (const auto& r : s.rows) {
    if (!r.summary.defined) {
      rows[py::str(r.name)] = py::none();
      continue;
    }
    py::dict d;
    d["min"] = r.summary.min;
    d["max"] = r.summary.max;
    d["mean"] = r.summary.mean;
    d["median"] = r.summary.median;
    d["mode"] = r.summary.mode;
    rows[py::str(r.name)] = d;
  }
  out["indicators"] = rows;
  return out;
}

py::dict warnings_dict(const IngestWarnings& w) {
  py::dict out;
  out["duplicate_ratings"] = w.duplicate_ratings;
  out["unrated_reviews"] = w.unrated_reviews;
  out["out_of_scale_ratings"] = w.out_of_scale_ratings;
  return out;
}

using DatasetPtr = std::shared_ptr<Dataset>;

DatasetPtr share(Dataset d) { return std::make_shared<Dataset>(std::move(d)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Trust-aware user-based collaborative filtering";

  static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
  static py::exception<DataError> data_error(m, "DataError", error.ptr());
  static py::exception<UsageError> usage_error(m, "UsageError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const UsageError& e) {
      py::set_error(usage_error, e.what());
    } catch (const DataError& e) {
      py::set_error(data_error, e.what());
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<Dataset, DatasetPtr>(m, "Dataset")
      .def_property_readonly("provenance", [](const Dataset& d) { return std::string(provenance_name(d.provenance())); })
      .def_property_readonly("num_users", &Dataset::num_users)
      .def_property_readonly("num_items", &Dataset::num_items)
      .def_property_readonly("num_ratings", [](const Dataset& d) { return d.ratings().size(); })
      .def("user_ids", [](const Dataset& d) { return std::vector<std::string>(d.user_ids().begin(), d.user_ids().end()); })
      .def("item_ids", [](const Dataset& d) { return std::vector<std::string>(d.item_ids().begin(), d.item_ids().end()); })
      .def("ratings",
           [](const Dataset& d) {
             std::vector<std::tuple<std::string, std::string, double>> out;
             for (const Rating& r : d.ratings().triples()) {
               out.emplace_back(d.user_id(UserHandle{r.user}), d.item_id(ItemHandle{r.item}), r.value);
             }
             return out;
           },
           "(user, item, rating) triples in rating-index order")
      .def("friends",
           [](const Dataset& d, const std::string& user) {
             const auto u = d.find_user(user);
             if (!u) throw UnknownUser("unknown user '" + user + "'");
             std::vector<std::string> out;
             for (std::uint32_t v : d.social().friends(*u)) out.push_back(d.user_id(UserHandle{v}));
             return out;
           })
      .def("__eq__", [](const Dataset& a, const Dataset& b) { return a == b; })
      .def("__repr__", [](const Dataset& d) {
        std::ostringstream os;
        os << "<Dataset " << provenance_name(d.provenance()) << " users=" << d.num_users()
           << " items=" << d.num_items() << " ratings=" << d.ratings().size() << ">";
        return os.str();
      });

  m.def("load_canonical", [](const std::filesystem::path& dir) { return share(canonical_load(dir)); }, py::arg("dir"));
  m.def("save_canonical", [](const Dataset& d, const std::filesystem::path& dir) { canonical_save(d, dir); },
        py::arg("dataset"), py::arg("dir"));

  m.def("ingest_yelp",
        [](const std::filesystem::path& dir) {
          IngestResult r = ingest_yelp_dir(dir);
          return py::make_tuple(share(std::move(r.dataset)), warnings_dict(r.warnings));
        },
        py::arg("dir"), "Returns (dataset, warnings).");
  m.def("ingest_librarything",
        [](const std::filesystem::path& dir) {
          IngestResult r = ingest_librarything_dir(dir);
          return py::make_tuple(share(std::move(r.dataset)), warnings_dict(r.warnings));
        },
        py::arg("dir"), "Returns (dataset, warnings).");
  m.def("apply_filters",
        [](const Dataset& d, std::size_t min_ratings, std::optional<std::set<std::string>> categories) {
          return share(trustrec::apply_filters(d, min_ratings, categories));
        },
        py::arg("dataset"), py::arg("min_ratings") = 20, py::arg("categories") = py::none());
  m.def("load_category_closure", &load_category_closure, py::arg("file"));

  m.def("make_synthetic",
        [](std::size_t users, std::size_t items, std::size_t ratings, double mean_friends, std::uint64_t seed) {
          SyntheticParams p;
          p.users = users;
          p.items = items;
          p.ratings = ratings;
          p.mean_friends = mean_friends;
          p.seed = seed;
          return share(trustrec::make_synthetic(p));
        },
        py::arg("users") = 200, py::arg("items") = 100, py::arg("ratings") = 2000, py::arg("mean_friends") = 6.0,
        py::arg("seed") = 1);

  m.def("stats", [](const Dataset& d) { return stats_dict(compute_stats(d)); }, py::arg("dataset"));

  py::class_<InfluenceConfig>(m, "Config")
      .def_readonly("name", &InfluenceConfig::name)
      .def_readonly("beta", &InfluenceConfig::beta)
      .def_readonly("neighbor_count", &InfluenceConfig::neighbor_count)
      .def_readonly("min_pearson_overlap", &InfluenceConfig::min_pearson_overlap)
      .def_property_readonly("similarity",
                             [](const InfluenceConfig& c) { return std::string(similarity_mode_name(c.similarity)); })
      .def_property_readonly("rel_mode",
                             [](const InfluenceConfig& c) { return std::string(rel_mode_name(c.weights.rel_mode)); })
      .def_property_readonly("weights",
                             [](const InfluenceConfig& c) {
                               py::dict out;
                               for (Facet f : kAllFacets) {
                                 if (c.weights[f] > 0) out[py::str(std::string(facet_name(f)))] = c.weights[f];
                               }
                               return out;
                             })
      .def("__repr__", [](const InfluenceConfig& c) {
        std::ostringstream os;
        os << "<Config " << c.name << " beta=" << c.beta << " n=" << c.neighbor_count << ">";
        return os.str();
      });

  m.def("configuration_names", [] {
    std::vector<std::string> out;
    for (auto n : configuration_names()) out.emplace_back(n);
    return out;
  });
  m.def("make_config", &make_config, py::arg("name"), py::arg("beta") = 0.1, py::arg("neighbors") = 50);
  m.def("custom_config",
        [](const std::string& name, const std::string& similarity, const std::map<std::string, double>& weights,
           const std::string& rel_mode, double beta, std::size_t neighbors, std::size_t min_overlap) {
          InfluenceConfig c;
          c.name = name;
          const auto sim = parse_similarity_mode(similarity);
          if (!sim) throw UsageError("unknown similarity '" + similarity + "'");
          c.similarity = *sim;
          const auto rel = parse_rel_mode(rel_mode);
          if (!rel) throw UsageError("unknown rel mode '" + rel_mode + "'");
          c.weights.rel_mode = *rel;
          for (const auto& [facet, w] : weights) {
            const auto f = parse_facet(facet);
            if (!f) throw UsageError("unknown facet '" + facet + "'");
            c.weights[*f] = w;
          }
          c.beta = beta;
          c.neighbor_count = neighbors;
          c.min_pearson_overlap = min_overlap;
          c.validate();
          return c;
        },
        py::arg("name"), py::arg("similarity") = "pearson", py::arg("weights") = std::map<std::string, double>{},
        py::arg("rel_mode") = "none", py::arg("beta") = 0.1, py::arg("neighbors") = 50, py::arg("min_overlap") = 2);

  py::class_<Model>(m, "Model")
      .def(py::init([](DatasetPtr d, const InfluenceConfig& c, std::optional<std::vector<std::size_t>> train) {
             return std::make_unique<Model>(std::move(d), c, train ? &*train : nullptr);
           }),
           py::arg("dataset"), py::arg("config"), py::arg("train") = py::none(),
           "train: rating indices to train on; all ratings when omitted.")
      .def_property_readonly("config", &Model::config)
      .def("predict", &Model::predict, py::arg("user"), py::arg("item"), "Returns (value, is_model_prediction).")
      .def("neighbors", &Model::neighbors, py::arg("user"), py::arg("item"))
      .def("influence", &Model::influence, py::arg("u"), py::arg("v"), py::arg("item"))
      .def("top_k", &Model::top_k, py::arg("user"), py::arg("candidates"), py::arg("k") = 10);

  m.def("split_folds",
        [](std::size_t n, std::size_t folds, std::uint64_t seed) { return split_folds(n, folds, seed).assignment; },
        py::arg("num_ratings"), py::arg("folds") = 10, py::arg("seed") = 1);

  m.def("run_experiment",
        [](const Dataset& d, const std::vector<InfluenceConfig>& configs, std::size_t folds, std::uint64_t seed,
           std::size_t k, double tau, std::size_t threads) {
          EvaluationReport report;
          {
            py::gil_scoped_release release;
            const FoldPlan plan = split_folds(d, folds, seed);
            report = trustrec::run_experiment(d, configs, plan, k, tau, RunOptions{threads});
            for (auto& row : report.rows) row.grid_beta = row.config.beta;
          }
          std::ostringstream json, tsv;
          write_report_json(report, json);
          write_report_tsv(report, tsv);
          return py::make_tuple(json.str(), tsv.str());
        },
        py::arg("dataset"), py::arg("configs"), py::arg("folds") = 10, py::arg("seed") = 1, py::arg("k") = 10,
        py::arg("tau") = 4.0, py::arg("threads") = 1, "Returns (summary_json, report_tsv) strings.");
}
