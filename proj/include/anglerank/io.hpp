#pragma once

// File formats: CSV ranking ingestion (complete / subset / top-k) and the
// JSON model reports emitted by the CLI.

#include <Eigen/Dense>
#include <istream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "anglerank/incomplete.hpp"
#include "anglerank/mixture.hpp"
#include "anglerank/mle.hpp"
#include "anglerank/model.hpp"
#include "anglerank/rankings.hpp"
#include "anglerank/sir.hpp"
#include "anglerank/vi.hpp"

namespace anglerank {

using json = nlohmann::ordered_json;

enum class DatasetKind { kComplete, kSubset, kTopK };

struct RankingDataset {
  int t = 0;
  DatasetKind kind = DatasetKind::kComplete;
  std::vector<std::string> item_names;        // empty when the CSV has no header
  std::vector<Ranking> complete;              // kComplete rows
  std::vector<IncompleteRanking> partial;     // kSubset / kTopK rows

  std::size_t size() const {
    return kind == DatasetKind::kComplete ? complete.size() : partial.size();
  }
  Eigen::MatrixXd standardized() const;  // complete datasets only
};

// Rows are ranks per item (one column per item).  A leading row whose cells
// are not all numeric is taken as a header of item names.  Empty cells mark
// unranked items for subset data; `*` cells for top-k.  Errors carry the
// offending 1-based row number.
RankingDataset parse_csv(std::istream& in, DatasetKind kind);
RankingDataset parse_csv_file(const std::string& path, DatasetKind kind);

// Single-column text file of t reals.
Eigen::VectorXd load_column_vector(const std::string& path);

// Model reports: a tagged JSON document that round-trips losslessly.
struct ModelReport {
  std::string kind;   // mle | vi | sir | mixture | incomplete
  int t = 0;
  json params;        // kind-specific parameter block
  json diagnostics;   // iterations, seed, runtime, flags
};

json to_json(const ModelReport& report);
ModelReport report_from_json(const json& j);

ModelReport make_report(const MleFit& fit, int t);
ModelReport make_report(const VmfGammaPosterior& post);
ModelReport make_report(const PosteriorSample& post, int t);
ModelReport make_report(const MixturePosterior& post);
ModelReport make_report(const IncompleteFitResult& fit);

// Point (t, kappa, theta) extracted from any report kind, or from a plain
// {"t":., "kappa":., "theta":[..]} document.
AngleModel angle_model_from_json(const json& j);

// Rebuild typed posteriors from their reports.
VmfGammaPosterior vi_posterior_from_report(const ModelReport& report);
MixturePosterior mixture_posterior_from_report(const ModelReport& report);

}  // namespace anglerank
