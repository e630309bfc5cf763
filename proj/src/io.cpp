#include "anglerank/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace anglerank {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  cells.push_back(trim(cur));
  return cells;
}

bool parse_int(const std::string& s, int& out) {
  const auto* begin = s.data();
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

bool looks_numeric_or_missing(const std::string& cell) {
  if (cell.empty() || cell == "*") return true;
  int v;
  return parse_int(cell, v);
}

std::vector<double> to_double_vector(const Eigen::VectorXd& v) {
  return {v.data(), v.data() + v.size()};
}

Eigen::VectorXd to_eigen(const json& arr) {
  Eigen::VectorXd v(arr.size());
  for (size_t i = 0; i < arr.size(); ++i) v[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
  return v;
}

}  // namespace

Eigen::MatrixXd RankingDataset::standardized() const {
  if (kind != DatasetKind::kComplete)
    throw std::logic_error("RankingDataset: standardized() needs complete rankings");
  return standardize_all(complete);
}

RankingDataset parse_csv(std::istream& in, DatasetKind kind) {
  RankingDataset ds;
  ds.kind = kind;
  std::string line;
  int row = 0;
  bool header_checked = false;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    std::vector<std::string> cells = split_csv_line(line);
    if (!header_checked) {
      header_checked = true;
      bool all_numeric = true;
      for (const auto& c : cells) all_numeric = all_numeric && looks_numeric_or_missing(c);
      if (!all_numeric) {
        ds.item_names = cells;
        ds.t = static_cast<int>(cells.size());
        continue;
      }
    }
    if (ds.t == 0) ds.t = static_cast<int>(cells.size());
    if (static_cast<int>(cells.size()) != ds.t)
      throw std::runtime_error("row " + std::to_string(row) + ": expected " +
                               std::to_string(ds.t) + " columns, got " +
                               std::to_string(cells.size()));
    std::vector<std::optional<int>> entries;
    entries.reserve(cells.size());
    for (size_t col = 0; col < cells.size(); ++col) {
      const std::string& c = cells[col];
      if (c.empty() || c == "*") {
        if (kind == DatasetKind::kComplete)
          throw std::runtime_error("row " + std::to_string(row) +
                                   ": missing cell in complete data");
        if (c == "*" && kind == DatasetKind::kSubset)
          throw std::runtime_error("row " + std::to_string(row) +
                                   ": `*` marks top-k data, use empty cells for subset");
        if (c.empty() && kind == DatasetKind::kTopK)
          throw std::runtime_error("row " + std::to_string(row) +
                                   ": empty cell in top-k data, use `*`");
        entries.push_back(std::nullopt);
        continue;
      }
      int v;
      if (!parse_int(c, v))
        throw std::runtime_error("row " + std::to_string(row) + ": malformed integer `" + c +
                                 "`");
      entries.push_back(v);
    }
    try {
      if (kind == DatasetKind::kComplete) {
        std::vector<int> ranks;
        for (const auto& e : entries) ranks.push_back(*e);
        ds.complete.emplace_back(std::move(ranks));
      } else {
        // A fully observed row is its own (singleton) compatibility class.
        ds.partial.emplace_back(
            kind == DatasetKind::kSubset ? PartialKind::kSubset : PartialKind::kTopK, entries);
      }
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error("row " + std::to_string(row) + ": " + e.what());
    }
  }
  if (ds.size() == 0) throw std::runtime_error("no data rows found");
  return ds;
}

RankingDataset parse_csv_file(const std::string& path, DatasetKind kind) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_csv(in, kind);
}

Eigen::VectorXd load_column_vector(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<double> vals;
  std::string line;
  while (std::getline(in, line)) {
    const std::string s = trim(line);
    if (s.empty()) continue;
    vals.push_back(std::stod(s));
  }
  if (vals.empty()) throw std::runtime_error("empty vector file " + path);
  Eigen::VectorXd v(vals.size());
  for (size_t i = 0; i < vals.size(); ++i) v[static_cast<Eigen::Index>(i)] = vals[i];
  return v;
}

json to_json(const ModelReport& report) {
  json j;
  j["kind"] = report.kind;
  j["t"] = report.t;
  j["params"] = report.params;
  j["diagnostics"] = report.diagnostics;
  return j;
}

ModelReport report_from_json(const json& j) {
  ModelReport r;
  r.kind = j.at("kind").get<std::string>();
  r.t = j.at("t").get<int>();
  r.params = j.at("params");
  r.diagnostics = j.value("diagnostics", json::object());
  return r;
}

ModelReport make_report(const MleFit& fit, int t) {
  ModelReport r;
  r.kind = "mle";
  r.t = t;
  r.params["theta_hat"] = to_double_vector(fit.theta_hat);
  r.params["kappa_hat"] = fit.kappa_hat;
  r.params["r"] = fit.r;
  r.diagnostics["newton_iters"] = fit.newton_iters;
  r.diagnostics["used_bisection"] = fit.used_bisection;
  return r;
}

ModelReport make_report(const VmfGammaPosterior& post) {
  ModelReport r;
  r.kind = "vi";
  r.t = post.t;
  r.params["m"] = to_double_vector(post.m);
  r.params["beta"] = post.beta;
  r.params["a"] = post.a;
  r.params["b"] = post.b;
  r.params["kappa_bar"] = post.kappa_bar;
  r.params["kappa_mean"] = post.kappa_mean();
  r.diagnostics["iters"] = post.iters;
  return r;
}

ModelReport make_report(const PosteriorSample& post, int t) {
  ModelReport r;
  r.kind = "sir";
  r.t = t;
  r.params["m"] = to_double_vector(post.m);
  r.params["beta"] = post.beta;
  r.params["kappa_mean"] = post.kappa_mean();
  r.params["theta_mean_direction"] = to_double_vector(post.theta_mean_direction());
  r.params["kappa_draws"] = post.kappa_draws;
  r.diagnostics["ess"] = post.ess;
  r.diagnostics["with_replacement"] = post.with_replacement;
  r.diagnostics["weight_degeneracy"] = post.weight_degeneracy;
  return r;
}

ModelReport make_report(const MixturePosterior& post) {
  ModelReport r;
  r.kind = "mixture";
  r.t = post.t;
  r.params["G"] = post.G();
  r.params["d"] = post.d;
  r.params["beta"] = post.beta;
  r.params["a"] = post.a;
  r.params["b"] = post.b;
  r.params["kappa_bar"] = post.kappa_bar;
  json ms = json::array();
  for (const auto& m : post.m) ms.push_back(to_double_vector(m));
  r.params["m"] = ms;
  r.params["tau_mean"] = post.tau_mean();
  r.params["kappa_mean"] = post.kappa_mean();
  r.diagnostics["iters"] = post.iters;
  r.diagnostics["empty_cluster"] = post.empty_cluster;
  return r;
}

ModelReport make_report(const IncompleteFitResult& fit) {
  ModelReport r;
  r.kind = "incomplete";
  r.t = fit.t;
  r.params["backend"] = fit.backend == GibbsBackend::kVi ? "vi" : "sir";
  r.params["kappa_hat"] = fit.kappa_hat;
  r.params["theta_hat"] = to_double_vector(fit.theta_hat);
  if (fit.backend == GibbsBackend::kVi) {
    r.params["a"] = fit.a;
    r.params["b"] = fit.b;
    r.params["beta"] = fit.beta;
    r.params["m"] = to_double_vector(fit.m);
  } else {
    r.params["kappa_draws"] = fit.kappa_draws;
  }
  r.diagnostics["kappa_trace"] = fit.kappa_trace;
  return r;
}

AngleModel angle_model_from_json(const json& j) {
  if (j.contains("kind")) {
    const ModelReport r = report_from_json(j);
    if (r.kind == "mle")
      return AngleModel(r.t, r.params.at("kappa_hat").get<double>(),
                        to_eigen(r.params.at("theta_hat")));
    if (r.kind == "vi") {
      const double kappa = r.params.at("kappa_mean").get<double>();
      return AngleModel(r.t, kappa, to_eigen(r.params.at("m")));
    }
    if (r.kind == "sir")
      return AngleModel(r.t, r.params.at("kappa_mean").get<double>(),
                        to_eigen(r.params.at("theta_mean_direction")));
    if (r.kind == "incomplete")
      return AngleModel(r.t, r.params.at("kappa_hat").get<double>(),
                        to_eigen(r.params.at("theta_hat")));
    throw std::runtime_error("no point (kappa, theta) in a `" + r.kind + "` report");
  }
  Eigen::VectorXd theta = to_eigen(j.at("theta"));
  theta /= theta.norm();
  return AngleModel(j.at("t").get<int>(), j.at("kappa").get<double>(), theta);
}

VmfGammaPosterior vi_posterior_from_report(const ModelReport& report) {
  if (report.kind != "vi")
    throw std::runtime_error("expected a `vi` report, got `" + report.kind + "`");
  VmfGammaPosterior post;
  post.t = report.t;
  post.m = to_eigen(report.params.at("m"));
  post.beta = report.params.at("beta").get<double>();
  post.a = report.params.at("a").get<double>();
  post.b = report.params.at("b").get<double>();
  post.kappa_bar = report.params.at("kappa_bar").get<double>();
  post.iters = report.diagnostics.value("iters", 0);
  return post;
}

MixturePosterior mixture_posterior_from_report(const ModelReport& report) {
  if (report.kind != "mixture")
    throw std::runtime_error("expected a `mixture` report, got `" + report.kind + "`");
  MixturePosterior post;
  post.t = report.t;
  post.d = report.params.at("d").get<std::vector<double>>();
  post.beta = report.params.at("beta").get<std::vector<double>>();
  post.a = report.params.at("a").get<std::vector<double>>();
  post.b = report.params.at("b").get<std::vector<double>>();
  post.kappa_bar = report.params.at("kappa_bar").get<std::vector<double>>();
  for (const auto& m : report.params.at("m")) post.m.push_back(to_eigen(m));
  post.iters = report.diagnostics.value("iters", 0);
  return post;
}

}  // namespace anglerank
