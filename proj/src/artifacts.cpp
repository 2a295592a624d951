#include "stereogen/artifacts.hpp"

#include <cctype>

#include "json.hpp"
#include "stereogen/csv.hpp"
#include "stereogen/numformat.hpp"

namespace stereogen {

using ordered_json = nlohmann::ordered_json;

std::string vocab_csv(const LabelVocabulary& vocab) {
  std::string out = "label,count\n";
  for (std::size_t i = 0; i < vocab.labels.size(); ++i) {
    out += csv_join({vocab.labels[i], std::to_string(vocab.counts[i])});
    out += '\n';
  }
  return out;
}

std::string labeled_matrix_csv(const std::vector<std::string>& labels,
                               const SquareMatrix& values) {
  std::vector<std::string> header{"label"};
  header.insert(header.end(), labels.begin(), labels.end());
  std::string out = csv_join(header);
  out += '\n';
  for (std::size_t i = 0; i < labels.size(); ++i) {
    std::vector<std::string> row{labels[i]};
    for (std::size_t j = 0; j < labels.size(); ++j) row.push_back(format_double(values.at(i, j)));
    out += csv_join(row);
    out += '\n';
  }
  return out;
}

std::string merge_table_csv(const Dendrogram& dendro) {
  std::string out = "left,right,height,size\n";
  for (const auto& m : dendro.merges) {
    out += csv_join({std::to_string(m.left), std::to_string(m.right), format_double(m.height),
                     std::to_string(m.size)});
    out += '\n';
  }
  return out;
}

std::string dendrogram_dot(const Dendrogram& dendro, const std::string& name) {
  std::string out = "graph \"" + name + "\" {\n  rankdir=BT;\n";
  const std::size_t n = dendro.leaf_count();
  for (std::size_t i = 0; i < n; ++i) {
    std::string label = dendro.leaves[i];
    std::string escaped;
    for (char c : label) {
      if (c == '"' || c == '\\') escaped += '\\';
      escaped += c;
    }
    out += "  n" + std::to_string(i) + " [shape=box, label=\"" + escaped + "\"];\n";
  }
  for (std::size_t t = 0; t < dendro.merges.size(); ++t) {
    const auto& m = dendro.merges[t];
    const std::size_t v = n + t;
    out += "  n" + std::to_string(v) + " [shape=point, xlabel=\"" + format_double(m.height) +
           "\"];\n";
    out += "  n" + std::to_string(m.left) + " -- n" + std::to_string(v) + ";\n";
    out += "  n" + std::to_string(m.right) + " -- n" + std::to_string(v) + ";\n";
  }
  out += "}\n";
  return out;
}

std::string ratio_csv(const IterationSeries& series) {
  std::string out = "iteration,clusters_count,avg_cluster_size,ratio\n";
  for (std::size_t t = 0; t < series.points.size(); ++t) {
    const auto& p = series.points[t];
    out += csv_join({std::to_string(t + 1), std::to_string(p.clusters_count),
                     format_double(p.avg_cluster_size), format_double(p.ratio)});
    out += '\n';
  }
  return out;
}

std::string stereotypes_json(const StereotypeArtifact& artifact) {
  ordered_json doc;
  doc["feature"] = artifact.set.feature_name;
  doc["metric"] = to_string(artifact.metric);
  doc["linkage"] = to_string(artifact.linkage);
  doc["seed"] = artifact.seed;
  if (artifact.cut_iteration) {
    doc["cut_iteration"] = *artifact.cut_iteration;
  } else {
    doc["cut_iteration"] = nullptr;
  }
  if (artifact.set.cut_height) {
    doc["cut_height"] = *artifact.set.cut_height;
  } else {
    doc["cut_height"] = nullptr;
  }
  doc["no_structure"] = !artifact.set.cut_height.has_value();
  doc["groups"] = artifact.set.groups;
  return doc.dump(2) + "\n";
}

std::string kmodes_json(const KModesModel& model, const std::vector<std::string>& col_labels,
                        const std::string& feature_name) {
  ordered_json doc;
  doc["feature"] = feature_name;
  doc["k"] = model.k;
  doc["init"] = to_string(model.init_kind);
  doc["seed"] = model.seed;
  doc["iterations"] = model.iterations;
  doc["cost"] = model.cost;
  ordered_json modes = ordered_json::array();
  for (const auto& mode : model.modes) {
    ordered_json labels = ordered_json::array();
    for (std::size_t j = 0; j < mode.size() && j < col_labels.size(); ++j)
      if (mode[j]) labels.push_back(col_labels[j]);
    modes.push_back(std::move(labels));
  }
  doc["modes"] = std::move(modes);
  doc["cost_history"] = model.cost_history;
  return doc.dump(2) + "\n";
}

std::string scan_csv(const std::vector<std::pair<std::size_t, double>>& scan) {
  std::string out = "k,cost\n";
  for (const auto& [k, cost] : scan) {
    out += csv_join({std::to_string(k), format_double(cost)});
    out += '\n';
  }
  return out;
}

std::string eval_json(const EvalReport& report, Metric metric, Linkage linkage) {
  ordered_json doc;
  doc["learner"] = "linear_regression";
  doc["split"] = to_string(report.kind);
  doc["mode"] = to_string(report.mode);
  doc["metric"] = to_string(metric);
  doc["linkage"] = to_string(linkage);
  doc["seed"] = report.seed;
  doc["folds"] = report.folds;
  doc["complex_width"] = report.complex_width;
  doc["rmse"] = report.rmse;
  doc["mae"] = report.mae;
  doc["wall_seconds"] = report.wall_seconds;
  ordered_json folds = ordered_json::array();
  for (std::size_t f = 0; f < report.fold_metrics.size(); ++f) {
    const auto& m = report.fold_metrics[f];
    ordered_json entry;
    entry["fold"] = f;
    entry["rmse"] = m.rmse;
    entry["mae"] = m.mae;
    entry["wall_seconds"] = m.wall_seconds;
    folds.push_back(std::move(entry));
  }
  doc["fold_metrics"] = std::move(folds);
  return doc.dump(2) + "\n";
}

std::string eval_table_csv(const std::vector<EvalReport>& reports) {
  std::string out = "learner,split,mode,rmse,mae,wall_seconds,folds,seed,complex_width\n";
  for (const auto& r : reports) {
    out += csv_join({"linear_regression", to_string(r.kind), to_string(r.mode),
                     format_double(r.rmse), format_double(r.mae), format_double(r.wall_seconds),
                     std::to_string(r.folds), std::to_string(r.seed),
                     std::to_string(r.complex_width)});
    out += '\n';
  }
  return out;
}

std::string artifact_path(const std::string& dir, const std::string& stage,
                          const std::vector<std::string>& tags, const std::string& ext) {
  std::string name = stage;
  for (const auto& tag : tags) {
    name += '_';
    for (const char c : tag)
      name += std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '+' ? c : '-';
  }
  return dir + "/" + name + ext;
}

}  // namespace stereogen
