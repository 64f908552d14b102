#include "esq/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "esq/error.hpp"

namespace esq {
namespace {

double entropy(const std::vector<std::int64_t>& sums, double n) {
  double h = 0.0;
  for (auto s : sums) {
    if (s == 0) continue;
    const double p = static_cast<double>(s) / n;
    h -= p * std::log(p);
  }
  return h;
}

double pairs(std::int64_t n) { return static_cast<double>(n) * static_cast<double>(n - 1) / 2.0; }

}  // namespace

LabelSet LabelSet::from_index(const InvertedIndex& index) {
  LabelSet labels;
  labels.names.assign(index.label_names().begin(), index.label_names().end());
  std::unordered_map<std::string, std::uint32_t> ids;
  for (std::uint32_t i = 0; i < labels.names.size(); ++i) ids.emplace(labels.names[i], i);
  labels.class_of.resize(index.doc_count());
  for (DocId d = 0; d < index.doc_count(); ++d) {
    const auto& label = index.label(d);
    if (!label) continue;
    auto it = ids.find(*label);
    if (it == ids.end()) throw Error("label '" + *label + "' missing from the label names");
    labels.class_of[d] = it->second;
  }
  return labels;
}

ContingencyTable::ContingencyTable(std::size_t classes, std::size_t clusters)
    : classes_(classes), clusters_(clusters), counts_(classes * clusters, 0) {}

ContingencyTable ContingencyTable::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  ContingencyTable t(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error("ragged contingency rows");
    for (std::size_t j = 0; j < cols; ++j) {
      if (rows[i][j] < 0) throw Error("negative contingency count");
      t.counts_[i * cols + j] = rows[i][j];
    }
  }
  return t;
}

std::int64_t ContingencyTable::total() const {
  std::int64_t n = 0;
  for (auto c : counts_) n += c;
  return n;
}

std::vector<std::int64_t> ContingencyTable::row_sums() const {
  std::vector<std::int64_t> s(classes_, 0);
  for (std::size_t i = 0; i < classes_; ++i)
    for (std::size_t j = 0; j < clusters_; ++j) s[i] += at(i, j);
  return s;
}

std::vector<std::int64_t> ContingencyTable::col_sums() const {
  std::vector<std::int64_t> s(clusters_, 0);
  for (std::size_t i = 0; i < classes_; ++i)
    for (std::size_t j = 0; j < clusters_; ++j) s[j] += at(i, j);
  return s;
}

ContingencyTable ContingencyTable::transposed() const {
  ContingencyTable t(clusters_, classes_);
  for (std::size_t i = 0; i < classes_; ++i)
    for (std::size_t j = 0; j < clusters_; ++j) t.counts_[j * classes_ + i] = at(i, j);
  return t;
}

ContingencyTable contingency(const ClusterAssignment& assignment, const LabelSet& labels) {
  assignment.validate();
  if (labels.class_count() == 0) throw Error("corpus is unlabelled; cannot evaluate");
  if (labels.class_of.size() != assignment.doc_count()) throw Error("labels do not match the assignment size");
  ContingencyTable table(labels.class_count(), assignment.cluster_count);
  for (std::size_t d = 0; d < assignment.doc_count(); ++d) {
    if (!assignment.cluster_of[d]) continue;
    if (!labels.class_of[d]) throw Error("document " + std::to_string(d) + " has no label");
    table.add(*labels.class_of[d], *assignment.cluster_of[d]);
  }
  return table;
}

VMeasure v_measure(const ContingencyTable& table, double beta) {
  const auto n_int = table.total();
  if (n_int < 1) throw Error("V-measure needs at least one counted document");
  const double n = static_cast<double>(n_int);
  const auto rows = table.row_sums();
  const auto cols = table.col_sums();

  double h_c_given_k = 0.0;
  double h_k_given_c = 0.0;
  for (std::size_t i = 0; i < table.classes(); ++i) {
    for (std::size_t j = 0; j < table.clusters(); ++j) {
      const auto nij = table.at(i, j);
      if (nij == 0) continue;
      const double joint = static_cast<double>(nij) / n;
      h_c_given_k -= joint * std::log(static_cast<double>(nij) / static_cast<double>(cols[j]));
      h_k_given_c -= joint * std::log(static_cast<double>(nij) / static_cast<double>(rows[i]));
    }
  }
  const double h_c = entropy(rows, n);
  const double h_k = entropy(cols, n);
  const double h = h_c == 0.0 ? 1.0 : 1.0 - h_c_given_k / h_c;
  const double c = h_k == 0.0 ? 1.0 : 1.0 - h_k_given_c / h_k;
  const double denom = beta * h + c;
  const double v = denom == 0.0 ? 0.0 : (1.0 + beta) * h * c / denom;
  return {h, c, v};
}

double adjusted_rand_index(const ContingencyTable& table) {
  const auto n = table.total();
  const double total_pairs = pairs(n);
  double index = 0.0;
  for (std::size_t i = 0; i < table.classes(); ++i)
    for (std::size_t j = 0; j < table.clusters(); ++j) index += pairs(table.at(i, j));
  double a = 0.0;
  for (auto s : table.row_sums()) a += pairs(s);
  double b = 0.0;
  for (auto s : table.col_sums()) b += pairs(s);
  if (total_pairs == 0.0) return 1.0;
  const double expected = a * b / total_pairs;
  const double max_index = 0.5 * (a + b);
  if (max_index == expected) return 1.0;
  return (index - expected) / (max_index - expected);
}

std::size_t cluster_count_error(const ClusterAssignment& assignment, const LabelSet& labels) {
  const auto clusters = static_cast<long long>(assignment.non_empty_clusters());
  const auto classes = static_cast<long long>(labels.class_count());
  return static_cast<std::size_t>(std::llabs(clusters - classes));
}

ValidationScores validate(const ClusterAssignment& assignment, const LabelSet& labels, double beta) {
  const auto table = contingency(assignment, labels);
  const auto vm = v_measure(table, beta);
  ValidationScores s;
  s.homogeneity = vm.homogeneity;
  s.completeness = vm.completeness;
  s.v = vm.v;
  s.ari = adjusted_rand_index(table);
  s.count_error = cluster_count_error(assignment, labels);
  s.beta = beta;
  return s;
}

}  // namespace esq
