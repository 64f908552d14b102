#pragma once

// External cluster validation against ground-truth labels.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "esq/assignment.hpp"
#include "esq/index.hpp"

namespace esq {

/// Ground-truth classes per document ordinal.
struct LabelSet {
  std::vector<std::string> names;
  std::vector<std::optional<std::uint32_t>> class_of;

  static LabelSet from_index(const InvertedIndex& index);
  std::size_t class_count() const noexcept { return names.size(); }
};

/// counts(i, j) = |S_i ∩ Q_j| over classes i and clusters j.
class ContingencyTable {
 public:
  ContingencyTable(std::size_t classes, std::size_t clusters);
  static ContingencyTable from_rows(const std::vector<std::vector<std::int64_t>>& rows);

  std::size_t classes() const noexcept { return classes_; }
  std::size_t clusters() const noexcept { return clusters_; }
  std::int64_t at(std::size_t i, std::size_t j) const { return counts_[i * clusters_ + j]; }
  void add(std::size_t i, std::size_t j, std::int64_t n = 1) { counts_[i * clusters_ + j] += n; }

  std::int64_t total() const;
  std::vector<std::int64_t> row_sums() const;
  std::vector<std::int64_t> col_sums() const;
  ContingencyTable transposed() const;

  friend bool operator==(const ContingencyTable&, const ContingencyTable&) = default;

 private:
  std::size_t classes_;
  std::size_t clusters_;
  std::vector<std::int64_t> counts_;
};

/// Unassigned documents are skipped. Every counted document must carry a
/// label (esq::Error otherwise). Empty clusters stay as zero columns.
ContingencyTable contingency(const ClusterAssignment& assignment, const LabelSet& labels);

struct VMeasure {
  double homogeneity;
  double completeness;
  double v;
};

/// Conditional-entropy homogeneity/completeness, natural log, and
/// v = (1 + beta) h c / (beta h + c). Throws on an empty table.
VMeasure v_measure(const ContingencyTable& table, double beta = 1.0);

/// Hubert-Arabie adjusted Rand index; 1.0 when the expected and maximum
/// indices coincide (including N < 2).
double adjusted_rand_index(const ContingencyTable& table);

/// |non-empty clusters - number of classes|
std::size_t cluster_count_error(const ClusterAssignment& assignment, const LabelSet& labels);

struct ValidationScores {
  double homogeneity = 0.0;
  double completeness = 0.0;
  double v = 0.0;
  double ari = 0.0;
  std::size_t count_error = 0;
  double beta = 1.0;

  friend bool operator==(const ValidationScores&, const ValidationScores&) = default;
};

ValidationScores validate(const ClusterAssignment& assignment, const LabelSet& labels, double beta = 1.0);

}  // namespace esq
