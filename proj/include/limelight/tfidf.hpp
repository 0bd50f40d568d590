#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "limelight/corpus.hpp"

namespace limelight {

// Sparse row with strictly increasing indices.
struct SparseVector {
  std::vector<std::uint32_t> indices;
  std::vector<double> values;

  std::size_t nnz() const { return indices.size(); }
};

// Smoothed TF-IDF:
//   idf(t) = ln((1 + N) / (1 + df(t))) + 1
//   x_t    = count(t) * idf(t), then the row is L2-normalized.
// Tokens absent from the vocabulary are ignored.
class TfidfModel {
 public:
  TfidfModel() = default;
  TfidfModel(Vocabulary vocabulary, std::vector<double> idf);

  // Throws DataError on an empty training set.
  static TfidfModel fit(const std::vector<Tokens>& train_documents);

  SparseVector transform(const Tokens& tokens) const;

  const Vocabulary& vocabulary() const { return vocabulary_; }
  std::span<const double> idf() const { return idf_; }
  std::size_t dimension() const { return vocabulary_.size(); }

 private:
  Vocabulary vocabulary_;
  std::vector<double> idf_;
};

double smoothed_idf(std::size_t num_documents, std::size_t document_frequency);

}  // namespace limelight
