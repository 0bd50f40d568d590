#include "limelight/tfidf.hpp"

#include <cmath>
#include <map>

#include "limelight/errors.hpp"
#include "limelight/kernels.hpp"

namespace limelight {

double smoothed_idf(std::size_t num_documents, std::size_t document_frequency) {
  return std::log((1.0 + static_cast<double>(num_documents)) /
                  (1.0 + static_cast<double>(document_frequency))) +
         1.0;
}

TfidfModel::TfidfModel(Vocabulary vocabulary, std::vector<double> idf)
    : vocabulary_(std::move(vocabulary)), idf_(std::move(idf)) {
  if (idf_.size() != vocabulary_.size()) {
    throw DataError("tfidf", "idf length does not match vocabulary size");
  }
}

TfidfModel TfidfModel::fit(const std::vector<Tokens>& train_documents) {
  if (train_documents.empty()) throw DataError("tfidf", "cannot fit TF-IDF on an empty corpus");
  Vocabulary vocab = Vocabulary::build(train_documents);
  std::vector<double> idf(vocab.size());
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    idf[i] = smoothed_idf(train_documents.size(), vocab.document_frequency(i));
  }
  return TfidfModel(std::move(vocab), std::move(idf));
}

SparseVector TfidfModel::transform(const Tokens& tokens) const {
  std::map<std::uint32_t, double> counts;
  for (const auto& t : tokens) {
    if (auto idx = vocabulary_.index(t)) counts[static_cast<std::uint32_t>(*idx)] += 1.0;
  }
  SparseVector row;
  row.indices.reserve(counts.size());
  row.values.reserve(counts.size());
  for (const auto& [idx, tf] : counts) {
    row.indices.push_back(idx);
    row.values.push_back(tf * idf_[idx]);
  }
  const double norm = std::sqrt(kernels::dot(row.values, row.values));
  if (norm > 0.0) kernels::scale(1.0 / norm, row.values);
  return row;
}

}  // namespace limelight
