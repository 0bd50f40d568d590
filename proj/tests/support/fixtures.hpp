#pragma once

// Fixed inputs for golden renders and the error-analysis example.

#include <string>
#include <vector>

#include "limelight/analysis.hpp"
#include "limelight/baseline.hpp"
#include "limelight/lime.hpp"

namespace fixtures {

// Four evaluation snapshots of the reported classifier.
inline limelight::ClassReport epoch_report() {
  limelight::ClassReport r;
  r.epochs = {
      {1, 0.819, 0.824, 0.819, 0.820},
      {2, 0.818, 0.817, 0.815, 0.817},
      {3, 0.824, 0.826, 0.823, 0.826},
      {4, 0.832, 0.814, 0.826, 0.828},
  };
  return r;
}

// A hate prediction whose hate-class surrogate puts 0.5 on "ass", 0.49 on
// "f**k" and 0.35 on "redskin".
inline limelight::Explanation hate_example() {
  using limelight::FeatureWeight;
  limelight::Explanation e;
  e.text = "shut up you redskin ass f**k";
  e.tokens = {"shut", "redskin", "ass", "f**k"};
  e.class_names = {"hate", "offensive", "none"};
  e.prediction = {0.62, 0.33, 0.05};
  limelight::SurrogateFit hate;
  hate.class_index = 0;
  hate.class_name = "hate";
  hate.intercept = 0.08;
  hate.local_score = 0.91;
  hate.features = {FeatureWeight{2, "ass", 0.5}, FeatureWeight{3, "f**k", 0.49},
                   FeatureWeight{1, "redskin", 0.35}, FeatureWeight{0, "shut", 0.0}};
  limelight::SurrogateFit offensive;
  offensive.class_index = 1;
  offensive.class_name = "offensive";
  offensive.intercept = 0.61;
  offensive.local_score = 0.84;
  offensive.features = {FeatureWeight{1, "redskin", -0.3}, FeatureWeight{2, "ass", -0.2},
                        FeatureWeight{3, "f**k", 0.1}, FeatureWeight{0, "shut", 0.02}};
  limelight::SurrogateFit none;
  none.class_index = 2;
  none.class_name = "none";
  none.intercept = 0.31;
  none.local_score = 0.77;
  none.features = {FeatureWeight{2, "ass", -0.3}, FeatureWeight{3, "f**k", -0.25},
                   FeatureWeight{1, "redskin", -0.05}, FeatureWeight{0, "shut", -0.02}};
  e.fits = {hate, offensive, none};
  return e;
}

// 150 documents, 50 per class, with per-class outcomes
// (as Hate, as Offensive, as None, tied):
//   Hate (39, 9, 2, 0); Offensive (11, 37, 1, 1); None (7, 1, 42, 0).
struct Analysis150 {
  std::vector<std::size_t> truth;
  std::vector<std::size_t> predicted;
  limelight::ProbabilityMatrix probabilities;
};

inline Analysis150 analysis_150() {
  const std::size_t rows[3][4] = {{39, 9, 2, 0}, {11, 37, 1, 1}, {7, 1, 42, 0}};
  Analysis150 a;
  a.probabilities = limelight::ProbabilityMatrix(150, 3);
  std::size_t i = 0;
  for (std::size_t t = 0; t < 3; ++t) {
    for (std::size_t outcome = 0; outcome < 4; ++outcome) {
      for (std::size_t k = 0; k < rows[t][outcome]; ++k, ++i) {
        a.truth.push_back(t);
        auto row = a.probabilities.row(i);
        if (outcome == 3) {
          row[0] = 0.4;
          row[1] = 0.4;
          row[2] = 0.2;
          a.predicted.push_back(0);
        } else {
          for (std::size_t c = 0; c < 3; ++c) row[c] = c == outcome ? 0.6 : 0.2;
          a.predicted.push_back(outcome);
        }
      }
    }
  }
  return a;
}

}  // namespace fixtures
