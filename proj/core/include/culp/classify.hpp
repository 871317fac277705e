#pragma once

#include <memory>
#include <span>
#include <vector>

#include "culp/dataset.hpp"
#include "culp/leg.hpp"
#include "culp/linkpred.hpp"

namespace culp {

/// One scored (unlabeled node, all classes) row.
struct ScoreRow {
    std::vector<double> scores;  // one entry per class
    int predicted = 0;           // class id in 1..C
    double confidence = 0.0;     // max score / total, or 1/C on fallback
    bool fallback = false;       // true when every class scored zero
};

// Scores every class node for unlabeled node i and returns the argmax class
// (ties toward the lowest class id). An all-zero score vector falls back to
// the label of the nearest labeled instance in feature space.
ScoreRow culp_predict(const Leg& leg, int node, PredictorKind kind);

// Builds the LEG once and classifies all unlabeled rows.
std::vector<int> culp_classify_all(const DataMatrix& X_l, const DataMatrix& X_u,
                                   const LabelVector& y, const SimilarityConfig& sim,
                                   int k, PredictorKind kind);

// max(scores) / sum(scores); 1/C when the vector is all zero.
double confidence(std::span<const double> scores);

/// Conventional feature-space classifier occupying the 1-alpha vote share.
class LowLevelClassifier {
public:
    virtual ~LowLevelClassifier() = default;
    virtual void fit(const DataMatrix& X, const LabelVector& y) = 0;
    virtual int predict(std::span<const double> x) const = 0;
};

// Majority vote over the k nearest training rows (Euclidean distance),
// ties toward the lowest class id.
std::unique_ptr<LowLevelClassifier> knn_lowlevel(int k);

struct CulmConfig {
    std::vector<PredictorKind> predictors;  // non-empty, duplicate-free
    double alpha = 1.0;                     // in [0.5, 1]
    std::shared_ptr<LowLevelClassifier> low_level;  // may be null when alpha == 1

    void validate() const;
};

// Splits the unit vote mass: predictor weights sum to alpha (each
// proportional to its confidence), the low-level classifier gets 1 - alpha.
std::pair<std::vector<double>, double> predictor_weights(
    std::span<const double> confidences, double alpha);

// Weighted majority vote; ties toward the lowest class id.
int vote(std::span<const int> labels, std::span<const double> weights);

// Confidence-weighted vote over every predictor plus the low-level
// classifier. With alpha == 1 and a single predictor this reduces to CULP.
std::vector<int> culm_classify(const DataMatrix& X_l, const DataMatrix& X_u,
                               const LabelVector& y, const SimilarityConfig& sim,
                               int k, const CulmConfig& config);

}  // namespace culp
