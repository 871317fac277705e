#include "culp/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace culp {

namespace {

// Nearest labeled instance in feature space; the fallback when no class
// node shares a neighbor with the query.
int nearest_labeled(const Leg& leg, int node) {
    if (!leg.has_features())
        throw std::logic_error("culp_predict: fallback needs feature data");
    const auto& X = leg.features();
    auto q = X.row(static_cast<std::size_t>(node - 1));
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= leg.labeled_count(); ++i) {
        double d = distance(DistanceKind::Euclidean, X.row(static_cast<std::size_t>(i - 1)), q);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return leg.labels()[best - 1];
}

int argmax_lowest(std::span<const double> v) {
    int best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[best]) best = static_cast<int>(i);
    return best;
}

}  // namespace

double confidence(std::span<const double> scores) {
    double total = 0.0, best = 0.0;
    for (double s : scores) {
        if (s < 0) throw std::invalid_argument("confidence: negative score");
        total += s;
        best = std::max(best, s);
    }
    if (total == 0.0) return 1.0 / static_cast<double>(scores.size());
    return best / total;
}

ScoreRow culp_predict(const Leg& leg, int node, PredictorKind kind) {
    if (!leg.is_unlabeled(node))
        throw std::invalid_argument("culp_predict: node is not unlabeled");
    ScoreRow row;
    row.scores.resize(static_cast<std::size_t>(leg.class_count()));
    for (int c = 1; c <= leg.class_count(); ++c)
        row.scores[c - 1] = link_score(kind, leg.adjacency(), node, leg.class_node(c));
    double total = 0.0;
    for (double s : row.scores) total += s;
    if (total == 0.0) {
        row.fallback = true;
        row.predicted = nearest_labeled(leg, node);
    } else {
        row.predicted = argmax_lowest(row.scores) + 1;
    }
    row.confidence = confidence(row.scores);
    return row;
}

std::vector<int> culp_classify_all(const DataMatrix& X_l, const DataMatrix& X_u,
                                   const LabelVector& y, const SimilarityConfig& sim,
                                   int k, PredictorKind kind) {
    if (X_u.rows == 0) return {};
    Leg leg = build_leg(X_l, X_u, y, sim, k);
    std::vector<int> out;
    out.reserve(X_u.rows);
    for (int t = 0; t < leg.unlabeled_count(); ++t)
        out.push_back(culp_predict(leg, leg.labeled_count() + 1 + t, kind).predicted);
    return out;
}

namespace {

class KnnLowLevel final : public LowLevelClassifier {
public:
    explicit KnnLowLevel(int k) : k_(k) {
        if (k < 1) throw std::invalid_argument("knn_lowlevel: k < 1");
    }

    void fit(const DataMatrix& X, const LabelVector& y) override {
        X.validate();
        y.validate();
        if (y.labels.size() != X.rows)
            throw std::invalid_argument("knn_lowlevel: label count mismatch");
        if (static_cast<std::size_t>(k_) > X.rows)
            throw std::invalid_argument("knn_lowlevel: k > training rows");
        X_ = X;
        y_ = y;
    }

    int predict(std::span<const double> x) const override {
        if (X_.rows == 0) throw std::logic_error("knn_lowlevel: predict before fit");
        std::vector<std::pair<double, std::size_t>> d(X_.rows);
        for (std::size_t i = 0; i < X_.rows; ++i)
            d[i] = {distance(DistanceKind::Euclidean, X_.row(i), x), i};
        std::partial_sort(d.begin(), d.begin() + k_, d.end());
        std::vector<int> counts(static_cast<std::size_t>(y_.class_count), 0);
        for (int t = 0; t < k_; ++t) ++counts[y_.labels[d[t].second] - 1];
        int best = 0;
        for (std::size_t c = 1; c < counts.size(); ++c)
            if (counts[c] > counts[best]) best = static_cast<int>(c);
        return best + 1;
    }

private:
    int k_;
    DataMatrix X_;
    LabelVector y_;
};

}  // namespace

std::unique_ptr<LowLevelClassifier> knn_lowlevel(int k) {
    return std::make_unique<KnnLowLevel>(k);
}

void CulmConfig::validate() const {
    if (predictors.empty())
        throw std::invalid_argument("CulmConfig: empty predictor list");
    for (std::size_t i = 0; i < predictors.size(); ++i)
        for (std::size_t j = i + 1; j < predictors.size(); ++j)
            if (predictors[i] == predictors[j])
                throw std::invalid_argument("CulmConfig: duplicate predictor");
    if (!(alpha >= 0.5 && alpha <= 1.0))
        throw std::invalid_argument("CulmConfig: alpha outside [0.5, 1]");
    if (alpha < 1.0 && !low_level)
        throw std::invalid_argument("CulmConfig: alpha < 1 needs a low-level classifier");
}

std::pair<std::vector<double>, double> predictor_weights(
    std::span<const double> confidences, double alpha) {
    if (confidences.empty())
        throw std::invalid_argument("predictor_weights: empty confidence list");
    double total = 0.0;
    for (double p : confidences) {
        if (p < 0) throw std::invalid_argument("predictor_weights: negative confidence");
        total += p;
    }
    if (total == 0.0)
        throw std::invalid_argument("predictor_weights: all-zero confidences");
    std::vector<double> w(confidences.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = alpha * confidences[i] / total;
    return {std::move(w), 1.0 - alpha};
}

int vote(std::span<const int> labels, std::span<const double> weights) {
    if (labels.size() != weights.size())
        throw std::invalid_argument("vote: length mismatch");
    int max_label = 0;
    for (int l : labels) max_label = std::max(max_label, l);
    std::vector<double> mass(static_cast<std::size_t>(max_label), 0.0);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (weights[i] < 0) throw std::invalid_argument("vote: negative weight");
        mass[labels[i] - 1] += weights[i];
    }
    return argmax_lowest(mass) + 1;
}

std::vector<int> culm_classify(const DataMatrix& X_l, const DataMatrix& X_u,
                               const LabelVector& y, const SimilarityConfig& sim,
                               int k, const CulmConfig& config) {
    config.validate();
    if (X_u.rows == 0) return {};
    Leg leg = build_leg(X_l, X_u, y, sim, k);
    if (config.low_level) config.low_level->fit(X_l, y);

    std::vector<int> out;
    out.reserve(X_u.rows);
    for (int t = 0; t < leg.unlabeled_count(); ++t) {
        int node = leg.labeled_count() + 1 + t;
        std::vector<int> labels;
        std::vector<double> confs;
        for (PredictorKind p : config.predictors) {
            ScoreRow row = culp_predict(leg, node, p);
            labels.push_back(row.predicted);
            confs.push_back(row.confidence);  // fallback rows keep their 1/C share
        }
        auto [pred_w, ll_w] = predictor_weights(confs, config.alpha);
        if (config.low_level) {
            labels.push_back(config.low_level->predict(X_u.row(static_cast<std::size_t>(t))));
            pred_w.push_back(ll_w);
        }
        out.push_back(vote(labels, pred_w));
    }
    return out;
}

}  // namespace culp
