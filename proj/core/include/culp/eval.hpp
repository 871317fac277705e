#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "culp/classify.hpp"
#include "culp/dataset.hpp"

namespace culp {

struct Preprocessing {
    enum class Kind { None, ZScore, Pca };
    Kind kind = Kind::None;
    double pca_threshold = 0.95;

    static Preprocessing parse(const std::string& name);
    std::string name() const;
};

/// What to run inside each cross-validation fold.
struct MethodSpec {
    enum class Kind { Culp, Culm, Baseline };
    Kind kind = Kind::Culp;
    PredictorKind predictor = PredictorKind::RA;     // Culp
    std::vector<PredictorKind> predictors;           // Culm
    double alpha = 1.0;                              // Culm
    int low_level_k = 5;                             // Culm and Baseline

    static MethodSpec culp(PredictorKind p) { return {Kind::Culp, p, {}, 1.0, 5}; }
    static MethodSpec culm(std::vector<PredictorKind> ps, double a, int llk) {
        return {Kind::Culm, PredictorKind::RA, std::move(ps), a, llk};
    }
    static MethodSpec baseline(int llk) {
        return {Kind::Baseline, PredictorKind::RA, {}, 0.0, llk};
    }
};

struct ExperimentConfig {
    MethodSpec method;
    int k = 3;
    SimilarityConfig sim;
    Preprocessing prep;
    int folds = 10;
    int runs = 1;
    std::uint64_t seed = 0;

    void validate() const;
};

struct EvalReport {
    double mean_accuracy = 0.0;  // percentage
    double std_accuracy = 0.0;   // population std over fold accuracies
    std::vector<double> fold_accuracies;  // runs x folds entries
    ExperimentConfig config;
    double wall_seconds = 0.0;
};

// 100 * matches / length.
double accuracy(std::span<const int> predicted, std::span<const int> truth);

// Per run: a fresh stratified fold plan (seed = base + run index); per fold:
// preprocessing fit on the training portion only, LEG built with the test
// fold as the unlabeled partition, then classified and scored.
EvalReport cross_validate(const DataMatrix& X, const LabelVector& y,
                          const ExperimentConfig& config);

struct GridResult {
    ExperimentConfig best;
    EvalReport report;                 // winner re-evaluated at full runs
    std::vector<EvalReport> tuning;    // one single-run report per grid point
};

// Evaluates every (k, sim, prep[, alpha]) combination with a single-run CV,
// picks the max mean accuracy (ties: smaller k, then grid order), then
// re-evaluates the winner with the configured runs count.
GridResult grid_search(const DataMatrix& X, const LabelVector& y,
                       const ExperimentConfig& base,
                       const std::vector<int>& k_values,
                       const std::vector<SimilarityKind>& sims,
                       const std::vector<Preprocessing>& preps,
                       const std::vector<double>& alphas = {});

struct WelchResult {
    double t = 0.0;
    double df = 0.0;
    double p_value = 1.0;  // two-sided
};

// Welch's t statistic with Welch-Satterthwaite degrees of freedom; p-value
// via the regularized incomplete beta function. Both samples constant and
// equal -> p = 1; constant and different -> p = 0.
WelchResult welch_t_test(std::span<const double> sample_a,
                         std::span<const double> sample_b);

// Continued-fraction evaluation of I_x(a, b); exposed for direct testing.
double regularized_incomplete_beta(double a, double b, double x);

// Two-sided tail probability of the t distribution.
double student_t_two_sided_p(double t, double df);

// results[dataset][method] -> per-method average rank (1 = best accuracy,
// ties share the mean of the positions they occupy).
std::vector<double> rank_table(const std::vector<std::vector<double>>& results);

}  // namespace culp
