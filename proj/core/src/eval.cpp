#include "culp/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace culp {

Preprocessing Preprocessing::parse(const std::string& name) {
    if (name == "none") return {Kind::None, 0.95};
    if (name == "zscore") return {Kind::ZScore, 0.95};
    if (name == "pca") return {Kind::Pca, 0.95};
    throw std::invalid_argument("unknown preprocessing: " + name);
}

std::string Preprocessing::name() const {
    switch (kind) {
        case Kind::None: return "none";
        case Kind::ZScore: return "zscore";
        case Kind::Pca: return "pca";
    }
    return "?";
}

void ExperimentConfig::validate() const {
    if (k < 1 || k > 35)
        throw std::invalid_argument("ExperimentConfig: k outside 1..35");
    if (folds < 2) throw std::invalid_argument("ExperimentConfig: folds < 2");
    if (runs < 1) throw std::invalid_argument("ExperimentConfig: runs < 1");
}

double accuracy(std::span<const int> predicted, std::span<const int> truth) {
    if (predicted.size() != truth.size() || predicted.empty())
        throw std::invalid_argument("accuracy: length mismatch or empty");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i)
        if (predicted[i] == truth[i]) ++hits;
    return 100.0 * static_cast<double>(hits) / static_cast<double>(predicted.size());
}

namespace {

struct FoldData {
    DataMatrix X_train, X_test;
    LabelVector y_train;
    std::vector<int> y_test;
};

FoldData split_fold(const DataMatrix& X, const LabelVector& y, const FoldPlan& plan,
                    int fold) {
    FoldData f;
    f.y_train.class_count = y.class_count;
    for (std::size_t i = 0; i < X.rows; ++i) {
        if (plan.assignments[i] == fold) {
            f.X_test.append_row(X.row(i));
            f.y_test.push_back(y.labels[i]);
        } else {
            f.X_train.append_row(X.row(i));
            f.y_train.labels.push_back(y.labels[i]);
        }
    }
    return f;
}

void preprocess(const Preprocessing& prep, DataMatrix& train, DataMatrix& test) {
    switch (prep.kind) {
        case Preprocessing::Kind::None: return;
        case Preprocessing::Kind::ZScore: {
            auto t = ZScoreTransform::fit(train);
            train = t.apply(train);
            test = t.apply(test);
            return;
        }
        case Preprocessing::Kind::Pca: {
            auto t = PcaTransform::fit(train, prep.pca_threshold);
            train = t.apply(train);
            test = t.apply(test);
            return;
        }
    }
}

std::vector<int> classify_fold(const FoldData& f, const ExperimentConfig& cfg) {
    const auto& m = cfg.method;
    switch (m.kind) {
        case MethodSpec::Kind::Culp:
            return culp_classify_all(f.X_train, f.X_test, f.y_train, cfg.sim, cfg.k,
                                     m.predictor);
        case MethodSpec::Kind::Culm: {
            CulmConfig cc;
            cc.predictors = m.predictors;
            cc.alpha = m.alpha;
            cc.low_level = knn_lowlevel(std::min<int>(
                m.low_level_k, static_cast<int>(f.X_train.rows)));
            return culm_classify(f.X_train, f.X_test, f.y_train, cfg.sim, cfg.k, cc);
        }
        case MethodSpec::Kind::Baseline: {
            auto ll = knn_lowlevel(std::min<int>(m.low_level_k,
                                                 static_cast<int>(f.X_train.rows)));
            ll->fit(f.X_train, f.y_train);
            std::vector<int> out;
            for (std::size_t i = 0; i < f.X_test.rows; ++i)
                out.push_back(ll->predict(f.X_test.row(i)));
            return out;
        }
    }
    throw std::logic_error("classify_fold: unknown method");
}

}  // namespace

EvalReport cross_validate(const DataMatrix& X, const LabelVector& y,
                          const ExperimentConfig& config) {
    config.validate();
    y.validate();
    if (y.class_count < 2)
        throw std::invalid_argument("cross_validate: need at least 2 classes");
    auto t0 = std::chrono::steady_clock::now();

    EvalReport report;
    report.config = config;
    for (int run = 0; run < config.runs; ++run) {
        FoldPlan plan = stratified_kfold(y, config.folds,
                                         config.seed + static_cast<std::uint64_t>(run));
        for (int fold = 0; fold < config.folds; ++fold) {
            FoldData f = split_fold(X, y, plan, fold);
            if (f.X_test.rows == 0) continue;
            preprocess(config.prep, f.X_train, f.X_test);
            // k must stay valid for this fold's node count
            ExperimentConfig cfg = config;
            cfg.k = std::min<int>(cfg.k, static_cast<int>(X.rows) - 1);
            auto predicted = classify_fold(f, cfg);
            report.fold_accuracies.push_back(accuracy(predicted, f.y_test));
        }
    }

    double mean = std::accumulate(report.fold_accuracies.begin(),
                                  report.fold_accuracies.end(), 0.0) /
                  static_cast<double>(report.fold_accuracies.size());
    double var = 0.0;
    for (double a : report.fold_accuracies) var += (a - mean) * (a - mean);
    var /= static_cast<double>(report.fold_accuracies.size());
    report.mean_accuracy = mean;
    report.std_accuracy = std::sqrt(var);
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

GridResult grid_search(const DataMatrix& X, const LabelVector& y,
                       const ExperimentConfig& base,
                       const std::vector<int>& k_values,
                       const std::vector<SimilarityKind>& sims,
                       const std::vector<Preprocessing>& preps,
                       const std::vector<double>& alphas) {
    if (k_values.empty() || sims.empty() || preps.empty())
        throw std::invalid_argument("grid_search: empty grid");
    std::vector<double> alpha_grid = alphas;
    if (alpha_grid.empty()) alpha_grid.push_back(base.method.alpha);

    GridResult result;
    bool have_best = false;
    for (SimilarityKind s : sims)
        for (const Preprocessing& p : preps)
            for (double a : alpha_grid)
                for (int k : k_values) {
                    ExperimentConfig cfg = base;
                    cfg.sim.kind = s;
                    cfg.prep = p;
                    cfg.method.alpha = a;
                    cfg.k = k;
                    cfg.runs = 1;  // tuning pass
                    EvalReport rep = cross_validate(X, y, cfg);
                    result.tuning.push_back(rep);
                    bool better = !have_best ||
                                  rep.mean_accuracy > result.report.mean_accuracy ||
                                  (rep.mean_accuracy == result.report.mean_accuracy &&
                                   cfg.k < result.best.k);
                    if (better) {
                        result.best = cfg;
                        result.report = rep;
                        have_best = true;
                    }
                }

    result.best.runs = base.runs;
    result.report = cross_validate(X, y, result.best);
    return result;
}

double regularized_incomplete_beta(double a, double b, double x) {
    if (x < 0.0 || x > 1.0)
        throw std::invalid_argument("regularized_incomplete_beta: x outside [0,1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;

    // continued fraction (modified Lentz)
    auto contfrac = [](double aa, double bb, double xx) {
        const int max_iter = 300;
        const double eps = 1e-15, tiny = 1e-300;
        double qab = aa + bb, qap = aa + 1.0, qam = aa - 1.0;
        double c = 1.0, d = 1.0 - qab * xx / qap;
        if (std::abs(d) < tiny) d = tiny;
        d = 1.0 / d;
        double h = d;
        for (int m = 1; m <= max_iter; ++m) {
            int m2 = 2 * m;
            double num = m * (bb - m) * xx / ((qam + m2) * (aa + m2));
            d = 1.0 + num * d;
            if (std::abs(d) < tiny) d = tiny;
            c = 1.0 + num / c;
            if (std::abs(c) < tiny) c = tiny;
            d = 1.0 / d;
            h *= d * c;
            num = -(aa + m) * (qab + m) * xx / ((aa + m2) * (qap + m2));
            d = 1.0 + num * d;
            if (std::abs(d) < tiny) d = tiny;
            c = 1.0 + num / c;
            if (std::abs(c) < tiny) c = tiny;
            d = 1.0 / d;
            double del = d * c;
            h *= del;
            if (std::abs(del - 1.0) < eps) break;
        }
        return h;
    };

    double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                      a * std::log(x) + b * std::log1p(-x);
    if (x < (a + 1.0) / (a + b + 2.0))
        return std::exp(ln_front) * contfrac(a, b, x) / a;
    return 1.0 - std::exp(ln_front) * contfrac(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
    if (df <= 0) throw std::invalid_argument("student_t_two_sided_p: df <= 0");
    if (!std::isfinite(t)) return 0.0;
    return regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
}

WelchResult welch_t_test(std::span<const double> sample_a,
                         std::span<const double> sample_b) {
    auto na = sample_a.size(), nb = sample_b.size();
    if (na < 2 || nb < 2)
        throw std::invalid_argument("welch_t_test: need at least 2 entries per sample");
    auto mean = [](std::span<const double> s) {
        return std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
    };
    auto var = [&](std::span<const double> s, double m) {
        double v = 0.0;
        for (double x : s) v += (x - m) * (x - m);
        return v / static_cast<double>(s.size() - 1);  // sample variance
    };
    double ma = mean(sample_a), mb = mean(sample_b);
    double va = var(sample_a, ma), vb = var(sample_b, mb);
    double sa = va / static_cast<double>(na), sb = vb / static_cast<double>(nb);

    WelchResult r;
    if (sa + sb == 0.0) {
        // both samples constant
        r.t = 0.0;
        r.df = static_cast<double>(na + nb - 2);
        r.p_value = (ma == mb) ? 1.0 : 0.0;
        if (ma != mb) r.t = std::numeric_limits<double>::infinity() * (ma > mb ? 1 : -1);
        return r;
    }
    r.t = (ma - mb) / std::sqrt(sa + sb);
    r.df = (sa + sb) * (sa + sb) /
           (sa * sa / static_cast<double>(na - 1) + sb * sb / static_cast<double>(nb - 1));
    r.p_value = (r.t == 0.0) ? 1.0 : student_t_two_sided_p(r.t, r.df);
    return r;
}

std::vector<double> rank_table(const std::vector<std::vector<double>>& results) {
    if (results.empty()) throw std::invalid_argument("rank_table: no datasets");
    const std::size_t methods = results.front().size();
    if (methods == 0) throw std::invalid_argument("rank_table: no methods");
    std::vector<double> avg(methods, 0.0);
    for (const auto& row : results) {
        if (row.size() != methods)
            throw std::invalid_argument("rank_table: missing cells");
        std::vector<std::size_t> order(methods);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return row[a] > row[b]; });
        // tied methods share the mean of the rank positions they occupy
        std::size_t pos = 0;
        while (pos < methods) {
            std::size_t end = pos + 1;
            while (end < methods && row[order[end]] == row[order[pos]]) ++end;
            double shared = 0.0;
            for (std::size_t t = pos; t < end; ++t) shared += static_cast<double>(t + 1);
            shared /= static_cast<double>(end - pos);
            for (std::size_t t = pos; t < end; ++t) avg[order[t]] += shared;
            pos = end;
        }
    }
    for (auto& a : avg) a /= static_cast<double>(results.size());
    return avg;
}

}  // namespace culp
