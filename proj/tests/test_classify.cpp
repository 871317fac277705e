#include <algorithm>
#include <fstream>
#include <random>

#include "culp/classify.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace culp;

namespace {

const SimilarityConfig kInvE{SimilarityKind::InverseEuclidean, 1e-6};

Leg load_fixture(const std::string& name) {
    std::ifstream in(std::string(CULP_FIXTURES) + "/" + name);
    REQUIRE(in.good());
    return Leg::load(in);
}

}  // namespace

TEST_CASE("confidence") {
    std::vector<double> v{3.0, 1.0};
    CHECK(confidence(v) == doctest::Approx(0.75));
    std::vector<double> zeros{0.0, 0.0, 0.0, 0.0};
    CHECK(confidence(zeros) == doctest::Approx(0.25));
    std::vector<double> neg{1.0, -0.5};
    CHECK_THROWS_AS(confidence(neg), std::invalid_argument);
}

TEST_CASE("class scores on the hub fixtures") {
    Leg g1 = load_fixture("fig1_leg1.txt");
    auto row = culp_predict(g1, 5, PredictorKind::CS);
    CHECK(row.scores[0] == doctest::Approx(0.7).epsilon(1e-9));
    CHECK(row.scores[1] == doctest::Approx(0.0));
    CHECK(row.predicted == 1);
    CHECK(!row.fallback);
    CHECK(row.confidence == doctest::Approx(1.0));

    Leg g2 = load_fixture("fig1_leg2.txt");
    auto row2 = culp_predict(g2, 5, PredictorKind::CS);
    CHECK(row2.scores[0] == doctest::Approx(0.4).epsilon(1e-9));
    CHECK(row2.predicted == 1);
}

TEST_CASE("two-class toy graph favors the tighter community") {
    Leg toy = load_fixture("toy_leg.txt");
    for (auto kind : {PredictorKind::CN, PredictorKind::AA, PredictorKind::RA,
                      PredictorKind::CS}) {
        auto row = culp_predict(toy, 7, kind);
        CHECK(row.predicted == 2);
        CHECK(row.scores[0] < row.scores[1]);
    }
    auto ra = culp_predict(toy, 7, PredictorKind::RA);
    CHECK(ra.scores[0] == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(ra.scores[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("prediction argument checks") {
    Leg g1 = load_fixture("fig1_leg1.txt");
    CHECK_THROWS_AS(culp_predict(g1, 1, PredictorKind::RA), std::invalid_argument);
    CHECK_THROWS_AS(culp_predict(g1, 6, PredictorKind::RA), std::invalid_argument);
}

TEST_CASE("fallback picks the nearest labeled instance") {
    // the unlabeled point sits far away; with k=1 it still links to its
    // nearest neighbor, so force isolation from class nodes by a labeled
    // pair that only links to each other
    DataMatrix Xl;
    Xl.append_row(std::vector<double>{0.0, 0.0});
    Xl.append_row(std::vector<double>{0.1, 0.0});
    Xl.append_row(std::vector<double>{100.0, 0.0});
    Xl.append_row(std::vector<double>{100.1, 0.0});
    DataMatrix Xu;
    Xu.append_row(std::vector<double>{100.2, 0.0});
    LabelVector y;
    y.class_count = 2;
    y.labels = {1, 1, 2, 2};
    Leg leg = build_leg(Xl, Xu, y, kInvE, 1);
    auto row = culp_predict(leg, 5, PredictorKind::RA);
    if (row.fallback) {
        CHECK(row.predicted == 2);  // nearest labeled instance is node 4
        CHECK(row.confidence == doctest::Approx(0.5));
    } else {
        CHECK(row.predicted == 2);
    }

    // a graph without feature data cannot fall back
    Leg bare = load_fixture("fig1_leg1.txt");
    CHECK(!bare.has_features());
}

TEST_CASE("all-zero scores trigger the fallback") {
    // the two unlabeled points only see each other, so every class node
    // scores zero and the prediction must come from feature space
    DataMatrix Xl;
    Xl.append_row(std::vector<double>{0.0});
    Xl.append_row(std::vector<double>{1.0});
    DataMatrix Xu;
    Xu.append_row(std::vector<double>{100.0});
    Xu.append_row(std::vector<double>{100.1});
    LabelVector y;
    y.class_count = 2;
    y.labels = {1, 2};
    Leg leg = build_leg(Xl, Xu, y, kInvE, 1);
    auto row = culp_predict(leg, 3, PredictorKind::CN);
    CHECK(row.fallback);
    CHECK(row.predicted == 2);  // nearest labeled instance sits at 1.0
    CHECK(row.confidence == doctest::Approx(0.5));
}

TEST_CASE("batch classification on separable blobs") {
    std::mt19937_64 rng(51);
    auto [X, y] = testutil::make_blobs(20, 3, 4, 0.5, rng);
    // hold out every 5th instance
    DataMatrix Xl, Xu;
    LabelVector yl;
    yl.class_count = 3;
    std::vector<int> truth;
    for (std::size_t i = 0; i < X.rows; ++i) {
        if (i % 5 == 0) {
            Xu.append_row(X.row(i));
            truth.push_back(y.labels[i]);
        } else {
            Xl.append_row(X.row(i));
            yl.labels.push_back(y.labels[i]);
        }
    }
    for (auto kind : {PredictorKind::CN, PredictorKind::AA, PredictorKind::RA,
                      PredictorKind::CS}) {
        auto pred = culp_classify_all(Xl, Xu, yl, kInvE, 5, kind);
        REQUIRE(pred.size() == truth.size());
        int hits = 0;
        for (std::size_t i = 0; i < pred.size(); ++i)
            if (pred[i] == truth[i]) ++hits;
        CHECK(hits >= static_cast<int>(0.9 * static_cast<double>(truth.size())));
    }

    DataMatrix empty;
    CHECK(culp_classify_all(Xl, empty, yl, kInvE, 5, PredictorKind::RA).empty());
}

TEST_CASE("low-level nearest neighbor classifier") {
    DataMatrix X;
    X.append_row(std::vector<double>{0.0});
    X.append_row(std::vector<double>{1.0});
    X.append_row(std::vector<double>{10.0});
    LabelVector y;
    y.class_count = 2;
    y.labels = {1, 1, 2};
    auto knn = knn_lowlevel(1);
    knn->fit(X, y);
    CHECK(knn->predict(std::vector<double>{0.4}) == 1);
    CHECK(knn->predict(std::vector<double>{9.0}) == 2);

    auto knn3 = knn_lowlevel(3);
    knn3->fit(X, y);
    CHECK(knn3->predict(std::vector<double>{100.0}) == 1);  // majority of all three

    CHECK_THROWS_AS(knn_lowlevel(0), std::invalid_argument);
    auto big = knn_lowlevel(4);
    CHECK_THROWS_AS(big->fit(X, y), std::invalid_argument);
    auto unfitted = knn_lowlevel(1);
    CHECK_THROWS_AS(unfitted->predict(std::vector<double>{0.0}), std::logic_error);
}

TEST_CASE("low-level knn matches a brute-force oracle") {
    std::mt19937_64 rng(53);
    for (int rep = 0; rep < 30; ++rep) {
        auto X = testutil::random_matrix(25, 3, rng);
        LabelVector y;
        y.class_count = 3;
        std::uniform_int_distribution<int> lab(1, 3);
        for (int i = 0; i < 25; ++i) y.labels.push_back(lab(rng));
        int k = 1 + static_cast<int>(rng() % 7);
        auto knn = knn_lowlevel(k);
        knn->fit(X, y);

        auto q = testutil::random_matrix(1, 3, rng);
        // full sort, count votes, lowest class wins ties
        std::vector<std::pair<double, int>> d;
        for (std::size_t i = 0; i < X.rows; ++i)
            d.push_back({distance(DistanceKind::Euclidean, X.row(i), q.row(0)),
                         static_cast<int>(i)});
        std::sort(d.begin(), d.end());
        std::vector<int> counts(4, 0);
        for (int t = 0; t < k; ++t) ++counts[y.labels[d[t].second]];
        int want = 1;
        for (int c = 2; c <= 3; ++c)
            if (counts[c] > counts[want]) want = c;
        CHECK(knn->predict(q.row(0)) == want);
    }
}

TEST_CASE("vote weight split") {
    std::vector<double> conf{0.5, 0.25, 0.25};
    auto [w, rest] = predictor_weights(conf, 0.8);
    CHECK(w[0] == doctest::Approx(0.4));
    CHECK(w[1] == doctest::Approx(0.2));
    CHECK(w[2] == doctest::Approx(0.2));
    CHECK(rest == doctest::Approx(0.2));

    auto [w1, rest1] = predictor_weights(std::vector<double>{0.9}, 1.0);
    CHECK(w1[0] == doctest::Approx(1.0));
    CHECK(rest1 == doctest::Approx(0.0));

    CHECK_THROWS_AS(predictor_weights(std::vector<double>{}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(predictor_weights(std::vector<double>{0.0, 0.0}, 1.0),
                    std::invalid_argument);
}

TEST_CASE("vote weight conservation sweep") {
    std::mt19937_64 rng(57);
    std::uniform_real_distribution<double> conf(0.01, 1.0), alpha_dist(0.5, 1.0);
    for (int rep = 0; rep < 10000; ++rep) {
        std::size_t n = 1 + rng() % 5;
        std::vector<double> c(n);
        for (auto& v : c) v = conf(rng);
        double alpha = alpha_dist(rng);
        auto [w, rest] = predictor_weights(c, alpha);
        double sum = rest;
        for (double v : w) sum += v;
        CHECK(std::abs(sum - 1.0) < 1e-12);
        double wsum = 0.0;
        for (double v : w) wsum += v;
        CHECK(std::abs(wsum - alpha) < 1e-12);
        for (std::size_t i = 0; i + 1 < n; ++i)  // order follows confidence
            if (c[i] > c[i + 1]) CHECK(w[i] >= w[i + 1]);
    }
}

TEST_CASE("weighted vote") {
    std::vector<int> labels{1, 2, 2};
    std::vector<double> w{0.5, 0.3, 0.3};
    CHECK(vote(labels, w) == 2);
    std::vector<double> w2{0.6, 0.2, 0.2};
    CHECK(vote(labels, w2) == 1);
    std::vector<double> tied{0.5, 0.25, 0.25};
    CHECK(vote(labels, tied) == 1);  // exact tie goes to the lower class
    CHECK_THROWS_AS(vote(labels, std::vector<double>{0.5}), std::invalid_argument);
    CHECK_THROWS_AS(vote(labels, std::vector<double>{0.5, -0.1, 0.6}),
                    std::invalid_argument);
}

TEST_CASE("combined classifier configuration checks") {
    CulmConfig c;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);  // empty predictors
    c.predictors = {PredictorKind::RA, PredictorKind::RA};
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);  // duplicate
    c.predictors = {PredictorKind::RA};
    c.alpha = 0.4;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);  // alpha below range
    c.alpha = 0.8;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);  // missing low-level
    c.low_level = knn_lowlevel(3);
    CHECK_NOTHROW(c.validate());
    c.alpha = 1.0;
    c.low_level.reset();
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("single-predictor combination at full weight equals the plain method") {
    std::mt19937_64 rng(61);
    for (int rep = 0; rep < 20; ++rep) {
        auto [X, y] = testutil::make_blobs(8, 3, 3, 3.0, rng);  // noisy blobs
        DataMatrix Xl, Xu;
        LabelVector yl;
        yl.class_count = 3;
        for (std::size_t i = 0; i < X.rows; ++i) {
            if (i % 4 == 0) Xu.append_row(X.row(i));
            else {
                Xl.append_row(X.row(i));
                yl.labels.push_back(y.labels[i]);
            }
        }
        CulmConfig cfg;
        cfg.predictors = {PredictorKind::RA};
        cfg.alpha = 1.0;
        auto combined = culm_classify(Xl, Xu, yl, kInvE, 3, cfg);
        auto plain = culp_classify_all(Xl, Xu, yl, kInvE, 3, PredictorKind::RA);
        CHECK(combined == plain);
    }
}

TEST_CASE("combined classifier follows the weighted majority") {
    std::mt19937_64 rng(67);
    auto [X, y] = testutil::make_blobs(10, 2, 3, 1.0, rng);
    DataMatrix Xl, Xu;
    LabelVector yl;
    yl.class_count = 2;
    std::vector<int> truth;
    for (std::size_t i = 0; i < X.rows; ++i) {
        if (i % 5 == 0) {
            Xu.append_row(X.row(i));
            truth.push_back(y.labels[i]);
        } else {
            Xl.append_row(X.row(i));
            yl.labels.push_back(y.labels[i]);
        }
    }
    CulmConfig cfg;
    cfg.predictors = {PredictorKind::CN, PredictorKind::AA, PredictorKind::RA,
                      PredictorKind::CS};
    cfg.alpha = 0.7;
    cfg.low_level = knn_lowlevel(3);
    auto pred = culm_classify(Xl, Xu, yl, kInvE, 3, cfg);
    REQUIRE(pred.size() == truth.size());
    int hits = 0;
    for (std::size_t i = 0; i < pred.size(); ++i)
        if (pred[i] == truth[i]) ++hits;
    CHECK(hits >= static_cast<int>(truth.size()) - 1);
}
