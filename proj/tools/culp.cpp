// Command-line front end: classify, evaluate, tune, inspect-leg, score-link.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "culp/classify.hpp"
#include "culp/eval.hpp"

using json = nlohmann::json;

namespace {

struct Options {
    std::string config_file;
    std::string train, test, graph;
    std::string label_col = "last";
    bool no_header = false;
    std::string predictor = "ra";
    std::string predictors;  // comma list enables CULM
    double alpha = 0.8;
    int k = 3;
    std::string sim = "inv-euclidean";
    std::string prep = "none";
    int folds = 10;
    int runs = 10;
    std::uint64_t seed = 0;
    int low_level_k = 5;
    int subsample = 0;
    std::string format = "table";
    std::string u, v;
    int inspect_k = 0;
};

std::vector<culp::PredictorKind> parse_predictor_list(const std::string& csv) {
    std::vector<culp::PredictorKind> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(culp::parse_predictor(tok));
    if (out.empty()) throw std::invalid_argument("empty predictor list");
    return out;
}

// Values from a JSON config file act as defaults; explicit command-line
// flags win because only missing flags are appended.
std::vector<std::string> overlay_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string cfg_path;
    for (std::size_t i = 0; i + 1 < args.size(); ++i)
        if (args[i] == "--config") cfg_path = args[i + 1];
    if (cfg_path.empty()) return args;

    std::ifstream in(cfg_path);
    if (!in) throw std::runtime_error("cannot open config file " + cfg_path);
    json cfg = json::parse(in);
    for (auto& [key, value] : cfg.items()) {
        std::string flag = "--" + key;
        if (std::find(args.begin(), args.end(), flag) != args.end()) continue;
        args.push_back(flag);
        if (value.is_string()) args.push_back(value.get<std::string>());
        else args.push_back(value.dump());
    }
    return args;
}

culp::LoadedDataset load_dataset(const Options& opt, const std::string& path,
                                 bool want_labels) {
    auto col = want_labels ? culp::LabelColumn::parse(opt.label_col)
                           : culp::LabelColumn::none();
    return culp::load_csv(path, col, !opt.no_header);
}

void subsample_in_place(culp::LoadedDataset& ds, int cap, std::uint64_t seed) {
    if (cap <= 0 || static_cast<std::size_t>(cap) >= ds.X.rows) return;
    std::vector<std::size_t> idx(ds.X.rows);
    std::iota(idx.begin(), idx.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(static_cast<std::size_t>(cap));
    std::sort(idx.begin(), idx.end());
    culp::DataMatrix X;
    std::vector<int> labels;
    for (auto i : idx) {
        X.append_row(ds.X.row(i));
        if (ds.y) labels.push_back(ds.y->labels[i]);
    }
    ds.X = std::move(X);
    if (ds.y) ds.y->labels = std::move(labels);
}

culp::MethodSpec make_method(const Options& opt) {
    if (!opt.predictors.empty()) {
        auto m = culp::MethodSpec::culm(parse_predictor_list(opt.predictors), opt.alpha,
                                        opt.low_level_k);
        return m;
    }
    return culp::MethodSpec::culp(culp::parse_predictor(opt.predictor));
}

json report_to_json(const culp::EvalReport& rep) {
    const auto& cfg = rep.config;
    json j;
    j["mean_accuracy"] = rep.mean_accuracy;
    j["std_accuracy"] = rep.std_accuracy;
    j["fold_accuracies"] = rep.fold_accuracies;
    j["k"] = cfg.k;
    j["sim"] = culp::to_string(cfg.sim.kind);
    j["prep"] = cfg.prep.name();
    j["folds"] = cfg.folds;
    j["runs"] = cfg.runs;
    j["seed"] = cfg.seed;
    j["wall_seconds"] = rep.wall_seconds;
    if (cfg.method.kind == culp::MethodSpec::Kind::Culp) {
        j["method"] = "culp";
        j["predictor"] = culp::to_string(cfg.method.predictor);
    } else if (cfg.method.kind == culp::MethodSpec::Kind::Culm) {
        j["method"] = "culm";
        std::vector<std::string> ps;
        for (auto p : cfg.method.predictors) ps.push_back(culp::to_string(p));
        j["predictors"] = ps;
        j["alpha"] = cfg.method.alpha;
        j["low_level_k"] = cfg.method.low_level_k;
    } else {
        j["method"] = "knn-baseline";
        j["low_level_k"] = cfg.method.low_level_k;
    }
    return j;
}

void print_report(const culp::EvalReport& rep, const std::string& format) {
    if (format == "json") {
        std::cout << report_to_json(rep).dump(2) << "\n";
        return;
    }
    const auto& cfg = rep.config;
    std::string method = cfg.method.kind == culp::MethodSpec::Kind::Culp
                             ? "CULP-" + culp::to_string(cfg.method.predictor)
                             : (cfg.method.kind == culp::MethodSpec::Kind::Culm
                                    ? "CULM"
                                    : "kNN-baseline");
    std::printf("method      %s\n", method.c_str());
    std::printf("sim         %s\n", culp::to_string(cfg.sim.kind).c_str());
    std::printf("prep        %s\n", cfg.prep.name().c_str());
    if (cfg.method.kind == culp::MethodSpec::Kind::Culm)
        std::printf("alpha       %.3f\n", cfg.method.alpha);
    std::printf("folds/runs  %d x %d\n", cfg.folds, cfg.runs);
    std::printf("accuracy    %.3f \xc2\xb1 %.3f (%d)\n", rep.mean_accuracy,
                rep.std_accuracy, cfg.k);
}

int resolve_node(const culp::Leg& leg, const std::string& tok) {
    if (!tok.empty() && std::all_of(tok.begin(), tok.end(),
                                    [](unsigned char c) { return std::isdigit(c); }))
        return std::stoi(tok);
    int n = leg.labeled_count(), m = leg.unlabeled_count();
    if (tok == "i") return n + 1;  // first unlabeled node
    if (tok.size() >= 2) {
        char kind = tok[0];
        int t = std::stoi(tok.substr(1));
        if (kind == 'l') return t;
        if (kind == 'u') return n + t;
        if (kind == 'j' || kind == 'c') return n + m + t;
    }
    throw std::invalid_argument("cannot resolve node '" + tok + "'");
}

int cmd_classify(const Options& opt) {
    auto train = load_dataset(opt, opt.train, true);
    if (!train.y) throw std::runtime_error("training file has no label column");
    auto test = load_dataset(opt, opt.test, false);
    subsample_in_place(test, opt.subsample, opt.seed);

    culp::DataMatrix X_l = train.X, X_u = test.X;
    culp::Preprocessing prep = culp::Preprocessing::parse(opt.prep);
    if (prep.kind == culp::Preprocessing::Kind::ZScore) {
        auto t = culp::ZScoreTransform::fit(X_l);
        X_l = t.apply(X_l);
        X_u = t.apply(X_u);
    } else if (prep.kind == culp::Preprocessing::Kind::Pca) {
        auto t = culp::PcaTransform::fit(X_l, prep.pca_threshold);
        X_l = t.apply(X_l);
        X_u = t.apply(X_u);
    }

    culp::SimilarityConfig sim{culp::parse_similarity(opt.sim)};
    std::vector<int> predicted;
    if (!opt.predictors.empty()) {
        culp::CulmConfig cc;
        cc.predictors = parse_predictor_list(opt.predictors);
        cc.alpha = opt.alpha;
        cc.low_level = culp::knn_lowlevel(opt.low_level_k);
        predicted = culp::culm_classify(X_l, X_u, *train.y, sim, opt.k, cc);
    } else {
        predicted = culp::culp_classify_all(X_l, X_u, *train.y, sim, opt.k,
                                            culp::parse_predictor(opt.predictor));
    }
    for (int c : predicted) std::cout << train.class_names[c - 1] << "\n";
    return 0;
}

int cmd_evaluate(const Options& opt) {
    auto data = load_dataset(opt, opt.train, true);
    if (!data.y) throw std::runtime_error("data file has no label column");
    subsample_in_place(data, opt.subsample, opt.seed);

    culp::ExperimentConfig cfg;
    cfg.method = make_method(opt);
    cfg.k = opt.k;
    cfg.sim.kind = culp::parse_similarity(opt.sim);
    cfg.prep = culp::Preprocessing::parse(opt.prep);
    cfg.folds = opt.folds;
    cfg.runs = opt.runs;
    cfg.seed = opt.seed;
    print_report(culp::cross_validate(data.X, *data.y, cfg), opt.format);
    return 0;
}

int cmd_tune(const Options& opt) {
    auto data = load_dataset(opt, opt.train, true);
    if (!data.y) throw std::runtime_error("data file has no label column");
    subsample_in_place(data, opt.subsample, opt.seed);

    culp::ExperimentConfig base;
    base.method = make_method(opt);
    base.sim.kind = culp::parse_similarity(opt.sim);
    base.folds = opt.folds;
    base.runs = opt.runs;
    base.seed = opt.seed;

    std::vector<int> ks;
    int k_max = std::min<int>(35, static_cast<int>(data.X.rows) - 1);
    for (int k = 1; k <= k_max; ++k) ks.push_back(k);
    std::vector<culp::SimilarityKind> sims = {culp::SimilarityKind::Cosine,
                                              culp::SimilarityKind::InverseEuclidean,
                                              culp::SimilarityKind::InverseManhattan};
    std::vector<culp::Preprocessing> preps = {
        culp::Preprocessing::parse("none"), culp::Preprocessing::parse("zscore"),
        culp::Preprocessing::parse("pca")};
    std::vector<double> alphas;
    if (base.method.kind == culp::MethodSpec::Kind::Culm)
        alphas = {0.6, 0.7, 0.8, 0.9, 1.0};

    auto result = culp::grid_search(data.X, *data.y, base, ks, sims, preps, alphas);
    print_report(result.report, opt.format);
    return 0;
}

int cmd_inspect_leg(const Options& opt) {
    std::ifstream in(opt.graph);
    if (!in) throw std::runtime_error("cannot open graph file " + opt.graph);
    culp::Leg leg = culp::Leg::load(in);
    std::printf("n  %d\nm  %d\nC  %d\n|E| %zu\n", leg.labeled_count(),
                leg.unlabeled_count(), leg.class_count(), leg.edge_count());
    if (opt.inspect_k > 0) {
        leg.check_edge_bounds(opt.inspect_k);
        std::printf("edge bounds ok for k=%d\n", opt.inspect_k);
    }
    return 0;
}

int cmd_score_link(const Options& opt) {
    std::ifstream in(opt.graph);
    if (!in) throw std::runtime_error("cannot open graph file " + opt.graph);
    culp::Leg leg = culp::Leg::load(in);
    int u = resolve_node(leg, opt.u);
    int v = resolve_node(leg, opt.v);
    double score = culp::link_score(culp::parse_predictor(opt.predictor),
                                    leg.adjacency(), u, v);
    std::printf("%.6f\n", score);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"CULP/CULM: classification via link prediction on a label embedded graph"};
    app.require_subcommand(1);
    app.add_option("--config", opt.config_file, "JSON file supplying any flag as a default");

    auto add_data_flags = [&](CLI::App* c) {
        c->add_option("--train", opt.train, "training/data CSV")->required();
        c->add_option("--label-col", opt.label_col,
                      "label column: 'last', 0-based index, or header name");
        c->add_flag("--no-header", opt.no_header, "CSV files have no header line");
        c->add_option("--seed", opt.seed, "base random seed");
        c->add_option("--subsample", opt.subsample,
                      "cap the instance count (seeded random subsample)");
    };
    auto add_method_flags = [&](CLI::App* c) {
        c->add_option("--predictor", opt.predictor, "link predictor: cn|aa|ra|cs");
        c->add_option("--predictors", opt.predictors,
                      "comma list of predictors; enables CULM voting");
        c->add_option("--alpha", opt.alpha, "CULM predictor/low-level trade-off in [0.5,1]");
        c->add_option("--low-level-k", opt.low_level_k, "k of the built-in kNN low-level classifier");
        c->add_option("--k", opt.k, "kNN graph conversion parameter");
        c->add_option("--sim", opt.sim, "similarity: cosine|inv-euclidean|inv-manhattan");
        c->add_option("--prep", opt.prep, "preprocessing: none|zscore|pca");
    };

    auto* classify = app.add_subcommand("classify", "print one predicted label per test row");
    add_data_flags(classify);
    add_method_flags(classify);
    classify->add_option("--test", opt.test, "test CSV (features only)")->required();

    auto* evaluate = app.add_subcommand("evaluate", "cross-validated accuracy report");
    add_data_flags(evaluate);
    add_method_flags(evaluate);
    evaluate->add_option("--folds", opt.folds, "fold count");
    evaluate->add_option("--runs", opt.runs, "CV repetition count");
    evaluate->add_option("--format", opt.format, "output format: json|table");

    auto* tune = app.add_subcommand("tune", "grid search over k, similarity and preprocessing");
    add_data_flags(tune);
    add_method_flags(tune);
    tune->add_option("--folds", opt.folds, "fold count");
    tune->add_option("--runs", opt.runs, "CV repetitions for the winning config");
    tune->add_option("--format", opt.format, "output format: json|table");

    auto* inspect = app.add_subcommand("inspect-leg", "print graph counts and verify edge bounds");
    inspect->add_option("--graph", opt.graph, "edge-list graph file")->required();
    inspect->add_option("--k", opt.inspect_k, "conversion parameter for the bound check");

    auto* score = app.add_subcommand("score-link", "score one node pair with a link predictor");
    score->add_option("--graph", opt.graph, "edge-list graph file")->required();
    score->add_option("--predictor", opt.predictor, "link predictor: cn|aa|ra|cs");
    score->add_option("--u", opt.u, "first node: id or i/l<t>/u<t>/j<t>")->required();
    score->add_option("--v", opt.v, "second node: id or i/l<t>/u<t>/j<t>")->required();

    // the flag is also accepted after the subcommand name
    for (auto* sub : {classify, evaluate, tune, inspect, score})
        sub->add_option("--config", opt.config_file,
                        "JSON file supplying any flag as a default");

    try {
        auto args = overlay_config(argc, argv);
        std::vector<const char*> cargs{argv[0]};
        for (const auto& a : args) cargs.push_back(a.c_str());
        app.parse(static_cast<int>(cargs.size()), cargs.data());

        if (app.got_subcommand(classify)) return cmd_classify(opt);
        if (app.got_subcommand(evaluate)) return cmd_evaluate(opt);
        if (app.got_subcommand(tune)) return cmd_tune(opt);
        if (app.got_subcommand(inspect)) return cmd_inspect_leg(opt);
        if (app.got_subcommand(score)) return cmd_score_link(opt);
        return 1;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
