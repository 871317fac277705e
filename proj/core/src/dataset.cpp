#include "culp/dataset.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace culp {

void DataMatrix::append_row(std::span<const double> r) {
    if (rows == 0 && cols == 0) cols = r.size();
    if (r.size() != cols)
        throw std::invalid_argument("append_row: dimension mismatch");
    values.insert(values.end(), r.begin(), r.end());
    ++rows;
}

void DataMatrix::validate() const {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("DataMatrix: need at least one row and column");
    for (double v : values)
        if (!std::isfinite(v))
            throw std::invalid_argument("DataMatrix: non-finite entry");
}

void LabelVector::validate() const {
    if (class_count < 1) throw std::invalid_argument("LabelVector: class_count < 1");
    std::vector<int> seen(class_count, 0);
    for (int l : labels) {
        if (l < 1 || l > class_count)
            throw std::invalid_argument("LabelVector: label outside 1..C");
        seen[l - 1] = 1;
    }
    for (int s : seen)
        if (!s) throw std::invalid_argument("LabelVector: class with no instance");
}

LabelColumn LabelColumn::parse(const std::string& spec) {
    if (spec.empty()) return none();
    if (spec == "last") return last();
    bool numeric = !spec.empty() &&
                   std::all_of(spec.begin(), spec.end(), [](unsigned char c) { return std::isdigit(c); });
    if (numeric) return at(std::stoi(spec));
    return named(spec);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

std::string trimmed(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

LoadedDataset load_csv(const std::string& path, const LabelColumn& label_col,
                       bool has_header) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_csv: cannot open " + path);

    LoadedDataset out;
    std::string line;
    std::size_t lineno = 0;
    std::size_t ncols = 0;
    int label_idx = -1;  // resolved 0-based column, -1 = none
    std::vector<std::string> raw_labels;

    if (has_header) {
        if (!std::getline(in, line))
            throw std::runtime_error("load_csv: empty file " + path);
        ++lineno;
        out.feature_names = split_csv_line(line);
        for (auto& n : out.feature_names) n = trimmed(n);
        ncols = out.feature_names.size();
    }

    if (label_col.mode == LabelColumn::Mode::Name) {
        if (!has_header)
            throw std::runtime_error("load_csv: label column by name requires a header");
        auto it = std::find(out.feature_names.begin(), out.feature_names.end(), label_col.name);
        if (it == out.feature_names.end())
            throw std::runtime_error("load_csv: no column named '" + label_col.name + "'");
        label_idx = static_cast<int>(it - out.feature_names.begin());
    }

    bool any_row = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (trimmed(line).empty()) continue;
        auto fields = split_csv_line(line);
        if (ncols == 0) {
            ncols = fields.size();
        } else if (fields.size() != ncols) {
            throw std::runtime_error("load_csv: ragged row at line " + std::to_string(lineno) +
                                     " (" + std::to_string(fields.size()) + " fields, expected " +
                                     std::to_string(ncols) + ")");
        }
        if (label_idx < 0) {
            switch (label_col.mode) {
                case LabelColumn::Mode::Last: label_idx = static_cast<int>(ncols) - 1; break;
                case LabelColumn::Mode::Index:
                    if (label_col.index < 0 || label_col.index >= static_cast<int>(ncols))
                        throw std::runtime_error("load_csv: label column index out of range");
                    label_idx = label_col.index;
                    break;
                default: break;
            }
        }
        std::vector<double> row;
        row.reserve(ncols);
        for (std::size_t c = 0; c < ncols; ++c) {
            std::string f = trimmed(fields[c]);
            if (static_cast<int>(c) == label_idx) {
                raw_labels.push_back(f);
                continue;
            }
            char* end = nullptr;
            double v = std::strtod(f.c_str(), &end);
            if (f.empty() || end != f.c_str() + f.size())
                throw std::runtime_error("load_csv: parse error at line " + std::to_string(lineno) +
                                         ", column " + std::to_string(c + 1) + ": '" + f + "'");
            row.push_back(v);
        }
        out.X.append_row(row);
        any_row = true;
    }
    if (!any_row) throw std::runtime_error("load_csv: no data rows in " + path);
    out.X.validate();

    if (label_idx >= 0) {
        LabelVector y;
        std::unordered_map<std::string, int> ids;
        for (const auto& s : raw_labels) {
            auto [it, inserted] = ids.try_emplace(s, static_cast<int>(ids.size()) + 1);
            if (inserted) out.class_names.push_back(s);
            y.labels.push_back(it->second);
        }
        y.class_count = static_cast<int>(ids.size());
        out.y = std::move(y);
        if (has_header) out.feature_names.erase(out.feature_names.begin() + label_idx);
    }
    return out;
}

ZScoreTransform ZScoreTransform::fit(const DataMatrix& X) {
    X.validate();
    ZScoreTransform t;
    t.mean.assign(X.cols, 0.0);
    t.stddev.assign(X.cols, 0.0);
    for (std::size_t i = 0; i < X.rows; ++i)
        for (std::size_t j = 0; j < X.cols; ++j) t.mean[j] += X(i, j);
    for (auto& m : t.mean) m /= static_cast<double>(X.rows);
    for (std::size_t i = 0; i < X.rows; ++i)
        for (std::size_t j = 0; j < X.cols; ++j) {
            double d = X(i, j) - t.mean[j];
            t.stddev[j] += d * d;
        }
    for (auto& s : t.stddev) s = std::sqrt(s / static_cast<double>(X.rows));
    return t;
}

DataMatrix ZScoreTransform::apply(const DataMatrix& X) const {
    if (X.cols != mean.size())
        throw std::invalid_argument("ZScoreTransform: dimension mismatch");
    DataMatrix out(X.rows, X.cols);
    for (std::size_t i = 0; i < X.rows; ++i)
        for (std::size_t j = 0; j < X.cols; ++j)
            out(i, j) = stddev[j] > 0 ? (X(i, j) - mean[j]) / stddev[j] : 0.0;
    return out;
}

PcaTransform PcaTransform::fit(const DataMatrix& X, double variance_threshold) {
    if (!(variance_threshold > 0.0 && variance_threshold <= 1.0))
        throw std::invalid_argument("pca_transform: threshold outside (0,1]");
    X.validate();
    if (X.rows < 2) throw std::invalid_argument("pca_transform: need at least 2 rows");

    Eigen::MatrixXd M(X.rows, X.cols);
    for (std::size_t i = 0; i < X.rows; ++i)
        for (std::size_t j = 0; j < X.cols; ++j) M(i, j) = X(i, j);
    Eigen::RowVectorXd mu = M.colwise().mean();
    M.rowwise() -= mu;

    Eigen::MatrixXd cov = (M.adjoint() * M) / static_cast<double>(X.rows - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
    // eigenvalues ascending; walk from the largest down
    Eigen::VectorXd evals = es.eigenvalues().cwiseMax(0.0);
    double total = evals.sum();

    PcaTransform t;
    t.mean.assign(mu.data(), mu.data() + X.cols);
    std::size_t d = X.cols;
    std::size_t keep = 0;
    double acc = 0.0;
    for (std::size_t r = 0; r < d; ++r) {
        acc += evals(static_cast<Eigen::Index>(d - 1 - r));
        ++keep;
        if (total == 0.0 || acc / total >= variance_threshold - 1e-12) break;
    }
    t.components = DataMatrix(d, keep);
    t.explained.resize(keep);
    for (std::size_t r = 0; r < keep; ++r) {
        auto col = es.eigenvectors().col(static_cast<Eigen::Index>(d - 1 - r));
        for (std::size_t j = 0; j < d; ++j) t.components(j, r) = col(static_cast<Eigen::Index>(j));
        t.explained[r] = total > 0 ? evals(static_cast<Eigen::Index>(d - 1 - r)) / total : 0.0;
    }
    return t;
}

DataMatrix PcaTransform::apply(const DataMatrix& X) const {
    if (X.cols != mean.size())
        throw std::invalid_argument("PcaTransform: dimension mismatch");
    std::size_t r = components.cols;
    DataMatrix out(X.rows, r);
    for (std::size_t i = 0; i < X.rows; ++i)
        for (std::size_t c = 0; c < r; ++c) {
            double s = 0.0;
            for (std::size_t j = 0; j < X.cols; ++j)
                s += (X(i, j) - mean[j]) * components(j, c);
            out(i, c) = s;
        }
    return out;
}

std::vector<std::size_t> FoldPlan::test_indices(int fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < assignments.size(); ++i)
        if (assignments[i] == fold) out.push_back(i);
    return out;
}

std::vector<std::size_t> FoldPlan::train_indices(int fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < assignments.size(); ++i)
        if (assignments[i] != fold) out.push_back(i);
    return out;
}

FoldPlan stratified_kfold(const LabelVector& y, int fold_count, std::uint64_t seed) {
    y.validate();
    auto n = y.labels.size();
    if (fold_count < 2) throw std::invalid_argument("stratified_kfold: fold_count < 2");
    if (static_cast<std::size_t>(fold_count) > n)
        throw std::invalid_argument("stratified_kfold: fold_count > instance count");

    FoldPlan plan;
    plan.fold_count = fold_count;
    plan.seed = seed;
    plan.assignments.assign(n, -1);

    std::mt19937_64 rng(seed);
    int offset = 0;  // rotates across classes so fold sizes balance overall
    for (int c = 1; c <= y.class_count; ++c) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            if (y.labels[i] == c) idx.push_back(i);
        std::shuffle(idx.begin(), idx.end(), rng);
        for (std::size_t t = 0; t < idx.size(); ++t)
            plan.assignments[idx[t]] = static_cast<int>((offset + t) % fold_count);
        offset = static_cast<int>((offset + idx.size()) % fold_count);
    }
    return plan;
}

}  // namespace culp
