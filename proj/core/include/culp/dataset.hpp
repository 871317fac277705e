#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace culp {

/// Dense row-major feature matrix. One row per instance.
struct DataMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    DataMatrix() = default;
    DataMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), values(r * c, 0.0) {}

    double operator()(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
    double& operator()(std::size_t i, std::size_t j) { return values[i * cols + j]; }

    std::span<const double> row(std::size_t i) const {
        return {values.data() + i * cols, cols};
    }

    void append_row(std::span<const double> r);

    // Throws std::invalid_argument on NaN/Inf entries or an empty matrix.
    void validate() const;
};

/// Class labels remapped to 1..C.
struct LabelVector {
    std::vector<int> labels;
    int class_count = 0;

    void validate() const;
};

/// Which CSV column holds the label, if any.
struct LabelColumn {
    enum class Mode { None, Last, Index, Name };
    Mode mode = Mode::None;
    int index = -1;      // 0-based, for Mode::Index
    std::string name;    // for Mode::Name

    static LabelColumn none() { return {}; }
    static LabelColumn last() { return {Mode::Last, -1, {}}; }
    static LabelColumn at(int idx) { return {Mode::Index, idx, {}}; }
    static LabelColumn named(std::string n) { return {Mode::Name, -1, std::move(n)}; }
    // "last", a non-negative integer, or a header name.
    static LabelColumn parse(const std::string& spec);
};

struct LoadedDataset {
    DataMatrix X;
    std::optional<LabelVector> y;
    std::vector<std::string> class_names;    // class id c printed as class_names[c-1]
    std::vector<std::string> feature_names;  // empty when the file has no header
};

// Parses a comma-separated file of reals plus an optional discrete label column.
// Labels are remapped to 1..C in order of first appearance.
// Throws std::runtime_error with row/column location on malformed input.
LoadedDataset load_csv(const std::string& path, const LabelColumn& label_col,
                       bool has_header);

/// Per-column z-score statistics, fit once and reapplied to held-out rows.
struct ZScoreTransform {
    std::vector<double> mean;
    std::vector<double> stddev;  // population std; 0 marks a constant column

    static ZScoreTransform fit(const DataMatrix& X);
    DataMatrix apply(const DataMatrix& X) const;
};

inline std::pair<DataMatrix, ZScoreTransform> zscore_normalize(const DataMatrix& X) {
    auto t = ZScoreTransform::fit(X);
    return {t.apply(X), t};
}

/// Principal-component projection basis retaining a target explained-variance fraction.
struct PcaTransform {
    std::vector<double> mean;
    DataMatrix components;              // d x r, columns are principal directions
    std::vector<double> explained;      // per-component explained-variance fraction

    static PcaTransform fit(const DataMatrix& X, double variance_threshold);
    DataMatrix apply(const DataMatrix& X) const;
    std::size_t output_dims() const { return components.cols; }
};

inline std::pair<DataMatrix, PcaTransform> pca_transform(const DataMatrix& X,
                                                         double variance_threshold) {
    auto t = PcaTransform::fit(X, variance_threshold);
    return {t.apply(X), t};
}

/// Stratified fold assignment: per-class counts across folds differ by at most 1.
struct FoldPlan {
    int fold_count = 0;
    std::vector<int> assignments;  // fold index in 0..fold_count-1 per instance
    std::uint64_t seed = 0;

    std::vector<std::size_t> test_indices(int fold) const;
    std::vector<std::size_t> train_indices(int fold) const;
};

FoldPlan stratified_kfold(const LabelVector& y, int fold_count, std::uint64_t seed);

}  // namespace culp
