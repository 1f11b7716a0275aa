#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "coanet/features.hpp"
#include "coanet/util.hpp"

namespace coanet {

struct DegenerateInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct SingleClassInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct TooFewSamples : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct EmptySubset : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class AnalysisMethod { Spearman, RandomForest, Sffs, Cfs };
std::string method_name(AnalysisMethod m);

struct ConfusionMatrix {
    std::vector<std::string> classes;        // sorted lexicographically
    std::vector<std::vector<long>> counts;   // [actual][predicted]

    long total() const;
    long trace() const;
};

struct AnalysisResult {
    AnalysisMethod method = AnalysisMethod::Spearman;
    std::map<std::string, double> per_feature_score;
    std::vector<std::string> degenerate_features;  // features with no computable score
    std::vector<std::string> selected_features;    // empty for spearman / rforest
    std::optional<double> accuracy;
    std::optional<ConfusionMatrix> confusion;
    std::uint64_t seed = 0;
    std::map<std::string, std::string> parameters;
};

// --- rank correlation ----------------------------------------------------

// 1-based ranks; ties share the mean rank of their run.
std::vector<double> average_ranks(std::span<const double> values);

// Pearson correlation of average ranks. Throws DegenerateInput for fewer
// than 2 points or zero rank variance on either side.
double spearman(std::span<const double> x, std::span<const double> y);

// Numeric value of a class label for correlation purposes: grades parse as
// themselves; the grouped classes order C < B < A.
double label_ordinal(const std::string& label);

// Per-feature Spearman correlation against the numeric label.
AnalysisResult correlation_table(const FeatureMatrix& m);

// --- entropy criterion ----------------------------------------------------

// H(label | joint equal-width-bin pattern of the subset), base 2. Features
// are expected in [0, 1]; values outside clamp into the edge bins.
double mean_conditional_entropy(const FeatureMatrix& m, std::span<const int> feature_subset,
                                int bins = 3);

// --- sequential floating forward selection --------------------------------

struct SffsOptions {
    int d_max = 0;
    int folds = 10;
    int bins = 3;
    std::uint64_t seed = 1;
};

// Single deterministic selection run on the whole matrix; exposed for tests.
std::vector<int> sffs_select(const FeatureMatrix& m, int d_max, int bins = 3);

// Runs sffs_select on each cross-validation training split; per-feature
// score is the selection frequency across folds, selected_features comes
// from a final run on the full data.
AnalysisResult sffs(const FeatureMatrix& m, const SffsOptions& options);

// --- correlation-based subset selection ------------------------------------

// Subset merit k * mean|corr(f, label)| / sqrt(k + k (k-1) mean|corr(fi, fj)|).
// Degenerate correlations contribute 0.
double cfs_merit(const FeatureMatrix& m, std::span<const int> subset);

// Best-first search expanding subsets by single-feature addition; stops
// after stall_limit consecutive expansions without a new best merit.
AnalysisResult cfs_best_first(const FeatureMatrix& m, int stall_limit = 5);

// --- random forest ----------------------------------------------------------

struct ForestParams {
    int trees = 100;
    std::uint64_t seed = 1;
};

class Classifier {
public:
    virtual ~Classifier() = default;
    virtual void fit(const FeatureMatrix& train, std::uint64_t seed) = 0;
    virtual std::string predict(std::span<const double> row) const = 0;
};

// Bagged Gini decision trees: bootstrap per tree, ceil(sqrt(n)) random
// features per split, midpoint thresholds, nodes grown until pure or smaller
// than 2 samples. Deterministic for a fixed seed.
class RandomForest : public Classifier {
public:
    explicit RandomForest(int trees = 100) : trees_(trees) {}

    void fit(const FeatureMatrix& train, std::uint64_t seed) override;
    std::string predict(std::span<const double> row) const override;

    // fraction of all split nodes using each feature; sums to 1, or all 0
    // when no split exists
    std::map<std::string, double> importance() const;
    std::span<const long> split_counts() const { return split_counts_; }
    long total_splits() const { return total_splits_; }
    const std::vector<std::string>& classes() const { return classes_; }

private:
    struct Node {
        int feature = -1;  // -1: leaf
        double threshold = 0.0;
        int left = -1;
        int right = -1;
        int label = -1;
    };
    struct Tree {
        std::vector<Node> nodes;
    };

    int build_node(Tree& tree, std::vector<int>& samples, Rng& rng);
    int predict_class_index(std::span<const double> row) const;

    int trees_ = 100;
    std::vector<Tree> forest_;
    std::vector<std::string> classes_;
    std::vector<std::string> feature_names_;
    std::vector<long> split_counts_;
    long total_splits_ = 0;
    const std::vector<std::vector<double>>* rows_ = nullptr;  // only during fit
    std::vector<int> label_idx_;                              // only during fit
};

// Fits on the full matrix and reports training accuracy plus split-usage
// importance. Throws SingleClassInput when fewer than 2 classes are present.
AnalysisResult random_forest(const FeatureMatrix& m, const ForestParams& params);

// --- cross validation -------------------------------------------------------

// Stratified fold assignment: per-class counts differ by at most 1 across
// folds where possible. Returns a fold index per sample.
std::vector<int> stratified_folds(std::span<const std::string> labels, int k, std::uint64_t seed);

using ClassifierFactory = std::function<std::unique_ptr<Classifier>()>;

// k-fold evaluation with per-fold derived seeds; accuracy and the confusion
// matrix accumulate over the folds. Throws TooFewSamples when m < k.
AnalysisResult cross_validate(const FeatureMatrix& m, const ClassifierFactory& make_classifier,
                              int k, std::uint64_t seed,
                              AnalysisMethod method = AnalysisMethod::RandomForest);

// Random-forest cross validation that also aggregates split-usage importance
// over the fold forests.
AnalysisResult random_forest_cv(const FeatureMatrix& m, const ForestParams& params, int k,
                                std::uint64_t seed);

}  // namespace coanet
