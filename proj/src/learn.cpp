#include "coanet/learn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

namespace coanet {

std::string method_name(AnalysisMethod m) {
    switch (m) {
        case AnalysisMethod::Spearman: return "spearman";
        case AnalysisMethod::RandomForest: return "rforest";
        case AnalysisMethod::Sffs: return "sffs";
        case AnalysisMethod::Cfs: return "cfs";
    }
    return "unknown";
}

long ConfusionMatrix::total() const {
    long t = 0;
    for (const auto& row : counts)
        for (long c : row) t += c;
    return t;
}

long ConfusionMatrix::trace() const {
    long t = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) t += counts[i][i];
    return t;
}

// --- rank correlation ----------------------------------------------------

std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        double mean_rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mean_rank;
        i = j + 1;
    }
    return ranks;
}

namespace {

double pearson(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx <= 0 || syy <= 0) throw DegenerateInput("zero rank variance");
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("length mismatch");
    if (x.size() < 2) throw DegenerateInput("need at least 2 points");
    std::vector<double> rx = average_ranks(x);
    std::vector<double> ry = average_ranks(y);
    return pearson(rx, ry);
}

double label_ordinal(const std::string& label) {
    if (label == "A") return 3;
    if (label == "B") return 2;
    if (label == "C") return 1;
    try {
        std::size_t used = 0;
        double v = std::stod(label, &used);
        if (used == label.size()) return v;
    } catch (...) {
    }
    throw std::invalid_argument("label '" + label + "' has no numeric order");
}

AnalysisResult correlation_table(const FeatureMatrix& m) {
    AnalysisResult result;
    result.method = AnalysisMethod::Spearman;
    std::vector<double> grade(m.sample_count());
    for (std::size_t i = 0; i < m.sample_count(); ++i) grade[i] = label_ordinal(m.labels[i]);

    std::vector<double> column(m.sample_count());
    for (std::size_t c = 0; c < m.feature_count(); ++c) {
        for (std::size_t r = 0; r < m.sample_count(); ++r) column[r] = m.rows[r][c];
        try {
            result.per_feature_score[m.column_names[c]] = spearman(column, grade);
        } catch (const DegenerateInput&) {
            result.degenerate_features.push_back(m.column_names[c]);
        }
    }
    return result;
}

// --- entropy criterion ----------------------------------------------------

double mean_conditional_entropy(const FeatureMatrix& m, std::span<const int> feature_subset,
                                int bins) {
    if (feature_subset.empty()) throw EmptySubset("empty feature subset");
    if (bins < 1) throw std::invalid_argument("bins must be >= 1");
    const std::size_t n = m.sample_count();
    if (n == 0) throw DegenerateInput("empty matrix");

    std::vector<std::string> classes = m.labels;
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    std::map<std::string, int> class_idx;
    for (std::size_t i = 0; i < classes.size(); ++i) class_idx[classes[i]] = static_cast<int>(i);

    std::map<std::vector<std::uint8_t>, std::vector<long>> groups;
    std::vector<std::uint8_t> pattern(feature_subset.size());
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t f = 0; f < feature_subset.size(); ++f) {
            double x = m.rows[r][static_cast<std::size_t>(feature_subset[f])];
            int b = static_cast<int>(std::floor(x * bins));
            b = std::clamp(b, 0, bins - 1);
            pattern[f] = static_cast<std::uint8_t>(b);
        }
        auto [it, inserted] = groups.emplace(pattern, std::vector<long>(classes.size(), 0));
        ++it->second[static_cast<std::size_t>(class_idx[m.labels[r]])];
    }

    double h = 0;
    for (const auto& [pat, counts] : groups) {
        long group_n = 0;
        for (long c : counts) group_n += c;
        double group_h = 0;
        for (long c : counts) {
            if (c == 0) continue;
            double p = static_cast<double>(c) / static_cast<double>(group_n);
            group_h -= p * std::log2(p);
        }
        h += static_cast<double>(group_n) / static_cast<double>(n) * group_h;
    }
    return h;
}

// --- sequential floating forward selection --------------------------------

namespace {

FeatureMatrix rows_subset(const FeatureMatrix& m, const std::vector<std::size_t>& rows) {
    FeatureMatrix out;
    out.column_names = m.column_names;
    for (std::size_t r : rows) {
        out.rows.push_back(m.rows[r]);
        out.labels.push_back(m.labels[r]);
        out.sample_ids.push_back(m.sample_ids[r]);
    }
    return out;
}

}  // namespace

std::vector<int> sffs_select(const FeatureMatrix& m, int d_max, int bins) {
    const int n = static_cast<int>(m.feature_count());
    d_max = std::min(d_max, n);
    if (d_max <= 0) return {};

    auto criterion = [&](const std::vector<int>& subset) {
        return mean_conditional_entropy(m, subset, bins);
    };
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> best_value(static_cast<std::size_t>(d_max) + 1, kInf);
    std::vector<std::vector<int>> best_set(static_cast<std::size_t>(d_max) + 1);

    std::vector<int> current;
    std::vector<char> in_set(static_cast<std::size_t>(n), 0);
    auto record = [&](double value) {
        std::size_t k = current.size();
        if (value < best_value[k]) {
            best_value[k] = value;
            best_set[k] = current;
        }
    };

    long guard = 0;
    const long guard_cap = 1000L * (n + 1) * (d_max + 1);
    while (static_cast<int>(current.size()) < d_max && guard++ < guard_cap) {
        // forward step: add the feature that minimizes the criterion
        int best_f = -1;
        double best_j = kInf;
        for (int f = 0; f < n; ++f) {
            if (in_set[static_cast<std::size_t>(f)]) continue;
            current.push_back(f);
            std::sort(current.begin(), current.end());
            double j = criterion(current);
            current.erase(std::find(current.begin(), current.end(), f));
            if (j < best_j) {
                best_j = j;
                best_f = f;
            }
        }
        current.push_back(best_f);
        std::sort(current.begin(), current.end());
        in_set[static_cast<std::size_t>(best_f)] = 1;
        record(best_j);

        // floating step: drop features while that strictly improves on the
        // best value recorded for the smaller size
        while (current.size() > 1 && guard++ < guard_cap) {
            int drop_f = -1;
            double drop_j = kInf;
            for (int f : current) {
                std::vector<int> reduced;
                for (int g : current)
                    if (g != f) reduced.push_back(g);
                double j = criterion(reduced);
                if (j < drop_j) {
                    drop_j = j;
                    drop_f = f;
                }
            }
            if (drop_j < best_value[current.size() - 1]) {
                current.erase(std::find(current.begin(), current.end(), drop_f));
                in_set[static_cast<std::size_t>(drop_f)] = 0;
                record(drop_j);
            } else {
                break;
            }
        }
    }
    return best_set[static_cast<std::size_t>(d_max)];
}

AnalysisResult sffs(const FeatureMatrix& m, const SffsOptions& options) {
    AnalysisResult result;
    result.method = AnalysisMethod::Sffs;
    result.seed = options.seed;
    result.parameters["d_max"] = std::to_string(options.d_max);
    result.parameters["folds"] = std::to_string(options.folds);
    result.parameters["bins"] = std::to_string(options.bins);

    const int folds = std::max(1, std::min<int>(options.folds, static_cast<int>(m.sample_count())));
    std::vector<int> assignment = stratified_folds(m.labels, folds, options.seed);

    std::vector<long> used(m.feature_count(), 0);
    for (int fold = 0; fold < folds; ++fold) {
        std::vector<std::size_t> train_rows;
        for (std::size_t r = 0; r < m.sample_count(); ++r)
            if (assignment[r] != fold) train_rows.push_back(r);
        if (train_rows.empty()) continue;
        FeatureMatrix train = rows_subset(m, train_rows);
        for (int f : sffs_select(train, options.d_max, options.bins)) ++used[static_cast<std::size_t>(f)];
    }
    for (std::size_t f = 0; f < m.feature_count(); ++f)
        result.per_feature_score[m.column_names[f]] =
            static_cast<double>(used[f]) / static_cast<double>(folds);

    for (int f : sffs_select(m, options.d_max, options.bins))
        result.selected_features.push_back(m.column_names[static_cast<std::size_t>(f)]);
    return result;
}

// --- correlation-based subset selection ------------------------------------

namespace {

// symmetric lazy cache of |spearman| correlations; index n = the label column
class CorrelationCache {
public:
    CorrelationCache(const FeatureMatrix& m) : m_(m), n_(static_cast<int>(m.feature_count())) {
        grade_.resize(m.sample_count());
        for (std::size_t i = 0; i < m.sample_count(); ++i) grade_[i] = label_ordinal(m.labels[i]);
        cache_.assign(static_cast<std::size_t>(n_ + 1) * static_cast<std::size_t>(n_ + 1), -1.0);
    }

    double abs_corr(int a, int b) {
        if (a > b) std::swap(a, b);
        double& slot = cache_[static_cast<std::size_t>(a) * static_cast<std::size_t>(n_ + 1) +
                              static_cast<std::size_t>(b)];
        if (slot >= 0) return slot;
        std::vector<double> x = column(a), y = column(b);
        double corr = 0;
        try {
            corr = std::abs(spearman(x, y));
        } catch (const DegenerateInput&) {
            corr = 0;  // constant columns carry no information either way
        }
        slot = corr;
        return corr;
    }

    int label_index() const { return n_; }

private:
    std::vector<double> column(int idx) const {
        if (idx == n_) return grade_;
        std::vector<double> out(m_.sample_count());
        for (std::size_t r = 0; r < m_.sample_count(); ++r)
            out[r] = m_.rows[r][static_cast<std::size_t>(idx)];
        return out;
    }

    const FeatureMatrix& m_;
    int n_;
    std::vector<double> grade_;
    std::vector<double> cache_;
};

double merit_of(CorrelationCache& cache, std::span<const int> subset) {
    const double k = static_cast<double>(subset.size());
    double rcf = 0;
    for (int f : subset) rcf += cache.abs_corr(f, cache.label_index());
    rcf /= k;
    double rff = 0;
    if (subset.size() > 1) {
        long pairs = 0;
        for (std::size_t i = 0; i < subset.size(); ++i)
            for (std::size_t j = i + 1; j < subset.size(); ++j) {
                rff += cache.abs_corr(subset[i], subset[j]);
                ++pairs;
            }
        rff /= static_cast<double>(pairs);
    }
    double denom = std::sqrt(k + k * (k - 1.0) * rff);
    return denom > 0 ? k * rcf / denom : 0.0;
}

}  // namespace

double cfs_merit(const FeatureMatrix& m, std::span<const int> subset) {
    if (subset.empty()) throw EmptySubset("merit of empty subset");
    CorrelationCache cache(m);
    return merit_of(cache, subset);
}

AnalysisResult cfs_best_first(const FeatureMatrix& m, int stall_limit) {
    if (m.feature_count() < 1) throw std::invalid_argument("need at least one feature");
    const int n = static_cast<int>(m.feature_count());
    CorrelationCache cache(m);

    struct Node {
        double merit;
        std::vector<int> subset;  // sorted
        bool operator<(const Node& other) const {
            if (merit != other.merit) return merit > other.merit;  // best first
            return subset < other.subset;
        }
    };

    std::set<Node> open;
    std::set<std::vector<int>> visited;
    open.insert({-1.0, {}});  // start below any real merit
    visited.insert({});

    std::vector<int> best_subset;
    double best_merit = -1.0;
    int stall = 0;
    while (!open.empty() && stall < stall_limit) {
        Node node = *open.begin();
        open.erase(open.begin());
        bool improved = false;
        for (int f = 0; f < n; ++f) {
            if (std::binary_search(node.subset.begin(), node.subset.end(), f)) continue;
            std::vector<int> child = node.subset;
            child.insert(std::lower_bound(child.begin(), child.end(), f), f);
            if (!visited.insert(child).second) continue;
            double merit = merit_of(cache, child);
            if (merit > best_merit + 1e-12) {
                best_merit = merit;
                best_subset = child;
                improved = true;
            }
            open.insert({merit, std::move(child)});
        }
        stall = improved ? 0 : stall + 1;
    }

    AnalysisResult result;
    result.method = AnalysisMethod::Cfs;
    result.parameters["stall_limit"] = std::to_string(stall_limit);
    result.parameters["merit"] = format_double(best_merit);
    for (std::size_t f = 0; f < m.feature_count(); ++f)
        result.per_feature_score[m.column_names[f]] =
            std::binary_search(best_subset.begin(), best_subset.end(), static_cast<int>(f)) ? 1.0 : 0.0;
    for (int f : best_subset) result.selected_features.push_back(m.column_names[static_cast<std::size_t>(f)]);
    return result;
}

// --- random forest ----------------------------------------------------------

void RandomForest::fit(const FeatureMatrix& train, std::uint64_t seed) {
    if (train.sample_count() == 0 || train.feature_count() == 0)
        throw std::invalid_argument("cannot fit on an empty matrix");
    forest_.clear();
    classes_ = train.labels;
    std::sort(classes_.begin(), classes_.end());
    classes_.erase(std::unique(classes_.begin(), classes_.end()), classes_.end());
    feature_names_ = train.column_names;
    split_counts_.assign(train.feature_count(), 0);
    total_splits_ = 0;

    std::map<std::string, int> class_index;
    for (std::size_t i = 0; i < classes_.size(); ++i) class_index[classes_[i]] = static_cast<int>(i);
    label_idx_.resize(train.sample_count());
    for (std::size_t i = 0; i < train.sample_count(); ++i) label_idx_[i] = class_index[train.labels[i]];
    rows_ = &train.rows;

    const int m = static_cast<int>(train.sample_count());
    Rng forest_rng(seed);
    forest_.resize(static_cast<std::size_t>(trees_));
    for (int t = 0; t < trees_; ++t) {
        Rng tree_rng = forest_rng.derive(static_cast<std::uint64_t>(t));
        std::vector<int> bootstrap(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i)
            bootstrap[static_cast<std::size_t>(i)] = static_cast<int>(tree_rng.below(static_cast<std::uint64_t>(m)));
        build_node(forest_[static_cast<std::size_t>(t)], bootstrap, tree_rng);
    }
    rows_ = nullptr;
    label_idx_.clear();
}

int RandomForest::build_node(Tree& tree, std::vector<int>& samples, Rng& rng) {
    const auto& rows = *rows_;
    auto majority = [&]() {
        std::vector<long> counts(classes_.size(), 0);
        for (int s : samples) ++counts[static_cast<std::size_t>(label_idx_[static_cast<std::size_t>(s)])];
        int best = 0;
        for (std::size_t c = 1; c < counts.size(); ++c)
            if (counts[c] > counts[static_cast<std::size_t>(best)]) best = static_cast<int>(c);
        return best;  // first maximum = lexicographically smallest class
    };

    bool pure = true;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (label_idx_[static_cast<std::size_t>(samples[i])] !=
            label_idx_[static_cast<std::size_t>(samples[0])]) {
            pure = false;
            break;
        }
    }
    if (pure || samples.size() < 2) {
        Node leaf;
        leaf.label = samples.empty() ? 0 : majority();
        tree.nodes.push_back(leaf);
        return static_cast<int>(tree.nodes.size() - 1);
    }

    const int n_features = static_cast<int>(feature_names_.size());
    const int mtry = std::min(n_features, static_cast<int>(std::ceil(std::sqrt(n_features))));
    // draw mtry distinct features via partial Fisher-Yates
    std::vector<int> pool(static_cast<std::size_t>(n_features));
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < mtry; ++i) {
        std::size_t j = static_cast<std::size_t>(i) +
                        static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(n_features - i)));
        std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
    }

    const std::size_t total = samples.size();
    std::vector<long> total_counts(classes_.size(), 0);
    for (int s : samples) ++total_counts[static_cast<std::size_t>(label_idx_[static_cast<std::size_t>(s)])];

    int best_feature = -1;
    double best_threshold = 0;
    double best_impurity = std::numeric_limits<double>::infinity();

    std::vector<std::pair<double, int>> ordered(total);  // (value, class index)
    std::vector<long> left_counts(classes_.size());
    for (int fi = 0; fi < mtry; ++fi) {
        int f = pool[static_cast<std::size_t>(fi)];
        for (std::size_t i = 0; i < total; ++i) {
            int s = samples[i];
            ordered[i] = {rows[static_cast<std::size_t>(s)][static_cast<std::size_t>(f)],
                          label_idx_[static_cast<std::size_t>(s)]};
        }
        std::sort(ordered.begin(), ordered.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::fill(left_counts.begin(), left_counts.end(), 0);
        long left_n = 0;
        for (std::size_t i = 0; i + 1 < total; ++i) {
            ++left_counts[static_cast<std::size_t>(ordered[i].second)];
            ++left_n;
            if (ordered[i].first == ordered[i + 1].first) continue;  // not a boundary
            long right_n = static_cast<long>(total) - left_n;
            double gini_left = 1.0, gini_right = 1.0;
            for (std::size_t c = 0; c < classes_.size(); ++c) {
                double pl = static_cast<double>(left_counts[c]) / static_cast<double>(left_n);
                double pr = static_cast<double>(total_counts[c] - left_counts[c]) /
                            static_cast<double>(right_n);
                gini_left -= pl * pl;
                gini_right -= pr * pr;
            }
            double weighted = (static_cast<double>(left_n) * gini_left +
                               static_cast<double>(right_n) * gini_right) /
                              static_cast<double>(total);
            if (weighted < best_impurity) {
                best_impurity = weighted;
                best_feature = f;
                best_threshold = ordered[i].first + (ordered[i + 1].first - ordered[i].first) / 2.0;
            }
        }
    }

    if (best_feature < 0) {  // all candidate features constant on this node
        Node leaf;
        leaf.label = majority();
        tree.nodes.push_back(leaf);
        return static_cast<int>(tree.nodes.size() - 1);
    }

    std::vector<int> left, right;
    for (int s : samples) {
        double v = rows[static_cast<std::size_t>(s)][static_cast<std::size_t>(best_feature)];
        (v < best_threshold ? left : right).push_back(s);
    }
    // midpoints sit strictly between two observed values, so both sides are
    // nonempty and recursion terminates
    samples.clear();
    samples.shrink_to_fit();

    ++split_counts_[static_cast<std::size_t>(best_feature)];
    ++total_splits_;
    Node node;
    node.feature = best_feature;
    node.threshold = best_threshold;
    tree.nodes.push_back(node);
    int self = static_cast<int>(tree.nodes.size() - 1);
    int li = build_node(tree, left, rng);
    int ri = build_node(tree, right, rng);
    tree.nodes[static_cast<std::size_t>(self)].left = li;
    tree.nodes[static_cast<std::size_t>(self)].right = ri;
    return self;
}

int RandomForest::predict_class_index(std::span<const double> row) const {
    std::vector<long> votes(classes_.size(), 0);
    for (const Tree& tree : forest_) {
        int at = 0;
        while (tree.nodes[static_cast<std::size_t>(at)].feature >= 0) {
            const Node& node = tree.nodes[static_cast<std::size_t>(at)];
            at = row[static_cast<std::size_t>(node.feature)] < node.threshold ? node.left : node.right;
        }
        ++votes[static_cast<std::size_t>(tree.nodes[static_cast<std::size_t>(at)].label)];
    }
    int best = 0;
    for (std::size_t c = 1; c < votes.size(); ++c)
        if (votes[c] > votes[static_cast<std::size_t>(best)]) best = static_cast<int>(c);
    return best;  // ties resolve to the lexicographically smallest class
}

std::string RandomForest::predict(std::span<const double> row) const {
    if (forest_.empty() || classes_.empty()) throw std::logic_error("predict before fit");
    return classes_[static_cast<std::size_t>(predict_class_index(row))];
}

std::map<std::string, double> RandomForest::importance() const {
    std::map<std::string, double> out;
    for (std::size_t f = 0; f < feature_names_.size(); ++f)
        out[feature_names_[f]] =
            total_splits_ > 0
                ? static_cast<double>(split_counts_[f]) / static_cast<double>(total_splits_)
                : 0.0;
    return out;
}

AnalysisResult random_forest(const FeatureMatrix& m, const ForestParams& params) {
    std::set<std::string> distinct(m.labels.begin(), m.labels.end());
    if (distinct.size() < 2) throw SingleClassInput("training data has a single class");

    RandomForest forest(params.trees);
    forest.fit(m, params.seed);

    AnalysisResult result;
    result.method = AnalysisMethod::RandomForest;
    result.seed = params.seed;
    result.parameters["trees"] = std::to_string(params.trees);
    result.per_feature_score = forest.importance();

    ConfusionMatrix confusion;
    confusion.classes = forest.classes();
    confusion.counts.assign(confusion.classes.size(), std::vector<long>(confusion.classes.size(), 0));
    std::map<std::string, std::size_t> class_idx;
    for (std::size_t i = 0; i < confusion.classes.size(); ++i) class_idx[confusion.classes[i]] = i;
    long correct = 0;
    for (std::size_t r = 0; r < m.sample_count(); ++r) {
        std::string predicted = forest.predict(m.rows[r]);
        ++confusion.counts[class_idx[m.labels[r]]][class_idx[predicted]];
        if (predicted == m.labels[r]) ++correct;
    }
    result.accuracy = static_cast<double>(correct) / static_cast<double>(m.sample_count());
    result.confusion = std::move(confusion);
    return result;
}

// --- cross validation -------------------------------------------------------

std::vector<int> stratified_folds(std::span<const std::string> labels, int k, std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("folds must be >= 1");
    std::map<std::string, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);

    Rng rng(seed);
    std::vector<int> fold(labels.size(), 0);
    int cursor = 0;  // rolling across classes keeps overall fold sizes even
    for (auto& [label, idxs] : by_class) {
        rng.shuffle(idxs);
        for (std::size_t i : idxs) {
            fold[i] = cursor % k;
            ++cursor;
        }
    }
    return fold;
}

AnalysisResult cross_validate(const FeatureMatrix& m, const ClassifierFactory& make_classifier,
                              int k, std::uint64_t seed, AnalysisMethod method) {
    if (static_cast<int>(m.sample_count()) < k)
        throw TooFewSamples(strf("%zu samples for %d folds", m.sample_count(), k));

    std::vector<int> assignment = stratified_folds(m.labels, k, seed);

    ConfusionMatrix confusion;
    confusion.classes = m.labels;
    std::sort(confusion.classes.begin(), confusion.classes.end());
    confusion.classes.erase(std::unique(confusion.classes.begin(), confusion.classes.end()),
                            confusion.classes.end());
    confusion.counts.assign(confusion.classes.size(), std::vector<long>(confusion.classes.size(), 0));
    std::map<std::string, std::size_t> class_idx;
    for (std::size_t i = 0; i < confusion.classes.size(); ++i) class_idx[confusion.classes[i]] = i;

    Rng fold_seeds = Rng(seed).derive(0xf01d);
    long correct = 0;
    for (int fold = 0; fold < k; ++fold) {
        std::vector<std::size_t> train_rows, test_rows;
        for (std::size_t r = 0; r < m.sample_count(); ++r)
            (assignment[r] == fold ? test_rows : train_rows).push_back(r);
        std::uint64_t fold_seed = fold_seeds.derive(static_cast<std::uint64_t>(fold)).u64();
        if (test_rows.empty()) continue;
        if (train_rows.empty()) continue;

        FeatureMatrix train = rows_subset(m, train_rows);
        std::unique_ptr<Classifier> model = make_classifier();
        model->fit(train, fold_seed);
        for (std::size_t r : test_rows) {
            std::string predicted = model->predict(m.rows[r]);
            ++confusion.counts[class_idx[m.labels[r]]][class_idx[predicted]];
            if (predicted == m.labels[r]) ++correct;
        }
    }

    AnalysisResult result;
    result.method = method;
    result.seed = seed;
    result.parameters["folds"] = std::to_string(k);
    result.accuracy = static_cast<double>(correct) / static_cast<double>(m.sample_count());
    result.confusion = std::move(confusion);
    return result;
}

AnalysisResult random_forest_cv(const FeatureMatrix& m, const ForestParams& params, int k,
                                std::uint64_t seed) {
    std::vector<long> split_totals(m.feature_count(), 0);
    long all_splits = 0;
    auto factory = [&]() -> std::unique_ptr<Classifier> {
        struct Recording : RandomForest {
            Recording(int trees, std::vector<long>* totals, long* all) : RandomForest(trees), totals_(totals), all_(all) {}
            void fit(const FeatureMatrix& train, std::uint64_t fit_seed) override {
                RandomForest::fit(train, fit_seed);
                auto counts = split_counts();
                for (std::size_t f = 0; f < counts.size(); ++f) (*totals_)[f] += counts[f];
                *all_ += total_splits();
            }
            std::vector<long>* totals_;
            long* all_;
        };
        return std::make_unique<Recording>(params.trees, &split_totals, &all_splits);
    };

    AnalysisResult result = cross_validate(m, factory, k, seed, AnalysisMethod::RandomForest);
    result.parameters["trees"] = std::to_string(params.trees);
    for (std::size_t f = 0; f < m.feature_count(); ++f)
        result.per_feature_score[m.column_names[f]] =
            all_splits > 0 ? static_cast<double>(split_totals[f]) / static_cast<double>(all_splits) : 0.0;
    return result;
}

}  // namespace coanet
