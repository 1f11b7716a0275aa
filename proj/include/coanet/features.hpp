#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "coanet/indexes.hpp"
#include "coanet/metrics.hpp"

namespace coanet {

struct EmptyInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct InvalidGrade : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SampleId {
    std::string program_id;
    std::string period_label;
    std::string program_name;  // carried for alphabetical subset selection

    bool operator==(const SampleId&) const = default;
};

// One (program, period) observation before matrix assembly.
struct SampleRecord {
    SampleId id;
    MetricReport report;
    long publication_count = 0;
    AuthorOrderIndexes indexes;
    int grade = 0;  // 3..7
};

// m x n numeric table plus a class label per row. Feature columns follow
// feature_schema(); labels stay strings so regrouped classes ride along
// untouched by numeric transforms.
struct FeatureMatrix {
    std::vector<std::string> column_names;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> labels;
    std::vector<SampleId> sample_ids;

    std::size_t sample_count() const { return rows.size(); }
    std::size_t feature_count() const { return column_names.size(); }
    int column_index(std::string_view name) const;
};

enum class ClassScheme { FiveClass, ThreeClass };

// metric fields in declaration order followed by the three author-order
// index columns
const std::vector<std::string>& feature_schema();

// One row per sample in input order; missing metric cells are imputed with
// the column mean over the non-missing entries (0 when a column is entirely
// missing). Throws EmptyInput on an empty sample list.
FeatureMatrix assemble_matrix(std::span<const SampleRecord> samples);

// (x - min) / (max - min) per feature column; constant columns map to 0.
// Labels and sample ids are untouched. Idempotent.
FeatureMatrix minmax_normalize(const FeatureMatrix& m);

// FiveClass keeps grade labels; ThreeClass maps 3,4 -> C; 5 -> B; 6,7 -> A.
std::vector<std::string> regroup(const std::vector<std::string>& labels, ClassScheme scheme);
FeatureMatrix regroup(const FeatureMatrix& m, ClassScheme scheme);

// Splits each over-represented class (more samples than subset_size) into
// consecutive chunks of subset_size ordered alphabetically by program name;
// every returned matrix pairs one chunk per over-represented class (shorter
// chunk lists recycle) with all samples of the other classes.
std::vector<FeatureMatrix> balance_subsets(const FeatureMatrix& m, int subset_size = 15);

std::string write_feature_matrix(const FeatureMatrix& m, std::uint64_t run_seed);
FeatureMatrix read_feature_matrix(std::string_view text);

}  // namespace coanet
