#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "coanet/features.hpp"
#include "coanet/graph.hpp"
#include "coanet/ingest.hpp"
#include "coanet/learn.hpp"

namespace coanet {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitParse = 3;

struct RunConfig {
    std::filesystem::path input_dir;
    std::filesystem::path output_dir;
    std::vector<EvaluationPeriod> periods;  // empty: input periods.json, else defaults
    ClassScheme scheme = ClassScheme::FiveClass;
    int subset_size = 15;
    std::uint64_t seed = 1;
    std::vector<std::string> analyses = {"spearman", "rforest", "sffs", "cfs"};
    int rf_trees = 100;
    int entropy_bins = 3;
    std::optional<int> rich_club_k;
    int sffs_dmax = 10;
    int cv_folds = 10;
    int threads = 0;  // 0: hardware concurrency
    std::string area_filter = "Computer Science";
    Modality modality_filter = Modality::Academic;
};

// How far the pipeline runs; every stage includes the ones before it.
enum class Stage { Ingest, Graphs, Metrics, Features, Analyze, Full };

std::vector<EvaluationPeriod> load_periods_file(const std::filesystem::path& path);

struct LoadedCorpus {
    std::vector<ProgramRoster> rosters;  // sorted by program id
    std::vector<ResumeRecord> resumes;   // sorted by researcher id
    std::vector<EvaluationPeriod> periods;
    ParseStats resume_stats;
};
LoadedCorpus load_corpus(const RunConfig& config);  // throws on parse failure

struct BuiltSample {
    CoauthorshipGraph graph;
    SampleRecord record;
    BuildIssues issues;
};

// One sample per (program, configured period with a grade in 3..7), in
// (program_id, period) order. Fans out across threads; results do not depend
// on the thread count.
std::vector<BuiltSample> build_samples(const LoadedCorpus& corpus, const RunConfig& config);

struct IndexSummaryRow {
    std::string group;  // grade digit or grouped class letter
    long samples = 0;
    double first_author = 0;
    double contribution = 0;
    double seniority = 0;
};
// Mean of the author-order indexes per grade (FiveClass) or per grouped
// class (ThreeClass), ordered from lowest to highest group.
std::vector<IndexSummaryRow> emit_index_summary(std::span<const SampleRecord> samples,
                                                ClassScheme scheme);

// Runs the pipeline through `stage`, writing artifacts and (except for
// Ingest) a manifest of path -> content digest. Exit status 0 on success, 2
// on configuration errors, 3 on input parse failures. Partial artifacts are
// removed on failure.
int run_pipeline(const RunConfig& config, Stage stage = Stage::Full);

// Recomputes the metric table from previously exported graph files instead
// of a corpus; uses config.output_dir, seed and rich_club_k.
int metrics_from_graph_files(const std::filesystem::path& graphs_dir, const RunConfig& config);

}  // namespace coanet
