#include "coanet/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <thread>

#include "coanet/csv.hpp"
#include "coanet/names.hpp"
#include "coanet/util.hpp"
#include "coanet/xml.hpp"

#include <json.hpp>

namespace coanet {

namespace {

using nlohmann::json;

const std::vector<std::string> kKnownAnalyses = {"spearman", "rforest", "sffs", "cfs"};

std::string sanitize_filename(std::string_view s) {
    std::string out;
    for (char c : s) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                  c == '-' || c == '_' || c == '.';
        out += ok ? c : '-';
    }
    return out;
}

// Tracks written artifacts so a failed run leaves nothing behind and a
// successful one ends with a manifest of digests.
class ArtifactSink {
public:
    explicit ArtifactSink(std::filesystem::path root) : root_(std::move(root)) {}

    void write(const std::string& rel, std::string_view content) {
        write_file(root_ / rel, content);
        entries_.emplace_back(rel, fnv1a64(content));
    }

    void write_manifest(std::uint64_t seed) {
        std::sort(entries_.begin(), entries_.end());
        std::string out = "# coanet manifest\n";
        out += strf("# seed %llu\n", static_cast<unsigned long long>(seed));
        for (const auto& [rel, digest] : entries_)
            out += to_hex64(digest) + "\t" + rel + "\n";
        write_file(root_ / "manifest.tsv", out);
    }

    void discard_all() {
        std::error_code ec;
        for (const auto& [rel, digest] : entries_) std::filesystem::remove(root_ / rel, ec);
        std::filesystem::remove(root_ / "manifest.tsv", ec);
        entries_.clear();
    }

    std::size_t count() const { return entries_.size(); }

private:
    std::filesystem::path root_;
    std::vector<std::pair<std::string, std::uint64_t>> entries_;
};

}  // namespace

std::vector<EvaluationPeriod> load_periods_file(const std::filesystem::path& path) {
    json doc = json::parse(read_file(path));
    if (!doc.is_array() || doc.empty()) throw std::runtime_error("periods file must be a non-empty array");
    std::vector<EvaluationPeriod> periods;
    for (const auto& entry : doc) {
        EvaluationPeriod p;
        p.label = entry.at("label").get<std::string>();
        p.start_year = entry.at("start_year").get<int>();
        p.end_year = entry.at("end_year").get<int>();
        if (p.label.empty() || p.start_year > p.end_year)
            throw std::runtime_error("bad period entry '" + p.label + "'");
        periods.push_back(std::move(p));
    }
    // windows must not overlap
    std::vector<EvaluationPeriod> sorted = periods;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.start_year < b.start_year; });
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i].start_year <= sorted[i - 1].end_year)
            throw std::runtime_error("overlapping periods " + sorted[i - 1].label + " and " + sorted[i].label);
    return periods;
}

LoadedCorpus load_corpus(const RunConfig& config) {
    LoadedCorpus corpus;

    if (!config.periods.empty()) {
        corpus.periods = config.periods;
    } else if (std::filesystem::exists(config.input_dir / "periods.json")) {
        corpus.periods = load_periods_file(config.input_dir / "periods.json");
    } else {
        corpus.periods = default_periods();
    }

    std::filesystem::path roster_path = config.input_dir / "roster.csv";
    if (!std::filesystem::exists(roster_path))
        throw MalformedTable("roster file not found: " + roster_path.string());
    corpus.rosters = parse_rosters(read_file(roster_path), config.area_filter, config.modality_filter);
    std::sort(corpus.rosters.begin(), corpus.rosters.end(),
              [](const ProgramRoster& a, const ProgramRoster& b) { return a.program_id < b.program_id; });

    std::filesystem::path resume_dir = config.input_dir / "resumes";
    std::vector<std::filesystem::path> resume_files;
    if (std::filesystem::exists(resume_dir))
        for (const auto& entry : std::filesystem::directory_iterator(resume_dir))
            if (entry.is_regular_file() && entry.path().extension() == ".xml")
                resume_files.push_back(entry.path());
    std::sort(resume_files.begin(), resume_files.end());

    std::set<std::string> seen_ids;
    for (const auto& path : resume_files) {
        ResumeRecord record = parse_resume(read_file(path), &corpus.resume_stats);
        if (!seen_ids.insert(record.researcher_id).second)
            throw MalformedRecord("duplicate researcher id " + record.researcher_id);
        corpus.resumes.push_back(std::move(record));
    }
    std::sort(corpus.resumes.begin(), corpus.resumes.end(),
              [](const ResumeRecord& a, const ResumeRecord& b) { return a.researcher_id < b.researcher_id; });
    return corpus;
}

std::vector<BuiltSample> build_samples(const LoadedCorpus& corpus, const RunConfig& config) {
    struct Job {
        const ProgramRoster* roster;
        const EvaluationPeriod* period;
        int grade;
    };
    std::vector<Job> jobs;
    for (const ProgramRoster& roster : corpus.rosters) {
        for (const EvaluationPeriod& period : corpus.periods) {
            auto it = roster.grades.find(period.label);
            if (it == roster.grades.end()) continue;
            if (it->second < 3 || it->second > 7) {
                log_debug("skipping " + roster.program_id + " " + period.label +
                          " with grade " + std::to_string(it->second));
                continue;
            }
            jobs.push_back({&roster, &period, it->second});
        }
    }

    ReportOptions report_options;
    report_options.rich_club_k = config.rich_club_k;

    std::vector<BuiltSample> results(jobs.size());
    auto run_job = [&](std::size_t i) {
        const Job& job = jobs[i];
        BuiltSample& out = results[i];
        out.graph = build_graph(*job.roster, corpus.resumes, *job.period, &out.issues);
        out.record.id = {job.roster->program_id, job.period->label, job.roster->program_name};
        out.record.report = compute_report(out.graph, report_options);
        out.record.publication_count = out.graph.publication_count;
        out.record.grade = job.grade;

        std::vector<ResearcherIndexes> per_researcher;
        for (const RosterMatch& member : match_roster(*job.roster, corpus.resumes)) {
            if (!member.resume) continue;
            per_researcher.push_back(researcher_indexes(
                filter_publications(member.resume->publications, *job.period), member.roster_name));
        }
        try {
            out.record.indexes = program_indexes(per_researcher);
        } catch (const NoPublishingResearchers&) {
            out.record.indexes = {};  // nothing published: all shares stay zero
        }
    };

    int threads = config.threads > 0 ? config.threads
                                     : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min<int>(threads, static_cast<int>(jobs.size() == 0 ? 1 : jobs.size())));
    if (threads == 1) {
        for (std::size_t i = 0; i < jobs.size(); ++i) run_job(i);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t i = static_cast<std::size_t>(w); i < jobs.size();
                     i += static_cast<std::size_t>(threads))
                    run_job(i);
            });
        for (auto& t : pool) t.join();
    }
    return results;
}

std::vector<IndexSummaryRow> emit_index_summary(std::span<const SampleRecord> samples,
                                                ClassScheme scheme) {
    std::map<std::string, IndexSummaryRow> acc;
    for (const SampleRecord& s : samples) {
        std::string group = scheme == ClassScheme::FiveClass
                                ? std::to_string(s.grade)
                                : regroup({std::to_string(s.grade)}, scheme).front();
        IndexSummaryRow& row = acc[group];
        row.group = group;
        ++row.samples;
        row.first_author += s.indexes.first_author;
        row.contribution += s.indexes.contribution;
        row.seniority += s.indexes.seniority;
    }
    std::vector<IndexSummaryRow> rows;
    auto take = [&](const std::string& group) {
        auto it = acc.find(group);
        if (it == acc.end()) return;
        IndexSummaryRow row = it->second;
        row.first_author /= static_cast<double>(row.samples);
        row.contribution /= static_cast<double>(row.samples);
        row.seniority /= static_cast<double>(row.samples);
        rows.push_back(row);
    };
    if (scheme == ClassScheme::FiveClass) {
        for (char g = '3'; g <= '7'; ++g) take(std::string(1, g));
    } else {
        for (const char* c : {"C", "B", "A"}) take(c);
    }
    return rows;
}

namespace {

json confusion_to_json(const ConfusionMatrix& confusion) {
    json out;
    out["classes"] = confusion.classes;
    out["counts"] = confusion.counts;
    return out;
}

json result_to_json(const AnalysisResult& result) {
    json out;
    out["method"] = method_name(result.method);
    out["seed"] = result.seed;
    out["parameters"] = result.parameters;
    out["per_feature_score"] = result.per_feature_score;

    std::vector<std::pair<std::string, double>> ranked(result.per_feature_score.begin(),
                                                       result.per_feature_score.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        double aa = std::abs(a.second), bb = std::abs(b.second);
        if (aa != bb) return aa > bb;
        return a.first < b.first;
    });
    json ranked_json = json::array();
    for (const auto& [name, score] : ranked) ranked_json.push_back({{"feature", name}, {"score", score}});
    out["ranked_features"] = ranked_json;

    out["degenerate_features"] = result.degenerate_features;
    out["selected_features"] = result.selected_features;
    out["accuracy"] = result.accuracy ? json(*result.accuracy) : json(nullptr);
    out["confusion"] = result.confusion ? confusion_to_json(*result.confusion) : json(nullptr);
    return out;
}

struct AnalysisBundle {
    AnalysisResult aggregate;
    json report;
};

// Per-subset score averaging; a feature missing from a subset's scores (a
// degenerate column there) simply does not contribute.
std::map<std::string, double> mean_scores(const std::vector<AnalysisResult>& parts) {
    std::map<std::string, double> sums;
    std::map<std::string, int> counts;
    for (const AnalysisResult& part : parts) {
        for (const auto& [name, score] : part.per_feature_score) {
            sums[name] += score;
            ++counts[name];
        }
    }
    std::map<std::string, double> out;
    for (const auto& [name, sum] : sums) out[name] = sum / counts[name];
    return out;
}

json subset_summaries(const std::vector<AnalysisResult>& parts,
                      const std::vector<FeatureMatrix>& subsets) {
    json arr = json::array();
    for (std::size_t i = 0; i < parts.size(); ++i) {
        json entry;
        entry["subset"] = i;
        entry["samples"] = subsets[i].sample_count();
        entry["seed"] = parts[i].seed;
        if (parts[i].accuracy) entry["accuracy"] = *parts[i].accuracy;
        if (!parts[i].selected_features.empty()) entry["selected_features"] = parts[i].selected_features;
        arr.push_back(std::move(entry));
    }
    return arr;
}

AnalysisBundle aggregate_bundle(AnalysisMethod method, std::vector<AnalysisResult> parts,
                                const std::vector<FeatureMatrix>& subsets, std::uint64_t seed) {
    AnalysisBundle bundle;
    AnalysisResult& agg = bundle.aggregate;
    agg.method = method;
    agg.seed = seed;
    agg.parameters = parts.front().parameters;
    agg.parameters["subsets"] = std::to_string(parts.size());
    agg.per_feature_score = mean_scores(parts);

    // features degenerate in every subset
    std::map<std::string, int> degenerate_counts;
    for (const AnalysisResult& part : parts)
        for (const std::string& f : part.degenerate_features) ++degenerate_counts[f];
    for (const auto& [name, count] : degenerate_counts)
        if (count == static_cast<int>(parts.size())) agg.degenerate_features.push_back(name);

    // confusion matrices sum across subsets so the accuracy identity holds
    bool have_confusion = true;
    for (const AnalysisResult& part : parts)
        if (!part.confusion) have_confusion = false;
    if (have_confusion && !parts.empty()) {
        ConfusionMatrix total = *parts.front().confusion;
        for (std::size_t i = 1; i < parts.size(); ++i) {
            const ConfusionMatrix& other = *parts[i].confusion;
            if (other.classes != total.classes)
                throw std::logic_error("subset confusion matrices disagree on classes");
            for (std::size_t r = 0; r < total.counts.size(); ++r)
                for (std::size_t c = 0; c < total.counts.size(); ++c)
                    total.counts[r][c] += other.counts[r][c];
        }
        agg.accuracy = static_cast<double>(total.trace()) / static_cast<double>(total.total());
        agg.confusion = std::move(total);
    }

    // membership scores promote to the aggregate selection at >= 0.5
    if (method == AnalysisMethod::Sffs || method == AnalysisMethod::Cfs) {
        std::vector<std::pair<std::string, double>> ranked(agg.per_feature_score.begin(),
                                                           agg.per_feature_score.end());
        std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first < b.first;
        });
        for (const auto& [name, score] : ranked)
            if (score >= 0.5) agg.selected_features.push_back(name);
    }

    bundle.report = result_to_json(agg);
    bundle.report["subsets"] = subset_summaries(parts, subsets);
    return bundle;
}

}  // namespace

int run_pipeline(const RunConfig& config, Stage stage) {
    auto at_least = [&](Stage s) { return static_cast<int>(stage) >= static_cast<int>(s); };

    // configuration checks
    if (config.input_dir.empty()) {
        log_info("configuration error: no input directory");
        return kExitConfig;
    }
    if (config.output_dir.empty() && stage != Stage::Ingest) {
        log_info("configuration error: no output directory");
        return kExitConfig;
    }
    if (config.analyses.empty()) {
        log_info("configuration error: empty analysis list");
        return kExitConfig;
    }
    for (const std::string& a : config.analyses) {
        if (std::find(kKnownAnalyses.begin(), kKnownAnalyses.end(), a) == kKnownAnalyses.end()) {
            log_info("configuration error: unknown analysis '" + a + "'");
            return kExitConfig;
        }
    }
    if (config.subset_size < 1 || config.rf_trees < 1 || config.entropy_bins < 1 ||
        config.cv_folds < 1 || config.threads < 0 || config.sffs_dmax < 0 ||
        (config.rich_club_k && *config.rich_club_k < 1)) {
        log_info("configuration error: bad numeric parameter");
        return kExitConfig;
    }
    if (!config.periods.empty()) {
        std::vector<EvaluationPeriod> sorted = config.periods;
        std::sort(sorted.begin(), sorted.end(),
                  [](const auto& a, const auto& b) { return a.start_year < b.start_year; });
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            if (sorted[i].start_year > sorted[i].end_year ||
                (i > 0 && sorted[i].start_year <= sorted[i - 1].end_year)) {
                log_info("configuration error: malformed or overlapping periods");
                return kExitConfig;
            }
        }
    }

    LoadedCorpus corpus;
    try {
        corpus = load_corpus(config);
    } catch (const std::exception& e) {
        log_info(std::string("input parse failure: ") + e.what());
        return kExitParse;
    }
    log_info(strf("loaded %zu rosters, %zu resumes (%d publications dropped while parsing)",
                  corpus.rosters.size(), corpus.resumes.size(), corpus.resume_stats.total_dropped()));

    if (stage == Stage::Ingest) {
        long publications = 0;
        for (const ResumeRecord& r : corpus.resumes) publications += static_cast<long>(r.publications.size());
        std::printf("rosters      %zu\n", corpus.rosters.size());
        std::printf("resumes      %zu\n", corpus.resumes.size());
        std::printf("publications %ld\n", publications);
        std::printf("periods      %zu\n", corpus.periods.size());
        std::printf("dropped      %d\n", corpus.resume_stats.total_dropped());
        return kExitOk;
    }

    ArtifactSink sink(config.output_dir);
    try {
        std::vector<BuiltSample> samples = build_samples(corpus, config);
        if (samples.empty()) throw std::runtime_error("corpus yields no (program, period) samples");

        long unmatched = 0;
        for (const BuiltSample& s : samples) unmatched += static_cast<long>(s.issues.unmatched_roster_names.size());
        if (unmatched > 0) log_info(strf("%ld roster researchers without a resume", unmatched));

        for (const BuiltSample& s : samples) {
            std::string name = "graphs/" + sanitize_filename(s.record.id.program_id) + "_" +
                               sanitize_filename(s.record.id.period_label) + ".graph";
            sink.write(name, write_graph_file(s.graph, config.seed));
        }

        std::vector<SampleRecord> records;
        for (const BuiltSample& s : samples) records.push_back(s.record);

        if (at_least(Stage::Metrics)) {
            std::vector<MetricRow> rows;
            for (const SampleRecord& r : records)
                rows.push_back({r.id.program_id, r.id.period_label, r.report, r.publication_count});
            sink.write("metrics.csv", write_metric_table(rows, config.seed));
        }

        FeatureMatrix raw;
        FeatureMatrix normalized;
        if (at_least(Stage::Features)) {
            raw = assemble_matrix(records);
            normalized = minmax_normalize(raw);
            sink.write("features_raw.csv", write_feature_matrix(raw, config.seed));
            sink.write("features_normalized.csv", write_feature_matrix(normalized, config.seed));
        }

        if (at_least(Stage::Analyze)) {
            FeatureMatrix analysis_matrix = regroup(normalized, config.scheme);
            std::vector<FeatureMatrix> subsets = balance_subsets(analysis_matrix, config.subset_size);
            log_info(strf("analyses run on %zu balanced subset(s)", subsets.size()));

            std::map<std::string, AnalysisBundle> bundles;
            Rng analysis_seeds = Rng(config.seed).derive(0xa11a);
            for (const std::string& analysis : config.analyses) {
                std::vector<AnalysisResult> parts;
                for (std::size_t i = 0; i < subsets.size(); ++i) {
                    const FeatureMatrix& subset = subsets[i];
                    std::uint64_t sub_seed =
                        analysis_seeds.derive(fnv1a64(analysis)).derive(i).u64();
                    if (analysis == "spearman") {
                        AnalysisResult r = correlation_table(subset);
                        r.seed = sub_seed;
                        parts.push_back(std::move(r));
                    } else if (analysis == "rforest") {
                        int k = std::min<int>(config.cv_folds, static_cast<int>(subset.sample_count()));
                        parts.push_back(random_forest_cv(subset, {config.rf_trees, sub_seed}, k, sub_seed));
                    } else if (analysis == "sffs") {
                        SffsOptions opt;
                        opt.d_max = std::min<int>(config.sffs_dmax, static_cast<int>(subset.feature_count()));
                        opt.folds = config.cv_folds;
                        opt.bins = config.entropy_bins;
                        opt.seed = sub_seed;
                        parts.push_back(sffs(subset, opt));
                    } else {  // cfs
                        AnalysisResult r = cfs_best_first(subset);
                        r.seed = sub_seed;
                        parts.push_back(std::move(r));
                    }
                }
                AnalysisMethod method = analysis == "spearman"  ? AnalysisMethod::Spearman
                                        : analysis == "rforest" ? AnalysisMethod::RandomForest
                                        : analysis == "sffs"    ? AnalysisMethod::Sffs
                                                                : AnalysisMethod::Cfs;
                AnalysisBundle bundle = aggregate_bundle(method, std::move(parts), subsets, config.seed);
                sink.write("analysis/" + analysis + ".json", bundle.report.dump(2) + "\n");
                bundles.emplace(analysis, std::move(bundle));
            }

            // relevance tally: which features each method flags, plus totals
            {
                auto top_k_set = [](const std::map<std::string, double>& scores, std::size_t k) {
                    std::vector<std::pair<std::string, double>> ranked(scores.begin(), scores.end());
                    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
                        double aa = std::abs(a.second), bb = std::abs(b.second);
                        if (aa != bb) return aa > bb;
                        return a.first < b.first;
                    });
                    std::set<std::string> out;
                    for (std::size_t i = 0; i < ranked.size() && i < k; ++i)
                        if (ranked[i].second != 0.0) out.insert(ranked[i].first);
                    return out;
                };
                std::map<std::string, std::set<std::string>> flagged;
                if (bundles.count("cfs"))
                    flagged["cfs"] = std::set<std::string>(bundles["cfs"].aggregate.selected_features.begin(),
                                                           bundles["cfs"].aggregate.selected_features.end());
                if (bundles.count("sffs"))
                    flagged["sffs"] = std::set<std::string>(bundles["sffs"].aggregate.selected_features.begin(),
                                                            bundles["sffs"].aggregate.selected_features.end());
                if (bundles.count("spearman"))
                    flagged["spearman"] = top_k_set(bundles["spearman"].aggregate.per_feature_score, 10);
                if (bundles.count("rforest"))
                    flagged["rforest"] = top_k_set(bundles["rforest"].aggregate.per_feature_score, 10);

                const std::vector<std::pair<std::string, std::string>> columns = {
                    {"selAtt", "cfs"}, {"rforest", "rforest"}, {"spearman", "spearman"}, {"sffs", "sffs"}};
                struct TallyRow {
                    std::string metric;
                    std::vector<std::string> cells;
                    int total = 0;
                };
                std::vector<TallyRow> tally;
                for (const std::string& feature : feature_schema()) {
                    TallyRow row;
                    row.metric = feature;
                    for (const auto& [col, analysis] : columns) {
                        if (!flagged.count(analysis)) {
                            row.cells.push_back("-");
                        } else if (flagged[analysis].count(feature)) {
                            row.cells.push_back("Y");
                            ++row.total;
                        } else {
                            row.cells.push_back("N");
                        }
                    }
                    tally.push_back(std::move(row));
                }
                std::stable_sort(tally.begin(), tally.end(),
                                 [](const TallyRow& a, const TallyRow& b) { return a.total > b.total; });
                std::string out = strf("# seed %llu\n", static_cast<unsigned long long>(config.seed));
                append_csv_row(out, std::vector<std::string>{"metric", "selAtt", "rforest", "spearman",
                                                             "sffs", "total"});
                for (const TallyRow& row : tally) {
                    std::vector<std::string> fields = {row.metric};
                    fields.insert(fields.end(), row.cells.begin(), row.cells.end());
                    fields.push_back(std::to_string(row.total));
                    append_csv_row(out, fields);
                }
                sink.write("relevance_tally.csv", out);
            }
        }

        if (at_least(Stage::Full)) {
            auto write_index_summary = [&](const std::string& rel, ClassScheme scheme) {
                std::string out = strf("# seed %llu\n", static_cast<unsigned long long>(config.seed));
                append_csv_row(out, std::vector<std::string>{"group", "samples", "firstAuthorIndex",
                                                             "contributionIndex", "seniorityIndex"});
                for (const IndexSummaryRow& row : emit_index_summary(records, scheme))
                    append_csv_row(out, std::vector<std::string>{
                                            row.group, std::to_string(row.samples),
                                            format_double(row.first_author),
                                            format_double(row.contribution),
                                            format_double(row.seniority)});
                sink.write(rel, out);
            };
            write_index_summary("plots/indexes_by_grade.csv", ClassScheme::FiveClass);
            write_index_summary("plots/indexes_by_class.csv", ClassScheme::ThreeClass);

            std::map<int, std::pair<long, double>> rpp;  // grade -> (count, sum)
            for (const SampleRecord& r : records) {
                const MetricValue& v = r.report[Metric::ResearchersPerPublication];
                if (v.is_missing()) continue;
                rpp[r.grade].first += 1;
                rpp[r.grade].second += v.value();
            }
            std::string out = strf("# seed %llu\n", static_cast<unsigned long long>(config.seed));
            append_csv_row(out, std::vector<std::string>{"grade", "samples", "meanResearchersPerPublication"});
            for (const auto& [grade, acc] : rpp)
                append_csv_row(out, std::vector<std::string>{
                                        std::to_string(grade), std::to_string(acc.first),
                                        format_double(acc.second / static_cast<double>(acc.first))});
            sink.write("plots/researchers_per_publication.csv", out);
        }

        sink.write_manifest(config.seed);
        log_info(strf("wrote %zu artifacts + manifest to %s", sink.count(),
                      config.output_dir.string().c_str()));
        return kExitOk;
    } catch (const std::exception& e) {
        log_info(std::string("run failed: ") + e.what());
        sink.discard_all();
        return kExitConfig;
    }
}

int metrics_from_graph_files(const std::filesystem::path& graphs_dir, const RunConfig& config) {
    if (config.output_dir.empty()) {
        log_info("configuration error: no output directory");
        return kExitConfig;
    }
    std::vector<std::filesystem::path> files;
    if (std::filesystem::exists(graphs_dir))
        for (const auto& entry : std::filesystem::directory_iterator(graphs_dir))
            if (entry.is_regular_file() && entry.path().extension() == ".graph")
                files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        log_info("input parse failure: no .graph files under " + graphs_dir.string());
        return kExitParse;
    }

    ArtifactSink sink(config.output_dir);
    try {
        ReportOptions options;
        options.rich_club_k = config.rich_club_k;
        std::vector<MetricRow> rows;
        for (const auto& path : files) {
            CoauthorshipGraph g = read_graph_file(read_file(path));
            rows.push_back({g.program_id, g.period.label, compute_report(g, options),
                            g.publication_count});
        }
        sink.write("metrics.csv", write_metric_table(rows, config.seed));
        sink.write_manifest(config.seed);
        log_info(strf("metric table for %zu graphs written to %s", rows.size(),
                      config.output_dir.string().c_str()));
        return kExitOk;
    } catch (const std::exception& e) {
        log_info(std::string("metric recomputation failed: ") + e.what());
        sink.discard_all();
        return kExitParse;
    }
}

}  // namespace coanet
