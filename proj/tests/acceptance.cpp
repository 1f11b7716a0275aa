// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// fails. Criteria 8 and 10 drive the installed CLI binary; everything else
// exercises the library directly against the brute-force oracles.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <thread>
#include <vector>

#include "coanet/corpus.hpp"
#include "coanet/indexes.hpp"
#include "coanet/learn.hpp"
#include "coanet/names.hpp"
#include "coanet/pipeline.hpp"
#include "coanet/util.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace coanet;

namespace {

struct Context {
    fs::path fixtures;
    fs::path tool;
    fs::path scratch;
};

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

bool close_enough(double a, double b, double tol = 1e-9) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

// ---------- criterion 1: metric / oracle equivalence -------------------------

std::string check_graph_against_oracles(const SimpleGraph& g) {
    oracle::Matrix m = oracle::from_graph(g);
    MetricReport r = compute_report(g);
    std::ostringstream why;

    auto mismatch = [&](const char* field, const std::string& detail) {
        why << field << ": " << detail << " (n=" << m.n << ", e=" << m.edges() << ")";
        return why.str();
    };
    auto check_value = [&](Metric metric, const char* field, std::optional<double> expected,
                           double tol = 1e-9) -> std::string {
        const MetricValue& got = r[metric];
        if (got.is_missing() != !expected.has_value())
            return mismatch(field, got.is_missing() ? "unexpectedly missing" : "unexpectedly present");
        if (expected && !close_enough(got.value(), *expected, tol))
            return mismatch(field, strf("%.15g vs oracle %.15g", got.value(), *expected));
        return "";
    };

    if (r[Metric::NumberNodes].value() != m.n) return mismatch("numberNodes", "count");
    if (r[Metric::NumberEdges].value() != static_cast<double>(m.edges()))
        return mismatch("numberEdges", "count");

    int isolated = 0;
    for (int v = 0; v < m.n; ++v)
        if (m.degree(v) == 0) ++isolated;
    if (r[Metric::NumberIsolatedNodes].value() != isolated)
        return mismatch("numberIsolatedNodes", "count");
    std::string err;
    if (!(err = check_value(Metric::PercIsolatedNodes, "percIsolatedNodes",
                            m.n > 0 ? std::optional<double>(static_cast<double>(isolated) / m.n)
                                    : std::nullopt))
             .empty())
        return err;

    oracle::DegreeOracle deg = oracle::degree_stats(m);
    if (!(err = check_value(Metric::AvgDegreeCentrality, "avgDegreeCentrality", deg.average)).empty())
        return err;
    if (!(err = check_value(Metric::CoefficientVariation, "coefficientVariation", deg.cv)).empty())
        return err;

    if (!(err = check_value(Metric::ClusterCoefficient, "clusterCoefficient", oracle::clustering(m)))
             .empty())
        return err;

    oracle::PathOracle paths = oracle::path_stats(m);
    if (!(err = check_value(Metric::AvgPathLength, "avgPathLength", paths.apl)).empty()) return err;
    if (!(err = check_value(Metric::NetworkDiameter, "networkDiameter",
                            paths.diameter ? std::optional<double>(*paths.diameter) : std::nullopt))
             .empty())
        return err;

    std::vector<double> bet =
        m.n <= 8 ? oracle::betweenness_paths(m) : oracle::betweenness_pairs(m);
    double avg_bet = 0;
    for (double b : bet) avg_bet += b;
    avg_bet /= m.n;
    if (!(err = check_value(Metric::AvgBetweennessCentrality, "avgBetweennessCentrality", avg_bet))
             .empty())
        return err;

    if (!(err = check_value(Metric::EigenCentrality, "eigenCentrality", oracle::eigen_mean(m)))
             .empty())
        return err;

    if (!(err = check_value(Metric::AssortCoefficient, "assortCoefficient", oracle::assortativity(m)))
             .empty())
        return err;

    int k = default_rich_club_k(g);
    if (!(err = check_value(Metric::RichClubCoefficient, "richClubCoefficient",
                            oracle::rich_club(m, k)))
             .empty())
        return err;

    oracle::SwanOracle swan = oracle::swan_range(m);
    if (!(err = check_value(Metric::SwanConnectivityMin, "swanConnectivityMin", swan.min)).empty())
        return err;
    if (!(err = check_value(Metric::SwanConnectivityMax, "swanConnectivityMax", swan.max)).empty())
        return err;

    std::optional<double> rpp;
    if (m.edges() > 0) rpp = static_cast<double>(m.n) / static_cast<double>(m.edges());
    if (!(err = check_value(Metric::ResearchersPerPublication, "researchersPerPublication", rpp))
             .empty())
        return err;
    return "";
}

Outcome criterion_metric_oracles(const Context&) {
    Outcome out;

    // every labeled graph on up to 6 nodes
    for (int n = 1; n <= 6 && out.pass; ++n) {
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
        const std::uint32_t masks = 1u << pairs.size();
        for (std::uint32_t mask = 0; mask < masks; ++mask) {
            SimpleGraph g(n);
            for (std::size_t b = 0; b < pairs.size(); ++b)
                if (mask & (1u << b)) g.add_edge(pairs[b].first, pairs[b].second);
            g.finalize();
            std::string err = check_graph_against_oracles(g);
            if (!err.empty()) {
                out.fail("n=" + std::to_string(n) + " mask=" + std::to_string(mask) + " " + err);
                break;
            }
        }
    }

    // every labeled graph on 7 nodes, split across workers
    if (out.pass) {
        const int n = 7;
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
        const std::uint32_t masks = 1u << pairs.size();
        unsigned workers = std::max(1u, std::thread::hardware_concurrency());
        std::atomic<bool> failed{false};
        std::vector<std::string> errors(workers);
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                SimpleGraph g;
                for (std::uint32_t mask = w; mask < masks && !failed.load(std::memory_order_relaxed);
                     mask += workers) {
                    g.reset(n);
                    for (std::size_t b = 0; b < pairs.size(); ++b)
                        if (mask & (1u << b)) g.add_edge(pairs[b].first, pairs[b].second);
                    g.finalize();
                    std::string err = check_graph_against_oracles(g);
                    if (!err.empty()) {
                        errors[w] = "n=7 mask=" + std::to_string(mask) + " " + err;
                        failed.store(true);
                        return;
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
        if (failed.load())
            for (const auto& e : errors)
                if (!e.empty()) out.fail(e);
    }

    // 1000 seeded random graphs on up to 30 nodes
    if (out.pass) {
        Rng rng(518);
        for (int trial = 0; trial < 1000; ++trial) {
            int n = 1 + static_cast<int>(rng.below(30));
            double p = rng.pick(std::vector<double>{0.04, 0.1, 0.2, 0.35, 0.6, 0.85});
            SimpleGraph g(n);
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v)
                    if (rng.chance(p)) g.add_edge(u, v);
            g.finalize();
            std::string err = check_graph_against_oracles(g);
            if (!err.empty()) {
                out.fail("random trial " + std::to_string(trial) + " " + err);
                break;
            }
        }
    }
    return out;
}

// ---------- criterion 2: edit distance --------------------------------------

Outcome criterion_levenshtein(const Context&) {
    Outcome out;
    std::vector<std::string> words{""};
    std::size_t start = 0;
    for (int len = 1; len <= 6; ++len) {
        std::size_t end = words.size();
        for (std::size_t i = start; i < end; ++i)
            for (char c : {'a', 'b', 'c'}) words.push_back(words[i] + c);
        start = end;
    }
    for (const std::string& a : words) {
        for (const std::string& b : words) {
            std::size_t expected = oracle::levenshtein_table(a, b);
            if (levenshtein(a, b) != expected) {
                out.fail("'" + a + "' vs '" + b + "'");
                return out;
            }
        }
    }

    Rng rng(9090);
    for (int trial = 0; trial < 10000; ++trial) {
        auto make = [&] {
            std::string s;
            int len = static_cast<int>(rng.below(13));
            for (int i = 0; i < len; ++i) s += static_cast<char>('a' + rng.below(5));
            return s;
        };
        std::string a = make(), b = make();
        if (levenshtein(a, b) != oracle::levenshtein_table(a, b)) {
            out.fail("random trial " + std::to_string(trial) + ": '" + a + "' vs '" + b + "'");
            return out;
        }
    }
    return out;
}

// ---------- criterion 3: author-order index coherence -------------------------

Outcome criterion_index_coherence(const Context&) {
    Outcome out;
    Rng rng(33);
    int counted_cases = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<Publication> pubs;
        int n = static_cast<int>(rng.below(10));
        for (int i = 0; i < n; ++i) {
            Publication p;
            p.title = strf("t%d", i);
            p.year = 2008;
            int n_authors = 1 + static_cast<int>(rng.below(6));
            int my_slot = static_cast<int>(rng.below(static_cast<std::uint64_t>(n_authors) + 1));
            for (int a = 0; a < n_authors; ++a)
                p.authors.push_back(a == my_slot ? "Probe Person Name"
                                                 : strf("Somebody Else %02d", a));
            pubs.push_back(std::move(p));
        }
        ResearcherIndexes r = researcher_indexes(pubs, "Probe Person Name");
        auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
        if (!in_unit(r.values.first_author) || !in_unit(r.values.contribution) ||
            !in_unit(r.values.seniority)) {
            out.fail("share outside [0,1] at trial " + std::to_string(trial));
            return out;
        }
        if (r.counted_publications >= 1) {
            ++counted_cases;
            if (std::abs(r.values.sum() - 1.0) > 1e-12) {
                out.fail(strf("triple sums to %.17g at trial %d", r.values.sum(), trial));
                return out;
            }
        }
    }
    if (counted_cases < 500) out.fail("generator produced too few counted cases");
    return out;
}

// ---------- criterion 4: rank correlation ------------------------------------

Outcome criterion_spearman(const Context&) {
    Outcome out;
    Rng rng(444);
    long tied_entries = 0, total_entries = 0;
    int compared = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::size_t n = 4 + rng.below(60);
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = rng.chance(0.55) ? static_cast<double>(rng.below(4)) : rng.real01();
            y[i] = rng.chance(0.55) ? static_cast<double>(rng.below(3)) : rng.real01();
        }
        for (std::size_t i = 0; i < n; ++i) {
            bool tied = false;
            for (std::size_t j = 0; j < n; ++j)
                if (i != j && x[i] == x[j]) tied = true;
            tied_entries += tied;
            ++total_entries;
        }
        auto expected = oracle::spearman_naive(x, y);
        if (!expected) continue;  // degenerate draw
        ++compared;
        double got = spearman(x, y);
        if (std::abs(got - *expected) > 1e-12) {
            out.fail(strf("trial %d: %.17g vs %.17g", trial, got, *expected));
            return out;
        }
    }
    if (compared < 900) out.fail("too many degenerate draws");
    if (static_cast<double>(tied_entries) < 0.3 * static_cast<double>(total_entries))
        out.fail("tie share below 30%");
    return out;
}

// ---------- criterion 5: floating selection near-optimality -------------------

Outcome criterion_sffs_optimality(const Context&) {
    Outcome out;
    Rng rng(11);
    int hits = 0;
    for (int run = 0; run < 100; ++run) {
        std::size_t m_rows = 24 + rng.below(32);
        FeatureMatrix m;
        for (int f = 0; f < 6; ++f) m.column_names.push_back(strf("f%d", f));
        for (std::size_t i = 0; i < m_rows; ++i) {
            std::vector<double> row;
            for (int f = 0; f < 6; ++f) row.push_back(rng.real01());
            m.rows.push_back(row);
            m.labels.push_back(std::string(1, static_cast<char>('a' + rng.below(3))));
            m.sample_ids.push_back({strf("S%zu", i), "p", ""});
        }
        double achieved = mean_conditional_entropy(m, sffs_select(m, 6, 3), 3);
        double optimum = oracle::best_subset_value(m, 6, 3);
        if (std::abs(achieved - optimum) <= 1e-12) ++hits;
    }
    if (hits < 95) out.fail(strf("only %d of 100 runs reached the exhaustive optimum", hits));
    return out;
}

// ---------- criteria 6 + 7: default-corpus reproduction -----------------------

struct CorpusArtifacts {
    FeatureMatrix normalized;           // grade labels
    std::vector<SampleRecord> records;  // per-sample raw values
};

CorpusArtifacts build_default_corpus_matrix(const fs::path& scratch) {
    fs::path dir = scratch / "default_corpus";
    fs::remove_all(dir);
    generate_corpus(kDefaultCorpusSeed, default_corpus_spec(), dir);

    RunConfig config;
    config.input_dir = dir;
    config.seed = kDefaultCorpusSeed;
    LoadedCorpus corpus = load_corpus(config);
    std::vector<BuiltSample> samples = build_samples(corpus, config);
    CorpusArtifacts out;
    for (const BuiltSample& s : samples) out.records.push_back(s.record);
    out.normalized = minmax_normalize(assemble_matrix(out.records));
    return out;
}

Outcome criterion_classification_analogue(const Context& ctx, const CorpusArtifacts& corpus) {
    Outcome out;
    std::map<int, int> histogram;
    for (const SampleRecord& r : corpus.records) ++histogram[r.grade];
    const std::map<int, int> expected = {{3, 75}, {4, 58}, {5, 14}, {6, 9}, {7, 15}};
    if (histogram != expected) {
        out.fail("grade histogram deviates from 75/58/14/9/15");
        return out;
    }

    FeatureMatrix grouped = regroup(corpus.normalized, ClassScheme::ThreeClass);
    AnalysisResult cv = random_forest_cv(grouped, ForestParams{100, 20240518}, 10, 20240518);
    out.detail = strf("accuracy %.4f", cv.accuracy.value());
    if (cv.accuracy.value() < 0.90)
        out.fail(strf("three-class accuracy %.4f below 0.90", cv.accuracy.value()));
    (void)ctx;
    return out;
}

Outcome criterion_sign_reproduction(const Context&, const CorpusArtifacts& corpus) {
    Outcome out;
    AnalysisResult table = correlation_table(corpus.normalized);

    std::vector<std::pair<std::string, double>> ranked(table.per_feature_score.begin(),
                                                       table.per_feature_score.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        return std::abs(a.second) > std::abs(b.second);
    });
    auto rank_of = [&](const std::string& name) -> int {
        for (std::size_t i = 0; i < ranked.size(); ++i)
            if (ranked[i].first == name) return static_cast<int>(i);
        return -1;
    };

    double nodes_corr = table.per_feature_score.at("numberNodes");
    double edges_corr = table.per_feature_score.at("numberEdges");
    out.detail = strf("numberNodes %+0.3f (rank %d), numberEdges %+0.3f (rank %d)", nodes_corr,
                      rank_of("numberNodes") + 1, edges_corr, rank_of("numberEdges") + 1);
    if (nodes_corr <= 0) out.fail("numberNodes correlation not positive");
    if (edges_corr <= 0) out.fail("numberEdges correlation not positive");
    if (rank_of("numberNodes") >= 3) out.fail("numberNodes not in the top 3 by |correlation|");
    if (rank_of("numberEdges") >= 3) out.fail("numberEdges not in the top 3 by |correlation|");

    auto rows = emit_index_summary(corpus.records, ClassScheme::FiveClass);
    if (rows.size() != 5) out.fail("missing grade groups in the index summary");
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].seniority + 1e-12 < rows[i - 1].seniority)
            out.fail(strf("seniority mean drops from grade %s to %s", rows[i - 1].group.c_str(),
                          rows[i].group.c_str()));
    return out;
}

// ---------- criteria 8 + 10: CLI end-to-end ----------------------------------

int run_tool(const std::string& command) {
    int status = std::system(command.c_str());
    if (status == -1) return -1;
    if (WIFEXITED(status)) return WEXITSTATUS(status);
    return -2;
}

std::string quoted(const fs::path& p) { return "\"" + p.string() + "\""; }

Outcome criterion_determinism(const Context& ctx) {
    Outcome out;
    fs::path a = ctx.scratch / "det_a";
    fs::path b = ctx.scratch / "det_b";
    fs::remove_all(a);
    fs::remove_all(b);
    std::string base = quoted(ctx.tool) + " run --input " + quoted(ctx.fixtures) +
                       " --seed 99 --scheme 3class";
    int rc1 = run_tool(base + " --threads 1 --output " + quoted(a) + " >/dev/null 2>&1");
    int rc2 = run_tool(base + " --threads 2 --output " + quoted(b) + " >/dev/null 2>&1");
    if (rc1 != 0 || rc2 != 0) {
        out.fail(strf("tool exits %d / %d", rc1, rc2));
        return out;
    }
    std::string ma = read_file(a / "manifest.tsv");
    std::string mb = read_file(b / "manifest.tsv");
    if (ma != mb) {
        out.fail("manifests differ across thread counts");
        return out;
    }
    out.detail = strf("%zu manifest bytes identical", ma.size());
    return out;
}

Outcome criterion_normalization(const Context& ctx) {
    Outcome out;
    RunConfig config;
    config.input_dir = ctx.fixtures;
    config.seed = 5;
    LoadedCorpus corpus = load_corpus(config);
    std::vector<BuiltSample> samples = build_samples(corpus, config);
    std::vector<SampleRecord> records;
    for (const BuiltSample& s : samples) records.push_back(s.record);

    FeatureMatrix raw = assemble_matrix(records);
    FeatureMatrix norm = minmax_normalize(raw);
    for (const auto& row : norm.rows)
        for (double v : row)
            if (v < 0.0 || v > 1.0) {
                out.fail(strf("cell %.17g outside [0,1]", v));
                return out;
            }
    FeatureMatrix again = minmax_normalize(norm);
    for (std::size_t r = 0; r < norm.sample_count(); ++r)
        for (std::size_t c = 0; c < norm.feature_count(); ++c)
            if (again.rows[r][c] != norm.rows[r][c]) {
                out.fail("renormalization changed a cell bit pattern");
                return out;
            }
    if (again.labels != raw.labels) out.fail("label column changed");
    return out;
}

Outcome criterion_smoke(const Context& ctx) {
    Outcome out;
    fs::path dir = ctx.scratch / "smoke";
    fs::remove_all(dir);
    int rc = run_tool(quoted(ctx.tool) + " run --input " + quoted(ctx.fixtures) +
                      " --output " + quoted(dir) + " --seed 31 >/dev/null 2>&1");
    if (rc != 0) {
        out.fail(strf("tool exited %d", rc));
        return out;
    }
    const char* required[] = {
        "manifest.tsv",
        "metrics.csv",
        "features_raw.csv",
        "features_normalized.csv",
        "relevance_tally.csv",
        "analysis/spearman.json",
        "analysis/rforest.json",
        "analysis/sffs.json",
        "analysis/cfs.json",
        "plots/indexes_by_grade.csv",
        "plots/indexes_by_class.csv",
        "plots/researchers_per_publication.csv",
    };
    for (const char* rel : required)
        if (!fs::exists(dir / rel)) {
            out.fail(std::string("missing artifact ") + rel);
            return out;
        }
    int graph_files = 0;
    for (const auto& entry : fs::directory_iterator(dir / "graphs"))
        if (entry.path().extension() == ".graph") ++graph_files;
    if (graph_files < 15) {
        out.fail("missing graph artifacts");
        return out;
    }
    out.detail = strf("%d graph files + %zu artifact classes", graph_files,
                      sizeof(required) / sizeof(required[0]));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    Context ctx;
    ctx.fixtures = fs::path(COANET_FIXTURE_DIR) / "corpus";
    ctx.scratch = fs::temp_directory_path() / "coanet_acceptance";
    for (int i = 1; i + 1 < argc; i += 2) {
        std::string flag = argv[i];
        if (flag == "--fixtures") ctx.fixtures = argv[i + 1];
        else if (flag == "--tool") ctx.tool = argv[i + 1];
        else if (flag == "--scratch") ctx.scratch = argv[i + 1];
    }
    fs::create_directories(ctx.scratch);
    if (ctx.tool.empty()) {
        std::cerr << "usage: coanet_acceptance --tool <cli binary> [--fixtures dir] [--scratch dir]\n";
        return 2;
    }

    struct Criterion {
        int number;
        const char* name;
        std::function<Outcome()> run;
        double budget_seconds;  // 0: untimed
    };

    // corpus-dependent criteria share one generated corpus; its build time is
    // charged to criterion 6
    CorpusArtifacts corpus;
    bool corpus_ready = false;
    auto ensure_corpus = [&] {
        if (!corpus_ready) {
            corpus = build_default_corpus_matrix(ctx.scratch);
            corpus_ready = true;
        }
    };

    std::vector<Criterion> criteria = {
        {1, "metric-oracle equivalence (exhaustive <=7 nodes + 1000 random <=30)",
         [&] { return criterion_metric_oracles(ctx); }, 60.0},
        {2, "edit distance vs full DP table (exhaustive len<=6 + 10k random)",
         [&] { return criterion_levenshtein(ctx); }, 0.0},
        {3, "author-order index coherence on 1000 random publication sets",
         [&] { return criterion_index_coherence(ctx); }, 0.0},
        {4, "rank correlation vs naive oracle on 1000 tied vectors",
         [&] { return criterion_spearman(ctx); }, 0.0},
        {5, "floating selection reaches the exhaustive optimum (>=95/100)",
         [&] { return criterion_sffs_optimality(ctx); }, 0.0},
        {6, "three-class forest accuracy >= 0.90 on the default corpus",
         [&] {
             ensure_corpus();
             return criterion_classification_analogue(ctx, corpus);
         },
         120.0},
        {7, "size correlations positive and top-3; seniority non-decreasing",
         [&] {
             ensure_corpus();
             return criterion_sign_reproduction(ctx, corpus);
         },
         0.0},
        {8, "byte-identical manifests across reruns and thread counts",
         [&] { return criterion_determinism(ctx); }, 0.0},
        {9, "normalization maps into [0,1], idempotent, labels untouched",
         [&] { return criterion_normalization(ctx); }, 0.0},
        {10, "full pipeline smoke on the bundled fixture corpus",
         [&] { return criterion_smoke(ctx); }, 60.0},
    };

    int failures = 0;
    for (const Criterion& criterion : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = criterion.run();
        } catch (const std::exception& e) {
            outcome.fail(std::string("exception: ") + e.what());
        }
        double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (criterion.budget_seconds > 0 && seconds > criterion.budget_seconds)
            outcome.fail(strf("runtime %.1fs exceeds %.0fs budget", seconds,
                              criterion.budget_seconds));

        std::string note = outcome.pass ? outcome.detail : outcome.detail;
        std::printf("%s  %2d  %-68s (%.1fs)%s%s\n", outcome.pass ? "PASS" : "FAIL",
                    criterion.number, criterion.name, seconds, note.empty() ? "" : "  -- ",
                    note.c_str());
        std::fflush(stdout);
        if (!outcome.pass) ++failures;
    }
    if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
