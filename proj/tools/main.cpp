#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "coanet/corpus.hpp"
#include "coanet/pipeline.hpp"
#include "coanet/util.hpp"

namespace {

using coanet::ClassScheme;
using coanet::RunConfig;
using coanet::Stage;

void add_run_options(CLI::App* cmd, RunConfig& config, std::string& scheme,
                     std::string& analyses_list, std::string& periods_file, int& rich_club_k,
                     bool input_required = true) {
    auto* input = cmd->add_option("--input", config.input_dir,
                                  "corpus directory (roster.csv + resumes/)");
    if (input_required) input->required();
    cmd->add_option("--output", config.output_dir, "artifact directory")->required();
    cmd->add_option("--seed", config.seed, "run seed");
    cmd->add_option("--scheme", scheme, "class scheme: 5class or 3class")
        ->check(CLI::IsMember({"5class", "3class"}));
    cmd->add_option("--subset-size", config.subset_size, "class balancing subset size");
    cmd->add_option("--periods", periods_file, "periods configuration file (JSON)");
    cmd->add_option("--analyses", analyses_list, "comma list of spearman,rforest,sffs,cfs");
    cmd->add_option("--trees", config.rf_trees, "random forest size");
    cmd->add_option("--bins", config.entropy_bins, "entropy discretization bins");
    cmd->add_option("--rich-club-k", rich_club_k, "degree threshold override");
    cmd->add_option("--sffs-dmax", config.sffs_dmax, "max subset size for floating selection");
    cmd->add_option("--folds", config.cv_folds, "cross-validation folds");
    cmd->add_option("--threads", config.threads, "worker threads (0 = hardware)");
    cmd->add_option("--area", config.area_filter, "area filter for roster rows");
}

int finish_config(RunConfig& config, const std::string& scheme, const std::string& analyses_list,
                  const std::string& periods_file, int rich_club_k) {
    config.scheme = scheme == "3class" ? ClassScheme::ThreeClass : ClassScheme::FiveClass;
    if (!analyses_list.empty()) {
        config.analyses.clear();
        for (const std::string& a : coanet::split(analyses_list, ','))
            if (!a.empty()) config.analyses.push_back(coanet::trim(a));
    }
    if (rich_club_k > 0) config.rich_club_k = rich_club_k;
    if (!periods_file.empty()) {
        try {
            config.periods = coanet::load_periods_file(periods_file);
        } catch (const std::exception& e) {
            std::cerr << "bad periods file: " << e.what() << "\n";
            return coanet::kExitConfig;
        }
    }
    return coanet::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"co-authorship network pipeline"};
    app.require_subcommand(1);

    RunConfig config;
    std::string scheme = "5class";
    std::string analyses_list;
    std::string periods_file;
    int rich_club_k = 0;

    struct Verb {
        const char* name;
        const char* help;
        Stage stage;
    };
    const Verb verbs[] = {
        {"ingest", "parse and validate a corpus", Stage::Ingest},
        {"graphs", "build per-program-period graphs", Stage::Graphs},
        {"metrics", "graphs + measurement table", Stage::Metrics},
        {"features", "metrics + feature matrices", Stage::Features},
        {"analyze", "features + the four analyses", Stage::Analyze},
        {"run", "full pipeline with plot data and manifest", Stage::Full},
    };
    std::map<std::string, Stage> stage_of;
    std::filesystem::path graphs_dir;
    for (const Verb& verb : verbs) {
        CLI::App* cmd = app.add_subcommand(verb.name, verb.help);
        if (verb.stage == Stage::Ingest) {
            cmd->add_option("--input", config.input_dir, "corpus directory")->required();
            cmd->add_option("--periods", periods_file, "periods configuration file (JSON)");
            cmd->add_option("--area", config.area_filter, "area filter for roster rows");
        } else if (verb.stage == Stage::Metrics) {
            add_run_options(cmd, config, scheme, analyses_list, periods_file, rich_club_k,
                            /*input_required=*/false);
            cmd->add_option("--graphs-dir", graphs_dir,
                            "recompute the metric table from exported graph files instead of a corpus");
        } else {
            add_run_options(cmd, config, scheme, analyses_list, periods_file, rich_club_k);
        }
        stage_of[verb.name] = verb.stage;
    }

    // corpus generator
    std::uint64_t synth_seed = coanet::kDefaultCorpusSeed;
    std::filesystem::path synth_output;
    std::string grade_counts;
    bool synth_fixture = false;
    CLI::App* synth = app.add_subcommand("synth", "generate a seeded synthetic corpus");
    synth->add_option("--output", synth_output, "corpus output directory")->required();
    synth->add_option("--seed", synth_seed, "generator seed");
    synth->add_option("--grade-counts", grade_counts,
                      "samples per grade 3..7 as 'a,b,c,d,e' (default 75,58,14,9,15)");
    synth->add_flag("--fixture", synth_fixture, "use the small fixture-sized preset");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return coanet::kExitConfig;
    }

    if (synth->parsed()) {
        coanet::CorpusSpec spec = synth_fixture ? coanet::fixture_corpus_spec()
                                                : coanet::default_corpus_spec();
        if (!grade_counts.empty()) {
            auto parts = coanet::split(grade_counts, ',');
            if (parts.size() != 5) {
                std::cerr << "--grade-counts needs 5 comma-separated values\n";
                return coanet::kExitConfig;
            }
            spec.grade_samples.clear();
            for (int g = 3; g <= 7; ++g) {
                try {
                    spec.grade_samples[g] = std::stoi(parts[static_cast<std::size_t>(g - 3)]);
                } catch (...) {
                    std::cerr << "bad --grade-counts value\n";
                    return coanet::kExitConfig;
                }
            }
        }
        try {
            coanet::generate_corpus(synth_seed, spec, synth_output);
        } catch (const coanet::InvalidSpec& e) {
            std::cerr << "invalid corpus spec: " << e.what() << "\n";
            return coanet::kExitConfig;
        }
        coanet::log_info("corpus written to " + synth_output.string());
        return coanet::kExitOk;
    }

    for (const auto& [name, stage] : stage_of) {
        CLI::App* cmd = app.get_subcommand(name);
        if (!cmd->parsed()) continue;
        int rc = finish_config(config, scheme, analyses_list, periods_file, rich_club_k);
        if (rc != coanet::kExitOk) return rc;
        if (stage == Stage::Metrics && !graphs_dir.empty())
            return coanet::metrics_from_graph_files(graphs_dir, config);
        if (stage != Stage::Ingest && config.input_dir.empty()) {
            std::cerr << "--input is required\n";
            return coanet::kExitConfig;
        }
        return coanet::run_pipeline(config, stage);
    }
    return coanet::kExitConfig;
}
