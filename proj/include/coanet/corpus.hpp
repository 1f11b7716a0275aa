#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>

#include "coanet/types.hpp"

namespace coanet {

struct InvalidSpec : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Size parameters for the synthetic fixture corpus. grade_samples maps a
// grade to the number of (program, period) samples carrying it; programs are
// formed by slicing the sorted grade list into one slice per program, so a
// program's grade is nearly constant over time.
struct CorpusSpec {
    std::vector<EvaluationPeriod> periods = default_periods();
    std::map<int, int> grade_samples = {{3, 75}, {4, 58}, {5, 14}, {6, 9}, {7, 15}};
    bool include_chaff = true;  // adds filtered-out rows: professional modality, other area
};

CorpusSpec default_corpus_spec();

// Spec for the small committed fixture corpus (6 programs, 3 periods).
CorpusSpec fixture_corpus_spec();

// Seed of the default corpus used by reproduction runs.
inline constexpr std::uint64_t kDefaultCorpusSeed = 74;

// Deterministic synthetic corpus: resume records, the roster table, and the
// periods file, keyed by relative path. Structure correlates with grade:
// higher grades get larger rosters, denser joint publication activity, and a
// higher share of senior-last author orderings.
std::map<std::string, std::string> generate_corpus_files(std::uint64_t seed, const CorpusSpec& spec);

// Writes generate_corpus_files() under out_dir.
void generate_corpus(std::uint64_t seed, const CorpusSpec& spec,
                     const std::filesystem::path& out_dir);

}  // namespace coanet
