#pragma once

#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "coanet/types.hpp"

namespace coanet {

struct MultipleSlotsMatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoPublishingResearchers : std::runtime_error {
    NoPublishingResearchers() : std::runtime_error("no researcher with counted publications") {}
};

enum class AuthorPosition { Sole, First, Middle, Last, NotAnAuthor };

// Position of the unique author slot matching the researcher (edit-distance
// name rule). Throws MultipleSlotsMatch when two slots of one publication
// match.
AuthorPosition author_position(const Publication& pub, std::string_view researcher_name);

// The three order-of-citation shares. Sole-authored papers count toward the
// first-author share, which keeps the triple summing to 1.
struct AuthorOrderIndexes {
    double first_author = 0.0;
    double contribution = 0.0;  // middle positions
    double seniority = 0.0;     // last positions

    double sum() const { return first_author + contribution + seniority; }
};

struct ResearcherIndexes {
    AuthorOrderIndexes values;
    int counted_publications = 0;  // slots matched exactly once
    int skipped_multi_match = 0;   // publications with several matching slots
};

// pubs must already be period/nature filtered.
ResearcherIndexes researcher_indexes(std::span<const Publication> pubs,
                                     std::string_view researcher_name);

// Unweighted mean over researchers with at least one counted publication.
AuthorOrderIndexes program_indexes(std::span<const ResearcherIndexes> per_researcher);

}  // namespace coanet
