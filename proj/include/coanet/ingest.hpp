#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "coanet/types.hpp"

namespace coanet {

struct MalformedRecord : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MissingName : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MalformedTable : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnknownModality : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Counters for publications silently dropped during parsing. Dropping rather
// than guessing keeps downstream counts honest; the totals surface in logs.
struct ParseStats {
    int dropped_missing_year = 0;
    int dropped_bad_year = 0;
    int dropped_missing_nature = 0;
    int dropped_bad_kind = 0;
    int dropped_no_authors = 0;

    int total_dropped() const {
        return dropped_missing_year + dropped_bad_year + dropped_missing_nature +
               dropped_bad_kind + dropped_no_authors;
    }
};

// Record file schema (UTF-8 XML subset):
//   <resume id="...">
//     <general-data full-name="..."/>
//     <productions>
//       <publication kind="EVENT|JOURNAL" nature="COMPLETE|OTHER" title="..." year="...">
//         <author name="..."/> ...            (document order = author order)
//       </publication> ...
//     </productions>
//   </resume>
ResumeRecord parse_resume(std::string_view raw, ParseStats* stats = nullptr);
std::string serialize_resume(const ResumeRecord& record);

// Roster table: delimited text with header
//   program_id,program_name,institution,area,modality,researcher_name,period_label,grade
// one row per (program, researcher, period). Rows outside the area/modality
// filters are excluded; duplicate (program, researcher) rows collapse to one
// entry. An empty area_filter accepts every area.
std::vector<ProgramRoster> parse_rosters(std::string_view raw, std::string_view area_filter,
                                         Modality modality_filter);
std::string serialize_roster_table(std::span<const ProgramRoster> rosters,
                                   std::span<const EvaluationPeriod> periods);

// Keeps publications with Complete nature and a year inside the period
// (bounds inclusive). Both event papers and journal articles pass. Preserves
// order; idempotent.
std::vector<Publication> filter_publications(const std::vector<Publication>& pubs,
                                             const EvaluationPeriod& period);

std::string modality_name(Modality m);
std::optional<Modality> modality_from(std::string_view text);

}  // namespace coanet
