#pragma once

#include <map>
#include <string>
#include <vector>

namespace coanet {

struct EvaluationPeriod {
    int start_year = 0;
    int end_year = 0;
    std::string label;

    bool contains(int year) const { return year >= start_year && year <= end_year; }
    bool operator==(const EvaluationPeriod&) const = default;
};

// The three assessment windows used throughout: two 3-year windows followed
// by one 4-year window.
std::vector<EvaluationPeriod> default_periods();

enum class PublicationKind { EventPaper, JournalArticle };
enum class PublicationNature { Complete, Other };

struct Publication {
    std::string title;
    int year = 0;
    PublicationKind kind = PublicationKind::EventPaper;
    PublicationNature nature = PublicationNature::Complete;
    std::vector<std::string> authors;  // order preserved exactly as parsed

    bool operator==(const Publication&) const = default;
};

struct ResumeRecord {
    std::string researcher_id;
    std::string full_name;
    std::vector<Publication> publications;

    bool operator==(const ResumeRecord&) const = default;
};

enum class Modality { Academic, Professional };

struct ProgramRoster {
    std::string program_id;
    std::string program_name;
    std::string institution;
    std::string area;
    Modality modality = Modality::Academic;
    std::vector<std::string> researcher_names;  // unique, first-appearance order
    std::map<std::string, int> grades;          // period label -> grade in [1, 7]
};

}  // namespace coanet
