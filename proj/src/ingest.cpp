#include "coanet/ingest.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "coanet/csv.hpp"
#include "coanet/util.hpp"
#include "coanet/xml.hpp"

namespace coanet {

std::vector<EvaluationPeriod> default_periods() {
    return {{2007, 2009, "2007-2009"}, {2010, 2012, "2010-2012"}, {2013, 2016, "2013-2016"}};
}

std::string modality_name(Modality m) {
    return m == Modality::Academic ? "Academic" : "Professional";
}

std::optional<Modality> modality_from(std::string_view text) {
    std::string t;
    for (char c : text) t += static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c);
    if (t == "academic") return Modality::Academic;
    if (t == "professional") return Modality::Professional;
    return std::nullopt;
}

namespace {

std::optional<int> parse_int(std::string_view s) {
    if (s.empty()) return std::nullopt;
    int sign = 1;
    std::size_t i = 0;
    if (s[0] == '-') {
        sign = -1;
        i = 1;
        if (s.size() == 1) return std::nullopt;
    }
    long v = 0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return std::nullopt;
        v = v * 10 + (s[i] - '0');
        if (v > 1000000000L) return std::nullopt;
    }
    return static_cast<int>(sign * v);
}

std::optional<Publication> parse_publication(const XmlNode& node, ParseStats& stats) {
    Publication pub;
    const std::string* nature = node.attr("nature");
    if (!nature) {
        ++stats.dropped_missing_nature;
        return std::nullopt;
    }
    if (*nature == "COMPLETE") {
        pub.nature = PublicationNature::Complete;
    } else if (*nature == "OTHER") {
        pub.nature = PublicationNature::Other;
    } else {
        ++stats.dropped_missing_nature;
        return std::nullopt;
    }

    const std::string* kind = node.attr("kind");
    if (!kind || (*kind != "EVENT" && *kind != "JOURNAL")) {
        ++stats.dropped_bad_kind;
        return std::nullopt;
    }
    pub.kind = *kind == "EVENT" ? PublicationKind::EventPaper : PublicationKind::JournalArticle;

    const std::string* year = node.attr("year");
    if (!year) {
        ++stats.dropped_missing_year;
        return std::nullopt;
    }
    std::optional<int> y = parse_int(*year);
    if (!y || *y < 1900 || *y > 2100) {
        ++stats.dropped_bad_year;
        return std::nullopt;
    }
    pub.year = *y;

    const std::string* title = node.attr("title");
    pub.title = title ? *title : "";

    for (const XmlNode* author : node.children_named("author")) {
        const std::string* name = author->attr("name");
        if (name && !name->empty()) pub.authors.push_back(*name);
    }
    if (pub.authors.empty()) {
        ++stats.dropped_no_authors;
        return std::nullopt;
    }
    return pub;
}

}  // namespace

ResumeRecord parse_resume(std::string_view raw, ParseStats* stats) {
    ParseStats local;
    ParseStats& st = stats ? *stats : local;

    XmlNode root;
    try {
        root = parse_xml(raw);
    } catch (const XmlError& e) {
        throw MalformedRecord(e.what());
    }
    if (root.name != "resume") throw MalformedRecord("root element must be <resume>");

    ResumeRecord record;
    const std::string* id = root.attr("id");
    if (!id || id->empty()) throw MalformedRecord("missing resume id");
    record.researcher_id = *id;

    const XmlNode* general = root.child("general-data");
    const std::string* name = general ? general->attr("full-name") : nullptr;
    if (!name || name->empty()) throw MissingName("no full-name element in " + *id);
    record.full_name = *name;

    const XmlNode* productions = root.child("productions");
    if (!productions) throw MalformedRecord("missing <productions> in " + *id);
    for (const XmlNode* pub_node : productions->children_named("publication")) {
        if (std::optional<Publication> pub = parse_publication(*pub_node, st)) {
            record.publications.push_back(std::move(*pub));
        }
    }
    return record;
}

std::string serialize_resume(const ResumeRecord& record) {
    XmlNode root;
    root.name = "resume";
    root.attrs.emplace_back("id", record.researcher_id);

    XmlNode general;
    general.name = "general-data";
    general.attrs.emplace_back("full-name", record.full_name);
    root.children.push_back(std::move(general));

    XmlNode productions;
    productions.name = "productions";
    for (const Publication& pub : record.publications) {
        XmlNode node;
        node.name = "publication";
        node.attrs.emplace_back("kind", pub.kind == PublicationKind::EventPaper ? "EVENT" : "JOURNAL");
        node.attrs.emplace_back("nature", pub.nature == PublicationNature::Complete ? "COMPLETE" : "OTHER");
        node.attrs.emplace_back("title", pub.title);
        node.attrs.emplace_back("year", std::to_string(pub.year));
        for (const std::string& author : pub.authors) {
            XmlNode a;
            a.name = "author";
            a.attrs.emplace_back("name", author);
            node.children.push_back(std::move(a));
        }
        productions.children.push_back(std::move(node));
    }
    root.children.push_back(std::move(productions));
    return write_xml(root);
}

std::vector<ProgramRoster> parse_rosters(std::string_view raw, std::string_view area_filter,
                                         Modality modality_filter) {
    static const std::vector<std::string> kHeader = {
        "program_id", "program_name", "institution", "area",
        "modality",   "researcher_name", "period_label", "grade"};

    std::vector<std::vector<std::string>> rows = parse_csv(raw);
    if (rows.empty()) throw MalformedTable("empty roster table");
    if (rows.front() != kHeader) throw MalformedTable("unexpected roster header");

    std::vector<ProgramRoster> rosters;
    std::map<std::string, std::size_t> by_id;            // program_id -> index
    std::set<std::pair<std::string, std::string>> seen;  // (program_id, researcher)

    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() != kHeader.size())
            throw MalformedTable(strf("row %zu has %zu fields, expected %zu", r, row.size(), kHeader.size()));
        const std::string& program_id = row[0];
        const std::string& area = row[3];
        std::optional<Modality> modality = modality_from(row[4]);
        if (!modality) throw UnknownModality("row " + std::to_string(r) + ": '" + row[4] + "'");
        std::optional<int> grade = parse_int(row[7]);
        if (program_id.empty() || row[5].empty() || row[6].empty() || !grade || *grade < 1 || *grade > 7)
            throw MalformedTable("row " + std::to_string(r) + ": bad program/researcher/grade");

        if (!area_filter.empty() && area != area_filter) continue;
        if (*modality != modality_filter) continue;

        auto [it, inserted] = by_id.emplace(program_id, rosters.size());
        if (inserted) {
            ProgramRoster roster;
            roster.program_id = program_id;
            roster.program_name = row[1];
            roster.institution = row[2];
            roster.area = area;
            roster.modality = *modality;
            rosters.push_back(std::move(roster));
        }
        ProgramRoster& roster = rosters[it->second];

        if (seen.emplace(program_id, row[5]).second) roster.researcher_names.push_back(row[5]);

        auto [git, ginserted] = roster.grades.emplace(row[6], *grade);
        if (!ginserted && git->second != *grade)
            throw MalformedTable("row " + std::to_string(r) + ": conflicting grade for " +
                                 program_id + " in " + row[6]);
    }
    return rosters;
}

std::string serialize_roster_table(std::span<const ProgramRoster> rosters,
                                   std::span<const EvaluationPeriod> periods) {
    std::string out;
    append_csv_row(out, std::vector<std::string>{"program_id", "program_name", "institution", "area",
                                                 "modality", "researcher_name", "period_label", "grade"});
    for (const ProgramRoster& roster : rosters) {
        for (const EvaluationPeriod& period : periods) {
            auto grade = roster.grades.find(period.label);
            if (grade == roster.grades.end()) continue;
            for (const std::string& researcher : roster.researcher_names) {
                append_csv_row(out, std::vector<std::string>{
                                        roster.program_id, roster.program_name, roster.institution,
                                        roster.area, modality_name(roster.modality), researcher,
                                        period.label, std::to_string(grade->second)});
            }
        }
    }
    return out;
}

std::vector<Publication> filter_publications(const std::vector<Publication>& pubs,
                                             const EvaluationPeriod& period) {
    std::vector<Publication> out;
    for (const Publication& pub : pubs) {
        if (pub.nature != PublicationNature::Complete) continue;
        if (!period.contains(pub.year)) continue;
        out.push_back(pub);
    }
    return out;
}

}  // namespace coanet
