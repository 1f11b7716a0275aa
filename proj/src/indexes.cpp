#include "coanet/indexes.hpp"

#include "coanet/names.hpp"

namespace coanet {

AuthorPosition author_position(const Publication& pub, std::string_view researcher_name) {
    int match = -1;
    for (std::size_t i = 0; i < pub.authors.size(); ++i) {
        if (names_match(pub.authors[i], researcher_name)) {
            if (match >= 0)
                throw MultipleSlotsMatch("two author slots of '" + pub.title + "' match researcher");
            match = static_cast<int>(i);
        }
    }
    if (match < 0) return AuthorPosition::NotAnAuthor;
    if (pub.authors.size() == 1) return AuthorPosition::Sole;
    if (match == 0) return AuthorPosition::First;
    if (match == static_cast<int>(pub.authors.size()) - 1) return AuthorPosition::Last;
    return AuthorPosition::Middle;
}

ResearcherIndexes researcher_indexes(std::span<const Publication> pubs,
                                     std::string_view researcher_name) {
    int first = 0, middle = 0, last = 0;
    ResearcherIndexes out;
    for (const Publication& pub : pubs) {
        AuthorPosition pos;
        try {
            pos = author_position(pub, researcher_name);
        } catch (const MultipleSlotsMatch&) {
            ++out.skipped_multi_match;  // cannot attribute a unique position
            continue;
        }
        switch (pos) {
            case AuthorPosition::Sole:
            case AuthorPosition::First: ++first; break;
            case AuthorPosition::Middle: ++middle; break;
            case AuthorPosition::Last: ++last; break;
            case AuthorPosition::NotAnAuthor: break;
        }
    }
    int n = first + middle + last;
    out.counted_publications = n;
    if (n > 0) {
        out.values.first_author = static_cast<double>(first) / n;
        out.values.contribution = static_cast<double>(middle) / n;
        out.values.seniority = static_cast<double>(last) / n;
    }
    return out;
}

AuthorOrderIndexes program_indexes(std::span<const ResearcherIndexes> per_researcher) {
    AuthorOrderIndexes sum;
    int publishing = 0;
    for (const ResearcherIndexes& r : per_researcher) {
        if (r.counted_publications < 1) continue;
        ++publishing;
        sum.first_author += r.values.first_author;
        sum.contribution += r.values.contribution;
        sum.seniority += r.values.seniority;
    }
    if (publishing == 0) throw NoPublishingResearchers();
    return {sum.first_author / publishing, sum.contribution / publishing, sum.seniority / publishing};
}

}  // namespace coanet
