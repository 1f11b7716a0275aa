#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace coanet {

// Canonical form used for every name comparison: lowercased, diacritics
// folded to their base letters, punctuation dropped, whitespace runs
// collapsed, ends trimmed. Codepoints outside the folding tables pass
// through unchanged.
std::string normalize_name(std::string_view name);

// Edit distance over Unicode codepoints (insert / delete / substitute).
std::size_t levenshtein(std::string_view a, std::string_view b);

// Banded variant: returns the exact distance when it is <= limit, otherwise
// any value > limit. Used where only "within limit" matters.
std::size_t levenshtein_capped(std::string_view a, std::string_view b, std::size_t limit);

// Two names denote the same person when their normalized forms are within
// edit distance 2.
bool names_match(std::string_view a, std::string_view b);

struct AuthorRef {
    enum class Kind { Internal, External, Ambiguous };
    Kind kind = Kind::External;
    std::string researcher_id;                // set for Internal
    std::vector<std::string> candidate_ids;   // set for Ambiguous, sorted, size >= 2

    static AuthorRef internal(std::string id);
    static AuthorRef external();
    static AuthorRef ambiguous(std::vector<std::string> ids);
};

// Resolves publication author strings against a roster of (researcher_id,
// full name) pairs. One match -> Internal; none -> External; several -> an
// exact normalized match wins if unique, otherwise Ambiguous. Ambiguity is
// data, not an error. Output order equals input order.
std::vector<AuthorRef> resolve_authors(std::span<const std::string> author_strings,
                                       std::span<const std::pair<std::string, std::string>> roster);

// Memoized resolver for repeated author strings against a fixed roster.
class AuthorResolver {
public:
    explicit AuthorResolver(std::span<const std::pair<std::string, std::string>> roster);
    const AuthorRef& resolve(const std::string& author);

private:
    struct Entry {
        std::string id;
        std::string normalized;
    };
    std::vector<Entry> roster_;
    std::unordered_map<std::string, AuthorRef> memo_;
};

}  // namespace coanet
