#include "coanet/names.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace coanet {

namespace {

// Lenient UTF-8 decoding: malformed bytes are taken as Latin-1 codepoints so
// that mildly broken inputs still compare sensibly instead of throwing.
std::vector<char32_t> decode_utf8(std::string_view s) {
    std::vector<char32_t> out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        std::size_t extra;
        char32_t cp;
        if (c < 0x80) {
            cp = c;
            extra = 0;
        } else if ((c & 0xe0) == 0xc0) {
            cp = c & 0x1f;
            extra = 1;
        } else if ((c & 0xf0) == 0xe0) {
            cp = c & 0x0f;
            extra = 2;
        } else if ((c & 0xf8) == 0xf0) {
            cp = c & 0x07;
            extra = 3;
        } else {
            out.push_back(c);
            ++i;
            continue;
        }
        bool ok = i + extra < s.size();
        for (std::size_t k = 1; k <= extra && ok; ++k)
            if ((static_cast<unsigned char>(s[i + k]) & 0xc0) != 0x80) ok = false;
        if (!ok) {
            out.push_back(c);
            ++i;
            continue;
        }
        for (std::size_t k = 1; k <= extra; ++k)
            cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3f);
        out.push_back(cp);
        i += extra + 1;
    }
    return out;
}

void encode_utf8(std::string& out, char32_t cp) {
    if (cp <= 0x7f) {
        out += static_cast<char>(cp);
    } else if (cp <= 0x7ff) {
        out += static_cast<char>(0xc0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3f));
    } else if (cp <= 0xffff) {
        out += static_cast<char>(0xe0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3f));
        out += static_cast<char>(0x80 | (cp & 0x3f));
    } else {
        out += static_cast<char>(0xf0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3f));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3f));
        out += static_cast<char>(0x80 | (cp & 0x3f));
    }
}

// Latin-1 Supplement letters folded to lowercase base letters.
const char* fold_latin1(char32_t cp) {
    static const std::array<const char*, 64> table = {
        // 0x00c0 .. 0x00cf
        "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i", "i",
        // 0x00d0 .. 0x00df
        "d", "n", "o", "o", "o", "o", "o", "", "o", "u", "u", "u", "u", "y", "th", "ss",
        // 0x00e0 .. 0x00ef
        "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i", "i",
        // 0x00f0 .. 0x00ff
        "d", "n", "o", "o", "o", "o", "o", "", "o", "u", "u", "u", "u", "y", "th", "y"};
    if (cp < 0x00c0 || cp > 0x00ff) return nullptr;
    const char* m = table[cp - 0x00c0];
    return *m ? m : nullptr;
}

// Latin Extended-A folded by range.
const char* fold_latin_ext_a(char32_t cp) {
    struct Range {
        char32_t lo, hi;
        const char* base;
    };
    static const Range ranges[] = {
        {0x0100, 0x0105, "a"},  {0x0106, 0x010d, "c"},  {0x010e, 0x0111, "d"},
        {0x0112, 0x011b, "e"},  {0x011c, 0x0123, "g"},  {0x0124, 0x0127, "h"},
        {0x0128, 0x0131, "i"},  {0x0132, 0x0133, "ij"}, {0x0134, 0x0135, "j"},
        {0x0136, 0x0138, "k"},  {0x0139, 0x0142, "l"},  {0x0143, 0x014b, "n"},
        {0x014c, 0x0151, "o"},  {0x0152, 0x0153, "oe"}, {0x0154, 0x0159, "r"},
        {0x015a, 0x0161, "s"},  {0x0162, 0x0167, "t"},  {0x0168, 0x0173, "u"},
        {0x0174, 0x0175, "w"},  {0x0176, 0x0178, "y"},  {0x0179, 0x017e, "z"},
        {0x017f, 0x017f, "s"},
    };
    for (const auto& r : ranges)
        if (cp >= r.lo && cp <= r.hi) return r.base;
    return nullptr;
}

bool is_ascii_letter_or_digit(char32_t cp) {
    return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9');
}

bool is_space_like(char32_t cp) {
    return cp == ' ' || cp == '\t' || cp == '\r' || cp == '\n' || cp == '\f' || cp == '\v' ||
           cp == 0x00a0 || cp == 0x2007 || cp == 0x202f;
}

}  // namespace

std::string normalize_name(std::string_view name) {
    std::vector<char32_t> cps = decode_utf8(name);
    std::string out;
    out.reserve(name.size());
    bool pending_space = false;
    auto emit = [&](std::string_view s) {
        if (pending_space && !out.empty()) out += ' ';
        pending_space = false;
        out += s;
    };
    for (char32_t cp : cps) {
        if (is_space_like(cp)) {
            pending_space = true;
            continue;
        }
        if (is_ascii_letter_or_digit(cp)) {
            char c = static_cast<char>(cp);
            if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
            emit(std::string_view(&c, 1));
            continue;
        }
        if (cp < 0x80) continue;                  // ASCII punctuation: dropped
        if (cp <= 0xbf || cp == 0xd7 || cp == 0xf7) continue;  // Latin-1 symbols
        if (const char* folded = fold_latin1(cp)) {
            emit(folded);
            continue;
        }
        if (const char* folded = fold_latin_ext_a(cp)) {
            emit(folded);
            continue;
        }
        // codepoint outside the folding tables: keep verbatim
        std::string tmp;
        encode_utf8(tmp, cp);
        emit(tmp);
    }
    return out;
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
    std::vector<char32_t> ca = decode_utf8(a);
    std::vector<char32_t> cb = decode_utf8(b);
    if (ca.size() < cb.size()) std::swap(ca, cb);
    const std::size_t n = cb.size();
    std::vector<std::size_t> prev(n + 1), cur(n + 1);
    for (std::size_t j = 0; j <= n; ++j) prev[j] = j;
    for (std::size_t i = 1; i <= ca.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= n; ++j) {
            std::size_t sub = prev[j - 1] + (ca[i - 1] == cb[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[n];
}

std::size_t levenshtein_capped(std::string_view a, std::string_view b, std::size_t limit) {
    std::vector<char32_t> ca = decode_utf8(a);
    std::vector<char32_t> cb = decode_utf8(b);
    if (ca.size() < cb.size()) std::swap(ca, cb);
    const std::size_t m = ca.size(), n = cb.size();
    if (m - n > limit) return limit + 1;
    const std::size_t inf = limit + 1;
    // band of half-width `limit` around the diagonal
    std::vector<std::size_t> prev(n + 1, inf), cur(n + 1, inf);
    for (std::size_t j = 0; j <= std::min(n, limit); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= m; ++i) {
        std::fill(cur.begin(), cur.end(), inf);
        std::size_t lo = (i > limit) ? i - limit : 1;
        std::size_t hi = std::min(n, i + limit);
        if (i <= limit) cur[0] = i;
        std::size_t best = cur[0];
        for (std::size_t j = lo; j <= hi; ++j) {
            std::size_t sub = prev[j - 1] + (ca[i - 1] == cb[j - 1] ? 0 : 1);
            std::size_t v = sub;
            if (prev[j] + 1 < v) v = prev[j] + 1;
            if (cur[j - 1] + 1 < v) v = cur[j - 1] + 1;
            cur[j] = std::min(v, inf);
            best = std::min(best, cur[j]);
        }
        if (best >= inf) return inf;
        std::swap(prev, cur);
    }
    return std::min(prev[n], inf);
}

bool names_match(std::string_view a, std::string_view b) {
    std::string na = normalize_name(a);
    std::string nb = normalize_name(b);
    return levenshtein_capped(na, nb, 2) <= 2;
}

AuthorRef AuthorRef::internal(std::string id) {
    AuthorRef r;
    r.kind = Kind::Internal;
    r.researcher_id = std::move(id);
    return r;
}

AuthorRef AuthorRef::external() {
    return AuthorRef{};
}

AuthorRef AuthorRef::ambiguous(std::vector<std::string> ids) {
    if (ids.size() < 2) throw std::logic_error("ambiguous ref needs >= 2 candidates");
    AuthorRef r;
    r.kind = Kind::Ambiguous;
    std::sort(ids.begin(), ids.end());
    r.candidate_ids = std::move(ids);
    return r;
}

AuthorResolver::AuthorResolver(std::span<const std::pair<std::string, std::string>> roster) {
    roster_.reserve(roster.size());
    for (const auto& [id, name] : roster) roster_.push_back({id, normalize_name(name)});
}

const AuthorRef& AuthorResolver::resolve(const std::string& author) {
    auto it = memo_.find(author);
    if (it != memo_.end()) return it->second;

    std::string norm = normalize_name(author);
    std::vector<std::string> match_ids;
    std::vector<std::string> exact_ids;
    for (const auto& entry : roster_) {
        if (levenshtein_capped(norm, entry.normalized, 2) <= 2) {
            match_ids.push_back(entry.id);
            if (norm == entry.normalized) exact_ids.push_back(entry.id);
        }
    }

    AuthorRef ref;
    if (match_ids.empty()) {
        ref = AuthorRef::external();
    } else if (match_ids.size() == 1) {
        ref = AuthorRef::internal(match_ids.front());
    } else if (exact_ids.size() == 1) {
        // several fuzzy candidates but a unique exact form: take it
        ref = AuthorRef::internal(exact_ids.front());
    } else {
        ref = AuthorRef::ambiguous(std::move(match_ids));
    }
    return memo_.emplace(author, std::move(ref)).first->second;
}

std::vector<AuthorRef> resolve_authors(std::span<const std::string> author_strings,
                                       std::span<const std::pair<std::string, std::string>> roster) {
    AuthorResolver resolver(roster);
    std::vector<AuthorRef> out;
    out.reserve(author_strings.size());
    for (const auto& a : author_strings) out.push_back(resolver.resolve(a));
    return out;
}

}  // namespace coanet
