#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace coanet {

// RFC-4180-ish delimited text: quoted fields may contain commas, quotes
// (doubled) and newlines. Lines starting with '#' outside a quoted field are
// comments and are skipped; every table the pipeline writes carries a leading
// comment with the run seed.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

void append_csv_row(std::string& out, std::span<const std::string> fields);

}  // namespace coanet
