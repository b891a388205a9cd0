#pragma once

#include <string>
#include <vector>

#include "molscope/common.hpp"

namespace molscope::csv {

// Minimal RFC-4180 style CSV. Fields containing separator, quote or
// newline are quoted on write; quoted fields are unescaped on read.

std::string encode_row(const std::vector<std::string>& fields);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const;  // -1 when absent
};

Table parse(const std::string& text, bool has_header = true);
Table read_file(const fs::path& path, bool has_header = true);

void write_file(const fs::path& path, const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows);

}  // namespace molscope::csv
