#include "molscope/csv.hpp"

#include <sstream>

namespace molscope::csv {

namespace {

bool needs_quoting(const std::string& f) {
    return f.find_first_of(",\"\n\r") != std::string::npos;
}

std::string quote(const std::string& f) {
    std::string out = "\"";
    for (char c : f) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

}  // namespace

std::string encode_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out.push_back(',');
        out += needs_quoting(fields[i]) ? quote(fields[i]) : fields[i];
    }
    out.push_back('\n');
    return out;
}

int Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return static_cast<int>(i);
    }
    return -1;
}

Table parse(const std::string& text, bool has_header) {
    Table t;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool row_started = false;

    auto end_field = [&]() {
        row.push_back(field);
        field.clear();
    };
    auto end_row = [&]() {
        end_field();
        if (!t.header.empty() || !has_header) t.rows.push_back(row);
        else t.header = row;
        row.clear();
        row_started = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"': in_quotes = true; row_started = true; break;
            case ',': end_field(); row_started = true; break;
            case '\r': break;
            case '\n':
                if (row_started || !field.empty() || !row.empty()) end_row();
                break;
            default: field.push_back(c); row_started = true; break;
        }
    }
    if (row_started || !field.empty() || !row.empty()) end_row();
    if (has_header && t.header.empty() && !t.rows.empty()) {
        throw DataError("CSV parse: missing header");
    }
    return t;
}

Table read_file(const fs::path& path, bool has_header) {
    return parse(molscope::read_file(path), has_header);
}

void write_file(const fs::path& path, const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows) {
    std::string out = encode_row(header);
    for (const auto& r : rows) out += encode_row(r);
    atomic_write_file(path, out);
}

}  // namespace molscope::csv
