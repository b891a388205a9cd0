#include "molscope/dataset/records.hpp"

#include <json.hpp>

#include <charconv>

#include "molscope/csv.hpp"

namespace molscope::dataset {

using nlohmann::json;

std::string record_to_json(const BioactivityRecord& r) {
    json j;
    j["compound_id"] = r.compound_id;
    j["smiles"] = r.smiles;
    j["target_id"] = r.target_id;
    j["value"] = r.value;
    j["relation"] = r.relation;
    j["unit"] = r.unit;
    return j.dump();
}

bool record_from_json(const std::string& line, BioactivityRecord& out) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return false;
    try {
        out.compound_id = j.at("compound_id").get<std::string>();
        out.smiles = j.at("smiles").get<std::string>();
        out.target_id = j.at("target_id").get<std::string>();
        out.value = j.at("value").get<double>();
        out.relation = j.at("relation").get<std::string>();
        out.unit = j.at("unit").get<std::string>();
    } catch (const json::exception&) {
        return false;
    }
    if (out.compound_id.empty() || out.target_id.empty()) return false;
    return true;
}

std::string records_to_jsonl(const std::vector<BioactivityRecord>& records) {
    std::string out;
    for (const auto& r : records) {
        out += record_to_json(r);
        out.push_back('\n');
    }
    return out;
}

std::vector<BioactivityRecord> records_from_jsonl(const std::string& text,
                                                  std::size_t* malformed) {
    std::vector<BioactivityRecord> out;
    std::size_t bad = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        if (end > start) {
            const std::string line = text.substr(start, end - start);
            BioactivityRecord r;
            if (record_from_json(line, r)) out.push_back(std::move(r));
            else ++bad;
        }
        start = end + 1;
    }
    if (malformed) *malformed = bad;
    return out;
}

void write_curated_csv(const fs::path& path, const std::vector<CuratedCompound>& rows) {
    std::vector<std::vector<std::string>> cells;
    cells.reserve(rows.size());
    for (const auto& r : rows) {
        cells.push_back({r.compound_id, r.smiles, format_double(r.pic50, 6)});
    }
    csv::write_file(path, {"compound_id", "smiles", "pic50"}, cells);
}

std::vector<CuratedCompound> read_curated_csv(const fs::path& path) {
    const csv::Table t = csv::read_file(path);
    const int ci = t.column("compound_id");
    const int si = t.column("smiles");
    const int pi = t.column("pic50");
    if (ci < 0 || si < 0 || pi < 0) {
        throw DataError("curated CSV missing required columns: " + path.string());
    }
    std::vector<CuratedCompound> out;
    out.reserve(t.rows.size());
    for (const auto& row : t.rows) {
        CuratedCompound c;
        c.compound_id = row[ci];
        c.smiles = row[si];
        c.pic50 = std::stod(row[pi]);
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace molscope::dataset
