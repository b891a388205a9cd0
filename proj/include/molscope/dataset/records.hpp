#pragma once

#include <string>
#include <vector>

#include "molscope/common.hpp"

namespace molscope::dataset {

// One raw activity measurement as delivered by the remote source.
struct BioactivityRecord {
    std::string compound_id;
    std::string smiles;
    std::string target_id;
    double value = 0.0;      // concentration in `unit`
    std::string relation;    // =, >, <, >=, <=, ~
    std::string unit;        // e.g. "nM"

    bool operator==(const BioactivityRecord&) const = default;
};

// One modelable (structure, label) pair after curation.
struct CuratedCompound {
    std::string compound_id;
    std::string smiles;  // canonical standardized structure
    double pic50 = 0.0;
};

std::string record_to_json(const BioactivityRecord& r);
// Returns false when the line is not a valid record (caller counts it).
bool record_from_json(const std::string& line, BioactivityRecord& out);

// JSON-lines cache codec, one record per line.
std::string records_to_jsonl(const std::vector<BioactivityRecord>& records);
std::vector<BioactivityRecord> records_from_jsonl(const std::string& text,
                                                  std::size_t* malformed = nullptr);

// Curated dataset CSV: header compound_id,smiles,pic50; UTF-8; '.' decimals.
void write_curated_csv(const fs::path& path, const std::vector<CuratedCompound>& rows);
std::vector<CuratedCompound> read_curated_csv(const fs::path& path);

}  // namespace molscope::dataset
