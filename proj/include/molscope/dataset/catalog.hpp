#pragma once

#include <string>
#include <vector>

#include "molscope/common.hpp"

namespace molscope::dataset {

enum class TargetKind { cell_line, protein };

struct CatalogEntry {
    std::string name;        // e.g. "A2780"
    std::string source_id;   // remote identifier, e.g. "CHEMBL3308421"
    int expected_count = 0;  // curated rows the benchmark snapshot carries
    TargetKind kind = TargetKind::cell_line;
};

// The 33 benchmark datasets: 8 cytotoxicity cell lines and 25 protein
// targets. expected_count is a snapshot property; live sources drift, so
// callers treat mismatches as warnings.
const std::vector<CatalogEntry>& catalog();

const CatalogEntry& catalog_entry(const std::string& name);  // throws ConfigError
std::vector<CatalogEntry> cytotoxicity_entries();
std::vector<CatalogEntry> protein_entries();

}  // namespace molscope::dataset
