#pragma once

#include <vector>

#include "molscope/dataset/records.hpp"

namespace molscope::dataset {

// Keeps exactly the rows with unit == "nM" and relation == "=", in input
// order. Idempotent.
std::vector<BioactivityRecord> filter_records(const std::vector<BioactivityRecord>& records);

struct CurationReport {
    std::size_t input_rows = 0;
    std::size_t rejected_parse = 0;
    std::size_t rejected_kekulize = 0;
    std::size_t rejected_inorganic = 0;
    std::size_t rejected_nonpositive = 0;
    std::size_t curated_rows = 0;

    std::size_t rejected_total() const {
        return rejected_parse + rejected_kekulize + rejected_inorganic + rejected_nonpositive;
    }
};

// Standardizes structures, converts each IC50 (nM) to
// pIC50 = -log10(value * 1e-9) and arithmetic-means replicate
// measurements, producing one row per (compound, target) pair in first-
// appearance order. Records failing standardization or with non-positive
// values are dropped and counted in the report.
//
// Precondition: records already passed filter_records.
std::vector<CuratedCompound> aggregate_to_pic50(const std::vector<BioactivityRecord>& records,
                                                CurationReport* report = nullptr);

// filter + aggregate in one step.
std::vector<CuratedCompound> curate(const std::vector<BioactivityRecord>& records,
                                    CurationReport* report = nullptr);

double pic50_from_nm(double ic50_nm);

}  // namespace molscope::dataset
