#include "molscope/dataset/curate.hpp"

#include <cmath>
#include <map>

#include "molscope/chem/standardize.hpp"

namespace molscope::dataset {

std::vector<BioactivityRecord> filter_records(const std::vector<BioactivityRecord>& records) {
    std::vector<BioactivityRecord> out;
    out.reserve(records.size());
    for (const auto& r : records) {
        if (r.unit == "nM" && r.relation == "=") out.push_back(r);
    }
    return out;
}

double pic50_from_nm(double ic50_nm) { return -std::log10(ic50_nm * 1e-9); }

std::vector<CuratedCompound> aggregate_to_pic50(const std::vector<BioactivityRecord>& records,
                                                CurationReport* report) {
    CurationReport local;
    local.input_rows = records.size();

    struct Group {
        std::string smiles;
        double pic50_sum = 0.0;
        std::size_t n = 0;
    };
    std::vector<std::pair<std::string, std::string>> order;  // (compound, target)
    std::map<std::pair<std::string, std::string>, Group> groups;
    // Structures standardize identically for every replicate of a
    // compound; cache by raw string to avoid repeated work.
    std::map<std::string, chem::StandardizeResult> structure_cache;

    for (const auto& r : records) {
        if (!(r.value > 0.0) || !std::isfinite(r.value)) {
            ++local.rejected_nonpositive;
            continue;
        }
        auto it = structure_cache.find(r.smiles);
        if (it == structure_cache.end()) {
            it = structure_cache.emplace(r.smiles, chem::standardize_structure(r.smiles)).first;
        }
        const chem::StandardizeResult& std_res = it->second;
        if (!std_res.accepted) {
            if (std_res.reject_code == "parse_error") ++local.rejected_parse;
            else if (std_res.reject_code == "kekulize_error") ++local.rejected_kekulize;
            else ++local.rejected_inorganic;
            continue;
        }
        const auto key = std::make_pair(r.compound_id, r.target_id);
        auto git = groups.find(key);
        if (git == groups.end()) {
            git = groups.emplace(key, Group{std_res.smiles, 0.0, 0}).first;
            order.push_back(key);
        }
        git->second.pic50_sum += pic50_from_nm(r.value);
        git->second.n += 1;
    }

    std::vector<CuratedCompound> out;
    out.reserve(order.size());
    for (const auto& key : order) {
        const Group& g = groups.at(key);
        out.push_back({key.first, g.smiles, g.pic50_sum / static_cast<double>(g.n)});
    }
    local.curated_rows = out.size();
    if (report) *report = local;
    return out;
}

std::vector<CuratedCompound> curate(const std::vector<BioactivityRecord>& records,
                                    CurationReport* report) {
    return aggregate_to_pic50(filter_records(records), report);
}

}  // namespace molscope::dataset
