#include "molscope/dataset/catalog.hpp"

namespace molscope::dataset {

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = {
        // Cytotoxicity cell lines.
        {"A2780", "CHEMBL3308421", 2255, TargetKind::cell_line},
        {"CCRF-CEM", "CHEMBL3307641", 3047, TargetKind::cell_line},
        {"DU-145", "CHEMBL3308034", 2512, TargetKind::cell_line},
        {"HCT-15", "CHEMBL3307945", 994, TargetKind::cell_line},
        {"KB", "CHEMBL3307959", 2731, TargetKind::cell_line},
        {"LoVo", "CHEMBL3307691", 1120, TargetKind::cell_line},
        {"PC-3", "CHEMBL3307570", 4294, TargetKind::cell_line},
        {"SK-OV-3", "CHEMBL3307746", 1589, TargetKind::cell_line},
        // Protein targets.
        {"A2a", "CHEMBL1867", 203, TargetKind::protein},
        {"ABL1", "CHEMBL1862", 773, TargetKind::protein},
        {"Acetylcholinesterase", "CHEMBL220", 3159, TargetKind::protein},
        {"Androgen", "CHEMBL1871", 1290, TargetKind::protein},
        {"Aurora-A", "CHEMBL4722", 2125, TargetKind::protein},
        {"B-raf", "CHEMBL5145", 1730, TargetKind::protein},
        {"Cannabinoid", "CHEMBL218", 1116, TargetKind::protein},
        {"Carbonic", "CHEMBL205", 603, TargetKind::protein},
        {"Caspase", "CHEMBL2334", 1606, TargetKind::protein},
        {"Coagulation", "CHEMBL204", 1700, TargetKind::protein},
        {"COX-1", "CHEMBL221", 1343, TargetKind::protein},
        {"COX-2", "CHEMBL230", 2855, TargetKind::protein},
        {"Dihydrofolate", "CHEMBL202", 584, TargetKind::protein},
        {"Dopamine", "CHEMBL217", 479, TargetKind::protein},
        {"Ephrin", "CHEMBL222", 1740, TargetKind::protein},
        {"erbB1", "CHEMBL203", 4868, TargetKind::protein},
        {"Estrogen", "CHEMBL206", 1705, TargetKind::protein},
        {"Glucocorticoid", "CHEMBL2034", 1447, TargetKind::protein},
        {"Glycogen", "CHEMBL262", 1757, TargetKind::protein},
        {"HERG", "CHEMBL240", 5207, TargetKind::protein},
        {"JAK2", "CHEMBL2971", 2655, TargetKind::protein},
        {"LCK", "CHEMBL258", 1352, TargetKind::protein},
        {"Monoamine", "CHEMBL1951", 1379, TargetKind::protein},
        {"Opioid", "CHEMBL233", 840, TargetKind::protein},
        {"Vanilloid", "CHEMBL4794", 1923, TargetKind::protein},
    };
    return entries;
}

const CatalogEntry& catalog_entry(const std::string& name) {
    for (const auto& e : catalog()) {
        if (e.name == name) return e;
    }
    throw ConfigError("unknown dataset '" + name + "'");
}

std::vector<CatalogEntry> cytotoxicity_entries() {
    std::vector<CatalogEntry> out;
    for (const auto& e : catalog()) {
        if (e.kind == TargetKind::cell_line) out.push_back(e);
    }
    return out;
}

std::vector<CatalogEntry> protein_entries() {
    std::vector<CatalogEntry> out;
    for (const auto& e : catalog()) {
        if (e.kind == TargetKind::protein) out.push_back(e);
    }
    return out;
}

}  // namespace molscope::dataset
