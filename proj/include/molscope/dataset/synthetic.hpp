#pragma once

#include <string>
#include <vector>

#include "molscope/chem/mol.hpp"
#include "molscope/dataset/catalog.hpp"
#include "molscope/dataset/records.hpp"

namespace molscope::dataset {

// Deterministic synthetic benchmark fixtures. Snapshots of the public
// bioactivity source are not redistributable with the repo, so each
// catalog entry gets a generated stand-in that matches its curated row
// count exactly and mirrors the statistical shape the models expect:
// per-dataset pIC50 spread close to 1 unit, and labels driven by
// structural features (size, rings, heteroatoms, halogens) plus noise so
// that structure-aware models can beat the mean predictor but not reach
// zero error. The COX-1/COX-2 pair draws from a shared structure pool
// with ~900 overlapping compounds to support multi-task training.
//
// Raw tables additionally carry rows the curation stage must remove:
// non-nM units, non-'=' relations, metal-containing structures,
// unparseable strings, replicate measurements and salt forms.

// Stable compound id for a canonical structure (shared across datasets).
std::string synthetic_compound_id(const std::string& canonical_smiles);

// Deterministic pool of distinct standardized structures.
std::vector<std::string> synthetic_structure_pool(const std::string& pool_key,
                                                  std::size_t count);

std::vector<BioactivityRecord> synthesize_bioactivities(const CatalogEntry& entry);

// Writes the entry's fixture into the cache layout fetch_bioactivities
// reads, unless a current cache file already exists.
void ensure_fixture_cache(const CatalogEntry& entry, const fs::path& cache_dir);

// Structure-derived quantities the label generator mixes; exposed for tests.
struct MolFeatures {
    int heavy = 0;
    int rings = 0;
    int nitrogens = 0;
    int oxygens = 0;
    int sulfurs = 0;
    int halogens = 0;
    int branch_points = 0;
    int double_bonds = 0;
};
MolFeatures mol_features(const chem::Molecule& mol);

}  // namespace molscope::dataset
