#include "molscope/dataset/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "molscope/chem/smiles.hpp"
#include "molscope/chem/standardize.hpp"
#include "molscope/dataset/fetch.hpp"

namespace molscope::dataset {

namespace {

constexpr std::uint64_t kFixtureSalt = 0x6d6f6c73636f7065ULL;

chem::Molecule must_parse(const std::string& smiles) {
    auto r = chem::parse_smiles(smiles);
    if (!r.ok || !chem::kekulize(r.mol)) {
        throw DataError("bad builtin fragment: " + smiles);
    }
    return r.mol;
}

const std::vector<chem::Molecule>& scaffolds() {
    static const std::vector<chem::Molecule> mols = [] {
        const std::vector<std::string> smiles = {
            "c1ccccc1", "c1ccncc1", "c1cncnc1", "C1CCCCC1", "C1CCCC1",
            "c1ccsc1", "c1ccoc1", "c1cc[nH]c1", "C1CCNCC1", "C1CCOCC1",
            "c1ccc2ccccc2c1", "C1CCC2CCCCC2C1",
        };
        std::vector<chem::Molecule> out;
        for (const auto& s : smiles) out.push_back(must_parse(s));
        return out;
    }();
    return mols;
}

// Substituent fragments attach through atom 0.
const std::vector<chem::Molecule>& substituents() {
    static const std::vector<chem::Molecule> mols = [] {
        const std::vector<std::string> smiles = {
            "C", "CC", "CCC", "C(C)C", "O", "OC", "N", "N(C)C", "NC",
            "F", "Cl", "Br", "I", "C#N", "C(=O)O", "C(=O)N", "C(F)(F)F",
            "OCC", "OC(C)=O", "S(=O)(=O)N", "SC", "C=C",
        };
        std::vector<chem::Molecule> out;
        for (const auto& s : smiles) out.push_back(must_parse(s));
        return out;
    }();
    return mols;
}

// Appends `piece` to `base` with a single bond from `base_atom` to the
// piece's atom `piece_atom`.
void graft(chem::Molecule& base, int base_atom, const chem::Molecule& piece, int piece_atom) {
    const int offset = static_cast<int>(base.atoms.size());
    for (const auto& a : piece.atoms) base.add_atom(a);
    for (const auto& b : piece.bonds) base.add_bond(b.a + offset, b.b + offset, b.order, false);
    base.add_bond(base_atom, piece_atom + offset, 1, false);
    chem::assign_implicit_hydrogens(base);
}

std::vector<int> open_positions(const chem::Molecule& mol) {
    std::vector<int> out;
    for (std::size_t i = 0; i < mol.atoms.size(); ++i) {
        const auto& a = mol.atoms[i];
        if (a.element == "F" || a.element == "Cl" || a.element == "Br" || a.element == "I") continue;
        if (a.explicit_h >= 0) continue;  // bracket atoms keep their H count
        if (a.implicit_h >= 1) out.push_back(static_cast<int>(i));
    }
    return out;
}

chem::Molecule random_molecule(rng::Engine& eng, int size_hint) {
    const auto& scafs = scaffolds();
    const auto& subs = substituents();

    chem::Molecule mol = scafs[rng::bounded(eng, scafs.size())];
    chem::assign_implicit_hydrogens(mol);

    const int extra_scaffolds = size_hint >= 2 ? (rng::uniform01(eng) < 0.45 ? 1 : 0) +
                                                     (size_hint >= 4 && rng::uniform01(eng) < 0.25 ? 1 : 0)
                                               : 0;
    for (int s = 0; s < extra_scaffolds; ++s) {
        auto pos = open_positions(mol);
        if (pos.empty()) break;
        const int at = pos[rng::bounded(eng, pos.size())];
        const chem::Molecule& next = scafs[rng::bounded(eng, scafs.size())];
        const int linker = static_cast<int>(rng::bounded(eng, 3));  // 0..2 carbons
        if (linker == 0) {
            graft(mol, at, next, 0);
        } else {
            chem::Molecule chain;
            for (int i = 0; i < linker; ++i) {
                chem::Atom c;
                c.element = "C";
                const int idx = chain.add_atom(c);
                if (idx > 0) chain.add_bond(idx - 1, idx, 1, false);
            }
            graft(mol, at, chain, 0);
            const int chain_end = static_cast<int>(mol.atoms.size()) - 1;
            graft(mol, chain_end, next, 0);
        }
    }

    const int n_subs = 1 + static_cast<int>(rng::bounded(
                               eng, static_cast<std::uint64_t>(2 + std::min(size_hint, 5))));
    for (int s = 0; s < n_subs; ++s) {
        auto pos = open_positions(mol);
        if (pos.empty()) break;
        const int at = pos[rng::bounded(eng, pos.size())];
        graft(mol, at, subs[rng::bounded(eng, subs.size())], 0);
    }
    return mol;
}

}  // namespace

std::string synthetic_compound_id(const std::string& canonical_smiles) {
    return "SYN" + sha256_hex(canonical_smiles).substr(0, 12);
}

std::vector<std::string> synthetic_structure_pool(const std::string& pool_key,
                                                  std::size_t count) {
    rng::Engine eng(rng::derive_seed(kFixtureSalt, fnv1a64(pool_key.data(), pool_key.size())));
    std::vector<std::string> pool;
    std::set<std::string> seen;
    int attempts_at_size = 0;
    int size_hint = 1;
    while (pool.size() < count) {
        chem::Molecule mol = random_molecule(eng, size_hint);
        const std::string raw = chem::write_smiles(mol);
        auto std_res = chem::standardize_structure(raw);
        if (std_res.accepted && seen.insert(std_res.smiles).second) {
            pool.push_back(std_res.smiles);
            attempts_at_size = 0;
        } else if (++attempts_at_size > 50) {
            ++size_hint;  // widen the space when collisions pile up
            attempts_at_size = 0;
        }
        if (rng::uniform01(eng) < 0.02 && size_hint < 6) ++size_hint;
        if (size_hint > 1 && rng::uniform01(eng) < 0.10) --size_hint;
    }
    return pool;
}

MolFeatures mol_features(const chem::Molecule& mol) {
    MolFeatures f;
    chem::Molecule m = mol;  // ring perception mutates flags
    f.rings = static_cast<int>(m.perceive_rings().size());
    for (std::size_t i = 0; i < m.atoms.size(); ++i) {
        const auto& a = m.atoms[i];
        if (a.element != "H") ++f.heavy;
        if (a.element == "N") ++f.nitrogens;
        if (a.element == "O") ++f.oxygens;
        if (a.element == "S") ++f.sulfurs;
        if (a.element == "F" || a.element == "Cl" || a.element == "Br" || a.element == "I")
            ++f.halogens;
        if (m.degree(static_cast<int>(i)) >= 3) ++f.branch_points;
    }
    for (const auto& b : m.bonds) {
        if (b.order == 2) ++f.double_bonds;
    }
    return f;
}

namespace {

struct LabelModel {
    double w_heavy, w_rings, w_n, w_o, w_s, w_hal, w_branch, w_dbl;
    double mu;

    double raw(const MolFeatures& f) const {
        return w_heavy * f.heavy + w_rings * f.rings + w_n * f.nitrogens +
               w_o * f.oxygens + w_s * f.sulfurs + w_hal * f.halogens +
               w_branch * f.branch_points + w_dbl * f.double_bonds;
    }
};

LabelModel label_model_for(const std::string& name, rng::Engine& eng) {
    LabelModel m;
    // Size stays the dominant term so the signal is visible both to
    // fingerprints and to rendered depictions.
    m.w_heavy = 0.15;
    m.w_rings = 0.35 * rng::normal(eng);
    m.w_n = 0.40 * rng::normal(eng);
    m.w_o = 0.40 * rng::normal(eng);
    m.w_s = 0.45 * rng::normal(eng);
    m.w_hal = 0.35 * rng::normal(eng);
    m.w_branch = 0.20 * rng::normal(eng);
    m.w_dbl = 0.25 * rng::normal(eng);
    m.mu = 5.6 + rng::uniform01(eng);
    (void)name;
    return m;
}

// Signal/noise split on a unit-variance label: models can reach down to
// ~0.7 RMSE while the mean predictor sits near 1.0.
constexpr double kSignalSd = 0.714;
constexpr double kNoiseSd = 0.700;

}  // namespace

std::vector<BioactivityRecord> synthesize_bioactivities(const CatalogEntry& entry) {
    const std::size_t K = static_cast<std::size_t>(entry.expected_count);

    // COX-1/COX-2 share one pool so multi-task training has paired
    // compounds; everything else gets its own pool.
    const bool cox = entry.name == "COX-1" || entry.name == "COX-2";
    std::vector<std::string> structures;
    if (cox) {
        const std::size_t cox1 = 1343, cox2 = 2855, overlap = 900;
        auto pool = synthetic_structure_pool("COX-shared", cox1 + cox2 - overlap);
        if (entry.name == "COX-2") {
            structures.assign(pool.begin(), pool.begin() + cox2);
        } else {
            structures.assign(pool.begin() + (cox2 - overlap), pool.end());
        }
        if (structures.size() != K) throw DataError("COX pool slicing mismatch");
    } else {
        structures = synthetic_structure_pool(entry.name, K);
    }

    rng::Engine eng(rng::derive_seed(kFixtureSalt ^ 0x1abe1ULL,
                                     fnv1a64(entry.name.data(), entry.name.size())));
    const LabelModel model = label_model_for(entry.name, eng);

    // Raw structural scores, standardized within the dataset.
    std::vector<double> raw(K);
    std::vector<MolFeatures> feats(K);
    for (std::size_t i = 0; i < K; ++i) {
        auto parsed = chem::parse_smiles(structures[i]);
        chem::kekulize(parsed.mol);
        feats[i] = mol_features(parsed.mol);
        raw[i] = model.raw(feats[i]);
    }
    double mean = 0.0, var = 0.0;
    for (double v : raw) mean += v;
    mean /= static_cast<double>(K);
    for (double v : raw) var += (v - mean) * (v - mean);
    var /= static_cast<double>(K);
    const double sd = std::sqrt(std::max(var, 1e-12));

    std::vector<double> pic50(K);
    for (std::size_t i = 0; i < K; ++i) {
        const double z = (raw[i] - mean) / sd;
        double v = model.mu + kSignalSd * z + kNoiseSd * rng::normal(eng);
        pic50[i] = std::clamp(v, 3.0, 11.0);
    }

    std::vector<BioactivityRecord> rows;
    rows.reserve(K * 2);
    auto emit = [&](const std::string& id, const std::string& smiles, double p) {
        BioactivityRecord r;
        r.compound_id = id;
        r.smiles = smiles;
        r.target_id = entry.source_id;
        r.value = std::pow(10.0, 9.0 - p);
        r.relation = "=";
        r.unit = "nM";
        rows.push_back(std::move(r));
    };

    for (std::size_t i = 0; i < K; ++i) {
        const std::string id = synthetic_compound_id(structures[i]);
        std::string presented = structures[i];
        const double u_salt = rng::uniform01(eng);
        if (u_salt < 0.03) presented += ".[Na+]";
        else if (u_salt < 0.05) presented += ".Cl";
        else if (u_salt < 0.06) presented += ".O";

        const double u_rep = rng::uniform01(eng);
        const double delta = 0.02 + 0.08 * rng::uniform01(eng);
        if (u_rep < 0.85) {
            emit(id, presented, pic50[i]);
        } else if (u_rep < 0.95) {
            // Replicates jitter symmetrically; their mean is exact.
            emit(id, presented, pic50[i] - delta);
            emit(id, presented, pic50[i] + delta);
        } else {
            emit(id, presented, pic50[i] - delta);
            emit(id, presented, pic50[i]);
            emit(id, presented, pic50[i] + delta);
        }
    }

    // Rows curation must drop.
    auto decoy_id = [&](std::size_t i) {
        return "DEC" + sha256_hex(entry.name + ":" + std::to_string(i)).substr(0, 12);
    };
    std::size_t decoy = 0;
    const std::size_t unit_decoys = std::max<std::size_t>(3, K * 3 / 100);
    for (std::size_t i = 0; i < unit_decoys; ++i) {
        const std::size_t src = rng::bounded(eng, K);
        BioactivityRecord r;
        r.compound_id = decoy_id(decoy++);
        r.smiles = structures[src];
        r.target_id = entry.source_id;
        r.value = std::pow(10.0, 9.0 - pic50[src]) / 1000.0;
        r.relation = "=";
        r.unit = "uM";
        rows.push_back(std::move(r));
    }
    const std::size_t rel_decoys = std::max<std::size_t>(3, K * 3 / 100);
    static const char* kRelations[] = {">", "<", ">=", "<=", "~"};
    for (std::size_t i = 0; i < rel_decoys; ++i) {
        const std::size_t src = rng::bounded(eng, K);
        BioactivityRecord r;
        r.compound_id = decoy_id(decoy++);
        r.smiles = structures[src];
        r.target_id = entry.source_id;
        r.value = std::pow(10.0, 9.0 - pic50[src]);
        r.relation = kRelations[rng::bounded(eng, 5)];
        r.unit = "nM";
        rows.push_back(std::move(r));
    }
    static const char* kMetallic[] = {
        "CC[Hg]CC", "c1ccccc1[Pb](c1ccccc1)c1ccccc1", "CC(C)[As](C)C",
        "C1CC[Fe]CC1", "CC[Sn](CC)CC", "c1ccccc1[Zn]Cl",
    };
    const std::size_t metal_decoys = std::max<std::size_t>(2, K / 100);
    for (std::size_t i = 0; i < metal_decoys; ++i) {
        BioactivityRecord r;
        r.compound_id = decoy_id(decoy++);
        r.smiles = kMetallic[rng::bounded(eng, 6)];
        r.target_id = entry.source_id;
        r.value = 100.0 + 10.0 * static_cast<double>(rng::bounded(eng, 100));
        r.relation = "=";
        r.unit = "nM";
        rows.push_back(std::move(r));
    }
    static const char* kBroken[] = {"C1CC(C", "CC)C", "[Qq]CC", "C1CC"};
    const std::size_t broken_decoys = std::max<std::size_t>(2, K / 200);
    for (std::size_t i = 0; i < broken_decoys; ++i) {
        BioactivityRecord r;
        r.compound_id = decoy_id(decoy++);
        r.smiles = kBroken[rng::bounded(eng, 4)];
        r.target_id = entry.source_id;
        r.value = 500.0;
        r.relation = "=";
        r.unit = "nM";
        rows.push_back(std::move(r));
    }

    rng::shuffle(rows, eng);
    return rows;
}

void ensure_fixture_cache(const CatalogEntry& entry, const fs::path& cache_dir) {
    const fs::path data = cache_file_path(cache_dir, entry.source_id);
    const fs::path meta = cache_dir / (entry.source_id + ".meta.json");
    if (fs::exists(data) && fs::exists(meta)) return;
    const auto rows = synthesize_bioactivities(entry);
    atomic_write_file(data, records_to_jsonl(rows));
    atomic_write_file(meta, std::string("{\n  \"source_id\": \"") + entry.source_id +
                                "\",\n  \"endpoint_version\": \"" + kEndpointVersion +
                                "\",\n  \"rows\": " + std::to_string(rows.size()) + "\n}\n");
}

}  // namespace molscope::dataset
