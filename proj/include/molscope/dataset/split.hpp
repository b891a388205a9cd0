#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "molscope/common.hpp"

namespace molscope::dataset {

struct DatasetSplit {
    std::uint64_t seed = 0;
    std::vector<std::string> train_ids;
    std::vector<std::string> val_ids;
    std::vector<std::string> test_ids;
};

// 70/15/15 split: ids are permuted with a Fisher-Yates shuffle driven by
// mt19937_64(seed) (rejection-sampled bounded draws, see rng::bounded),
// then assigned contiguously as floor(0.70*N) train, floor(0.15*N)
// validation, remainder test. Deterministic for fixed (ids order, seed);
// refuses N < 10.
DatasetSplit split_dataset(const std::vector<std::string>& ids, std::uint64_t seed);

void write_split_json(const fs::path& path, const DatasetSplit& split);
DatasetSplit read_split_json(const fs::path& path);

}  // namespace molscope::dataset
