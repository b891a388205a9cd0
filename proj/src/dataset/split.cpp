#include "molscope/dataset/split.hpp"

#include <json.hpp>

namespace molscope::dataset {

using nlohmann::json;

DatasetSplit split_dataset(const std::vector<std::string>& ids, std::uint64_t seed) {
    const std::size_t n = ids.size();
    if (n < 10) {
        throw DataError("refusing to split " + std::to_string(n) +
                        " compounds; 70/15/15 fractions need at least 10");
    }
    std::vector<std::string> shuffled = ids;
    rng::Engine eng(seed);
    rng::shuffle(shuffled, eng);

    // floor(0.70*N) and floor(0.15*N) in exact rational arithmetic;
    // double rounding would misplace one compound for N = 10, 20, ...
    const std::size_t n_train = 7 * n / 10;
    const std::size_t n_val = 3 * n / 20;

    DatasetSplit out;
    out.seed = seed;
    out.train_ids.assign(shuffled.begin(), shuffled.begin() + n_train);
    out.val_ids.assign(shuffled.begin() + n_train, shuffled.begin() + n_train + n_val);
    out.test_ids.assign(shuffled.begin() + n_train + n_val, shuffled.end());
    return out;
}

void write_split_json(const fs::path& path, const DatasetSplit& split) {
    json j;
    j["seed"] = split.seed;
    j["train_ids"] = split.train_ids;
    j["val_ids"] = split.val_ids;
    j["test_ids"] = split.test_ids;
    atomic_write_file(path, j.dump(2) + "\n");
}

DatasetSplit read_split_json(const fs::path& path) {
    const json j = json::parse(read_file(path));
    DatasetSplit out;
    out.seed = j.at("seed").get<std::uint64_t>();
    out.train_ids = j.at("train_ids").get<std::vector<std::string>>();
    out.val_ids = j.at("val_ids").get<std::vector<std::string>>();
    out.test_ids = j.at("test_ids").get<std::vector<std::string>>();
    return out;
}

}  // namespace molscope::dataset
