#pragma once

#include <string>
#include <vector>

#include "molscope/dataset/catalog.hpp"
#include "molscope/dataset/records.hpp"

namespace molscope::dataset {

// Wire/cache format revision; cached files from other revisions are refetched.
inline constexpr const char* kEndpointVersion = "v1";

struct FetchOptions {
    // Base URL of the activities endpoint; the client appends
    // ?target=<source_id>&page=<k>&page_size=<n>. Empty means offline.
    std::string endpoint;
    int page_size = 1000;
    fs::path cache_dir = "cache";
    bool offline = false;
};

struct FetchStats {
    std::size_t rows = 0;
    std::size_t malformed_skipped = 0;
    bool from_cache = false;
};

// Returns every activity row for the entry's target, verbatim. A warm
// cache (one JSON-lines file per source id) short-circuits the network;
// a cold cache with no reachable endpoint raises FetchError. Cache writes
// are atomic so concurrent per-target fetches are safe.
std::vector<BioactivityRecord> fetch_bioactivities(const CatalogEntry& entry,
                                                   const FetchOptions& options,
                                                   FetchStats* stats = nullptr);

fs::path cache_file_path(const fs::path& cache_dir, const std::string& source_id);

// Environment-driven defaults: MOLSCOPE_ENDPOINT, MOLSCOPE_PAGE_SIZE,
// MOLSCOPE_CACHE_DIR, MOLSCOPE_OFFLINE.
FetchOptions fetch_options_from_env();

}  // namespace molscope::dataset
