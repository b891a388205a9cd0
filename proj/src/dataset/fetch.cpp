#include "molscope/dataset/fetch.hpp"

#include <httplib.h>
#include <json.hpp>

#include <cstdlib>

namespace molscope::dataset {

using nlohmann::json;

fs::path cache_file_path(const fs::path& cache_dir, const std::string& source_id) {
    return cache_dir / (source_id + ".jsonl");
}

namespace {

fs::path meta_file_path(const fs::path& cache_dir, const std::string& source_id) {
    return cache_dir / (source_id + ".meta.json");
}

bool cache_is_current(const FetchOptions& options, const std::string& source_id) {
    const fs::path data = cache_file_path(options.cache_dir, source_id);
    const fs::path meta = meta_file_path(options.cache_dir, source_id);
    if (!fs::exists(data) || !fs::exists(meta)) return false;
    const json j = json::parse(read_file(meta), nullptr, false);
    if (j.is_discarded()) return false;
    return j.value("endpoint_version", "") == kEndpointVersion &&
           j.value("source_id", "") == source_id;
}

void write_cache(const FetchOptions& options, const std::string& source_id,
                 const std::vector<BioactivityRecord>& records) {
    atomic_write_file(cache_file_path(options.cache_dir, source_id),
                      records_to_jsonl(records));
    json meta;
    meta["source_id"] = source_id;
    meta["endpoint_version"] = kEndpointVersion;
    meta["rows"] = records.size();
    atomic_write_file(meta_file_path(options.cache_dir, source_id), meta.dump(2) + "\n");
}

struct UrlParts {
    std::string host_port;  // scheme://host:port
    std::string path;
};

UrlParts split_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw ConfigError("endpoint URL needs a scheme: " + url);
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

std::vector<BioactivityRecord> fetch_remote(const CatalogEntry& entry,
                                            const FetchOptions& options,
                                            FetchStats& stats) {
    const UrlParts url = split_url(options.endpoint);
    httplib::Client client(url.host_port);
    client.set_connection_timeout(10);
    client.set_read_timeout(60);

    std::vector<BioactivityRecord> all;
    for (int page = 0;; ++page) {
        const std::string path = url.path + "?target=" + entry.source_id +
                                 "&page=" + std::to_string(page) +
                                 "&page_size=" + std::to_string(options.page_size);
        auto res = client.Get(path);
        if (!res) {
            throw FetchError("endpoint unreachable while fetching '" + entry.source_id +
                             "' (cold cache): " + httplib::to_string(res.error()));
        }
        if (res->status == 404) {
            throw FetchError("source id '" + entry.source_id + "' unknown to endpoint");
        }
        if (res->status != 200) {
            throw FetchError("endpoint returned status " + std::to_string(res->status) +
                             " for '" + entry.source_id + "'");
        }
        const json body = json::parse(res->body, nullptr, false);
        if (body.is_discarded() || !body.contains("records")) {
            throw FetchError("malformed page payload for '" + entry.source_id + "'");
        }
        std::size_t page_rows = 0;
        for (const auto& item : body["records"]) {
            BioactivityRecord r;
            if (record_from_json(item.dump(), r)) {
                all.push_back(std::move(r));
            } else {
                ++stats.malformed_skipped;
            }
            ++page_rows;
        }
        if (page_rows < static_cast<std::size_t>(options.page_size)) break;
        if (page > 1000000) throw FetchError("pagination never terminated for '" +
                                             entry.source_id + "'");
    }
    return all;
}

}  // namespace

std::vector<BioactivityRecord> fetch_bioactivities(const CatalogEntry& entry,
                                                   const FetchOptions& options,
                                                   FetchStats* stats_out) {
    FetchStats stats;
    if (cache_is_current(options, entry.source_id)) {
        const std::string text = read_file(cache_file_path(options.cache_dir, entry.source_id));
        auto records = records_from_jsonl(text, &stats.malformed_skipped);
        stats.rows = records.size();
        stats.from_cache = true;
        if (stats_out) *stats_out = stats;
        return records;
    }
    if (options.offline || options.endpoint.empty()) {
        throw FetchError("no cache for '" + entry.source_id +
                         "' and fetching is disabled (offline or no endpoint)");
    }
    auto records = fetch_remote(entry, options, stats);
    write_cache(options, entry.source_id, records);
    stats.rows = records.size();
    if (stats_out) *stats_out = stats;
    return records;
}

FetchOptions fetch_options_from_env() {
    FetchOptions o;
    if (const char* v = std::getenv("MOLSCOPE_ENDPOINT")) o.endpoint = v;
    if (const char* v = std::getenv("MOLSCOPE_PAGE_SIZE")) o.page_size = std::max(1, std::atoi(v));
    if (const char* v = std::getenv("MOLSCOPE_CACHE_DIR")) o.cache_dir = v;
    if (const char* v = std::getenv("MOLSCOPE_OFFLINE")) o.offline = std::string(v) == "1";
    return o;
}

}  // namespace molscope::dataset
