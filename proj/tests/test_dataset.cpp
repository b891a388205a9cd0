#include <doctest.h>
#include <httplib.h>

#include <cmath>
#include <filesystem>
#include <set>
#include <thread>

#include "molscope/dataset/catalog.hpp"
#include "molscope/dataset/curate.hpp"
#include "molscope/dataset/fetch.hpp"
#include "molscope/dataset/records.hpp"
#include "molscope/dataset/split.hpp"
#include "molscope/dataset/synthetic.hpp"

using namespace molscope;
using namespace molscope::dataset;

namespace {

BioactivityRecord make_record(const std::string& id, const std::string& smiles,
                              double value, const std::string& relation,
                              const std::string& unit) {
    BioactivityRecord r;
    r.compound_id = id;
    r.smiles = smiles;
    r.target_id = "T1";
    r.value = value;
    r.relation = relation;
    r.unit = unit;
    return r;
}

fs::path fresh_dir(const std::string& tag) {
    const fs::path p = fs::temp_directory_path() / ("molscope_test_" + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("filter keeps exactly nM/= rows in order") {
    std::vector<BioactivityRecord> in = {
        make_record("c1", "CCO", 100, "=", "uM"),
        make_record("c2", "CCO", 100, ">", "nM"),
        make_record("c3", "CCO", 100, "=", "nM"),
        make_record("c4", "CCN", 200, "=", "nM"),
    };
    auto out = filter_records(in);
    REQUIRE(out.size() == 2);
    CHECK(out[0].compound_id == "c3");
    CHECK(out[1].compound_id == "c4");
    CHECK(out[0] == in[2]);

    auto again = filter_records(out);
    CHECK(again == out);
}

TEST_CASE("aggregation computes mean pIC50 per pair") {
    SUBCASE("single record at 1000 nM gives 6.0") {
        auto out = aggregate_to_pic50({make_record("c1", "CCO", 1000.0, "=", "nM")});
        REQUIRE(out.size() == 1);
        CHECK(out[0].pic50 == doctest::Approx(6.0).epsilon(1e-12));
    }
    SUBCASE("100 nM and 1000 nM replicates average to 6.5") {
        auto out = aggregate_to_pic50({
            make_record("c1", "CCO", 100.0, "=", "nM"),
            make_record("c1", "CCO", 1000.0, "=", "nM"),
        });
        REQUIRE(out.size() == 1);
        CHECK(out[0].pic50 == doctest::Approx(6.5).epsilon(1e-12));
    }
    SUBCASE("1 nM gives 9.0") {
        auto out = aggregate_to_pic50({make_record("c1", "CCO", 1.0, "=", "nM")});
        REQUIRE(out.size() == 1);
        CHECK(out[0].pic50 == doctest::Approx(9.0).epsilon(1e-12));
    }
    SUBCASE("non-positive values are rejected with a count") {
        CurationReport report;
        auto out = aggregate_to_pic50({
            make_record("c1", "CCO", 0.0, "=", "nM"),
            make_record("c2", "CCO", -5.0, "=", "nM"),
            make_record("c3", "CCO", 10.0, "=", "nM"),
        }, &report);
        CHECK(out.size() == 1);
        CHECK(report.rejected_nonpositive == 2);
    }
    SUBCASE("aggregated value lies inside the per-row range") {
        rng::Engine eng(7);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<BioactivityRecord> rows;
            const int n = 1 + static_cast<int>(rng::bounded(eng, 5));
            double lo = 1e9, hi = -1e9;
            for (int i = 0; i < n; ++i) {
                const double v = std::pow(10.0, 1.0 + 5.0 * rng::uniform01(eng));
                rows.push_back(make_record("c", "CCO", v, "=", "nM"));
                lo = std::min(lo, pic50_from_nm(v));
                hi = std::max(hi, pic50_from_nm(v));
            }
            auto out = aggregate_to_pic50(rows);
            REQUIRE(out.size() == 1);
            CHECK(out[0].pic50 >= lo - 1e-12);
            CHECK(out[0].pic50 <= hi + 1e-12);
        }
    }
}

TEST_CASE("curation standardizes structures and drops bad ones") {
    CurationReport report;
    auto out = curate({
        make_record("c1", "CC(=O)[O-].[Na+]", 100.0, "=", "nM"),
        make_record("c2", "CC[Hg]CC", 100.0, "=", "nM"),
        make_record("c3", "C1CC(", 100.0, "=", "nM"),
        make_record("c4", "c1ccccc1", 250.0, "=", "nM"),
        make_record("c5", "CCO", 100.0, "=", "uM"),
    }, &report);
    REQUIRE(out.size() == 2);
    CHECK(out[0].compound_id == "c1");
    CHECK(out[1].compound_id == "c4");
    CHECK(report.rejected_inorganic == 1);
    CHECK(report.rejected_parse == 1);
}

TEST_CASE("split sizes follow the floor rule") {
    std::vector<std::string> ids;
    for (int i = 0; i < 2255; ++i) ids.push_back("id" + std::to_string(i));
    auto split = split_dataset(ids, 42);
    CHECK(split.train_ids.size() == 1578);
    CHECK(split.val_ids.size() == 338);
    CHECK(split.test_ids.size() == 339);

    ids.resize(100);
    auto s100 = split_dataset(ids, 1);
    CHECK(s100.train_ids.size() == 70);
    CHECK(s100.val_ids.size() == 15);
    CHECK(s100.test_ids.size() == 15);
}

TEST_CASE("split is deterministic and refuses tiny datasets") {
    std::vector<std::string> ids;
    for (int i = 0; i < 57; ++i) ids.push_back("id" + std::to_string(i));
    auto a = split_dataset(ids, 99);
    auto b = split_dataset(ids, 99);
    CHECK(a.train_ids == b.train_ids);
    CHECK(a.val_ids == b.val_ids);
    CHECK(a.test_ids == b.test_ids);

    ids.resize(9);
    CHECK_THROWS_AS(split_dataset(ids, 1), DataError);
}

TEST_CASE("split partition property over random sizes and seeds") {
    rng::Engine eng(20260810);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 10 + rng::bounded(eng, 100000 - 10 + 1);
        std::vector<std::string> ids(n);
        for (std::size_t i = 0; i < n; ++i) ids[i] = std::to_string(i);
        const auto split = split_dataset(ids, eng());

        CHECK(split.train_ids.size() == 7 * n / 10);
        CHECK(split.val_ids.size() == 3 * n / 20);
        CHECK(split.test_ids.size() == n - 7 * n / 10 - 3 * n / 20);

        if (trial % 50 == 0) {  // full disjoint/exhaustive check is O(n log n)
            std::set<std::string> all;
            for (const auto& v : {split.train_ids, split.val_ids, split.test_ids})
                for (const auto& id : v) CHECK(all.insert(id).second);
            CHECK(all.size() == n);
        }
    }
}

TEST_CASE("split JSON round-trips") {
    const fs::path dir = fresh_dir("split");
    std::vector<std::string> ids;
    for (int i = 0; i < 30; ++i) ids.push_back("id" + std::to_string(i));
    auto split = split_dataset(ids, 7);
    write_split_json(dir / "split.json", split);
    auto loaded = read_split_json(dir / "split.json");
    CHECK(loaded.seed == split.seed);
    CHECK(loaded.train_ids == split.train_ids);
    CHECK(loaded.val_ids == split.val_ids);
    CHECK(loaded.test_ids == split.test_ids);
}

TEST_CASE("curated CSV round-trips") {
    const fs::path dir = fresh_dir("curated_csv");
    std::vector<CuratedCompound> rows = {
        {"c1", "CCO", 6.25}, {"c2", "c1ccccc1", 7.5}};
    write_curated_csv(dir / "curated.csv", rows);
    auto loaded = read_curated_csv(dir / "curated.csv");
    REQUIRE(loaded.size() == 2);
    CHECK(loaded[0].compound_id == "c1");
    CHECK(loaded[1].smiles == "c1ccccc1");
    CHECK(loaded[0].pic50 == doctest::Approx(6.25));
}

TEST_CASE("catalog carries 33 uniquely named entries") {
    const auto& entries = catalog();
    CHECK(entries.size() == 33);
    CHECK(cytotoxicity_entries().size() == 8);
    CHECK(protein_entries().size() == 25);
    std::set<std::string> names;
    for (const auto& e : entries) {
        CHECK(e.expected_count > 0);
        CHECK(names.insert(e.name).second);
    }
    CHECK(catalog_entry("A2780").expected_count == 2255);
    CHECK_THROWS_AS(catalog_entry("no-such-set"), ConfigError);
}

TEST_CASE("fetch round-trips through a local endpoint and cache") {
    const fs::path cache = fresh_dir("fetch_cache");
    const CatalogEntry entry{"TINY", "SRC1", 3, TargetKind::cell_line};

    std::vector<BioactivityRecord> served;
    for (int i = 0; i < 5; ++i) {
        served.push_back(make_record("c" + std::to_string(i), "CCO", 100.0 + i, "=", "nM"));
    }

    httplib::Server server;
    server.Get("/v1/activities", [&](const httplib::Request& req, httplib::Response& res) {
        if (req.get_param_value("target") != "SRC1") {
            res.status = 404;
            return;
        }
        const int page = std::stoi(req.get_param_value("page"));
        const int page_size = std::stoi(req.get_param_value("page_size"));
        std::string body = "{\"total\": 5, \"records\": [";
        bool first = true;
        for (int i = page * page_size; i < std::min<int>(5, (page + 1) * page_size); ++i) {
            if (!first) body += ",";
            first = false;
            body += record_to_json(served[i]);
        }
        // One malformed row on page 0 must be skipped and counted.
        if (page == 0) body += std::string(first ? "" : ",") + "{\"bogus\": true}";
        body += "]}";
        res.set_content(body, "application/json");
    });
    const int port = server.bind_to_any_port("127.0.0.1");
    std::thread server_thread([&] { server.listen_after_bind(); });
    while (!server.is_running()) std::this_thread::sleep_for(std::chrono::milliseconds(5));

    FetchOptions options;
    options.endpoint = "http://127.0.0.1:" + std::to_string(port) + "/v1/activities";
    options.page_size = 2;
    options.cache_dir = cache;

    FetchStats stats;
    auto got = fetch_bioactivities(entry, options, &stats);
    CHECK(got.size() == 5);
    CHECK(stats.malformed_skipped == 1);
    CHECK_FALSE(stats.from_cache);
    CHECK(got == served);

    // Unknown id fails naming the id.
    const CatalogEntry unknown{"NOPE", "SRC_MISSING", 1, TargetKind::cell_line};
    CHECK_THROWS_WITH_AS(fetch_bioactivities(unknown, options),
                         doctest::Contains("SRC_MISSING"), FetchError);

    server.stop();
    server_thread.join();

    // Warm cache: byte-identical record list with the endpoint gone.
    FetchStats stats2;
    auto cached = fetch_bioactivities(entry, options, &stats2);
    CHECK(stats2.from_cache);
    CHECK(cached == got);

    // Cold cache, offline: retryable fetch error.
    FetchOptions offline = options;
    offline.cache_dir = fresh_dir("fetch_cache_cold");
    offline.offline = true;
    CHECK_THROWS_AS(fetch_bioactivities(entry, offline), FetchError);
}

TEST_CASE("synthetic fixture curates to the catalog count exactly") {
    const CatalogEntry& entry = catalog_entry("HCT-15");  // smallest cytotoxicity set
    auto rows = synthesize_bioactivities(entry);
    CHECK(rows.size() >= static_cast<std::size_t>(entry.expected_count));

    CurationReport report;
    auto curated = curate(rows, &report);
    CHECK(curated.size() == static_cast<std::size_t>(entry.expected_count));
    CHECK(report.rejected_inorganic > 0);
    CHECK(report.rejected_parse > 0);

    // One row per pair.
    std::set<std::string> ids;
    for (const auto& c : curated) CHECK(ids.insert(c.compound_id).second);

    // Labels: plausible range and near-unit spread.
    double mean = 0.0, var = 0.0;
    for (const auto& c : curated) mean += c.pic50;
    mean /= static_cast<double>(curated.size());
    for (const auto& c : curated) var += (c.pic50 - mean) * (c.pic50 - mean);
    var /= static_cast<double>(curated.size());
    CHECK(mean > 4.0);
    CHECK(mean < 8.0);
    CHECK(std::sqrt(var) > 0.75);
    CHECK(std::sqrt(var) < 1.25);

    // Deterministic regeneration.
    auto rows2 = synthesize_bioactivities(entry);
    CHECK(rows2 == rows);
}

TEST_CASE("COX fixtures share compounds for multi-task training") {
    auto cox1 = curate(synthesize_bioactivities(catalog_entry("COX-1")));
    auto cox2 = curate(synthesize_bioactivities(catalog_entry("COX-2")));
    CHECK(cox1.size() == 1343);
    CHECK(cox2.size() == 2855);
    std::set<std::string> ids1;
    for (const auto& c : cox1) ids1.insert(c.compound_id);
    std::size_t shared = 0;
    for (const auto& c : cox2) shared += ids1.count(c.compound_id);
    CHECK(shared == 900);
}

TEST_CASE("fixture cache is readable through fetch") {
    const fs::path cache = fresh_dir("fixture_cache");
    const CatalogEntry& entry = catalog_entry("A2a");  // smallest protein set
    ensure_fixture_cache(entry, cache);

    FetchOptions options;
    options.cache_dir = cache;
    options.offline = true;
    FetchStats stats;
    auto rows = fetch_bioactivities(entry, options, &stats);
    CHECK(stats.from_cache);
    CHECK(rows.size() >= 203);
    CHECK(curate(rows).size() == 203);
}
