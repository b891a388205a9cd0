#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace molscope {

namespace fs = std::filesystem;

// Base class for all molscope failures. Subclasses carry the failing
// stage so callers can decide between retry, skip and abort.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ConfigError : public Error {
public:
    using Error::Error;
};

// Remote source unreachable with a cold cache; safe to retry.
class FetchError : public Error {
public:
    using Error::Error;
};

class BuildError : public Error {
public:
    using Error::Error;
};

class DataError : public Error {
public:
    using Error::Error;
};

namespace rng {

using Engine = std::mt19937_64;

// Uniform integer in [0, n) via rejection sampling on the raw 64-bit
// stream. std::uniform_int_distribution is implementation-defined, so
// splits produced with it would not be portable across standard
// libraries; this one is pinned.
inline std::uint64_t bounded(Engine& eng, std::uint64_t n) {
    if (n == 0) throw ConfigError("rng::bounded called with n == 0");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = eng();
    while (v >= limit) v = eng();
    return v % n;
}

inline double uniform01(Engine& eng) {
    // 53-bit mantissa draw, same construction on every platform.
    return static_cast<double>(eng() >> 11) * (1.0 / 9007199254740992.0);
}

inline double normal(Engine& eng) {
    // Marsaglia polar method; avoids std::normal_distribution for the
    // same portability reason as bounded().
    for (;;) {
        const double u = 2.0 * uniform01(eng) - 1.0;
        const double v = 2.0 * uniform01(eng) - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) {
            return u * std::sqrt(-2.0 * std::log(s) / s);
        }
    }
}

template <typename T>
void shuffle(std::vector<T>& v, Engine& eng) {
    // Fisher-Yates with bounded() draws.
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(bounded(eng, i));
        std::swap(v[i - 1], v[j]);
    }
}

// splitmix64 step; used to derive independent stream seeds.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace rng

// SHA-256 hex digest (OpenSSL-backed).
std::string sha256_hex(const void* data, std::size_t len);
std::string sha256_hex(const std::string& s);
std::string sha256_file_hex(const fs::path& path);

// 64-bit FNV-1a, used wherever a cheap stable hash is enough.
inline std::uint64_t fnv1a64(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 1469598103934665603ULL;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

// Writes content to path via a temp file + rename, so concurrent readers
// never observe a partial file.
void atomic_write_file(const fs::path& path, const std::string& content);

std::string read_file(const fs::path& path);

std::string to_lower(std::string s);
std::vector<std::string> split_string(const std::string& s, char sep);

// Fixed-point decimal formatting with '.' separator regardless of locale.
std::string format_double(double v, int precision = 6);

}  // namespace molscope
