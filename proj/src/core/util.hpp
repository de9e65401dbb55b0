#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace dpua {

// FNV-1a, used for content digests (dataset files, judge cache keys,
// checkpoint config hashes). Stable across platforms and runs.
inline std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ull) {
    std::uint64_t h = seed;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string to_hex(std::uint64_t value);

// splitmix64, used to derive independent RNG streams from a run seed so that
// per-sample work can be parallelized without order-dependent randomness.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0,
                                 std::uint64_t c = 0) {
    return mix64(base ^ mix64(a ^ mix64(b ^ mix64(c))));
}

std::string lowercase(std::string_view s);
std::string trim(std::string_view s);
bool iequals(std::string_view a, std::string_view b);

// Whitespace word count (dataset "Avg. L" column).
std::size_t count_words(std::string_view text);

// Two-decimal fixed rendering, e.g. 0.6 -> "0.60".
std::string format_confidence(double value);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

// Deterministic parallel map: applies fn(i) for i in [0, n) using `workers`
// threads. Results must be written to per-index slots by the caller so the
// output is independent of scheduling.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

} // namespace dpua
