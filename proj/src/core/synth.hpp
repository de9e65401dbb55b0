#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/data.hpp"

namespace dpua::data {

// One agreement level of the synthetic corpus. `agreement * annotators`
// must be a whole number of votes so the realized agreement is exact.
struct SynthBucket {
    double agreement = 1.0;
    double weight = 1.0;
};

struct SynthProfile {
    Task task = Task::Sentiment;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    int annotators = 5;
    double test_fraction = 0.25;
    std::vector<SynthBucket> buckets;

    static SynthProfile from_json(const std::string& json_text);
};

// Deterministic template-based corpus with known disagreement structure.
// Every generated sample carries a reference rationale whose justification
// names the class cue token and whose disagreement cue names the ambiguity
// marker, so both Phase-1 supervision and the mock judge have exact targets.
Dataset generate_synthetic(const SynthProfile& profile);

} // namespace dpua::data
