#pragma once

#include <string>
#include <variant>

#include "core/data.hpp"

namespace dpua::proto {

// Parsed model emission: label, free-text rationale, confidence in (0.5, 1].
struct StructuredOutput {
    data::Label prediction = data::Label::Neg;
    std::string rationale;
    double confidence = 0.0;
};

enum class FailureKind { MissingField, UnknownLabel, ConfidenceOutOfRange, ConfidenceUnparsable };

struct ParseFailure {
    FailureKind kind;
    std::string span; // offending text, empty when a field is absent
};

using ParseResult = std::variant<StructuredOutput, ParseFailure>;

const char* failure_kind_name(FailureKind kind);

inline constexpr int kDefaultRationaleCap = 100; // tokens

// The instruction template with named placeholders ({task_definition},
// {pos_label}, {neg_label}, {context}, {input}).
const std::string& prompt_template();

// Fill the template for one sample. Context-bearing tasks get a
// "Context:/Response:" input block; others get the bare text.
std::string render_prompt(const data::Sample& sample);

// Total: any byte string maps to either a StructuredOutput or a ParseFailure.
// Field lines are matched case-insensitively and may carry a leading "- ".
// Rationales longer than `rationale_cap` whitespace tokens are truncated.
ParseResult parse_output(const std::string& text, data::Task task,
                         int rationale_cap = kDefaultRationaleCap);

// Class distribution implied by a (prediction, confidence) pair.
data::Distribution model_distribution(data::Label prediction, double confidence);

// Training target in the exact output format. The reference rationale is
// rendered as "<justification>. However, <cue>" and the confidence as a
// two-decimal literal. Requires the sample to carry a reference rationale.
std::string serialize_target(const data::Sample& sample, double gold_confidence);

// Confidence substituted for format-invalid outputs during evaluation:
// maximal expressible uncertainty, kept strictly inside the open bound.
inline constexpr double kInvalidConfidence = 0.5 + 1e-6;

} // namespace dpua::proto
