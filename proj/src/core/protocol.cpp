#include "core/protocol.hpp"

#include <cstdlib>
#include <optional>
#include <sstream>
#include <string_view>
#include <vector>

#include "core/error.hpp"
#include "core/util.hpp"

namespace dpua::proto {

namespace {

constexpr const char* kPromptTemplate =
    R"(Instruction:
You are an expert in uncertainty-aware subjectivity analysis, capable of making judgments and expressing uncertainty in a human-aligned manner.

Task:
- Task Definition: {task_definition}
- Label Space: <{pos_label}, {neg_label}>
- Given the input text,
1) Determine whether the input is more appropriately labeled as <{pos_label}> or <{neg_label}>.
2) Provide a rationale based on the contextual cues in the text, and analyze potential uncertainty in terms of semantic ambiguity or possible annotator disagreement, preferably using transitional phrases such as although or however.
3) Provide a confidence score for this judgment based on the clarity and completeness of the evidence. The score must be a floating-point number in the range (0.5, 1.0].

Output Format:
- Prediction: <prediction label>
- Rationale: <rationale for your prediction>
- Confidence: <a float in (0.5, 1.0]>

Input:
{context}{input}
)";

std::string substitute_all(std::string text, const std::string& key, const std::string& value) {
    std::size_t pos;
    while ((pos = text.find(key)) != std::string::npos) {
        text.replace(pos, key.size(), value);
    }
    return text;
}

// Returns the value part of "- <name>: <value>" when the line carries the
// field, case-insensitively; nullopt otherwise.
std::optional<std::string> match_field_line(const std::string& line, const char* name) {
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    };
    skip_ws();
    if (i < line.size() && line[i] == '-') {
        ++i;
        skip_ws();
    }
    std::size_t name_len = std::string_view(name).size();
    if (line.size() - i < name_len) return std::nullopt;
    if (!iequals(std::string_view(line).substr(i, name_len), name)) return std::nullopt;
    i += name_len;
    skip_ws();
    if (i >= line.size() || line[i] != ':') return std::nullopt;
    ++i;
    skip_ws();
    return line.substr(i);
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string current;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    if (!current.empty()) lines.push_back(current);
    return lines;
}

std::string truncate_tokens(const std::string& text, int cap) {
    std::istringstream in(text);
    std::string word, out;
    int n = 0;
    while (in >> word) {
        if (n >= cap) break;
        if (n > 0) out += ' ';
        out += word;
        ++n;
    }
    return out;
}

} // namespace

const char* failure_kind_name(FailureKind kind) {
    switch (kind) {
    case FailureKind::MissingField: return "missing_field";
    case FailureKind::UnknownLabel: return "unknown_label";
    case FailureKind::ConfidenceOutOfRange: return "confidence_out_of_range";
    case FailureKind::ConfidenceUnparsable: return "confidence_unparsable";
    }
    return "unknown";
}

const std::string& prompt_template() {
    static const std::string tmpl = kPromptTemplate;
    return tmpl;
}

std::string render_prompt(const data::Sample& sample) {
    const data::TaskInfo& info = data::task_info(sample.task);
    std::string out = prompt_template();
    out = substitute_all(out, "{task_definition}", info.definition);
    out = substitute_all(out, "{pos_label}", info.pos_surface);
    out = substitute_all(out, "{neg_label}", info.neg_surface);
    std::string context_block;
    if (sample.context && !sample.context->empty()) {
        context_block = "Context: " + *sample.context + "\nResponse: ";
    }
    out = substitute_all(out, "{context}", context_block);
    out = substitute_all(out, "{input}", sample.text);
    return out;
}

ParseResult parse_output(const std::string& text, data::Task task, int rationale_cap) {
    const std::vector<std::string> lines = split_lines(text);

    std::optional<std::string> prediction_raw, rationale_raw, confidence_raw;
    std::size_t rationale_line = lines.size();
    for (std::size_t li = 0; li < lines.size(); ++li) {
        const std::string& line = lines[li];
        if (!prediction_raw) {
            if (auto v = match_field_line(line, "prediction")) {
                prediction_raw = *v;
                continue;
            }
        }
        if (!rationale_raw) {
            if (auto v = match_field_line(line, "rationale")) {
                rationale_raw = *v;
                rationale_line = li;
                continue;
            }
        }
        if (!confidence_raw) {
            if (auto v = match_field_line(line, "confidence")) {
                confidence_raw = *v;
                continue;
            }
        }
        // Unlabeled lines directly after the rationale line extend it.
        if (rationale_raw && !confidence_raw && li == rationale_line + 1 &&
            !trim(line).empty()) {
            *rationale_raw += " " + trim(line);
            rationale_line = li;
        }
    }

    if (!prediction_raw) return ParseFailure{FailureKind::MissingField, "Prediction"};
    if (!rationale_raw) return ParseFailure{FailureKind::MissingField, "Rationale"};
    if (!confidence_raw) return ParseFailure{FailureKind::MissingField, "Confidence"};

    std::string label_text = trim(*prediction_raw);
    while (!label_text.empty() &&
           (label_text.back() == '.' || label_text.back() == ',' || label_text.back() == '>')) {
        label_text.pop_back();
    }
    if (!label_text.empty() && label_text.front() == '<') label_text.erase(0, 1);
    label_text = trim(label_text);

    const data::TaskInfo& info = data::task_info(task);
    data::Label prediction;
    if (iequals(label_text, info.pos_surface)) {
        prediction = data::Label::Pos;
    } else if (iequals(label_text, info.neg_surface)) {
        prediction = data::Label::Neg;
    } else {
        return ParseFailure{FailureKind::UnknownLabel, trim(*prediction_raw)};
    }

    std::string conf_text = trim(*confidence_raw);
    const char* begin = conf_text.c_str();
    char* end = nullptr;
    double confidence = std::strtod(begin, &end);
    if (end == begin) return ParseFailure{FailureKind::ConfidenceUnparsable, conf_text};
    if (!(confidence > 0.5) || confidence > 1.0) {
        return ParseFailure{FailureKind::ConfidenceOutOfRange, conf_text};
    }

    StructuredOutput out;
    out.prediction = prediction;
    out.rationale = truncate_tokens(trim(*rationale_raw), rationale_cap);
    out.confidence = confidence;
    return out;
}

data::Distribution model_distribution(data::Label prediction, double confidence) {
    if (!(confidence > 0.5) || confidence > 1.0) {
        raise(ErrorCode::InvalidArgument,
              "confidence out of range (0.5, 1]: " + std::to_string(confidence));
    }
    if (prediction == data::Label::Pos) return data::Distribution{confidence, 1.0 - confidence};
    return data::Distribution{1.0 - confidence, confidence};
}

std::string serialize_target(const data::Sample& sample, double gold_confidence) {
    if (!sample.rationale) {
        raise(ErrorCode::InvalidArgument, "sample " + sample.id + " has no reference rationale");
    }
    if (!(gold_confidence > 0.5) || gold_confidence > 1.0) {
        raise(ErrorCode::InvalidArgument, "gold confidence out of range (0.5, 1]");
    }
    std::string lab = trim(sample.rationale->label_justification);
    while (!lab.empty() && lab.back() == '.') lab.pop_back();
    std::string cue = trim(sample.rationale->disagreement_cue);
    const std::string& surface = data::label_surface(sample.task, sample.majority);
    return "Prediction: " + surface + "\nRationale: " + lab + ". However, " + cue +
           "\nConfidence: " + format_confidence(gold_confidence);
}

} // namespace dpua::proto
