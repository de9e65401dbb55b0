#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dpua::data {

// Binary subjectivity tasks. Each carries a fixed (pos, neg) label surface
// pair and a one-line task definition used by the prompt renderer.
enum class Task { Sarcasm, Sentiment, Offense };

enum class Label { Pos, Neg };
enum class Split { Train, Test };

struct TaskInfo {
    Task task;
    std::string name;        // wire string: "sarcasm" | "sentiment" | "offense"
    std::string pos_surface; // e.g. "Sarcastic"
    std::string neg_surface; // e.g. "Normal"
    std::string definition;  // prompt {task_definition} text
    bool uses_context;       // sarcasm inputs carry a dialogue context
};

const TaskInfo& task_info(Task task);
Task task_from_name(const std::string& name);
const std::string& label_surface(Task task, Label label);

struct AnnotationCounts {
    int pos = 0;
    int neg = 0;

    int total() const { return pos + neg; }
};

// Empirical annotator vote distribution over {pos, neg}.
struct Distribution {
    double p_pos = 0.0;
    double p_neg = 0.0;
};

// p_pos = pos / (pos + neg). Throws InvalidArgument when no annotators.
Distribution disagreement_distribution(const AnnotationCounts& counts);

// max(p_pos, p_neg), in [0.5, 1].
double agreement_score(const Distribution& dist);

// argmax class. An exact 0.5/0.5 tie resolves to Neg; `tied`, when given,
// reports whether the tie rule fired.
Label majority_label(const Distribution& dist, bool* tied = nullptr);

struct Rationale {
    std::string label_justification; // why the majority label holds
    std::string disagreement_cue;    // what could make annotators disagree
};

struct Sample {
    std::string id;
    Task task = Task::Sentiment;
    std::optional<std::string> context;
    std::string text;
    AnnotationCounts counts;
    std::optional<Rationale> rationale;
    Split split = Split::Train;

    // Derived on load; never serialized.
    Distribution dist;
    double agreement = 0.0;
    Label majority = Label::Neg;
    bool tied = false;

    void derive();
};

struct Dataset {
    Task task = Task::Sentiment;
    std::vector<Sample> samples;

    std::vector<const Sample*> split_view(Split split) const;
    std::size_t count_split(Split split) const;
};

struct DatasetStats {
    std::size_t n_pos = 0;
    std::size_t n_neg = 0;
    std::size_t n_train = 0;
    std::size_t n_test = 0;
    std::size_t n_total = 0;
    int anno_min = 0;
    int anno_max = 0;
    double avg_agreement = 0.0;
    double avg_length_words = 0.0;
};

// Line-delimited record IO. In strict mode unknown fields are rejected;
// in lenient mode they are ignored. Malformed lines raise Parse errors that
// cite the 1-based line number. `expected_task`, when set, requires every
// record to carry that task.
Dataset load_dataset(const std::string& path, std::optional<Task> expected_task = std::nullopt,
                     bool strict = true);
Dataset parse_dataset(const std::string& content, std::optional<Task> expected_task = std::nullopt,
                      bool strict = true);

// Canonical serialization: fixed key order, one record per line. The result
// round-trips through parse_dataset byte-for-byte.
std::string serialize_dataset(const Dataset& dataset);
void save_dataset(const Dataset& dataset, const std::string& path);

DatasetStats dataset_stats(const Dataset& dataset);

// Table-layout stats row (dataset name, #Pos ... Avg. L), one line.
std::string stats_table(const DatasetStats& stats, const std::string& name);

} // namespace dpua::data
