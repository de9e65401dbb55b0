#include "core/data.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "core/error.hpp"
#include "core/util.hpp"

namespace dpua::data {

using nlohmann::ordered_json;

namespace {

const std::array<TaskInfo, 3> kTasks = {{
    {Task::Sarcasm, "sarcasm", "Sarcastic", "Normal",
     "Decide whether the response is sarcastic given the conversation context.", true},
    {Task::Sentiment, "sentiment", "Positive", "Negative",
     "Decide whether the text expresses a positive or a negative emotion.", false},
    {Task::Offense, "offense", "Offensive", "Non-offensive",
     "Decide whether the post is offensive, including implicit forms of aggression.", false},
}};

[[noreturn]] void malformed(std::size_t line, const std::string& what) {
    raise(ErrorCode::Parse, "malformed record at line " + std::to_string(line) + ": " + what);
}

} // namespace

const TaskInfo& task_info(Task task) {
    return kTasks[static_cast<std::size_t>(task)];
}

Task task_from_name(const std::string& name) {
    for (const auto& info : kTasks) {
        if (info.name == name) return info.task;
    }
    raise(ErrorCode::InvalidArgument, "unknown task: " + name);
}

const std::string& label_surface(Task task, Label label) {
    const TaskInfo& info = task_info(task);
    return label == Label::Pos ? info.pos_surface : info.neg_surface;
}

Distribution disagreement_distribution(const AnnotationCounts& counts) {
    if (counts.pos < 0 || counts.neg < 0) {
        raise(ErrorCode::InvalidArgument, "negative annotation count");
    }
    if (counts.total() < 1) {
        raise(ErrorCode::InvalidArgument, "zero annotators");
    }
    double p = static_cast<double>(counts.pos) / static_cast<double>(counts.total());
    return Distribution{p, 1.0 - p};
}

double agreement_score(const Distribution& dist) {
    return std::max(dist.p_pos, dist.p_neg);
}

Label majority_label(const Distribution& dist, bool* tied) {
    bool tie = dist.p_pos == dist.p_neg;
    if (tied) *tied = tie;
    return dist.p_pos > dist.p_neg ? Label::Pos : Label::Neg;
}

void Sample::derive() {
    dist = disagreement_distribution(counts);
    agreement = agreement_score(dist);
    majority = majority_label(dist, &tied);
}

std::vector<const Sample*> Dataset::split_view(Split split) const {
    std::vector<const Sample*> out;
    for (const Sample& s : samples) {
        if (s.split == split) out.push_back(&s);
    }
    return out;
}

std::size_t Dataset::count_split(Split split) const {
    std::size_t n = 0;
    for (const Sample& s : samples) {
        if (s.split == split) ++n;
    }
    return n;
}

namespace {

Sample parse_record(const ordered_json& rec, std::size_t line, bool strict) {
    static const std::array<std::string, 7> known = {
        "id", "task", "context", "text", "annotations", "rationale", "split"};
    if (!rec.is_object()) malformed(line, "record is not an object");
    if (strict) {
        for (const auto& [key, _] : rec.items()) {
            bool ok = false;
            for (const auto& k : known) ok = ok || k == key;
            if (!ok) malformed(line, "unknown field '" + key + "' (strict mode)");
        }
    }
    for (const char* field : {"id", "task", "text", "annotations", "split"}) {
        if (!rec.contains(field)) malformed(line, std::string("missing field '") + field + "'");
    }

    Sample s;
    if (!rec["id"].is_string()) malformed(line, "'id' must be a string");
    s.id = rec["id"].get<std::string>();
    if (s.id.empty()) malformed(line, "'id' must be non-empty");

    if (!rec["task"].is_string()) malformed(line, "'task' must be a string");
    try {
        s.task = task_from_name(rec["task"].get<std::string>());
    } catch (const Error&) {
        malformed(line, "unknown task '" + rec["task"].get<std::string>() + "'");
    }

    if (rec.contains("context") && !rec["context"].is_null()) {
        if (!rec["context"].is_string()) malformed(line, "'context' must be a string or null");
        s.context = rec["context"].get<std::string>();
    }

    if (!rec["text"].is_string()) malformed(line, "'text' must be a string");
    s.text = rec["text"].get<std::string>();
    if (s.text.empty()) malformed(line, "'text' must be non-empty");

    const auto& ann = rec["annotations"];
    if (!ann.is_object() || !ann.contains("pos") || !ann.contains("neg") ||
        !ann["pos"].is_number_integer() || !ann["neg"].is_number_integer()) {
        malformed(line, "'annotations' must be an object with integer 'pos' and 'neg'");
    }
    s.counts.pos = ann["pos"].get<int>();
    s.counts.neg = ann["neg"].get<int>();
    if (s.counts.pos < 0 || s.counts.neg < 0) malformed(line, "negative annotation count");
    if (s.counts.total() < 1) malformed(line, "pos + neg must be at least 1");

    if (rec.contains("rationale") && !rec["rationale"].is_null()) {
        const auto& rat = rec["rationale"];
        if (!rat.is_object() || !rat.contains("label_justification") ||
            !rat.contains("disagreement_cue") || !rat["label_justification"].is_string() ||
            !rat["disagreement_cue"].is_string()) {
            malformed(line, "'rationale' must carry string 'label_justification' and "
                            "'disagreement_cue'");
        }
        s.rationale = Rationale{rat["label_justification"].get<std::string>(),
                                rat["disagreement_cue"].get<std::string>()};
    }

    if (!rec["split"].is_string()) malformed(line, "'split' must be a string");
    std::string split = rec["split"].get<std::string>();
    if (split == "train") {
        s.split = Split::Train;
    } else if (split == "test") {
        s.split = Split::Test;
    } else {
        malformed(line, "'split' must be \"train\" or \"test\"");
    }

    s.derive();
    return s;
}

} // namespace

Dataset parse_dataset(const std::string& content, std::optional<Task> expected_task, bool strict) {
    Dataset ds;
    std::istringstream in(content);
    std::string line;
    std::size_t line_no = 0;
    bool task_set = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        ordered_json rec = ordered_json::parse(line, nullptr, false);
        if (rec.is_discarded()) malformed(line_no, "invalid record syntax");
        Sample s = parse_record(rec, line_no, strict);
        if (expected_task && s.task != *expected_task) {
            malformed(line_no, "record task '" + task_info(s.task).name +
                                   "' does not match expected task '" +
                                   task_info(*expected_task).name + "'");
        }
        if (!task_set) {
            ds.task = s.task;
            task_set = true;
        } else if (s.task != ds.task) {
            malformed(line_no, "mixed tasks in one dataset file");
        }
        ds.samples.push_back(std::move(s));
    }
    if (ds.samples.empty()) raise(ErrorCode::Parse, "empty dataset");
    return ds;
}

Dataset load_dataset(const std::string& path, std::optional<Task> expected_task, bool strict) {
    return parse_dataset(read_file(path), expected_task, strict);
}

std::string serialize_dataset(const Dataset& dataset) {
    std::string out;
    for (const Sample& s : dataset.samples) {
        ordered_json rec;
        rec["id"] = s.id;
        rec["task"] = task_info(s.task).name;
        if (s.context) {
            rec["context"] = *s.context;
        } else {
            rec["context"] = nullptr;
        }
        rec["text"] = s.text;
        rec["annotations"] = {{"pos", s.counts.pos}, {"neg", s.counts.neg}};
        if (s.rationale) {
            rec["rationale"] = {{"label_justification", s.rationale->label_justification},
                                {"disagreement_cue", s.rationale->disagreement_cue}};
        } else {
            rec["rationale"] = nullptr;
        }
        rec["split"] = s.split == Split::Train ? "train" : "test";
        out += rec.dump();
        out += '\n';
    }
    return out;
}

void save_dataset(const Dataset& dataset, const std::string& path) {
    write_file(path, serialize_dataset(dataset));
}

DatasetStats dataset_stats(const Dataset& dataset) {
    if (dataset.samples.empty()) raise(ErrorCode::InvalidArgument, "empty dataset");
    DatasetStats st;
    st.n_total = dataset.samples.size();
    double agreement_sum = 0.0;
    double length_sum = 0.0;
    st.anno_min = dataset.samples.front().counts.total();
    st.anno_max = st.anno_min;
    for (const Sample& s : dataset.samples) {
        if (s.majority == Label::Pos) {
            ++st.n_pos;
        } else {
            ++st.n_neg;
        }
        if (s.split == Split::Train) {
            ++st.n_train;
        } else {
            ++st.n_test;
        }
        st.anno_min = std::min(st.anno_min, s.counts.total());
        st.anno_max = std::max(st.anno_max, s.counts.total());
        agreement_sum += s.agreement;
        length_sum += static_cast<double>(count_words(s.text));
    }
    st.avg_agreement = agreement_sum / static_cast<double>(st.n_total);
    st.avg_length_words = length_sum / static_cast<double>(st.n_total);
    return st;
}

std::string stats_table(const DatasetStats& stats, const std::string& name) {
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "%-28s %7zu %7zu %8zu %7zu %8zu %5d-%d %9.2f %7.2f", name.c_str(), stats.n_pos,
                  stats.n_neg, stats.n_train, stats.n_test, stats.n_total, stats.anno_min,
                  stats.anno_max, stats.avg_agreement, stats.avg_length_words);
    std::string header = "Dataset                        #Pos.   #Neg.   #Train   #Test   "
                         "#Total #Anno.  Avg. C^h  Avg. L";
    return header + "\n" + std::string(buf);
}

} // namespace dpua::data
