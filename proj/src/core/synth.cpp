#include "core/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <json.hpp>

#include "core/error.hpp"
#include "core/util.hpp"

namespace dpua::data {

namespace {

using nlohmann::json;

struct TemplateBank {
    std::vector<std::string> pos_cues;
    std::vector<std::string> neg_cues;
    std::vector<std::string> pos_templates; // contain {cue}
    std::vector<std::string> neg_templates;
    std::vector<std::string> contexts; // empty unless the task uses context
};

// Cue and marker vocabularies are pairwise disjoint so that the class and
// the agreement level of a sample are each carried by dedicated tokens.
const TemplateBank& bank_for(Task task) {
    static const TemplateBank sentiment{
        {"wonderful", "delightful", "superb", "uplifting", "charming", "excellent"},
        {"terrible", "dreadful", "awful", "miserable", "gloomy", "unbearable"},
        {"the {noun} was {cue} and people kept talking about it",
         "that {noun} felt {cue} from start to finish",
         "honestly the {noun} seemed {cue} to most of us"},
        {"the {noun} was {cue} and people kept talking about it",
         "that {noun} felt {cue} from start to finish",
         "honestly the {noun} seemed {cue} to most of us"},
        {}};
    static const TemplateBank sarcasm{
        {"genius", "spectacular", "masterful", "visionary", "flawless"},
        {"thanks", "noted", "okay", "understood", "appreciated"},
        {"oh what a {cue} idea that was",
         "truly the most {cue} plan anyone has ever had",
         "wow such a {cue} move, really"},
        {"{cue}, that works for me",
         "{cue}, see you there",
         "all good, {cue} and received"},
        {"a friend says the picnic moved to the garage",
         "a colleague announces the meeting moved again",
         "someone shares their plan for the weekend",
         "a neighbor reports the elevator is broken once more"}};
    static const TemplateBank offense{
        {"clown", "loser", "pathetic", "worthless", "spineless"},
        {"thoughtful", "reasonable", "fair", "sensible", "kind"},
        {"only a {cue} would post this nonsense",
         "what a {cue} take, delete your account",
         "this reads like a {cue} wrote it twice"},
        {"that seems like a {cue} take on the issue",
         "a {cue} point, worth discussing further",
         "this is a {cue} summary of the debate"},
        {}};
    switch (task) {
    case Task::Sentiment: return sentiment;
    case Task::Sarcasm: return sarcasm;
    case Task::Offense: return offense;
    }
    raise(ErrorCode::InvalidArgument, "unknown task");
}

const std::vector<std::string> kNouns = {"dinner",  "movie",  "concert",
                                         "meeting", "morning", "trip"};

struct MarkerClause {
    std::string clause;  // appended to the sample text
    std::string keyword; // named in the reference disagreement cue
};

// Agreement levels keyed by the marker tokens a reader would point at.
const std::vector<MarkerClause>& clauses_for(double agreement) {
    static const std::vector<MarkerClause> unanimous = {
        {"and honestly nobody could read it any other way", "nobody"},
        {"with wording that left no real doubt at all", "doubt"},
        {"and the intent came through plainly for everyone", "plainly"}};
    static const std::vector<MarkerClause> mild = {
        {"though parts of it felt somewhat uneven", "somewhat"},
        {"even if a few moments seemed mildly off", "mildly"},
        {"though slightly mixed signals crept in", "slightly"}};
    static const std::vector<MarkerClause> strong = {
        {"yet the tone felt oddly divided underneath", "oddly"},
        {"while the intent stayed strangely unclear throughout", "strangely"},
        {"and the framing landed confusingly for many readers", "confusingly"}};
    if (agreement >= 0.999) return unanimous;
    if (agreement >= 0.75) return mild;
    return strong;
}

std::string substitute(std::string text, const std::string& key, const std::string& value) {
    std::size_t pos;
    while ((pos = text.find(key)) != std::string::npos) {
        text.replace(pos, key.size(), value);
    }
    return text;
}

template <typename T>
const T& pick(const std::vector<T>& v, std::mt19937_64& rng) {
    return v[rng() % v.size()];
}

} // namespace

SynthProfile SynthProfile::from_json(const std::string& json_text) {
    json j = json::parse(json_text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        raise(ErrorCode::Parse, "invalid synthesis profile JSON");
    }
    SynthProfile p;
    p.task = task_from_name(j.value("task", std::string("sentiment")));
    p.n = j.value("n", std::size_t{0});
    p.seed = j.value("seed", std::uint64_t{0});
    p.annotators = j.value("annotators", 5);
    p.test_fraction = j.value("test_fraction", 0.25);
    if (j.contains("buckets")) {
        for (const auto& b : j["buckets"]) {
            p.buckets.push_back(
                SynthBucket{b.value("agreement", 1.0), b.value("weight", 1.0)});
        }
    } else {
        p.buckets = {{1.0, 2.0}, {0.8, 1.0}, {0.6, 1.0}};
    }
    return p;
}

Dataset generate_synthetic(const SynthProfile& profile) {
    if (profile.n < 1) raise(ErrorCode::InvalidArgument, "invalid profile: n must be >= 1");
    if (profile.buckets.empty()) {
        raise(ErrorCode::InvalidArgument, "invalid profile: no agreement buckets");
    }
    if (profile.annotators < 1) {
        raise(ErrorCode::InvalidArgument, "invalid profile: annotators must be >= 1");
    }
    if (profile.test_fraction < 0.0 || profile.test_fraction >= 1.0) {
        raise(ErrorCode::InvalidArgument, "invalid profile: test_fraction must be in [0, 1)");
    }
    double weight_sum = 0.0;
    for (const SynthBucket& b : profile.buckets) {
        if (b.agreement <= 0.5 || b.agreement > 1.0) {
            raise(ErrorCode::InvalidArgument,
                  "invalid profile: bucket agreement must lie in (0.5, 1]");
        }
        double votes = b.agreement * profile.annotators;
        if (std::abs(votes - std::round(votes)) > 1e-9) {
            raise(ErrorCode::InvalidArgument,
                  "invalid profile: agreement " + std::to_string(b.agreement) +
                      " is not realizable with " + std::to_string(profile.annotators) +
                      " annotators");
        }
        if (b.weight <= 0.0) {
            raise(ErrorCode::InvalidArgument, "invalid profile: bucket weight must be > 0");
        }
        weight_sum += b.weight;
    }

    // Largest-remainder allocation of n over buckets.
    std::vector<std::size_t> alloc(profile.buckets.size(), 0);
    {
        std::vector<std::pair<double, std::size_t>> remainders;
        std::size_t assigned = 0;
        for (std::size_t i = 0; i < profile.buckets.size(); ++i) {
            double exact = profile.n * profile.buckets[i].weight / weight_sum;
            alloc[i] = static_cast<std::size_t>(exact);
            assigned += alloc[i];
            remainders.emplace_back(exact - std::floor(exact), i);
        }
        std::stable_sort(remainders.begin(), remainders.end(),
                         [](const auto& a, const auto& b) { return a.first > b.first; });
        for (std::size_t k = 0; assigned < profile.n; ++k, ++assigned) {
            alloc[remainders[k % remainders.size()].second] += 1;
        }
    }

    // Bucket sequence interleaved so train/test strata stay balanced.
    std::vector<std::size_t> bucket_of;
    bucket_of.reserve(profile.n);
    {
        std::vector<std::size_t> remaining = alloc;
        while (bucket_of.size() < profile.n) {
            for (std::size_t i = 0; i < remaining.size(); ++i) {
                if (remaining[i] > 0) {
                    bucket_of.push_back(i);
                    --remaining[i];
                }
            }
        }
    }

    std::mt19937_64 rng(profile.seed);
    const TemplateBank& bank = bank_for(profile.task);
    const TaskInfo& info = task_info(profile.task);

    std::size_t test_every = 0;
    if (profile.test_fraction > 0.0) {
        test_every = static_cast<std::size_t>(std::lround(1.0 / profile.test_fraction));
        test_every = std::max<std::size_t>(test_every, 1);
    }

    Dataset ds;
    ds.task = profile.task;
    ds.samples.reserve(profile.n);
    for (std::size_t i = 0; i < profile.n; ++i) {
        const SynthBucket& bucket = profile.buckets[bucket_of[i]];
        Sample s;
        s.task = profile.task;
        char idbuf[64];
        std::snprintf(idbuf, sizeof(idbuf), "synth-%s-%05zu", info.name.c_str(), i);
        s.id = idbuf;

        bool is_pos = (i % 2) == 0;
        int majority_votes =
            static_cast<int>(std::lround(bucket.agreement * profile.annotators));
        int minority_votes = profile.annotators - majority_votes;
        s.counts = is_pos ? AnnotationCounts{majority_votes, minority_votes}
                          : AnnotationCounts{minority_votes, majority_votes};

        const auto& cues = is_pos ? bank.pos_cues : bank.neg_cues;
        const auto& templates = is_pos ? bank.pos_templates : bank.neg_templates;
        const std::string& cue = pick(cues, rng);
        std::string text = substitute(pick(templates, rng), "{cue}", cue);
        text = substitute(text, "{noun}", pick(kNouns, rng));
        const MarkerClause& marker = pick(clauses_for(bucket.agreement), rng);
        text += " " + marker.clause;
        s.text = text;
        if (!bank.contexts.empty()) s.context = pick(bank.contexts, rng);

        const std::string& surface = is_pos ? info.pos_surface : info.neg_surface;
        Rationale rat;
        rat.label_justification =
            "the word " + cue + " clearly signals a " + lowercase(surface) + " reading";
        if (bucket.agreement >= 0.999) {
            rat.disagreement_cue = "the phrasing leaves little room for alternative readings";
        } else {
            rat.disagreement_cue =
                "some annotators may weigh the " + marker.keyword + " phrasing differently";
        }
        s.rationale = rat;

        s.split = (test_every > 0 && i % test_every == test_every - 1) ? Split::Test
                                                                       : Split::Train;
        s.derive();
        ds.samples.push_back(std::move(s));
    }
    return ds;
}

} // namespace dpua::data
