#pragma once

#include <optional>
#include <string>

#include "core/data.hpp"
#include "core/protocol.hpp"

namespace dpua::reward {

// Judge verdict for one generated rationale: per-aspect 3-point Likert
// scores and their [0,1] normalizations.
struct JudgeScores {
    int lab_likert = 1;
    int cue_likert = 1;
    double s_lab = 0.0;
    double s_cue = 0.0;
};

struct RewardConfig {
    double tau = 0.5;
    double eps = 0.1;
    bool reasoning_on = true;
    bool calibration_on = true;
    // Mock-judge thresholds on token-overlap F1.
    double mock_f1_moderate = 0.2;
    double mock_f1_strong = 0.5;
};

struct RewardBreakdown {
    double r_rat = 0.0;
    double mae = 0.0;
    double r_cal = 0.0;
    double r_total = 0.0;
    bool parse_valid = false;
    bool judged = false;
};

// {1,2,3} -> {0, 0.5, 1}.
double normalize_likert(int likert);

// Agreement-weighted convex combination of the two aspect scores:
// [(C - tau + eps) s_lab + (1 - C + eps) s_cue] / (1 - tau + 2 eps).
double reasoning_reward(double agreement, double s_lab, double s_cue, double tau, double eps);

// Half L1 distance between two binary distributions; equals the absolute
// difference of their positive components.
double calibration_mae(const data::Distribution& model, const data::Distribution& human);

double calibration_reward(double mae);

// Vanilla baseline reward: +1 on label match, -1 otherwise.
double accuracy_reward(data::Label prediction, data::Label majority);

// Composes the enabled reward components for one sampled output.
// Format-invalid outputs are worth 0 total. Judge scores are required when
// the reasoning reward is enabled and the sample has a reference rationale.
RewardBreakdown total_reward(const proto::ParseResult& output, const data::Sample& sample,
                             const std::optional<JudgeScores>& judge, const RewardConfig& cfg);

// Deterministic offline judge: token-overlap F1 between the generated
// rationale and each reference component, mapped onto the Likert scale.
JudgeScores mock_judge(const std::string& generated_rationale, const std::string& ref_lab,
                       const std::string& ref_cue, const RewardConfig& cfg = {});

double token_f1(const std::string& generated, const std::string& reference);

// Minimal judge interface; implementations are the mock judge and the
// remote HTTP client in judge_http.hpp.
class Judge {
public:
    virtual ~Judge() = default;
    virtual JudgeScores score(data::Task task, const std::string& generated_rationale,
                              const std::string& ref_lab, const std::string& ref_cue) = 0;
};

class MockJudge final : public Judge {
public:
    explicit MockJudge(RewardConfig cfg = {}) : cfg_(cfg) {}
    JudgeScores score(data::Task, const std::string& generated_rationale,
                      const std::string& ref_lab, const std::string& ref_cue) override {
        return mock_judge(generated_rationale, ref_lab, ref_cue, cfg_);
    }

private:
    RewardConfig cfg_;
};

} // namespace dpua::reward
