#include "core/reward.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <vector>

#include "core/error.hpp"

namespace dpua::reward {

double normalize_likert(int likert) {
    if (likert < 1 || likert > 3) {
        raise(ErrorCode::InvalidArgument, "likert score out of {1,2,3}: " + std::to_string(likert));
    }
    return (likert - 1) / 2.0;
}

double reasoning_reward(double agreement, double s_lab, double s_cue, double tau, double eps) {
    if (agreement < 0.5 || agreement > 1.0) {
        raise(ErrorCode::InvalidArgument, "agreement out of [0.5, 1]");
    }
    if (s_lab < 0.0 || s_lab > 1.0 || s_cue < 0.0 || s_cue > 1.0) {
        raise(ErrorCode::InvalidArgument, "judge scores out of [0, 1]");
    }
    if (eps <= 0.0) raise(ErrorCode::InvalidArgument, "eps must be positive");
    double numerator = (agreement - tau + eps) * s_lab + (1.0 - agreement + eps) * s_cue;
    return numerator / (1.0 - tau + 2.0 * eps);
}

double calibration_mae(const data::Distribution& model, const data::Distribution& human) {
    for (const data::Distribution* d : {&model, &human}) {
        if (d->p_pos < 0.0 || d->p_neg < 0.0 || std::abs(d->p_pos + d->p_neg - 1.0) > 1e-9) {
            raise(ErrorCode::InvalidArgument, "invalid distribution");
        }
    }
    return 0.5 * (std::abs(model.p_pos - human.p_pos) + std::abs(model.p_neg - human.p_neg));
}

double calibration_reward(double mae) {
    if (mae < 0.0 || mae > 1.0) raise(ErrorCode::InvalidArgument, "mae out of [0, 1]");
    return 1.0 - mae;
}

double accuracy_reward(data::Label prediction, data::Label majority) {
    return prediction == majority ? 1.0 : -1.0;
}

RewardBreakdown total_reward(const proto::ParseResult& output, const data::Sample& sample,
                             const std::optional<JudgeScores>& judge, const RewardConfig& cfg) {
    RewardBreakdown rb;
    const auto* parsed = std::get_if<proto::StructuredOutput>(&output);
    if (!parsed) return rb; // invalid output: everything stays 0
    rb.parse_valid = true;

    if (cfg.reasoning_on && sample.rationale) {
        if (!judge) {
            raise(ErrorCode::InvalidArgument,
                  "reasoning reward enabled but no judge scores for sample " + sample.id);
        }
        rb.judged = true;
        rb.r_rat = reasoning_reward(sample.agreement, judge->s_lab, judge->s_cue, cfg.tau, cfg.eps);
    }
    if (cfg.calibration_on) {
        data::Distribution model = proto::model_distribution(parsed->prediction, parsed->confidence);
        rb.mae = calibration_mae(model, sample.dist);
        rb.r_cal = calibration_reward(rb.mae);
    }
    rb.r_total = rb.r_rat + rb.r_cal;
    return rb;
}

namespace {

std::vector<std::string> overlap_tokens(const std::string& text) {
    std::vector<std::string> tokens;
    std::string current;
    for (char c : text) {
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '\'') {
            current += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        } else if (!current.empty()) {
            tokens.push_back(current);
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(current);
    return tokens;
}

} // namespace

double token_f1(const std::string& generated, const std::string& reference) {
    std::vector<std::string> gen = overlap_tokens(generated);
    std::vector<std::string> ref = overlap_tokens(reference);
    if (gen.empty() || ref.empty()) return 0.0;
    std::map<std::string, int> ref_counts;
    for (const auto& t : ref) ++ref_counts[t];
    int overlap = 0;
    for (const auto& t : gen) {
        auto it = ref_counts.find(t);
        if (it != ref_counts.end() && it->second > 0) {
            --it->second;
            ++overlap;
        }
    }
    if (overlap == 0) return 0.0;
    double precision = static_cast<double>(overlap) / gen.size();
    double recall = static_cast<double>(overlap) / ref.size();
    return 2.0 * precision * recall / (precision + recall);
}

JudgeScores mock_judge(const std::string& generated_rationale, const std::string& ref_lab,
                       const std::string& ref_cue, const RewardConfig& cfg) {
    if (overlap_tokens(ref_lab).empty() || overlap_tokens(ref_cue).empty()) {
        raise(ErrorCode::InvalidArgument, "mock judge requires non-empty reference texts");
    }
    auto to_likert = [&cfg](double f1) {
        if (f1 < cfg.mock_f1_moderate) return 1;
        if (f1 < cfg.mock_f1_strong) return 2;
        return 3;
    };
    JudgeScores js;
    js.lab_likert = to_likert(token_f1(generated_rationale, ref_lab));
    js.cue_likert = to_likert(token_f1(generated_rationale, ref_cue));
    js.s_lab = normalize_likert(js.lab_likert);
    js.s_cue = normalize_likert(js.cue_likert);
    return js;
}

} // namespace dpua::reward
