#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/data.hpp"

namespace dpua::metrics {

// One evaluated test sample. Format-invalid outputs carry the substitute
// confidence 0.5 + 1e-6, a tie-rule prediction, and parse_valid = false;
// they never count as correct and contribute to no predicted class.
struct EvalRecord {
    std::string id;
    data::Label gold = data::Label::Neg;
    data::Distribution human;
    double agreement = 0.0;
    data::Label predicted = data::Label::Neg;
    double confidence = 0.0;
    data::Distribution model;
    bool parse_valid = false;
};

struct Histogram {
    std::vector<double> edges;       // n_bins + 1 shared edges over [0, 1]
    std::vector<std::size_t> model;  // counts of p^m_pos per bin
    std::vector<std::size_t> human;  // counts of p^h_pos per bin
};

struct EvalReport {
    std::size_t n_records = 0;
    double accuracy = 0.0;
    double macro_f1 = 0.0;
    bool f1_degenerate_class = false; // some class absent from gold and preds
    double mean_mae = 0.0;
    std::optional<double> pearson;            // p^m_pos vs p^h_pos; nullopt when degenerate
    std::optional<double> pearson_confidence; // secondary: C^m vs C^h
    double parse_valid_rate = 0.0;
    Histogram histogram;
    std::string source_label; // "<train-task>" or "<source>-><target>" for transfer
};

double accuracy(const std::vector<EvalRecord>& records);
double macro_f1(const std::vector<EvalRecord>& records, bool* degenerate_class = nullptr);
double mean_mae(const std::vector<EvalRecord>& records);

// Pearson correlation of the per-record positive-class probabilities.
// A zero-variance series raises InvalidArgument ("degenerate series");
// callers that must not fail use pearson_or_nullopt.
double pearson_coef(const std::vector<EvalRecord>& records);
double pearson(const std::vector<double>& x, const std::vector<double>& y);
std::optional<double> pearson_or_nullopt(const std::vector<double>& x,
                                         const std::vector<double>& y);

Histogram confidence_histogram(const std::vector<EvalRecord>& records, int n_bins = 10);

// Fraction of records whose p^m_pos falls in the outer bins [0,0.1) u [0.9,1].
double outer_bin_mass(const Histogram& histogram, bool model_side = true);

EvalReport build_report(const std::vector<EvalRecord>& records, const std::string& source_label,
                        int n_bins = 10);

std::string report_to_json(const EvalReport& report);
EvalReport report_from_json(const std::string& json_text);
// Flat comma-separated table: one row per metric, then histogram rows.
std::string report_to_csv(const EvalReport& report);
// Console table: header row in "Acc. F1 MAE Coef." order plus a value row.
std::string report_summary_row(const EvalReport& report);

} // namespace dpua::metrics
