#include "core/metrics.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "core/error.hpp"

namespace dpua::metrics {

using nlohmann::ordered_json;

namespace {

void require_nonempty(const std::vector<EvalRecord>& records) {
    if (records.empty()) raise(ErrorCode::InvalidArgument, "empty evaluation set");
}

} // namespace

double accuracy(const std::vector<EvalRecord>& records) {
    require_nonempty(records);
    std::size_t correct = 0;
    for (const EvalRecord& r : records) {
        if (r.parse_valid && r.predicted == r.gold) ++correct;
    }
    return static_cast<double>(correct) / records.size();
}

double macro_f1(const std::vector<EvalRecord>& records, bool* degenerate_class) {
    require_nonempty(records);
    if (degenerate_class) *degenerate_class = false;
    double f1_sum = 0.0;
    for (data::Label cls : {data::Label::Pos, data::Label::Neg}) {
        std::size_t tp = 0, fp = 0, fn = 0;
        bool seen = false;
        for (const EvalRecord& r : records) {
            bool gold_is = r.gold == cls;
            // Invalid parses predict no class at all: they can only cost recall.
            bool pred_is = r.parse_valid && r.predicted == cls;
            seen = seen || gold_is || pred_is;
            if (pred_is && gold_is) ++tp;
            if (pred_is && !gold_is) ++fp;
            if (!pred_is && gold_is) ++fn;
        }
        if (!seen && degenerate_class) *degenerate_class = true;
        double denom = 2.0 * tp + fp + fn;
        f1_sum += denom > 0.0 ? 2.0 * tp / denom : 0.0;
    }
    return f1_sum / 2.0;
}

double mean_mae(const std::vector<EvalRecord>& records) {
    require_nonempty(records);
    double sum = 0.0;
    for (const EvalRecord& r : records) {
        sum += 0.5 * (std::abs(r.model.p_pos - r.human.p_pos) +
                      std::abs(r.model.p_neg - r.human.p_neg));
    }
    return sum / records.size();
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        raise(ErrorCode::InvalidArgument, "pearson needs two series of equal length >= 2");
    }
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) {
        raise(ErrorCode::InvalidArgument, "degenerate series: zero variance");
    }
    return sxy / std::sqrt(sxx * syy);
}

std::optional<double> pearson_or_nullopt(const std::vector<double>& x,
                                         const std::vector<double>& y) {
    try {
        return pearson(x, y);
    } catch (const Error&) {
        return std::nullopt;
    }
}

double pearson_coef(const std::vector<EvalRecord>& records) {
    std::vector<double> model, human;
    model.reserve(records.size());
    human.reserve(records.size());
    for (const EvalRecord& r : records) {
        model.push_back(r.model.p_pos);
        human.push_back(r.human.p_pos);
    }
    return pearson(model, human);
}

Histogram confidence_histogram(const std::vector<EvalRecord>& records, int n_bins) {
    require_nonempty(records);
    if (n_bins < 2) raise(ErrorCode::InvalidArgument, "histogram needs at least 2 bins");
    Histogram h;
    h.edges.resize(n_bins + 1);
    for (int i = 0; i <= n_bins; ++i) h.edges[i] = static_cast<double>(i) / n_bins;
    h.model.assign(n_bins, 0);
    h.human.assign(n_bins, 0);
    auto bin_of = [n_bins](double v) {
        int b = static_cast<int>(v * n_bins);
        return std::clamp(b, 0, n_bins - 1); // top edge folds into the last bin
    };
    for (const EvalRecord& r : records) {
        ++h.model[bin_of(r.model.p_pos)];
        ++h.human[bin_of(r.human.p_pos)];
    }
    return h;
}

double outer_bin_mass(const Histogram& histogram, bool model_side) {
    const auto& counts = model_side ? histogram.model : histogram.human;
    std::size_t total = 0;
    for (std::size_t c : counts) total += c;
    if (total == 0) return 0.0;
    return static_cast<double>(counts.front() + counts.back()) / total;
}

EvalReport build_report(const std::vector<EvalRecord>& records, const std::string& source_label,
                        int n_bins) {
    require_nonempty(records);
    EvalReport rep;
    rep.n_records = records.size();
    rep.accuracy = accuracy(records);
    rep.macro_f1 = macro_f1(records, &rep.f1_degenerate_class);
    rep.mean_mae = mean_mae(records);

    std::vector<double> pm, ph, cm, ch;
    std::size_t valid = 0;
    for (const EvalRecord& r : records) {
        pm.push_back(r.model.p_pos);
        ph.push_back(r.human.p_pos);
        cm.push_back(r.confidence);
        ch.push_back(r.agreement);
        if (r.parse_valid) ++valid;
    }
    rep.pearson = pearson_or_nullopt(pm, ph);
    rep.pearson_confidence = pearson_or_nullopt(cm, ch);
    rep.parse_valid_rate = static_cast<double>(valid) / records.size();
    rep.histogram = confidence_histogram(records, n_bins);
    rep.source_label = source_label;
    return rep;
}

std::string report_to_json(const EvalReport& report) {
    ordered_json j;
    j["source"] = report.source_label;
    j["n_records"] = report.n_records;
    j["accuracy"] = report.accuracy;
    j["macro_f1"] = report.macro_f1;
    j["f1_degenerate_class"] = report.f1_degenerate_class;
    j["mean_mae"] = report.mean_mae;
    if (report.pearson) {
        j["pearson"] = *report.pearson;
    } else {
        j["pearson"] = nullptr;
    }
    if (report.pearson_confidence) {
        j["pearson_confidence"] = *report.pearson_confidence;
    } else {
        j["pearson_confidence"] = nullptr;
    }
    j["parse_valid_rate"] = report.parse_valid_rate;
    j["histogram"] = {{"edges", report.histogram.edges},
                      {"model", report.histogram.model},
                      {"human", report.histogram.human}};
    return j.dump(2) + "\n";
}

EvalReport report_from_json(const std::string& json_text) {
    ordered_json j = ordered_json::parse(json_text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) raise(ErrorCode::Parse, "invalid report JSON");
    EvalReport rep;
    rep.source_label = j.value("source", std::string());
    rep.n_records = j.value("n_records", std::size_t{0});
    rep.accuracy = j.value("accuracy", 0.0);
    rep.macro_f1 = j.value("macro_f1", 0.0);
    rep.f1_degenerate_class = j.value("f1_degenerate_class", false);
    rep.mean_mae = j.value("mean_mae", 0.0);
    if (j.contains("pearson") && !j["pearson"].is_null()) rep.pearson = j["pearson"].get<double>();
    if (j.contains("pearson_confidence") && !j["pearson_confidence"].is_null()) {
        rep.pearson_confidence = j["pearson_confidence"].get<double>();
    }
    rep.parse_valid_rate = j.value("parse_valid_rate", 0.0);
    if (j.contains("histogram")) {
        rep.histogram.edges = j["histogram"].value("edges", std::vector<double>{});
        rep.histogram.model = j["histogram"].value("model", std::vector<std::size_t>{});
        rep.histogram.human = j["histogram"].value("human", std::vector<std::size_t>{});
    }
    return rep;
}

std::string report_to_csv(const EvalReport& report) {
    std::string out = "metric,value\n";
    auto add = [&out](const std::string& k, double v) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.6f", v);
        out += k + "," + buf + "\n";
    };
    out += "source," + report.source_label + "\n";
    out += "n_records," + std::to_string(report.n_records) + "\n";
    add("accuracy", report.accuracy);
    add("macro_f1", report.macro_f1);
    add("mean_mae", report.mean_mae);
    out += "pearson,";
    out += report.pearson ? std::to_string(*report.pearson) : "degenerate";
    out += "\n";
    out += "pearson_confidence,";
    out += report.pearson_confidence ? std::to_string(*report.pearson_confidence) : "degenerate";
    out += "\n";
    add("parse_valid_rate", report.parse_valid_rate);
    for (std::size_t b = 0; b + 1 < report.histogram.edges.size(); ++b) {
        char row[128];
        std::snprintf(row, sizeof(row), "hist_bin_%.2f_%.2f,%zu,%zu\n", report.histogram.edges[b],
                      report.histogram.edges[b + 1], report.histogram.model[b],
                      report.histogram.human[b]);
        out += row;
    }
    return out;
}

std::string report_summary_row(const EvalReport& report) {
    char buf[256];
    std::string coef = report.pearson ? [&] {
        char c[32];
        std::snprintf(c, sizeof(c), "%.4f", *report.pearson);
        return std::string(c);
    }() : std::string("n/a");
    std::snprintf(buf, sizeof(buf), "%-24s %8s %8s %8s %8s\n%-24s %8.4f %8.4f %8.4f %8s",
                  report.source_label.c_str(), "Acc.", "F1", "MAE", "Coef.", "", report.accuracy,
                  report.macro_f1, report.mean_mae, coef.c_str());
    return std::string(buf);
}

} // namespace dpua::metrics
