#include "ridgeline/reports.hpp"

#include <algorithm>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>

#include "ridgeline/errors.hpp"
#include "ridgeline/features.hpp"
#include "ridgeline/io.hpp"

namespace ridgeline {

using nlohmann::json;

namespace {

// "source.dim.feature" -> (source, dim, feature)
std::array<std::string, 3> split_feature_name(const std::string& name) {
    size_t d1 = name.find('.');
    size_t d2 = name.find('.', d1 + 1);
    if (d1 == std::string::npos || d2 == std::string::npos)
        throw InternalError("split_feature_name: malformed name '" + name + "'");
    return {name.substr(0, d1), name.substr(d1 + 1, d2 - d1 - 1), name.substr(d2 + 1)};
}

int source_rank(const std::string& source) {
    auto it = std::find(kBarcodeSources.begin(), kBarcodeSources.end(), source);
    return static_cast<int>(it - kBarcodeSources.begin());
}

}  // namespace

std::string render_trace_csv(const ExperimentReport& report) {
    std::ostringstream out;
    out << "step,removed_feature,features_remaining,accuracy\n";
    out << "0,," << report.entering_features.size() << ','
        << format_double(report.trace.full_set_accuracy) << '\n';
    int step = 1;
    for (const SelectionStep& s : report.trace.steps) {
        out << step++ << ',' << s.removed_feature << ',' << s.features_after << ','
            << format_double(s.accuracy) << '\n';
    }
    return out.str();
}

std::string render_confusion_csv(const ConfusionMatrix& cm) {
    std::ostringstream out;
    out << "actual\\predicted,arch,loop,whorl,total\n";
    for (int a = 0; a < kNumClasses; ++a) {
        out << class_name(static_cast<ClassLabel>(a));
        for (int p = 0; p < kNumClasses; ++p) out << ',' << cm.counts[a][p];
        out << ',' << cm.row_total(a) << '\n';
    }
    out << "accuracy," << format_double(cm.accuracy()) << ",,,\n";
    return out.str();
}

std::string render_selected_features_csv(const std::vector<std::string>& peak_set) {
    std::map<std::pair<int, std::string>, std::vector<std::string>> groups;
    for (const std::string& name : peak_set) {
        auto [source, dim, feat] = split_feature_name(name);
        groups[{source_rank(source), dim}].push_back(feat);
    }
    std::ostringstream out;
    out << "source,dim,features\n";
    for (auto& [key, feats] : groups) {
        out << kBarcodeSources[static_cast<size_t>(key.first)] << ',' << key.second << ',';
        for (size_t i = 0; i < feats.size(); ++i) out << (i ? ";" : "") << feats[i];
        out << '\n';
    }
    return out.str();
}

std::string render_class_correlation_csv(const std::vector<ClassCorrelationRow>& rows) {
    std::ostringstream out;
    out << "feature,source,dim,r_whorl,r_loop,r_arch,mean_abs\n";
    for (const ClassCorrelationRow& row : rows) {
        auto [source, dim, feat] = split_feature_name(row.feature);
        out << row.feature << ',' << source << ',' << dim << ',' << format_double(row.r_whorl)
            << ',' << format_double(row.r_loop) << ',' << format_double(row.r_arch) << ','
            << format_double(row.mean_abs) << '\n';
    }
    return out.str();
}

std::string render_summary_csv(const std::vector<ExperimentReport>& reports) {
    std::ostringstream out;
    out << "group,peak_accuracy,peak_set_sizes,entering_features,candidate_features,cutoff\n";
    for (const ExperimentReport& r : reports) {
        out << group_name(r.group) << ',' << format_double(r.trace.peak_accuracy) << ',';
        std::vector<size_t> sizes;
        for (const auto& set : r.trace.peak_feature_sets) sizes.push_back(set.size());
        std::sort(sizes.begin(), sizes.end());
        sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
        for (size_t i = 0; i < sizes.size(); ++i) out << (i ? ";" : "") << sizes[i];
        out << ',' << r.entering_features.size() << ',' << r.candidate_features << ','
            << (r.cutoff ? format_double(*r.cutoff) : "") << '\n';
    }
    return out.str();
}

std::string render_report_json(const ExperimentReport& report) {
    json doc;
    doc["schema"] = "ridgeline.report.v1";
    doc["group"] = group_name(report.group);
    doc["candidate_features"] = report.candidate_features;
    doc["entering_features"] = report.entering_features;
    if (report.cutoff) doc["cutoff"] = *report.cutoff;
    doc["full_set_accuracy"] = report.trace.full_set_accuracy;
    json steps = json::array();
    for (const SelectionStep& s : report.trace.steps)
        steps.push_back({{"removed", s.removed_feature},
                         {"features_after", s.features_after},
                         {"accuracy", s.accuracy}});
    doc["steps"] = std::move(steps);
    doc["peak_accuracy"] = report.trace.peak_accuracy;
    doc["peak_feature_sets"] = report.trace.peak_feature_sets;
    doc["peak_set"] = report.peak_set;
    json confusion = json::array();
    for (int a = 0; a < kNumClasses; ++a) {
        json row = json::array();
        for (int p = 0; p < kNumClasses; ++p) row.push_back(report.peak_confusion.counts[a][p]);
        confusion.push_back(std::move(row));
    }
    doc["confusion"] = std::move(confusion);
    return doc.dump(2) + "\n";
}

void write_experiment_reports(const ExperimentReport& report, const std::filesystem::path& dir) {
    std::filesystem::path group_dir = dir / std::string(group_name(report.group));
    std::filesystem::create_directories(group_dir);
    atomic_write_text(group_dir / "trace.csv", render_trace_csv(report));
    atomic_write_text(group_dir / "confusion.csv", render_confusion_csv(report.peak_confusion));
    atomic_write_text(group_dir / "selected_features.csv",
                      render_selected_features_csv(report.peak_set));
    atomic_write_text(group_dir / "report.json", render_report_json(report));
}

}  // namespace ridgeline
