#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ridgeline/learning.hpp"

namespace ridgeline {

/// trace.csv: step,removed_feature,features_remaining,accuracy. Step 0 is the
/// full entering set with no removal.
std::string render_trace_csv(const ExperimentReport& report);

/// confusion.csv: actual class per row, predicted per column, plus totals.
std::string render_confusion_csv(const ConfusionMatrix& cm);

/// selected_features.csv: the peak feature set grouped by barcode source and
/// dimension.
std::string render_selected_features_csv(const std::vector<std::string>& peak_set);

/// class_correlation.csv: feature,source,dim,r_whorl,r_loop,r_arch,mean_abs.
std::string render_class_correlation_csv(const std::vector<ClassCorrelationRow>& rows);

/// table1.csv: one row per experiment (group, peak accuracy, peak set sizes,
/// entering feature count, cutoff).
std::string render_summary_csv(const std::vector<ExperimentReport>& reports);

/// Full machine-readable report of one experiment.
std::string render_report_json(const ExperimentReport& report);

/// Writes every artifact of one experiment under dir/<group>/.
void write_experiment_reports(const ExperimentReport& report, const std::filesystem::path& dir);

}  // namespace ridgeline
