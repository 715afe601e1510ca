#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ridgeline/class_label.hpp"

namespace ridgeline {

inline constexpr double kDefaultLambdaScale = 1e-6;

/// n_prints x p feature table. col_mean/col_sd are filled by zscore_and_drop
/// with the statistics it applied; empty on a raw matrix.
struct FeatureMatrix {
    std::vector<std::string> names;
    Eigen::MatrixXd X;
    std::vector<double> col_mean;
    std::vector<double> col_sd;

    int rows() const { return static_cast<int>(X.rows()); }
    int cols() const { return static_cast<int>(X.cols()); }

    /// New matrix keeping the given column indices, in the given order.
    FeatureMatrix select(const std::vector<int>& columns) const;
};

/// Drops (near-)zero-variance columns and standardizes the rest to mean 0,
/// sample SD 1. Throws DataError when fewer than 2 rows or when every column
/// is constant.
FeatureMatrix zscore_and_drop(const FeatureMatrix& fm);

/// Iterative pairwise pruning on a standardized matrix: while some pair has
/// |Pearson correlation| > cutoff, take the largest-|corr| pair (ties: first
/// in index order) and drop the member with the larger mean |corr| against
/// all remaining features (ties: the lower index). Deterministic.
FeatureMatrix correlation_prune(const FeatureMatrix& fm, double cutoff);

/// Gaussian classifier with shared covariance: per-class means, pooled
/// within-class covariance (normalized by the total sample count so that
/// duplicating the data leaves the model unchanged) plus a ridge term, and
/// empirical class priors. An absent class keeps a zero mean and prior 0 and
/// is never predicted.
struct LdaModel {
    std::vector<std::string> feature_names;
    Eigen::MatrixXd class_means;   // kNumClasses x p
    Eigen::MatrixXd sigma;         // pooled covariance + lambda * I
    Eigen::MatrixXd sigma_inv_means;  // p x kNumClasses, Sigma^{-1} mu_k
    Eigen::Vector3d bias;          // -1/2 mu_k' Sigma^{-1} mu_k + log pi_k
    Eigen::Vector3d priors;
    double lambda = 0.0;

    int dim() const { return static_cast<int>(class_means.cols()); }
};

/// lambda = lambda_scale * trace(Sigma_W)/p, with a tiny absolute floor when
/// the pooled scatter is identically zero.
LdaModel lda_fit(const Eigen::MatrixXd& X, const std::vector<ClassLabel>& labels,
                 double lambda_scale = kDefaultLambdaScale,
                 std::vector<std::string> feature_names = {});

/// argmax_k of the linear discriminant; ties break toward the fixed class
/// order Arch < Loop < Whorl. Throws InternalError on dimension mismatch.
ClassLabel lda_predict(const LdaModel& model, const Eigen::VectorXd& row);

enum class NormalizationMode { FoldLocal, Global };

struct LoocvOptions {
    NormalizationMode normalization = NormalizationMode::FoldLocal;
    double lambda_scale = kDefaultLambdaScale;
};

/// Rows = actual class, columns = predicted.
struct ConfusionMatrix {
    std::array<std::array<int, 3>, 3> counts{};

    int total() const;
    int row_total(int actual) const;
    int trace() const;
    double accuracy() const { return total() == 0 ? 0.0 : double(trace()) / total(); }
    friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

struct LoocvResult {
    double accuracy = 0.0;
    ConfusionMatrix confusion;
    std::vector<ClassLabel> predictions;
};

/// A fold's fitted model together with the standardization applied to its
/// training rows. scale 0 marks a column that was constant within the fold
/// (standardized to 0 on both sides).
struct FoldModel {
    LdaModel lda;
    Eigen::VectorXd center;
    Eigen::VectorXd scale;

    Eigen::VectorXd standardize(const Eigen::VectorXd& raw) const;
};

/// Fits on every row except leave_out, restricted to the given columns.
/// The held-out row never touches the fold's statistics or model.
FoldModel loocv_fold_model(const FeatureMatrix& fm, const std::vector<ClassLabel>& labels,
                           const std::vector<int>& feature_subset, int leave_out,
                           const LoocvOptions& opts = {});

ClassLabel fold_predict(const FoldModel& fold, const Eigen::VectorXd& raw_subset_row);

/// Leave-one-out accuracy over the given feature subset (indices into fm).
/// Throws DataError when the subset is empty or fewer than 3 rows.
LoocvResult loocv_accuracy(const FeatureMatrix& fm, const std::vector<ClassLabel>& labels,
                           const std::vector<int>& feature_subset, const LoocvOptions& opts = {});

struct SelectionStep {
    std::string removed_feature;
    int features_after = 0;
    double accuracy = 0.0;
};

/// Record of one greedy backwards-elimination run. The peak is taken over the
/// full starting set and every step, so peak_accuracy >= full_set_accuracy;
/// peak_feature_sets lists the surviving set at each point attaining it.
struct SelectionTrace {
    double full_set_accuracy = 0.0;
    std::vector<SelectionStep> steps;
    double peak_accuracy = 0.0;
    std::vector<std::vector<std::string>> peak_feature_sets;
};

/// Greedily removes the single feature whose removal maximizes LOOCV accuracy
/// (ties: lowest column index) until one feature remains. Candidate
/// evaluations are distributed over `workers` threads and reduced by
/// candidate index, so parallel and serial runs agree exactly.
SelectionTrace backwards_elimination(const FeatureMatrix& fm, const std::vector<ClassLabel>& labels,
                                     const LoocvOptions& opts = {}, int workers = 1);

struct ClassCorrelationRow {
    std::string feature;
    double r_whorl = 0.0;  // |corr| with the (arch+loop established as 0, whorl 1) coding
    double r_loop = 0.0;
    double r_arch = 0.0;
    double mean_abs = 0.0;
};

/// Per-feature |Pearson correlation| against the three one-vs-rest 0/1 class
/// codings, plus their mean. A zero-variance coding or feature yields 0.
std::vector<ClassCorrelationRow> class_correlation_report(const FeatureMatrix& fm,
                                                          const std::vector<ClassLabel>& labels);

enum class FeatureGroup { All, Dim0, Dim1, Minutiae, Jpeg, Unoriented };

inline constexpr std::array<FeatureGroup, 6> kAllGroups = {
    FeatureGroup::All,      FeatureGroup::Dim0, FeatureGroup::Dim1,
    FeatureGroup::Minutiae, FeatureGroup::Jpeg, FeatureGroup::Unoriented,
};

std::string_view group_name(FeatureGroup g);
std::optional<FeatureGroup> group_from_name(std::string_view name);

/// Group membership decided from the canonical "source.dim.feature" name.
bool feature_in_group(std::string_view feature_name, FeatureGroup g);

struct ExperimentOptions {
    int window_lo = 70;
    int window_hi = 90;
    LoocvOptions loocv;
    int workers = 1;
};

struct ExperimentReport {
    FeatureGroup group = FeatureGroup::All;
    int candidate_features = 0;               // group columns before zscore-drop
    std::vector<std::string> entering_features;  // after zscore-drop and pruning
    std::optional<double> cutoff;             // correlation cutoff used, if pruning ran
    SelectionTrace trace;
    std::vector<std::string> peak_set;        // first set attaining the peak
    ConfusionMatrix peak_confusion;
};

/// The full per-group protocol: filter columns to the group, drop/standardize,
/// prune correlated features to land inside [window_lo, window_hi] by
/// bisecting the cutoff (skipped for Unoriented and whenever the pool is
/// already at or below the window), then run backwards elimination.
ExperimentReport run_experiment(const FeatureMatrix& fm, const std::vector<ClassLabel>& labels,
                                FeatureGroup group, const ExperimentOptions& opts = {});

}  // namespace ridgeline
