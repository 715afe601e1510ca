#include "ridgeline/learning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ridgeline/errors.hpp"
#include "ridgeline/parallel.hpp"

namespace ridgeline {

namespace {

// Columns whose sample SD is below this (relative to the mean magnitude) are
// treated as constant: standardizing them would amplify rounding noise.
constexpr double kZeroVarianceRelTol = 1e-12;

bool is_dead_column(double mean, double sd) {
    return sd <= kZeroVarianceRelTol * std::max(1.0, std::abs(mean));
}

struct ColumnStats {
    double mean = 0.0;
    double sd = 0.0;  // sample SD
};

ColumnStats column_stats(const Eigen::Ref<const Eigen::VectorXd>& col) {
    const int n = static_cast<int>(col.size());
    double mean = col.mean();
    if (n < 2) return {mean, 0.0};
    double ss = (col.array() - mean).square().sum();
    return {mean, std::sqrt(ss / (n - 1))};
}

/// |Pearson correlation| matrix of the columns.
Eigen::MatrixXd abs_correlation(const Eigen::MatrixXd& X) {
    const int p = static_cast<int>(X.cols());
    Eigen::MatrixXd centered = X.rowwise() - X.colwise().mean();
    Eigen::VectorXd norms(p);
    for (int j = 0; j < p; ++j) norms(j) = centered.col(j).norm();
    Eigen::MatrixXd corr = centered.transpose() * centered;
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) {
            double denom = norms(i) * norms(j);
            corr(i, j) = denom > 0.0 ? std::abs(corr(i, j)) / denom : 0.0;
        }
        corr(i, i) = 1.0;
    }
    return corr;
}

/// The pruning rule on a precomputed |corr| matrix; returns surviving column
/// indices in ascending order.
std::vector<int> prune_indices(const Eigen::MatrixXd& corr, double cutoff) {
    const int p = static_cast<int>(corr.rows());
    std::vector<char> active(p, 1);
    int n_active = p;
    while (n_active > 1) {
        // largest off-diagonal |corr| among active columns; ties keep the
        // first pair in index order
        double best = cutoff;
        int bi = -1, bj = -1;
        for (int i = 0; i < p; ++i) {
            if (!active[i]) continue;
            for (int j = i + 1; j < p; ++j) {
                if (!active[j]) continue;
                if (corr(i, j) > best) {
                    best = corr(i, j);
                    bi = i;
                    bj = j;
                }
            }
        }
        if (bi < 0) break;
        auto mean_abs_corr = [&](int i) {
            double s = 0.0;
            int count = 0;
            for (int k = 0; k < p; ++k) {
                if (k == i || !active[k]) continue;
                s += corr(i, k);
                ++count;
            }
            return count == 0 ? 0.0 : s / count;
        };
        // the member with the larger mean |corr| goes; a tie drops the lower index
        double mi = mean_abs_corr(bi), mj = mean_abs_corr(bj);
        int drop = mj > mi ? bj : bi;
        active[drop] = 0;
        --n_active;
    }
    std::vector<int> out;
    out.reserve(n_active);
    for (int i = 0; i < p; ++i)
        if (active[i]) out.push_back(i);
    return out;
}

}  // namespace

FeatureMatrix FeatureMatrix::select(const std::vector<int>& columns) const {
    FeatureMatrix out;
    out.names.reserve(columns.size());
    out.X.resize(X.rows(), static_cast<Eigen::Index>(columns.size()));
    for (size_t k = 0; k < columns.size(); ++k) {
        int j = columns[k];
        out.names.push_back(names[j]);
        out.X.col(static_cast<Eigen::Index>(k)) = X.col(j);
        if (!col_mean.empty()) {
            out.col_mean.push_back(col_mean[j]);
            out.col_sd.push_back(col_sd[j]);
        }
    }
    return out;
}

FeatureMatrix zscore_and_drop(const FeatureMatrix& fm) {
    if (fm.rows() < 2) throw DataError("zscore_and_drop: need at least 2 rows");
    FeatureMatrix out;
    for (int j = 0; j < fm.cols(); ++j) {
        ColumnStats st = column_stats(fm.X.col(j));
        if (is_dead_column(st.mean, st.sd)) continue;
        out.names.push_back(fm.names[j]);
        out.col_mean.push_back(st.mean);
        out.col_sd.push_back(st.sd);
    }
    if (out.names.empty()) throw DataError("zscore_and_drop: every column has zero variance");
    out.X.resize(fm.rows(), static_cast<Eigen::Index>(out.names.size()));
    int k = 0;
    for (int j = 0; j < fm.cols(); ++j) {
        ColumnStats st = column_stats(fm.X.col(j));
        if (is_dead_column(st.mean, st.sd)) continue;
        out.X.col(k) = (fm.X.col(j).array() - st.mean) / st.sd;
        ++k;
    }
    return out;
}

FeatureMatrix correlation_prune(const FeatureMatrix& fm, double cutoff) {
    if (cutoff <= 0.0 || cutoff >= 1.0)
        throw ConfigError("correlation_prune: cutoff must be in (0, 1)");
    Eigen::MatrixXd corr = abs_correlation(fm.X);
    return fm.select(prune_indices(corr, cutoff));
}

LdaModel lda_fit(const Eigen::MatrixXd& X, const std::vector<ClassLabel>& labels,
                 double lambda_scale, std::vector<std::string> feature_names) {
    const int n = static_cast<int>(X.rows());
    const int p = static_cast<int>(X.cols());
    if (n == 0 || p == 0) throw DataError("lda_fit: empty training data");
    if (static_cast<int>(labels.size()) != n)
        throw InternalError("lda_fit: label count does not match rows");

    LdaModel model;
    model.feature_names = std::move(feature_names);
    model.class_means = Eigen::MatrixXd::Zero(kNumClasses, p);
    Eigen::Vector3d counts = Eigen::Vector3d::Zero();
    for (int i = 0; i < n; ++i) {
        int k = static_cast<int>(labels[i]);
        counts(k) += 1.0;
        model.class_means.row(k) += X.row(i);
    }
    for (int k = 0; k < kNumClasses; ++k)
        if (counts(k) > 0.0) model.class_means.row(k) /= counts(k);
    model.priors = counts / static_cast<double>(n);

    // Pooled within-class scatter, normalized by the total count so that
    // duplicating every sample leaves the model unchanged.
    Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(p, p);
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXd dev = X.row(i).transpose() - model.class_means.row(static_cast<int>(labels[i])).transpose();
        sigma.noalias() += dev * dev.transpose();
    }
    sigma /= static_cast<double>(n);

    double trace = sigma.trace();
    model.lambda = lambda_scale * (trace > 0.0 ? trace / p : 1.0);
    sigma.diagonal().array() += model.lambda;
    model.sigma = sigma;

    Eigen::LDLT<Eigen::MatrixXd> solver(sigma);
    model.sigma_inv_means.resize(p, kNumClasses);
    for (int k = 0; k < kNumClasses; ++k) {
        if (counts(k) > 0.0) {
            Eigen::VectorXd mu = model.class_means.row(k).transpose();
            Eigen::VectorXd alpha = solver.solve(mu);
            model.sigma_inv_means.col(k) = alpha;
            model.bias(k) = -0.5 * mu.dot(alpha) + std::log(model.priors(k));
        } else {
            model.sigma_inv_means.col(k).setZero();
            model.bias(k) = -std::numeric_limits<double>::infinity();
        }
    }
    return model;
}

ClassLabel lda_predict(const LdaModel& model, const Eigen::VectorXd& row) {
    if (row.size() != model.sigma_inv_means.rows())
        throw InternalError("lda_predict: row dimension does not match model");
    int best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < kNumClasses; ++k) {
        if (model.priors(k) <= 0.0) continue;  // absent class is never predicted
        double score = row.dot(model.sigma_inv_means.col(k)) + model.bias(k);
        if (score > best_score) {
            best_score = score;
            best = k;
        }
    }
    return static_cast<ClassLabel>(best);
}

int ConfusionMatrix::total() const {
    int t = 0;
    for (const auto& row : counts)
        for (int v : row) t += v;
    return t;
}

int ConfusionMatrix::row_total(int actual) const {
    int t = 0;
    for (int v : counts[actual]) t += v;
    return t;
}

int ConfusionMatrix::trace() const {
    return counts[0][0] + counts[1][1] + counts[2][2];
}

Eigen::VectorXd FoldModel::standardize(const Eigen::VectorXd& raw) const {
    Eigen::VectorXd out(raw.size());
    for (Eigen::Index j = 0; j < raw.size(); ++j)
        out(j) = scale(j) == 0.0 ? 0.0 : (raw(j) - center(j)) / scale(j);
    return out;
}

namespace {

FoldModel fold_model_from_submatrix(const Eigen::MatrixXd& sub,
                                    const std::vector<std::string>& names,
                                    const std::vector<ClassLabel>& labels, int leave_out,
                                    const LoocvOptions& opts) {
    const int n = static_cast<int>(sub.rows());
    const int q = static_cast<int>(sub.cols());
    Eigen::MatrixXd train(n - 1, q);
    std::vector<ClassLabel> train_labels;
    train_labels.reserve(n - 1);
    int r = 0;
    for (int i = 0; i < n; ++i) {
        if (i == leave_out) continue;
        train.row(r++) = sub.row(i);
        train_labels.push_back(labels[i]);
    }

    FoldModel fold;
    fold.center = Eigen::VectorXd::Zero(q);
    fold.scale = Eigen::VectorXd::Ones(q);
    if (opts.normalization == NormalizationMode::FoldLocal) {
        for (int j = 0; j < q; ++j) {
            ColumnStats st = column_stats(train.col(j));
            if (is_dead_column(st.mean, st.sd)) {
                fold.center(j) = st.mean;
                fold.scale(j) = 0.0;  // dead in this fold; maps to 0
                train.col(j).setZero();
            } else {
                fold.center(j) = st.mean;
                fold.scale(j) = st.sd;
                train.col(j) = (train.col(j).array() - st.mean) / st.sd;
            }
        }
    }
    fold.lda = lda_fit(train, train_labels, opts.lambda_scale, names);
    return fold;
}

}  // namespace

FoldModel loocv_fold_model(const FeatureMatrix& fm, const std::vector<ClassLabel>& labels,
                           const std::vector<int>& feature_subset, int leave_out,
                           const LoocvOptions& opts) {
    FeatureMatrix sub = fm.select(feature_subset);
    return fold_model_from_submatrix(sub.X, sub.names, labels, leave_out, opts);
}

ClassLabel fold_predict(const FoldModel& fold, const Eigen::VectorXd& raw_subset_row) {
    return lda_predict(fold.lda, fold.standardize(raw_subset_row));
}

LoocvResult loocv_accuracy(const FeatureMatrix& fm, const std::vector<ClassLabel>& labels,
                           const std::vector<int>& feature_subset, const LoocvOptions& opts) {
    const int n = fm.rows();
    if (feature_subset.empty()) throw DataError("loocv_accuracy: empty feature subset");
    if (n < 3) throw DataError("loocv_accuracy: need at least 3 rows");
    if (static_cast<int>(labels.size()) != n)
        throw InternalError("loocv_accuracy: label count does not match rows");

    FeatureMatrix sub = fm.select(feature_subset);
    LoocvResult result;
    result.predictions.resize(n);
    for (int i = 0; i < n; ++i) {
        FoldModel fold = fold_model_from_submatrix(sub.X, sub.names, labels, i, opts);
        ClassLabel pred = fold_predict(fold, sub.X.row(i).transpose());
        result.predictions[i] = pred;
        result.confusion.counts[static_cast<int>(labels[i])][static_cast<int>(pred)] += 1;
    }
    result.accuracy = result.confusion.accuracy();
    return result;
}

SelectionTrace backwards_elimination(const FeatureMatrix& fm, const std::vector<ClassLabel>& labels,
                                     const LoocvOptions& opts, int workers) {
    const int p = fm.cols();
    if (p < 1) throw DataError("backwards_elimination: empty feature matrix");

    SelectionTrace trace;
    std::vector<int> active(p);
    std::iota(active.begin(), active.end(), 0);
    trace.full_set_accuracy = loocv_accuracy(fm, labels, active, opts).accuracy;

    std::vector<std::vector<int>> removal_states;  // active set after each step
    while (active.size() > 1) {
        const int m = static_cast<int>(active.size());
        std::vector<double> accuracy(m);
        parallel_for(m, workers, [&](int c) {
            std::vector<int> candidate;
            candidate.reserve(m - 1);
            for (int k = 0; k < m; ++k)
                if (k != c) candidate.push_back(active[k]);
            accuracy[c] = loocv_accuracy(fm, labels, candidate, opts).accuracy;
        });
        // deterministic reduce in candidate order; ties keep the lowest index
        int best = 0;
        for (int c = 1; c < m; ++c)
            if (accuracy[c] > accuracy[best]) best = c;

        SelectionStep step;
        step.removed_feature = fm.names[active[best]];
        step.features_after = m - 1;
        step.accuracy = accuracy[best];
        trace.steps.push_back(step);
        active.erase(active.begin() + best);
        removal_states.push_back(active);
    }

    trace.peak_accuracy = trace.full_set_accuracy;
    for (const SelectionStep& s : trace.steps) trace.peak_accuracy = std::max(trace.peak_accuracy, s.accuracy);

    auto names_of = [&](const std::vector<int>& cols) {
        std::vector<std::string> names;
        names.reserve(cols.size());
        for (int j : cols) names.push_back(fm.names[j]);
        return names;
    };
    if (trace.full_set_accuracy == trace.peak_accuracy) {
        std::vector<int> all(p);
        std::iota(all.begin(), all.end(), 0);
        trace.peak_feature_sets.push_back(names_of(all));
    }
    for (size_t s = 0; s < trace.steps.size(); ++s)
        if (trace.steps[s].accuracy == trace.peak_accuracy)
            trace.peak_feature_sets.push_back(names_of(removal_states[s]));
    return trace;
}

std::vector<ClassCorrelationRow> class_correlation_report(const FeatureMatrix& fm,
                                                          const std::vector<ClassLabel>& labels) {
    const int n = fm.rows();
    if (static_cast<int>(labels.size()) != n)
        throw InternalError("class_correlation_report: label count does not match rows");

    auto abs_corr_with = [&](const Eigen::VectorXd& col, ClassLabel positive) {
        Eigen::VectorXd coding(n);
        for (int i = 0; i < n; ++i) coding(i) = labels[i] == positive ? 1.0 : 0.0;
        Eigen::VectorXd c0 = col.array() - col.mean();
        Eigen::VectorXd c1 = coding.array() - coding.mean();
        double denom = c0.norm() * c1.norm();
        return denom > 0.0 ? std::abs(c0.dot(c1)) / denom : 0.0;
    };

    std::vector<ClassCorrelationRow> rows;
    rows.reserve(fm.cols());
    for (int j = 0; j < fm.cols(); ++j) {
        ClassCorrelationRow row;
        row.feature = fm.names[j];
        row.r_whorl = abs_corr_with(fm.X.col(j), ClassLabel::Whorl);
        row.r_loop = abs_corr_with(fm.X.col(j), ClassLabel::Loop);
        row.r_arch = abs_corr_with(fm.X.col(j), ClassLabel::Arch);
        row.mean_abs = (row.r_whorl + row.r_loop + row.r_arch) / 3.0;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string_view group_name(FeatureGroup g) {
    switch (g) {
    case FeatureGroup::All: return "all";
    case FeatureGroup::Dim0: return "dim0";
    case FeatureGroup::Dim1: return "dim1";
    case FeatureGroup::Minutiae: return "minutiae";
    case FeatureGroup::Jpeg: return "jpeg";
    case FeatureGroup::Unoriented: return "unoriented";
    }
    return "?";
}

std::optional<FeatureGroup> group_from_name(std::string_view name) {
    for (FeatureGroup g : kAllGroups)
        if (group_name(g) == name) return g;
    return std::nullopt;
}

bool feature_in_group(std::string_view feature_name, FeatureGroup g) {
    size_t dot1 = feature_name.find('.');
    size_t dot2 = feature_name.find('.', dot1 + 1);
    if (dot1 == std::string_view::npos || dot2 == std::string_view::npos)
        throw InternalError("feature_in_group: malformed feature name '" +
                            std::string(feature_name) + "'");
    std::string_view source = feature_name.substr(0, dot1);
    std::string_view dim = feature_name.substr(dot1 + 1, dot2 - dot1 - 1);
    switch (g) {
    case FeatureGroup::All: return true;
    case FeatureGroup::Dim0: return dim == "H0";
    case FeatureGroup::Dim1: return dim == "H1";
    case FeatureGroup::Minutiae: return is_minutiae_source(source);
    case FeatureGroup::Jpeg: return is_image_source(source);
    case FeatureGroup::Unoriented: return source == "unoriented";
    }
    return false;
}

ExperimentReport run_experiment(const FeatureMatrix& fm, const std::vector<ClassLabel>& labels,
                                FeatureGroup group, const ExperimentOptions& opts) {
    std::vector<int> group_cols;
    for (int j = 0; j < fm.cols(); ++j)
        if (feature_in_group(fm.names[j], group)) group_cols.push_back(j);
    if (group_cols.empty())
        throw DataError("run_experiment: group '" + std::string(group_name(group)) +
                        "' selects no features");

    ExperimentReport report;
    report.group = group;
    report.candidate_features = static_cast<int>(group_cols.size());

    FeatureMatrix z = zscore_and_drop(fm.select(group_cols));

    FeatureMatrix entering;
    if (group == FeatureGroup::Unoriented || z.cols() <= opts.window_hi) {
        entering = std::move(z);
    } else {
        // Bisect the correlation cutoff until the surviving count lands in
        // [window_lo, window_hi]. The count is a step function of the cutoff,
        // so an exact landing can be impossible; fall back to the evaluated
        // cutoff whose count is closest to the window (ties: fewer features).
        Eigen::MatrixXd corr = abs_correlation(z.X);
        double lo = 0.0, hi = 1.0;
        std::vector<int> best_cols;
        long best_dist = std::numeric_limits<long>::max();
        double best_cutoff = 1.0;
        for (int iter = 0; iter < 60; ++iter) {
            double mid = 0.5 * (lo + hi);
            std::vector<int> cols = prune_indices(corr, mid);
            long count = static_cast<long>(cols.size());
            long dist = count < opts.window_lo ? opts.window_lo - count
                        : count > opts.window_hi ? count - opts.window_hi
                                                 : 0;
            if (dist < best_dist || (dist == best_dist && count < static_cast<long>(best_cols.size()))) {
                best_dist = dist;
                best_cols = cols;
                best_cutoff = mid;
            }
            if (dist == 0) break;
            if (count < opts.window_lo)
                lo = mid;
            else
                hi = mid;
        }
        report.cutoff = best_cutoff;
        entering = z.select(best_cols);
    }
    report.entering_features = entering.names;

    report.trace = backwards_elimination(entering, labels, opts.loocv, opts.workers);
    report.peak_set = report.trace.peak_feature_sets.front();

    std::vector<int> peak_cols;
    for (int j = 0; j < entering.cols(); ++j)
        if (std::find(report.peak_set.begin(), report.peak_set.end(), entering.names[j]) !=
            report.peak_set.end())
            peak_cols.push_back(j);
    report.peak_confusion = loocv_accuracy(entering, labels, peak_cols, opts.loocv).confusion;
    return report;
}

}  // namespace ridgeline
