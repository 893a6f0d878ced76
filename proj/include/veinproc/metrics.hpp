#ifndef VEINPROC_METRICS_HPP
#define VEINPROC_METRICS_HPP

#include <functional>
#include <string>
#include <vector>

#include "veinproc/image.hpp"

namespace veinproc {

/// Log base for the entropy indicator. The gradient/contrast indicators are
/// unaffected. Default is natural log (values in nats).
enum class EntropyBase { nats, bits };

/// Population standard deviation of the pixel values on the 0-255 scale.
double contrast(const GrayImage& img);

/// Shannon entropy of the 256-level gray histogram. Empty bins contribute 0.
double entropy(const GrayImage& img, EntropyBase base = EntropyBase::nats);

/// Mean gradient magnitude on the 0-255 scale, backward differences
/// dx = X(m,n) - X(m-1,n), dy = X(m,n) - X(m,n-1) accumulated over
/// m,n >= 1 and normalized by (M-1)(N-1). Throws for images smaller than 2x2.
double definition(const GrayImage& img);

/// One table row: an enhancement method's name and its three indicators.
struct MethodMetrics {
    std::string name;
    double contrast = 0.0;
    double entropy = 0.0;
    double definition = 0.0;
};

/// Gain of the designated method over the best competitor on one indicator.
/// `defined` is false when the competitor's value is zero (percentage would
/// divide by zero).
struct Improvement {
    std::string metric;
    std::string versus;
    bool defined = false;
    double percent = 0.0;
};

/// Per-method indicator table plus the designated method's improvement over
/// the best competitor per indicator. The "original" row (case-insensitive)
/// never counts as a competitor; `improvements` is empty when no competitor
/// exists or no method is designated.
struct QualityReport {
    std::vector<MethodMetrics> entries;
    std::string designated;
    std::vector<Improvement> improvements;
};

/// An enhancement method as a named image transform, for build_report.
struct NamedMethod {
    std::string name;
    std::function<GrayImage(const GrayImage&)> apply;
};

/// Computes all three indicators for one image.
MethodMetrics measure(const GrayImage& img, const std::string& name,
                      EntropyBase base = EntropyBase::nats);

/// Assembles a report from precomputed rows: finds the designated row,
/// determines the best competitor per indicator, computes
/// 100*(designated/best - 1). Pass an empty `designated` to skip the
/// improvement section. Throws if `designated` names no entry.
QualityReport make_report(std::vector<MethodMetrics> entries, const std::string& designated);

/// Runs every method on `raw`, measures the raw image as the "original" row,
/// and delegates to make_report. Throws on an empty method list or when
/// `designated` matches no method.
QualityReport build_report(const GrayImage& raw, const std::vector<NamedMethod>& methods,
                           const std::string& designated,
                           EntropyBase base = EntropyBase::nats);

/// Machine form: {"methods": [...], "designated": ..., "improvements": [...]},
/// all numbers rounded to 4 decimals, undefined percentages emitted as null.
std::string report_to_json(const QualityReport& report);

/// Human form: aligned-column Markdown table (rows = methods, columns =
/// Contrast/Entropy/Definition) followed by the improvement lines.
std::string report_to_markdown(const QualityReport& report);

}  // namespace veinproc

#endif
