#include "veinproc/metrics.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "veinproc/enhance.hpp"

namespace veinproc {

double contrast(const GrayImage& img) {
    const auto [lo, hi] = std::minmax_element(img.data.begin(), img.data.end());
    if (*lo == *hi) return 0.0;  // flat image: skip the accumulation residue

    const double n = static_cast<double>(img.pixel_count());
    double sum = 0.0;
    for (double v : img.data) sum += v;
    const double mean = sum / n * 255.0;

    double sq = 0.0;
    for (double v : img.data) {
        const double d = v * 255.0 - mean;
        sq += d * d;
    }
    return std::sqrt(sq / n);
}

double entropy(const GrayImage& img, EntropyBase base) {
    const Histogram hist = histogram_of(img);
    const double total = static_cast<double>(hist.total);
    double e = 0.0;
    for (auto count : hist.bins) {
        if (count == 0) continue;
        const double p = static_cast<double>(count) / total;
        e -= p * std::log(p);
    }
    if (base == EntropyBase::bits) e /= std::log(2.0);
    return e;
}

double definition(const GrayImage& img) {
    if (img.width < 2 || img.height < 2)
        throw std::invalid_argument("definition: image must be at least 2x2");
    double sum = 0.0;
    for (int y = 1; y < img.height; ++y) {
        for (int x = 1; x < img.width; ++x) {
            const double dx = (img.at(x, y) - img.at(x - 1, y)) * 255.0;
            const double dy = (img.at(x, y) - img.at(x, y - 1)) * 255.0;
            sum += std::sqrt(dx * dx + dy * dy);
        }
    }
    return sum / (static_cast<double>(img.width - 1) * static_cast<double>(img.height - 1));
}

MethodMetrics measure(const GrayImage& img, const std::string& name, EntropyBase base) {
    return {name, contrast(img), entropy(img, base), definition(img)};
}

namespace {

bool is_original_row(const std::string& name) {
    if (name.size() != 8) return false;
    static const char* kWord = "original";
    for (std::size_t i = 0; i < 8; ++i)
        if (std::tolower(static_cast<unsigned char>(name[i])) != kWord[i]) return false;
    return true;
}

Improvement improvement_for(const std::vector<MethodMetrics>& entries,
                            const MethodMetrics& designated, const std::string& metric,
                            double MethodMetrics::*field) {
    const MethodMetrics* best = nullptr;
    for (const auto& e : entries) {
        if (&e == &designated || is_original_row(e.name)) continue;
        if (best == nullptr || e.*field > best->*field) best = &e;
    }
    Improvement imp;
    imp.metric = metric;
    imp.versus = best->name;
    if (best->*field != 0.0) {
        imp.defined = true;
        imp.percent = 100.0 * (designated.*field / (best->*field) - 1.0);
    }
    return imp;
}

}  // namespace

QualityReport make_report(std::vector<MethodMetrics> entries, const std::string& designated) {
    QualityReport report;
    report.entries = std::move(entries);
    report.designated = designated;
    if (designated.empty()) return report;

    const MethodMetrics* chosen = nullptr;
    for (const auto& e : report.entries)
        if (e.name == designated) {
            chosen = &e;
            break;
        }
    if (chosen == nullptr)
        throw std::invalid_argument("make_report: designated method '" + designated +
                                    "' has no entry");

    bool has_competitor = false;
    for (const auto& e : report.entries)
        if (&e != chosen && !is_original_row(e.name)) has_competitor = true;
    if (!has_competitor) return report;

    report.improvements.push_back(
        improvement_for(report.entries, *chosen, "contrast", &MethodMetrics::contrast));
    report.improvements.push_back(
        improvement_for(report.entries, *chosen, "entropy", &MethodMetrics::entropy));
    report.improvements.push_back(
        improvement_for(report.entries, *chosen, "definition", &MethodMetrics::definition));
    return report;
}

QualityReport build_report(const GrayImage& raw, const std::vector<NamedMethod>& methods,
                           const std::string& designated, EntropyBase base) {
    if (methods.empty()) throw std::invalid_argument("build_report: empty method list");

    std::vector<MethodMetrics> entries;
    entries.reserve(methods.size() + 1);
    entries.push_back(measure(raw, "original", base));
    for (const auto& m : methods) entries.push_back(measure(m.apply(raw), m.name, base));
    return make_report(std::move(entries), designated);
}

namespace {

double round4(double v) { return std::round(v * 1e4) / 1e4; }

std::string fmt4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string fmt2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

std::string report_to_json(const QualityReport& report) {
    nlohmann::json doc;
    doc["methods"] = nlohmann::json::array();
    for (const auto& e : report.entries) {
        doc["methods"].push_back({{"name", e.name},
                                  {"contrast", round4(e.contrast)},
                                  {"entropy", round4(e.entropy)},
                                  {"definition", round4(e.definition)}});
    }
    doc["designated"] = report.designated;
    doc["improvements"] = nlohmann::json::array();
    for (const auto& imp : report.improvements) {
        nlohmann::json j{{"metric", imp.metric}, {"versus", imp.versus}};
        if (imp.defined)
            j["percent"] = round4(imp.percent);
        else
            j["percent"] = nullptr;
        doc["improvements"].push_back(j);
    }
    return doc.dump(2) + "\n";
}

std::string report_to_markdown(const QualityReport& report) {
    const std::array<std::string, 4> headers = {"Method", "Contrast", "Entropy", "Definition"};
    std::vector<std::array<std::string, 4>> rows;
    rows.reserve(report.entries.size());
    for (const auto& e : report.entries)
        rows.push_back({e.name, fmt4(e.contrast), fmt4(e.entropy), fmt4(e.definition)});

    std::array<std::size_t, 4> widths;
    for (std::size_t c = 0; c < 4; ++c) {
        widths[c] = headers[c].size();
        for (const auto& row : rows) widths[c] = std::max(widths[c], row[c].size());
    }

    std::ostringstream out;
    const auto emit_row = [&](const std::array<std::string, 4>& cells) {
        out << "|";
        for (std::size_t c = 0; c < 4; ++c) {
            out << " ";
            if (c == 0) {  // names left-aligned, numbers right-aligned
                out << cells[c] << std::string(widths[c] - cells[c].size(), ' ');
            } else {
                out << std::string(widths[c] - cells[c].size(), ' ') << cells[c];
            }
            out << " |";
        }
        out << "\n";
    };
    emit_row(headers);
    out << "|";
    for (std::size_t c = 0; c < 4; ++c) out << std::string(widths[c] + 2, '-') << "|";
    out << "\n";
    for (const auto& row : rows) emit_row(row);

    if (!report.improvements.empty()) {
        out << "\nImprovement of " << report.designated << " over the best other method:\n";
        for (const auto& imp : report.improvements) {
            out << "- " << imp.metric << ": ";
            if (imp.defined)
                out << (imp.percent >= 0.0 ? "+" : "") << fmt2(imp.percent) << "%";
            else
                out << "undefined (division by zero)";
            out << " (vs " << imp.versus << ")\n";
        }
    }
    return out.str();
}

}  // namespace veinproc
