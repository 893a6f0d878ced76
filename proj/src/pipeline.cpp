#include "veinproc/pipeline.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "veinproc/enhance.hpp"
#include "veinproc/image_io.hpp"
#include "veinproc/retinex.hpp"
#include "veinproc/spectral.hpp"

namespace veinproc {

void validate_config(const PipelineConfig& cfg) {
    if (!(cfg.sigma > 0.0)) throw std::invalid_argument("config: sigma must be > 0");
    if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("config: epsilon must be > 0");
    if (cfg.median_window < 1 || cfg.median_window % 2 == 0)
        throw std::invalid_argument("config: median_window must be odd and >= 1");
    if (cfg.threshold_method.kind == ThresholdMethod::Kind::fixed &&
        !(cfg.threshold_method.value >= 0.0 && cfg.threshold_method.value <= 1.0))
        throw std::invalid_argument("config: fixed threshold must lie in [0,1]");
    if (cfg.min_area < 0) throw std::invalid_argument("config: min_area must be >= 0");
    if (cfg.connectivity != 4 && cfg.connectivity != 8)
        throw std::invalid_argument("config: connectivity must be 4 or 8");
    if (cfg.roi && (cfg.roi->width < 1 || cfg.roi->height < 1 || cfg.roi->x0 < 0 || cfg.roi->y0 < 0))
        throw std::invalid_argument("config: roi must have positive size and non-negative offset");
    if (!(cfg.band_width_nm >= 0.0)) throw std::invalid_argument("config: band_width must be >= 0");
}

namespace {

// Shortest decimal form that parses back to the same double ("25", "0.0001").
std::string fmt_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_double_token(const std::string& key, const std::string& token) {
    double v = 0.0;
    const char* end = token.data() + token.size();
    const auto res = std::from_chars(token.data(), end, v);
    if (res.ec != std::errc{} || res.ptr != end)
        throw std::invalid_argument("config: bad number for " + key + ": '" + token + "'");
    return v;
}

std::int64_t parse_int_token(const std::string& key, const std::string& token) {
    std::int64_t v = 0;
    const char* end = token.data() + token.size();
    const auto res = std::from_chars(token.data(), end, v);
    if (res.ec != std::errc{} || res.ptr != end)
        throw std::invalid_argument("config: bad integer for " + key + ": '" + token + "'");
    return v;
}

bool parse_bool_token(const std::string& key, const std::string& token) {
    if (token == "true") return true;
    if (token == "false") return false;
    throw std::invalid_argument("config: bad boolean for " + key + ": '" + token + "'");
}

std::string trim(const std::string& s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace

ThresholdMethod parse_threshold(const std::string& spec) {
    if (spec == "otsu") return ThresholdMethod::otsu();
    if (spec.rfind("fixed:", 0) == 0) {
        const double t = parse_double_token("threshold", spec.substr(6));
        return ThresholdMethod::fixed(t);
    }
    throw std::invalid_argument("config: threshold must be 'otsu' or 'fixed:<t>', got '" + spec +
                                "'");
}

std::string format_threshold(const ThresholdMethod& method) {
    if (method.kind == ThresholdMethod::Kind::otsu) return "otsu";
    return "fixed:" + fmt_double(method.value);
}

Roi parse_roi(const std::string& spec) {
    std::array<std::int64_t, 4> parts{};
    std::size_t pos = 0;
    for (int i = 0; i < 4; ++i) {
        const std::size_t next = i < 3 ? spec.find(',', pos) : spec.size();
        if (next == std::string::npos)
            throw std::invalid_argument("config: roi must be 'x0,y0,width,height', got '" + spec +
                                        "'");
        parts[static_cast<std::size_t>(i)] = parse_int_token("roi", spec.substr(pos, next - pos));
        pos = next + 1;
    }
    return Roi{static_cast<int>(parts[0]), static_cast<int>(parts[1]), static_cast<int>(parts[2]),
               static_cast<int>(parts[3])};
}

std::string serialize_config(const PipelineConfig& cfg) {
    std::ostringstream out;
    out << "sigma=" << fmt_double(cfg.sigma) << "\n";
    out << "epsilon=" << fmt_double(cfg.epsilon) << "\n";
    out << "median_window=" << cfg.median_window << "\n";
    out << "threshold=" << format_threshold(cfg.threshold_method) << "\n";
    out << "min_area=" << cfg.min_area << "\n";
    out << "area_scale=" << (cfg.area_scale ? "true" : "false") << "\n";
    out << "connectivity=" << cfg.connectivity << "\n";
    if (cfg.roi)
        out << "roi=" << cfg.roi->x0 << "," << cfg.roi->y0 << "," << cfg.roi->width << ","
            << cfg.roi->height << "\n";
    out << "band_center=" << fmt_double(cfg.band_center_nm) << "\n";
    out << "band_width=" << fmt_double(cfg.band_width_nm) << "\n";
    out << "invert_before_prune=" << (cfg.invert_before_prune ? "true" : "false") << "\n";
    return out.str();
}

PipelineConfig parse_config(const std::string& text) {
    PipelineConfig cfg;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line " + std::to_string(line_no) +
                                        " is not key=value: '" + stripped + "'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));

        if (key == "sigma")
            cfg.sigma = parse_double_token(key, value);
        else if (key == "epsilon")
            cfg.epsilon = parse_double_token(key, value);
        else if (key == "median_window")
            cfg.median_window = static_cast<int>(parse_int_token(key, value));
        else if (key == "threshold")
            cfg.threshold_method = parse_threshold(value);
        else if (key == "min_area")
            cfg.min_area = parse_int_token(key, value);
        else if (key == "area_scale")
            cfg.area_scale = parse_bool_token(key, value);
        else if (key == "connectivity")
            cfg.connectivity = static_cast<int>(parse_int_token(key, value));
        else if (key == "roi")
            cfg.roi = parse_roi(value);
        else if (key == "band_center")
            cfg.band_center_nm = parse_double_token(key, value);
        else if (key == "band_width")
            cfg.band_width_nm = parse_double_token(key, value);
        else if (key == "invert_before_prune")
            cfg.invert_before_prune = parse_bool_token(key, value);
        else
            throw std::invalid_argument("config: unknown key '" + key + "' on line " +
                                        std::to_string(line_no));
    }
    return cfg;
}

PipelineConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::int64_t effective_min_area(const PipelineConfig& cfg, int width, int height) {
    if (!cfg.area_scale) return cfg.min_area;
    const double reference = 360.0 * 657.0;
    const double scaled =
        static_cast<double>(cfg.min_area) * (static_cast<double>(width) * height) / reference;
    return static_cast<std::int64_t>(std::llround(scaled));
}

namespace {

struct StageRunner {
    StageTrace& trace;
    const std::string& out_dir;
    bool write_trace;
    int index = 0;

    template <typename F>
    auto run(const std::string& name, F&& body) {
        ++index;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            auto result = body();
            record(name, std::chrono::steady_clock::now() - t0);
            return result;
        } catch (const IoError& e) {
            throw IoError("stage " + name + ": " + e.what());
        } catch (const std::exception& e) {
            throw std::runtime_error("stage " + name + ": " + e.what());
        }
    }

    void record(const std::string& name, std::chrono::steady_clock::duration elapsed) {
        StageRecord rec;
        rec.name = name;
        rec.ms = std::chrono::duration<double, std::milli>(elapsed).count();
        trace.stages.push_back(rec);
    }

    void attach_artifact(const GrayImage& img) {
        if (!write_trace || out_dir.empty()) return;
        StageRecord& rec = trace.stages.back();
        char prefix[8];
        std::snprintf(prefix, sizeof prefix, "%02d_", index);
        rec.path = out_dir + "/" + prefix + rec.name + ".png";
        save_image(img, rec.path);
    }
    void attach_artifact(const BinaryImage& bin) { attach_artifact(mask_to_gray(bin)); }
};

}  // namespace

ExtractResult run_extract(const GrayImage& input, const PipelineConfig& cfg,
                          const std::string& out_dir, bool write_trace) {
    validate_config(cfg);

    ExtractResult result;
    StageRunner runner{result.trace, out_dir, write_trace};

    const GrayImage normalized = runner.run("normalize", [&] { return normalize_minmax(input); });
    runner.attach_artifact(normalized);

    const GrayImage cropped =
        runner.run("crop", [&] { return cfg.roi ? crop(normalized, *cfg.roi) : normalized; });
    runner.attach_artifact(cropped);

    const ReflectanceMap reflectance = runner.run("retinex", [&] {
        return single_scale_retinex(cropped, build_kernel(cfg.sigma), cfg.epsilon);
    });

    // the log-domain map itself is not in [0,1]; trace it in display form
    if (write_trace && !out_dir.empty()) runner.attach_artifact(rescale_to_unit(reflectance));

    const GrayImage rescaled = runner.run("rescale", [&] { return rescale_to_unit(reflectance); });
    runner.attach_artifact(rescaled);

    const GrayImage equalized = runner.run("he", [&] { return histogram_equalize(rescaled); });
    runner.attach_artifact(equalized);

    const GrayImage smoothed =
        runner.run("median", [&] { return median_filter(equalized, cfg.median_window); });
    runner.attach_artifact(smoothed);

    const BinaryImage thresholded =
        runner.run("threshold", [&] { return threshold(smoothed, cfg.threshold_method); });
    runner.attach_artifact(thresholded);

    const std::int64_t min_area = effective_min_area(cfg, smoothed.width, smoothed.height);

    BinaryImage veins(smoothed.width, smoothed.height);
    if (!cfg.invert_before_prune) {
        const BinaryImage pruned = runner.run("prune", [&] {
            return remove_small_components(thresholded, min_area, cfg.connectivity);
        });
        runner.attach_artifact(pruned);

        const BinaryImage inverted = runner.run("invert", [&] { return invert(pruned); });
        runner.attach_artifact(inverted);

        veins = pruned;
    } else {
        const BinaryImage inverted = runner.run("invert", [&] { return invert(thresholded); });
        runner.attach_artifact(inverted);

        const BinaryImage pruned_background = runner.run("prune", [&] {
            return remove_small_components(inverted, min_area, cfg.connectivity);
        });
        runner.attach_artifact(pruned_background);

        veins = invert(pruned_background);
    }

    result.skeleton = runner.run("thin", [&] { return thin(veins); });
    runner.attach_artifact(result.skeleton);

    if (!out_dir.empty())
        save_image(mask_to_gray(result.skeleton), out_dir + "/skeleton.png");
    return result;
}

GrayImage load_extract_input(const std::string& path, bool is_cube, const PipelineConfig& cfg) {
    if (!is_cube) return load_image(path);
    const SpectralCube cube = load_cube(path);
    return average_bands(cube, cfg.band_center_nm, cfg.band_width_nm);
}

QualityReport run_compare(const GrayImage& input, const std::vector<std::string>& method_names,
                          const PipelineConfig& cfg, EntropyBase base) {
    if (method_names.empty())
        throw std::invalid_argument("compare: method list is empty (valid: ssr, clahe, dog-he, glpf)");
    validate_config(cfg);

    std::vector<NamedMethod> methods;
    bool has_ssr = false;
    for (const auto& name : method_names) {
        for (const auto& m : methods)
            if (m.name == name)
                throw std::invalid_argument("compare: duplicate method '" + name + "'");
        if (name == "ssr") {
            has_ssr = true;
            methods.push_back({name, [&cfg](const GrayImage& im) {
                                   const GaussianKernel k = build_kernel(cfg.sigma);
                                   return histogram_equalize(
                                       rescale_to_unit(single_scale_retinex(im, k, cfg.epsilon)));
                               }});
        } else if (name == "clahe") {
            methods.push_back({name, [](const GrayImage& im) { return clahe(im, 8, 8, 2.0); }});
        } else if (name == "dog-he") {
            methods.push_back({name, [](const GrayImage& im) { return dog_he(im, 1.0, 4.0); }});
        } else if (name == "glpf") {
            methods.push_back(
                {name, [](const GrayImage& im) { return gaussian_lowpass(im, 2.0); }});
        } else {
            throw std::invalid_argument("compare: unknown method '" + name +
                                        "' (valid: ssr, clahe, dog-he, glpf)");
        }
    }
    return build_report(input, methods, has_ssr ? "ssr" : "", base);
}

void run_cube_average(const std::string& manifest_path, double center_nm, double width_nm,
                      const std::string& out_path) {
    const SpectralCube cube = load_cube(manifest_path);
    save_image(average_bands(cube, center_nm, width_nm), out_path);
}

}  // namespace veinproc
