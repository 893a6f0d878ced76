// veinproc: palm vein extraction pipeline and enhancement comparison CLI.
//
// Exit codes: 0 success, 1 usage error, 2 input/IO error, 3 processing error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "veinproc/image_io.hpp"
#include "veinproc/metrics.hpp"
#include "veinproc/pipeline.hpp"

namespace {

using namespace veinproc;

std::vector<std::string> split_csv(const std::string& csv) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        const std::size_t next = csv.find(',', pos);
        const std::size_t end = next == std::string::npos ? csv.size() : next;
        if (end > pos) out.push_back(csv.substr(pos, end - pos));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return out;
}

EntropyBase parse_entropy_base(const std::string& name) {
    if (name == "nats") return EntropyBase::nats;
    if (name == "bits") return EntropyBase::bits;
    throw std::invalid_argument("entropy base must be 'nats' or 'bits', got '" + name + "'");
}

struct ExtractArgs {
    std::string input;
    bool cube = false;
    std::string out_dir;
    std::string config_path;
    double sigma = 25.0;
    double epsilon = 1e-4;
    int median = 3;
    std::string threshold = "otsu";
    std::int64_t min_area = 20000;
    bool no_area_scale = false;
    int connectivity = 8;
    std::string roi;
    double band_center = 850.0;
    double band_width = 10.0;
    bool invert_before_prune = false;
    bool trace = false;
};

int do_extract(const CLI::App& cmd, const ExtractArgs& args) {
    PipelineConfig cfg;
    if (!args.config_path.empty()) cfg = load_config_file(args.config_path);

    // precedence: explicit flag > config file > default
    if (cmd.count("--sigma")) cfg.sigma = args.sigma;
    if (cmd.count("--epsilon")) cfg.epsilon = args.epsilon;
    if (cmd.count("--median")) cfg.median_window = args.median;
    if (cmd.count("--threshold")) cfg.threshold_method = parse_threshold(args.threshold);
    if (cmd.count("--min-area")) cfg.min_area = args.min_area;
    if (args.no_area_scale) cfg.area_scale = false;
    if (cmd.count("--connectivity")) cfg.connectivity = args.connectivity;
    if (cmd.count("--roi")) cfg.roi = parse_roi(args.roi);
    if (cmd.count("--band-center")) cfg.band_center_nm = args.band_center;
    if (cmd.count("--band-width")) cfg.band_width_nm = args.band_width;
    if (args.invert_before_prune) cfg.invert_before_prune = true;
    validate_config(cfg);

    std::error_code ec;
    std::filesystem::create_directories(args.out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + args.out_dir + ": " + ec.message());

    const GrayImage input = load_extract_input(args.input, args.cube, cfg);
    const ExtractResult result = run_extract(input, cfg, args.out_dir, args.trace);

    if (args.trace) {
        for (const auto& stage : result.trace.stages) {
            std::printf("%-10s %8.2f ms", stage.name.c_str(), stage.ms);
            if (!stage.path.empty()) std::printf("  %s", stage.path.c_str());
            std::printf("\n");
        }
    }
    std::printf("skeleton: %s (%lld foreground px)\n", (args.out_dir + "/skeleton.png").c_str(),
                static_cast<long long>(result.skeleton.foreground_count()));
    return 0;
}

struct CompareArgs {
    std::string input;
    std::string methods = "ssr,clahe,dog-he,glpf";
    std::string report_path;
    double sigma = 25.0;
    double epsilon = 1e-4;
    std::string entropy_base = "nats";
};

int do_compare(const CLI::App& cmd, const CompareArgs& args) {
    PipelineConfig cfg;
    if (cmd.count("--sigma")) cfg.sigma = args.sigma;
    if (cmd.count("--epsilon")) cfg.epsilon = args.epsilon;

    const GrayImage input = load_image(args.input);
    const QualityReport report =
        run_compare(input, split_csv(args.methods), cfg, parse_entropy_base(args.entropy_base));

    if (!args.report_path.empty()) {
        const std::string ext = std::filesystem::path(args.report_path).extension().string();
        std::string body;
        if (ext == ".json")
            body = report_to_json(report);
        else if (ext == ".md" || ext == ".markdown")
            body = report_to_markdown(report);
        else
            throw std::invalid_argument("report path must end in .json or .md, got '" +
                                        args.report_path + "'");
        std::ofstream out(args.report_path, std::ios::binary);
        if (!out) throw IoError("cannot write report: " + args.report_path);
        out << body;
        if (!out) throw IoError("failed writing report: " + args.report_path);
    }
    std::cout << report_to_markdown(report);
    return 0;
}

struct CubeAverageArgs {
    std::string manifest;
    double center = 850.0;
    double width = 10.0;
    std::string out;
};

struct MetricsArgs {
    std::string input;
    std::string entropy_base = "nats";
};

int do_metrics(const MetricsArgs& args) {
    const GrayImage img = load_image(args.input);
    const EntropyBase base = parse_entropy_base(args.entropy_base);
    std::printf("{\"contrast\": %.4f, \"entropy\": %.4f, \"definition\": %.4f}\n", contrast(img),
                entropy(img, base), definition(img));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Palm vein extraction: Retinex shadow removal, enhancement comparison, "
                 "binarization and thinning"};
    app.require_subcommand(1);

    ExtractArgs ex;
    CLI::App* extract = app.add_subcommand("extract", "Run the full vein extraction pipeline");
    extract->add_option("--input", ex.input, "Input image, or cube manifest with --cube")
        ->required();
    extract->add_flag("--cube", ex.cube, "Treat --input as a spectral cube manifest");
    extract->add_option("--out-dir", ex.out_dir, "Directory for skeleton.png and stage artifacts")
        ->required();
    extract->add_option("--config", ex.config_path, "key=value config file (flags override it)");
    extract->add_option("--sigma", ex.sigma, "Gaussian surround scale")->capture_default_str();
    extract->add_option("--epsilon", ex.epsilon, "Log-domain guard added inside both logs")->capture_default_str();
    extract->add_option("--median", ex.median, "Median filter window (odd)")->capture_default_str();
    extract->add_option("--threshold", ex.threshold, "otsu or fixed:<t>")->capture_default_str();
    extract->add_option("--min-area", ex.min_area, "Minimum connected component area (px)")->capture_default_str();
    extract->add_flag("--no-area-scale", ex.no_area_scale,
                      "Apply --min-area verbatim instead of scaling it by image area / (360*657)");
    extract->add_option("--connectivity", ex.connectivity, "Component connectivity: 4 or 8")->capture_default_str();
    extract->add_option("--roi", ex.roi, "Crop region x0,y0,width,height");
    extract->add_option("--band-center", ex.band_center, "Cube band window center (nm)")->capture_default_str();
    extract->add_option("--band-width", ex.band_width, "Cube band window width (nm)")->capture_default_str();
    extract->add_flag("--invert-before-prune", ex.invert_before_prune,
                      "Prune the inverted mask (deletes background islands, not vein fragments)");
    extract->add_flag("--trace", ex.trace, "Write every stage artifact and print timings");

    CompareArgs cm;
    CLI::App* compare = app.add_subcommand("compare", "Compare enhancement methods on one image");
    compare->add_option("--input", cm.input, "Input grayscale image")->required();
    compare->add_option("--methods", cm.methods, "Comma list from: ssr, clahe, dog-he, glpf")
        ->capture_default_str();
    compare->add_option("--report", cm.report_path, "Write the report to this .json or .md file");
    compare->add_option("--sigma", cm.sigma, "Gaussian surround scale for ssr")->capture_default_str();
    compare->add_option("--epsilon", cm.epsilon, "Log-domain guard for ssr")->capture_default_str();
    compare->add_option("--entropy-base", cm.entropy_base, "nats or bits")->capture_default_str();

    CubeAverageArgs ca;
    CLI::App* cube_avg = app.add_subcommand("cube-average", "Average cube bands into one image");
    cube_avg->add_option("--manifest", ca.manifest, "Cube manifest path")->required();
    cube_avg->add_option("--center", ca.center, "Band window center (nm)")->capture_default_str();
    cube_avg->add_option("--width", ca.width, "Band window width (nm)")->capture_default_str();
    cube_avg->add_option("--out", ca.out, "Output image path (.png or .pgm)")->required();

    MetricsArgs mt;
    CLI::App* metrics_cmd = app.add_subcommand("metrics", "Print contrast/entropy/definition");
    metrics_cmd->add_option("--input", mt.input, "Input grayscale image")->required();
    metrics_cmd->add_option("--entropy-base", mt.entropy_base, "nats or bits")->capture_default_str();

    try {
        app.parse(argc, argv);
        if (extract->parsed()) return do_extract(*extract, ex);
        if (compare->parsed()) return do_compare(*compare, cm);
        if (cube_avg->parsed()) {
            veinproc::run_cube_average(ca.manifest, ca.center, ca.width, ca.out);
            std::printf("wrote %s\n", ca.out.c_str());
            return 0;
        }
        if (metrics_cmd->parsed()) return do_metrics(mt);
        std::cerr << "error: no subcommand\n";
        return 1;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const veinproc::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
