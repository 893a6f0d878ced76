#ifndef VEINPROC_PIPELINE_HPP
#define VEINPROC_PIPELINE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "veinproc/image.hpp"
#include "veinproc/metrics.hpp"
#include "veinproc/segmentation.hpp"

namespace veinproc {

/// All tunable extraction parameters with their documented defaults.
struct PipelineConfig {
    double sigma = 25.0;
    double epsilon = 1e-4;
    int median_window = 3;
    ThresholdMethod threshold_method = ThresholdMethod::otsu();
    std::int64_t min_area = 20000;
    bool area_scale = true;  // scale min_area by image area relative to 360x657
    int connectivity = 8;
    std::optional<Roi> roi;
    double band_center_nm = 850.0;
    double band_width_nm = 10.0;
    bool invert_before_prune = false;
};

/// Throws std::invalid_argument naming the first out-of-range field.
void validate_config(const PipelineConfig& cfg);

/// Flat key=value text, one field per line, fixed key order; the roi line is
/// omitted when unset. serialize(parse(serialize(c))) == serialize(c).
std::string serialize_config(const PipelineConfig& cfg);
PipelineConfig parse_config(const std::string& text);
PipelineConfig load_config_file(const std::string& path);

/// "otsu" or "fixed:<t>" (also the config-file syntax).
ThresholdMethod parse_threshold(const std::string& spec);
std::string format_threshold(const ThresholdMethod& method);

/// "x0,y0,width,height".
Roi parse_roi(const std::string& spec);

/// The pruning area floor actually applied: min_area scaled by
/// width*height / (360*657) when area_scale is on (the documented default
/// is tied to that resolution), otherwise min_area verbatim.
std::int64_t effective_min_area(const PipelineConfig& cfg, int width, int height);

/// One executed stage: its name, artifact path (empty if nothing was
/// written), and wall-clock duration.
struct StageRecord {
    std::string name;
    std::string path;
    double ms = 0.0;
};

struct StageTrace {
    std::vector<StageRecord> stages;
};

struct ExtractResult {
    StageTrace trace;
    BinaryImage skeleton;
};

/// Runs the fixed extraction chain
///   normalize -> crop -> retinex -> rescale -> he -> median -> threshold
///   -> prune -> invert -> thin
/// (invert and prune swap when cfg.invert_before_prune is set; pruning then
/// acts on the complement mask, which deletes small background islands
/// instead of small vein fragments).
///
/// Thinning always consumes the vein-foreground mask: the invert stage is
/// the presentation flip between "veins dark" and "veins bright", and a
/// skeleton of the background would be meaningless. Its artifact is the
/// complement of the pruned mask.
///
/// When out_dir is non-empty the final skeleton is written there as
/// skeleton.png; with write_trace every stage artifact is written as
/// NN_name.png (the retinex stage, being log-domain, is written in its
/// rescaled display form). Stage errors are rethrown with the stage name
/// prefixed. Output bytes depend only on input pixels and config.
ExtractResult run_extract(const GrayImage& input, const PipelineConfig& cfg,
                          const std::string& out_dir = "", bool write_trace = false);

/// Loads the extract input: a single image, or a cube manifest averaged over
/// the configured band window when is_cube is set.
GrayImage load_extract_input(const std::string& path, bool is_cube, const PipelineConfig& cfg);

/// Runs the named enhancement methods on `input` and builds the comparison
/// report. Valid names: ssr (Retinex + HE, designated when present), clahe,
/// dog-he, glpf. Throws std::invalid_argument on unknown or duplicate names.
QualityReport run_compare(const GrayImage& input, const std::vector<std::string>& method_names,
                          const PipelineConfig& cfg, EntropyBase base = EntropyBase::nats);

/// Loads a cube manifest, averages the selected band window, saves the result.
void run_cube_average(const std::string& manifest_path, double center_nm, double width_nm,
                      const std::string& out_path);

}  // namespace veinproc

#endif
