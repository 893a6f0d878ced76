#include "veinproc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "veinproc/image_io.hpp"

namespace veinproc {

SpectralCube load_cube(const std::string& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw IoError(manifest_path + ": cannot open manifest");
    const std::filesystem::path base = std::filesystem::path(manifest_path).parent_path();

    SpectralCube cube;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;

        const auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw IoError(manifest_path + ":" + std::to_string(line_no) +
                          ": malformed line (expected <wavelength_nm><TAB><path>)");

        const std::string wl_token = line.substr(0, tab);
        const std::string rel_path = line.substr(tab + 1);
        std::size_t consumed = 0;
        double wavelength = 0.0;
        try {
            wavelength = std::stod(wl_token, &consumed);
        } catch (const std::exception&) {
            consumed = 0;
        }
        if (consumed != wl_token.size() || !std::isfinite(wavelength))
            throw IoError(manifest_path + ":" + std::to_string(line_no) +
                          ": malformed line (unparsable wavelength '" + wl_token + "')");
        if (rel_path.empty())
            throw IoError(manifest_path + ":" + std::to_string(line_no) +
                          ": malformed line (empty image path)");

        for (const auto& band : cube.bands)
            if (band.wavelength_nm == wavelength)
                throw IoError(manifest_path + ":" + std::to_string(line_no) +
                              ": duplicate wavelength " + wl_token);

        SpectralBand band;
        band.wavelength_nm = wavelength;
        band.image = load_image((base / rel_path).string());
        if (!cube.bands.empty() && !band.image.same_size(cube.bands.front().image))
            throw IoError(manifest_path + ":" + std::to_string(line_no) +
                          ": band dimension mismatch");
        cube.bands.push_back(std::move(band));
    }
    std::sort(cube.bands.begin(), cube.bands.end(),
              [](const SpectralBand& a, const SpectralBand& b) {
                  return a.wavelength_nm < b.wavelength_nm;
              });
    return cube;
}

GrayImage average_bands(const SpectralCube& cube, double center_nm, double bandwidth_nm) {
    const double half = bandwidth_nm / 2.0;
    std::vector<const GrayImage*> selected;
    for (const auto& band : cube.bands)
        if (std::abs(band.wavelength_nm - center_nm) <= half)
            selected.push_back(&band.image);
    if (selected.empty())
        throw std::invalid_argument("average_bands: no band within " +
                                    std::to_string(bandwidth_nm) + " nm window around " +
                                    std::to_string(center_nm) + " nm");

    GrayImage out(selected.front()->width, selected.front()->height);
    const GrayImage& ref = *selected.front();
    const double inv = 1.0 / static_cast<double>(selected.size());
    for (std::size_t i = 0; i < out.data.size(); ++i) {
        // accumulate residuals against the first band, fixed ascending-wavelength
        // order, so averaging identical bands reproduces them bitwise
        double sum = 0.0;
        for (const GrayImage* band : selected) sum += band->data[i] - ref.data[i];
        out.data[i] = ref.data[i] + sum * inv;
    }
    return out;
}

}  // namespace veinproc
