#ifndef VEINPROC_SPECTRAL_HPP
#define VEINPROC_SPECTRAL_HPP

#include <string>
#include <vector>

#include "veinproc/image.hpp"

namespace veinproc {

struct SpectralBand {
    double wavelength_nm = 0.0;
    GrayImage image;
};

/// Ordered stack of co-registered band images. Bands are kept sorted by
/// strictly increasing wavelength; all images share the same dimensions.
struct SpectralCube {
    std::vector<SpectralBand> bands;
};

/// Reads a cube manifest: UTF-8 text, one `<wavelength_nm><TAB><relative path>`
/// line per band, '#' comment lines and blank lines ignored. Paths are
/// resolved relative to the manifest's directory. Rejects malformed lines
/// (with line number), duplicate wavelengths, and dimension mismatches.
SpectralCube load_cube(const std::string& manifest_path);

/// Per-pixel arithmetic mean over all bands whose wavelength lies within
/// [center - bandwidth/2, center + bandwidth/2], inclusive.
/// Throws std::invalid_argument if no band falls inside the window.
GrayImage average_bands(const SpectralCube& cube, double center_nm, double bandwidth_nm);

}  // namespace veinproc

#endif
