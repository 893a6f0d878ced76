#ifndef VEINPROC_IMAGE_IO_HPP
#define VEINPROC_IMAGE_IO_HPP

#include <string>

#include "veinproc/image.hpp"

namespace veinproc {

/// Loads an 8/16-bit grayscale PGM (P5) or grayscale PNG. The format is
/// detected from the file's magic bytes. Integer samples are mapped to [0,1]
/// by dividing by the format's maximum value.
/// Throws IoError on missing files, unsupported formats, or zero dimensions.
GrayImage load_image(const std::string& path);

/// Writes an 8-bit grayscale PGM or PNG, chosen by file extension
/// (.pgm/.pnm vs .png). Values must lie in [0,1]; each sample is
/// round(v * 255).
void save_image(const GrayImage& img, const std::string& path);

}  // namespace veinproc

#endif
