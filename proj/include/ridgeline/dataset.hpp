#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ridgeline/class_label.hpp"
#include "ridgeline/image.hpp"
#include "ridgeline/minutiae.hpp"

namespace ridgeline {

/// One dataset entry: expert class plus at least one of a minutiae file and
/// an image file. Paths are stored as given in the manifest, resolved
/// relative to the manifest's directory.
struct PrintRecord {
    std::string print_id;
    ClassLabel label = ClassLabel::Arch;
    std::optional<std::filesystem::path> minutiae_path;
    std::optional<std::filesystem::path> image_path;
};

struct Manifest {
    std::string name;
    std::string provenance;
    std::vector<PrintRecord> records;
};

/// Reads the manifest CSV (print_id,class,minutiae_path,image_path; class
/// tokens A/L/W; empty path = absent). Relative paths are resolved against
/// the manifest directory. Throws DataError with the offending line number
/// on duplicate ids, unknown class tokens, or rows missing both paths.
Manifest load_manifest(const std::filesystem::path& path);

void save_manifest(const Manifest& manifest, const std::filesystem::path& path);

/// Reads "x,y,theta_degrees" rows (optional header). Angles are reduced
/// mod 360 into [0, 360). Throws DataError on non-numeric fields or an empty
/// file.
MinutiaCloud load_minutiae_csv(const std::filesystem::path& path, const std::string& print_id);

void save_minutiae_csv(const MinutiaCloud& cloud, const std::filesystem::path& path);

/// Loads a grayscale image by extension: .pgm (binary P5 or ASCII P2) or
/// .png (8-bit; color inputs are converted to luminance). Values come back
/// as raw 0..255 doubles, stage Raw.
GrayImage load_gray_image(const std::filesystem::path& path);

GrayImage load_pgm(const std::filesystem::path& path);
GrayImage load_png(const std::filesystem::path& path);

/// Writes binary PGM (P5, maxval 255). Values are clamped to [0, 255] and
/// rounded.
void save_pgm(const GrayImage& img, const std::filesystem::path& path);

}  // namespace ridgeline
