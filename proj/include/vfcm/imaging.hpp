#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "vfcm/fit.hpp"

namespace vfcm {

struct GrayImage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::uint16_t maxval = 255;
    std::vector<std::uint8_t> pixels;  // row-major

    bool operator==(const GrayImage&) const = default;
};

/// Decodes binary (P5) or ASCII (P2) graymaps with maxval <= 255. Header
/// comments start with '#' and run to end of line.
GrayImage read_pgm(std::string_view bytes);
GrayImage read_pgm_file(const std::string& path);

/// Encodes as P5: "P5\n<w> <h>\n<maxval>\n" followed by one byte per pixel.
std::string write_pgm(const GrayImage& image);
void write_pgm_file(const GrayImage& image, const std::string& path);

enum class Algorithm { fcm, vfc };

Algorithm parse_algorithm(std::string_view name);
std::string_view to_string(Algorithm algorithm);

struct SegmentOptions {
    Algorithm algorithm = Algorithm::vfc;
    // Emit 0/1 with maxval 1 instead of 0/255.
    bool raw01 = false;
};

struct Segmentation {
    GrayImage mask;
    std::vector<double> centers;  // ascending
    std::vector<double> objective_trace;
    std::vector<double> literal_trace;
    std::size_t iterations_run = 0;
    StopReason converged_by = StopReason::max_iters;
};

/// Two-cluster fit on raw pixel intensities. Pixels whose membership in the
/// darker cluster is >= 0.5 become 0, the rest become maxval.
Segmentation segment_binary(const GrayImage& image, const FitConfig& config,
                            const SegmentOptions& options = {});

}  // namespace vfcm
