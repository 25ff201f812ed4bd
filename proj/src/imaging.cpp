#include "vfcm/imaging.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "vfcm/dataset.hpp"
#include "vfcm/error.hpp"
#include "vfcm/fcm.hpp"
#include "vfcm/vfc.hpp"

namespace vfcm {

namespace {

class PgmReader {
public:
    explicit PgmReader(std::string_view bytes) : bytes_(bytes) {}

    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            const char ch = bytes_[pos_];
            if (ch == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(ch))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::string_view token() {
        skip_space_and_comments();
        const std::size_t start = pos_;
        while (pos_ < bytes_.size() && !std::isspace(static_cast<unsigned char>(bytes_[pos_])) &&
               bytes_[pos_] != '#') {
            ++pos_;
        }
        return bytes_.substr(start, pos_ - start);
    }

    std::size_t number(const char* what) {
        const auto tok = token();
        if (tok.empty()) {
            throw PgmError(PgmErrorKind::bad_header_token, std::string("missing ") + what);
        }
        std::size_t value = 0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.size() > 9) {
            throw PgmError(PgmErrorKind::bad_header_token,
                           std::string("non-numeric ") + what + " token '" + std::string(tok) + "'");
        }
        return value;
    }

    std::size_t pos() const { return pos_; }
    void advance(std::size_t n) { pos_ += n; }
    std::string_view rest() const { return bytes_.substr(std::min(pos_, bytes_.size())); }
    bool at_end() const { return pos_ >= bytes_.size(); }

private:
    std::string_view bytes_;
    std::size_t pos_ = 0;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

GrayImage read_pgm(std::string_view bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '2')) {
        throw PgmError(PgmErrorKind::bad_magic, "not a PGM file: expected magic P5 or P2");
    }
    const bool binary = bytes[1] == '5';
    PgmReader reader(bytes);
    reader.advance(2);
    if (!reader.at_end() && !std::isspace(static_cast<unsigned char>(bytes[2])) && bytes[2] != '#') {
        throw PgmError(PgmErrorKind::bad_magic, "not a PGM file: expected magic P5 or P2");
    }

    GrayImage img;
    img.width = reader.number("width");
    img.height = reader.number("height");
    const std::size_t maxval = reader.number("maxval");
    if (img.width == 0 || img.height == 0) {
        throw PgmError(PgmErrorKind::bad_header_token, "width and height must be positive");
    }
    if (maxval == 0) throw PgmError(PgmErrorKind::bad_header_token, "maxval must be positive");
    if (maxval > 255) {
        throw PgmError(PgmErrorKind::maxval_too_large,
                       "maxval " + std::to_string(maxval) + " exceeds 255 (16-bit PGM unsupported)");
    }
    img.maxval = static_cast<std::uint16_t>(maxval);

    const std::size_t count = img.width * img.height;
    img.pixels.resize(count);
    if (binary) {
        // Exactly one whitespace byte separates maxval from the payload.
        if (reader.at_end()) throw PgmError(PgmErrorKind::truncated_payload, "missing pixel payload");
        reader.advance(1);
        const auto payload = reader.rest();
        if (payload.size() < count) {
            throw PgmError(PgmErrorKind::truncated_payload,
                           "payload holds " + std::to_string(payload.size()) + " of " +
                               std::to_string(count) + " pixels");
        }
        for (std::size_t p = 0; p < count; ++p) {
            const auto v = static_cast<std::uint8_t>(payload[p]);
            if (v > img.maxval) {
                throw PgmError(PgmErrorKind::pixel_out_of_range,
                               "pixel " + std::to_string(p) + " exceeds maxval");
            }
            img.pixels[p] = v;
        }
    } else {
        for (std::size_t p = 0; p < count; ++p) {
            reader.skip_space_and_comments();
            if (reader.at_end()) {
                throw PgmError(PgmErrorKind::truncated_payload,
                               "payload holds " + std::to_string(p) + " of " + std::to_string(count) +
                                   " pixels");
            }
            const std::size_t v = reader.number("pixel");
            if (v > img.maxval) {
                throw PgmError(PgmErrorKind::pixel_out_of_range,
                               "pixel " + std::to_string(p) + " exceeds maxval");
            }
            img.pixels[p] = static_cast<std::uint8_t>(v);
        }
    }
    return img;
}

GrayImage read_pgm_file(const std::string& path) { return read_pgm(slurp(path)); }

std::string write_pgm(const GrayImage& image) {
    std::string out = "P5\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n" +
                      std::to_string(image.maxval) + "\n";
    out.append(reinterpret_cast<const char*>(image.pixels.data()), image.pixels.size());
    return out;
}

void write_pgm_file(const GrayImage& image, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    const auto bytes = write_pgm(image);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("short write to " + path);
}

Algorithm parse_algorithm(std::string_view name) {
    if (name == "fcm") return Algorithm::fcm;
    if (name == "vfc") return Algorithm::vfc;
    throw InvalidArgument("unknown algorithm '" + std::string(name) + "' (expected fcm or vfc)");
}

std::string_view to_string(Algorithm algorithm) { return algorithm == Algorithm::fcm ? "fcm" : "vfc"; }

Segmentation segment_binary(const GrayImage& image, const FitConfig& config,
                            const SegmentOptions& options) {
    if (config.clusters != 2) throw InvalidArgument("binary segmentation requires exactly 2 clusters");
    if (image.pixels.size() != image.width * image.height || image.pixels.empty()) {
        throw InvalidArgument("image pixel count does not match its dimensions");
    }
    const auto [lo, hi] = std::minmax_element(image.pixels.begin(), image.pixels.end());
    if (*lo == *hi) throw DegenerateInputError("degenerate: constant intensities");

    Matrix intensities(image.pixels.size(), 1);
    for (std::size_t p = 0; p < image.pixels.size(); ++p) intensities(p, 0) = image.pixels[p];
    const DataMatrix data(std::move(intensities));

    Centers start;
    if (config.init == InitMethod::scatter) {
        start = init_centers_scatter(data, 2).centers;
        if (start(0, 0) == start(1, 0)) {
            throw DegenerateInputError("degenerate: coincident initial centers");
        }
    } else {
        throw InvalidArgument("binary segmentation always uses scatter initialization");
    }

    Segmentation seg;
    std::vector<double> low_membership(data.rows());
    std::size_t low = 0;
    auto finish = [&](const auto& fit) {
        low = fit.centers(0, 0) <= fit.centers(1, 0) ? 0 : 1;
        seg.centers = {fit.centers(low, 0), fit.centers(1 - low, 0)};
        seg.objective_trace = fit.objective_trace;
        seg.literal_trace = fit.literal_trace;
        seg.iterations_run = fit.iterations_run;
        seg.converged_by = fit.converged_by;
    };
    if (options.algorithm == Algorithm::fcm) {
        const auto fit = fcm_fit(data, config, start);
        finish(fit);
        for (std::size_t p = 0; p < data.rows(); ++p) low_membership[p] = fit.memberships(p, low);
    } else {
        const auto fit = vfc_fit(data, config, start);
        finish(fit);
        for (std::size_t p = 0; p < data.rows(); ++p) low_membership[p] = fit.memberships(p, low, 0);
    }

    seg.mask.width = image.width;
    seg.mask.height = image.height;
    seg.mask.maxval = options.raw01 ? 1 : 255;
    seg.mask.pixels.resize(data.rows());
    const auto on = static_cast<std::uint8_t>(seg.mask.maxval);
    for (std::size_t p = 0; p < data.rows(); ++p) {
        seg.mask.pixels[p] = low_membership[p] >= 0.5 ? 0 : on;
    }
    return seg;
}

}  // namespace vfcm
