#include <doctest.h>

#include <random>

#include "vfcm/error.hpp"
#include "vfcm/imaging.hpp"

using namespace vfcm;
using namespace std::string_literals;

namespace {

PgmErrorKind kind_of(std::string_view bytes) {
    try {
        read_pgm(bytes);
    } catch (const PgmError& e) {
        return e.kind();
    }
    FAIL("expected a PgmError");
    return PgmErrorKind::bad_magic;
}

GrayImage random_image(std::mt19937_64& rng, std::uint16_t maxval = 255) {
    GrayImage img;
    img.width = std::uniform_int_distribution<std::size_t>(1, 40)(rng);
    img.height = std::uniform_int_distribution<std::size_t>(1, 40)(rng);
    img.maxval = maxval;
    img.pixels.resize(img.width * img.height);
    std::uniform_int_distribution<int> px(0, maxval);
    for (auto& p : img.pixels) p = static_cast<std::uint8_t>(px(rng));
    return img;
}

}  // namespace

TEST_CASE("read_pgm: minimal P5 and P2 files") {
    const auto a = read_pgm("P5\n1 1\n255\n\x00"s);
    CHECK(a.width == 1);
    CHECK(a.height == 1);
    CHECK(a.pixels == std::vector<std::uint8_t>{0});

    const auto b = read_pgm("P2\n2 1\n255\n0 255\n");
    CHECK(b.width == 2);
    CHECK(b.pixels == std::vector<std::uint8_t>{0, 255});
}

TEST_CASE("read_pgm: header comments") {
    const auto img = read_pgm("P2\n# made by hand\n2 # width\n1\n# max\n9\n3 # px\n4\n");
    CHECK(img.maxval == 9);
    CHECK(img.pixels == std::vector<std::uint8_t>{3, 4});
    const auto bin = read_pgm("P5 #c\n1 2 255\n\x07\x0a"s);
    CHECK(bin.pixels == std::vector<std::uint8_t>{7, 10});
}

TEST_CASE("read_pgm: each failure is reported distinctly") {
    CHECK(kind_of("P6\n1 1\n255\n\x00"s) == PgmErrorKind::bad_magic);
    CHECK(kind_of("") == PgmErrorKind::bad_magic);
    CHECK(kind_of("P55\n1 1\n255\n") == PgmErrorKind::bad_magic);
    CHECK(kind_of("P5\n2 2\n255\n\x00\x01"s) == PgmErrorKind::truncated_payload);
    CHECK(kind_of("P2\n2 2\n255\n0 1 2") == PgmErrorKind::truncated_payload);
    CHECK(kind_of("P5\n1 1\n65535\n\x00\x00"s) == PgmErrorKind::maxval_too_large);
    CHECK(kind_of("P5\nx 1\n255\n") == PgmErrorKind::bad_header_token);
    CHECK(kind_of("P5\n1 1\n") == PgmErrorKind::bad_header_token);
    CHECK(kind_of("P2\n1 1\n10\n11\n") == PgmErrorKind::pixel_out_of_range);
}

TEST_CASE("write_pgm: exact bytes") {
    GrayImage img{1, 1, 255, {0}};
    CHECK(write_pgm(img) == "P5\n1 1\n255\n\x00"s);
    GrayImage sq{2, 2, 255, {0, 255, 255, 0}};
    CHECK(write_pgm(sq) == "P5\n2 2\n255\n\x00\xff\xff\x00"s);
}

TEST_CASE("read_pgm . write_pgm is the identity") {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 200; ++t) {
        const auto img = random_image(rng, t % 3 == 0 ? 1 : 255);
        CHECK(read_pgm(write_pgm(img)) == img);
    }
}

TEST_CASE("segment_binary") {
    FitConfig cfg;
    cfg.clusters = 2;

    SUBCASE("constant image is degenerate") {
        GrayImage img{4, 4, 255, std::vector<std::uint8_t>(16, 77)};
        CHECK_THROWS_WITH_AS(segment_binary(img, cfg), "degenerate: constant intensities", DegenerateInputError);
    }
    SUBCASE("needs two clusters") {
        GrayImage img{2, 1, 255, {0, 1}};
        cfg.clusters = 3;
        CHECK_THROWS_AS(segment_binary(img, cfg), InvalidArgument);
    }
    SUBCASE("two-block image reproduces the midpoint threshold for both algorithms") {
        GrayImage img{6, 4, 255, {}};
        for (std::size_t y = 0; y < 4; ++y)
            for (std::size_t x = 0; x < 6; ++x) img.pixels.push_back(x < 2 ? 200 : 40);
        for (auto alg : {Algorithm::fcm, Algorithm::vfc}) {
            const auto seg = segment_binary(img, cfg, {alg, false});
            for (std::size_t p = 0; p < img.pixels.size(); ++p) {
                CHECK(seg.mask.pixels[p] == (img.pixels[p] <= 127.5 ? 0 : 255));
            }
            CHECK(seg.centers[0] < seg.centers[1]);
            const auto raw = segment_binary(img, cfg, {alg, true});
            CHECK(raw.mask.maxval == 1);
            for (std::size_t p = 0; p < img.pixels.size(); ++p) CHECK(raw.mask.pixels[p] == seg.mask.pixels[p] / 255);
        }
    }
    SUBCASE("output is binary and equal intensities get equal labels") {
        std::mt19937_64 rng(3);
        for (int t = 0; t < 20; ++t) {
            auto img = random_image(rng);
            img.pixels[0] = 0;
            img.pixels[img.pixels.size() - 1] = 255;
            if (img.pixels.size() < 3) continue;
            const auto seg = segment_binary(img, cfg, {t % 2 ? Algorithm::fcm : Algorithm::vfc, false});
            std::array<int, 256> seen;
            seen.fill(-1);
            for (std::size_t p = 0; p < img.pixels.size(); ++p) {
                const auto out = seg.mask.pixels[p];
                CHECK((out == 0 || out == 255));
                auto& s = seen[img.pixels[p]];
                if (s < 0) s = out;
                CHECK(s == out);
            }
        }
    }
}
