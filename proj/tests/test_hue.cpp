#include <doctest.h>

#include <random>
#include <sstream>

#include "relad/errors.hpp"
#include "relad/hue.hpp"

using namespace relad;

namespace {

constexpr double kHueTol = 1e-9;

RgbImage random_image(std::size_t width, std::size_t height, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    RgbImage img = RgbImage::blank(width, height);
    for (auto& [r, g, b] : img.pixels) {
        r = unit(rng);
        g = unit(rng);
        b = unit(rng);
    }
    return img;
}

bool hsv_close(const HsvImage& a, const HsvImage& b) {
    if (a.pixels.size() != b.pixels.size()) return false;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
        if (hue_distance(a.pixels[i][0], b.pixels[i][0]) > kHueTol) return false;
        if (a.pixels[i][1] != b.pixels[i][1]) return false;
        if (a.pixels[i][2] != b.pixels[i][2]) return false;
    }
    return true;
}

}  // namespace

TEST_SUITE_BEGIN("hue");

TEST_CASE("primary colors and grays convert as expected") {
    RgbImage img = RgbImage::blank(2, 1);
    img.at(0, 0) = {1.0, 0.0, 0.0};
    img.at(1, 0) = {0.5, 0.5, 0.5};
    const HsvImage hsv = rgb_to_hsv(img);
    CHECK(hsv.at(0, 0)[0] == doctest::Approx(0.0));
    CHECK(hsv.at(0, 0)[1] == doctest::Approx(1.0));
    CHECK(hsv.at(0, 0)[2] == doctest::Approx(1.0));
    CHECK(hsv.at(1, 0)[0] == 0.0);  // achromatic hue convention
    CHECK(hsv.at(1, 0)[1] == 0.0);
    CHECK(hsv.at(1, 0)[2] == doctest::Approx(0.5));

    HsvImage red = HsvImage::blank(1, 1);
    red.at(0, 0) = {0.0, 1.0, 1.0};
    const RgbImage back = hsv_to_rgb(red);
    CHECK(back.at(0, 0)[0] == doctest::Approx(1.0));
    CHECK(back.at(0, 0)[1] == doctest::Approx(0.0));
    CHECK(back.at(0, 0)[2] == doctest::Approx(0.0));

    HsvImage colorless = HsvImage::blank(1, 1);
    colorless.at(0, 0) = {0.73, 0.0, 0.4};
    const RgbImage gray = hsv_to_rgb(colorless);
    CHECK(gray.at(0, 0)[0] == doctest::Approx(0.4));
    CHECK(gray.at(0, 0)[1] == doctest::Approx(0.4));
    CHECK(gray.at(0, 0)[2] == doctest::Approx(0.4));
}

TEST_CASE("rgb/hsv conversions invert each other on random images") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 40; ++trial) {
        const RgbImage img = random_image(5, 4, rng);
        const RgbImage round = hsv_to_rgb(rgb_to_hsv(img));
        for (std::size_t i = 0; i < img.pixels.size(); ++i) {
            for (int c = 0; c < 3; ++c) {
                CHECK(round.pixels[i][c] == doctest::Approx(img.pixels[i][c]).epsilon(kHueTol));
            }
        }
    }

    // hsv -> rgb -> hsv keeps (s, v) exactly and hue within tolerance when
    // the pixel is chromatic.
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        HsvImage hsv = HsvImage::blank(1, 1);
        hsv.at(0, 0) = {unit(rng), 0.2 + 0.8 * unit(rng), 0.2 + 0.8 * unit(rng)};
        const HsvImage round = rgb_to_hsv(hsv_to_rgb(hsv));
        CHECK(hue_distance(round.at(0, 0)[0], hsv.at(0, 0)[0]) <= 1e-6);
        CHECK(round.at(0, 0)[1] == doctest::Approx(hsv.at(0, 0)[1]).epsilon(kHueTol));
        CHECK(round.at(0, 0)[2] == doctest::Approx(hsv.at(0, 0)[2]).epsilon(kHueTol));
    }
}

TEST_CASE("channel validation rejects out-of-range inputs") {
    RgbImage img = RgbImage::blank(1, 1);
    img.at(0, 0) = {1.5, 0.0, 0.0};
    CHECK_THROWS_AS(rgb_to_hsv(img), ChannelOutOfRange);
}

TEST_CASE("hue shifting is the circle group acting on the hue channel") {
    std::mt19937_64 rng(7);
    const HsvImage img = rgb_to_hsv(random_image(4, 3, rng));

    CHECK(hsv_close(hue_shift(img, 0.0), img));

    std::uniform_real_distribution<double> delta_dist(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double d1 = delta_dist(rng);
        const double d2 = delta_dist(rng);
        CHECK(hsv_close(hue_shift(hue_shift(img, d1), d2), hue_shift(img, d1 + d2)));
        CHECK(hsv_close(hue_shift(hue_shift(img, d1), -d1), img));
        // Saturation and value ride along bit-identically.
        const HsvImage shifted = hue_shift(img, d1);
        for (std::size_t i = 0; i < img.pixels.size(); ++i) {
            CHECK(shifted.pixels[i][1] == img.pixels[i][1]);
            CHECK(shifted.pixels[i][2] == img.pixels[i][2]);
        }
    }
}

TEST_CASE("shifting pure red by a third of the wheel gives pure green") {
    RgbImage red = RgbImage::blank(1, 1);
    red.at(0, 0) = {1.0, 0.0, 0.0};
    const RgbImage green = hsv_to_rgb(hue_shift(rgb_to_hsv(red), 1.0 / 3.0));
    CHECK(green.at(0, 0)[0] == doctest::Approx(0.0));
    CHECK(green.at(0, 0)[1] == doctest::Approx(1.0));
    CHECK(green.at(0, 0)[2] == doctest::Approx(0.0));
}

TEST_CASE("hue normalization fixes images whose corner hue is already zero") {
    HsvImage img = HsvImage::blank(2, 1);
    img.at(0, 0) = {0.0, 0.8, 0.9};
    img.at(1, 0) = {0.4, 0.5, 0.6};
    CHECK(hue_normalize(img).pixels == img.pixels);
}

TEST_CASE("hue normalization is constant on every shift orbit") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        const HsvImage img = rgb_to_hsv(random_image(3, 3, rng));
        const HsvImage canon = hue_normalize(img);
        CHECK(hue_distance(canon.pixels.front()[0], 0.0) <= kHueTol);
        for (int k = 0; k < 20; ++k) {
            const double delta = static_cast<double>(k) / 20.0;
            CHECK(hsv_close(hue_normalize(hue_shift(img, delta)), canon));
        }
        // Idempotent within hue tolerance.
        CHECK(hsv_close(hue_normalize(canon), canon));
    }
}

TEST_CASE("an achromatic corner disables the orbit shift") {
    HsvImage img = HsvImage::blank(2, 1);
    img.at(0, 0) = {0.0, 0.0, 0.3};
    img.at(1, 0) = {0.6, 0.9, 0.8};
    CHECK(hue_normalize(img).pixels == img.pixels);
}

TEST_CASE("image text format round-trips") {
    std::mt19937_64 rng(5);
    const RgbImage img = random_image(3, 2, rng);
    std::stringstream stream;
    write_rgb_image(stream, img);
    const RgbImage back = read_rgb_image(stream);
    CHECK(back.width == img.width);
    CHECK(back.height == img.height);
    CHECK(back.pixels == img.pixels);
}

TEST_SUITE_END();
