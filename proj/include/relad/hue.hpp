#ifndef RELAD_HUE_HPP
#define RELAD_HUE_HPP

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

namespace relad {

/// Image with per-pixel (r, g, b), each channel in [0, 1]; row-major pixels.
struct RgbImage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::array<double, 3>> pixels;

    static RgbImage blank(std::size_t width, std::size_t height);
    std::array<double, 3>& at(std::size_t x, std::size_t y);
    const std::array<double, 3>& at(std::size_t x, std::size_t y) const;
};

/// Image with per-pixel (h, s, v): h in [0, 1) circular, s and v in [0, 1].
struct HsvImage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::array<double, 3>> pixels;

    static HsvImage blank(std::size_t width, std::size_t height);
    std::array<double, 3>& at(std::size_t x, std::size_t y);
    const std::array<double, 3>& at(std::size_t x, std::size_t y) const;
};

/// x mapped into [0, 1) by wrapping.
double wrap_unit(double x);

/// Circular distance between two hues on the unit circle.
double hue_distance(double a, double b);

/// Standard conversion; v is the channel maximum, an achromatic pixel
/// (s = 0) takes hue 0 by convention.
HsvImage rgb_to_hsv(const RgbImage& img);

/// Inverse conversion, exact up to the achromatic hue convention.
RgbImage hsv_to_rgb(const HsvImage& img);

/// Adds delta to every hue modulo 1; saturation and value are untouched.
HsvImage hue_shift(const HsvImage& img, double delta);

/**
 * Canonical form on the hue-shift orbit: shifts so the top-left pixel's hue
 * lands on 0.  An achromatic top-left pixel leaves the image unshifted.
 */
HsvImage hue_normalize(const HsvImage& img);

/// Plain text format: "width height" header, then one row of pixels per
/// line, three channel values per pixel.
RgbImage read_rgb_image(std::istream& in);
void write_rgb_image(std::ostream& out, const RgbImage& img);

}  // namespace relad

#endif  // RELAD_HUE_HPP
