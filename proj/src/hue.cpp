#include "relad/hue.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>

#include "relad/errors.hpp"

namespace relad {

namespace {

void check_unit(double value, const char* channel) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw ChannelOutOfRange(std::string(channel) + " channel outside [0,1]: " +
                                std::to_string(value));
    }
}

std::size_t pixel_index(std::size_t x, std::size_t y, std::size_t width) {
    return y * width + x;
}

}  // namespace

RgbImage RgbImage::blank(std::size_t width, std::size_t height) {
    return RgbImage{width, height,
                    std::vector<std::array<double, 3>>(width * height, {0.0, 0.0, 0.0})};
}

std::array<double, 3>& RgbImage::at(std::size_t x, std::size_t y) {
    return pixels[pixel_index(x, y, width)];
}

const std::array<double, 3>& RgbImage::at(std::size_t x, std::size_t y) const {
    return pixels[pixel_index(x, y, width)];
}

HsvImage HsvImage::blank(std::size_t width, std::size_t height) {
    return HsvImage{width, height,
                    std::vector<std::array<double, 3>>(width * height, {0.0, 0.0, 0.0})};
}

std::array<double, 3>& HsvImage::at(std::size_t x, std::size_t y) {
    return pixels[pixel_index(x, y, width)];
}

const std::array<double, 3>& HsvImage::at(std::size_t x, std::size_t y) const {
    return pixels[pixel_index(x, y, width)];
}

double wrap_unit(double x) {
    double r = std::fmod(x, 1.0);
    if (r < 0.0) r += 1.0;
    if (r >= 1.0) r -= 1.0;  // fmod of values just below a multiple can round up
    return r;
}

double hue_distance(double a, double b) {
    const double d = std::fabs(wrap_unit(a) - wrap_unit(b));
    return std::min(d, 1.0 - d);
}

HsvImage rgb_to_hsv(const RgbImage& img) {
    HsvImage out;
    out.width = img.width;
    out.height = img.height;
    out.pixels.reserve(img.pixels.size());
    for (const auto& [r, g, b] : img.pixels) {
        check_unit(r, "red");
        check_unit(g, "green");
        check_unit(b, "blue");
        const double v = std::max({r, g, b});
        const double chroma = v - std::min({r, g, b});
        const double s = v == 0.0 ? 0.0 : chroma / v;
        double h = 0.0;
        if (chroma > 0.0) {
            if (v == r) {
                h = (g - b) / chroma;
            } else if (v == g) {
                h = (b - r) / chroma + 2.0;
            } else {
                h = (r - g) / chroma + 4.0;
            }
            h = wrap_unit(h / 6.0);
        }
        out.pixels.push_back({h, s, v});
    }
    return out;
}

RgbImage hsv_to_rgb(const HsvImage& img) {
    RgbImage out;
    out.width = img.width;
    out.height = img.height;
    out.pixels.reserve(img.pixels.size());
    for (const auto& [h, s, v] : img.pixels) {
        check_unit(s, "saturation");
        check_unit(v, "value");
        const double chroma = v * s;
        const double sector = wrap_unit(h) * 6.0;
        const double x = chroma * (1.0 - std::fabs(std::fmod(sector, 2.0) - 1.0));
        double r = 0.0;
        double g = 0.0;
        double b = 0.0;
        switch (static_cast<int>(sector)) {
            case 0: r = chroma; g = x; break;
            case 1: r = x; g = chroma; break;
            case 2: g = chroma; b = x; break;
            case 3: g = x; b = chroma; break;
            case 4: r = x; b = chroma; break;
            default: r = chroma; b = x; break;
        }
        const double m = v - chroma;
        out.pixels.push_back({r + m, g + m, b + m});
    }
    return out;
}

HsvImage hue_shift(const HsvImage& img, double delta) {
    HsvImage out = img;
    for (auto& pixel : out.pixels) pixel[0] = wrap_unit(pixel[0] + delta);
    return out;
}

HsvImage hue_normalize(const HsvImage& img) {
    if (img.pixels.empty()) return img;
    const auto& corner = img.pixels.front();
    if (corner[1] == 0.0) return img;  // achromatic corner: orbit shift undefined, keep as is
    const double delta = wrap_unit(1.0 - corner[0]);
    return hue_shift(img, delta);
}

RgbImage read_rgb_image(std::istream& in) {
    std::size_t width = 0;
    std::size_t height = 0;
    if (!(in >> width >> height)) {
        throw ParseError("image header must be 'width height'");
    }
    RgbImage img = RgbImage::blank(width, height);
    for (auto& pixel : img.pixels) {
        if (!(in >> pixel[0] >> pixel[1] >> pixel[2])) {
            throw ParseError("image body ended early");
        }
    }
    return img;
}

void write_rgb_image(std::ostream& out, const RgbImage& img) {
    out << img.width << ' ' << img.height << '\n';
    out << std::setprecision(17);
    for (std::size_t y = 0; y < img.height; ++y) {
        for (std::size_t x = 0; x < img.width; ++x) {
            const auto& pixel = img.at(x, y);
            if (x > 0) out << ' ';
            out << pixel[0] << ' ' << pixel[1] << ' ' << pixel[2];
        }
        out << '\n';
    }
}

}  // namespace relad
