#ifndef RELAD_FEATURE_VECTOR_HPP
#define RELAD_FEATURE_VECTOR_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace relad {

/**
 * Fixed-length vector of {0,1} feature indicators.
 *
 * Lexicographic order on the bit string is the global total order used
 * everywhere a deterministic pick between inputs is needed.
 */
class FeatureVector {
public:
    FeatureVector() = default;
    explicit FeatureVector(std::size_t dimension) : bits_(dimension, 0) {}

    /// Parses a string of '0'/'1' characters, e.g. "0101".
    static FeatureVector from_string(std::string_view text);

    /// Builds a vector of the given dimension with the listed feature ids set.
    static FeatureVector from_active(std::size_t dimension,
                                     const std::vector<std::size_t>& active);

    std::size_t dimension() const { return bits_.size(); }
    bool get(std::size_t i) const { return bits_[i] != 0; }
    void set(std::size_t i, bool value) { bits_[i] = value ? 1 : 0; }

    std::size_t count_ones() const;
    std::vector<std::size_t> active_features() const;

    /// Real-relaxed view used by differentiable models.
    std::vector<double> to_reals() const;

    std::string to_string() const;

    friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
    friend auto operator<=>(const FeatureVector&, const FeatureVector&) = default;

private:
    std::vector<std::uint8_t> bits_;
};

struct FeatureVectorHash {
    std::size_t operator()(const FeatureVector& v) const noexcept;
};

}  // namespace relad

#endif  // RELAD_FEATURE_VECTOR_HPP
