#include "relad/feature_vector.hpp"

#include <algorithm>

#include "relad/errors.hpp"

namespace relad {

FeatureVector FeatureVector::from_string(std::string_view text) {
    FeatureVector v(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '1') {
            v.bits_[i] = 1;
        } else if (text[i] != '0') {
            throw ParseError("feature vector string must contain only '0'/'1': " +
                             std::string(text));
        }
    }
    return v;
}

FeatureVector FeatureVector::from_active(std::size_t dimension,
                                         const std::vector<std::size_t>& active) {
    FeatureVector v(dimension);
    for (std::size_t id : active) {
        if (id >= dimension) {
            throw DimensionMismatch("active feature id " + std::to_string(id) +
                                    " out of range for dimension " +
                                    std::to_string(dimension));
        }
        v.bits_[id] = 1;
    }
    return v;
}

std::size_t FeatureVector::count_ones() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

std::vector<std::size_t> FeatureVector::active_features() const {
    std::vector<std::size_t> ids;
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (bits_[i] != 0) ids.push_back(i);
    }
    return ids;
}

std::vector<double> FeatureVector::to_reals() const {
    std::vector<double> xs(bits_.size());
    for (std::size_t i = 0; i < bits_.size(); ++i) xs[i] = bits_[i] ? 1.0 : 0.0;
    return xs;
}

std::string FeatureVector::to_string() const {
    std::string s(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (bits_[i] != 0) s[i] = '1';
    }
    return s;
}

std::size_t FeatureVectorHash::operator()(const FeatureVector& v) const noexcept {
    // FNV-1a over the bit string.
    std::size_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < v.dimension(); ++i) {
        h ^= static_cast<std::size_t>(v.get(i) ? 1 : 0) + 0x9e;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace relad
