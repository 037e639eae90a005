#include "seernf/rating_scale.hpp"

#include "seernf/error.hpp"

#include <cctype>
#include <cmath>

namespace seernf {

namespace {

constexpr std::array<std::string_view, kRatingLevels> kLabels = {
    "VLo-", "VLo", "VLo+", "Low-", "Low", "Low+", "Nom-", "Nom", "Nom+",
    "Hi-",  "Hi",  "Hi+",  "VHi-", "VHi", "VHi+", "EHi-", "EHi", "EHi+",
};

// Lowercases ASCII and folds U+2212 (e2 88 92) to '-'.
std::string normalize_label(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        const unsigned char c = static_cast<unsigned char>(text[i]);
        if (c == 0xe2 && i + 2 < text.size() &&
            static_cast<unsigned char>(text[i + 1]) == 0x88 &&
            static_cast<unsigned char>(text[i + 2]) == 0x92) {
            out.push_back('-');
            i += 2;
            continue;
        }
        out.push_back(static_cast<char>(std::tolower(c)));
    }
    return out;
}

} // namespace

const std::array<std::string_view, kRatingLevels>& rating_labels() { return kLabels; }

RatingPosition parse_rating(std::string_view text) {
    const std::string norm = normalize_label(text);
    for (int r = 1; r <= kRatingLevels; ++r) {
        if (norm == normalize_label(kLabels[r - 1]))
            return RatingPosition{r, static_cast<double>(r)};
    }
    throw ParseError("unknown rating label '" + std::string(text) + "'");
}

RatingPosition rating_from_position(double x) {
    if (!(x >= kPositionMin && x <= kPositionMax))
        throw DomainError("rating position " + std::to_string(x) +
                          " outside [0, 19]");
    // Nearest center among 1..18; midpoints round up.
    int r = static_cast<int>(std::floor(x + 0.5));
    if (r < 1) r = 1;
    if (r > kRatingLevels) r = kRatingLevels;
    return RatingPosition{r, x};
}

} // namespace seernf
