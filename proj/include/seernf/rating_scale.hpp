#pragma once

#include <array>
#include <string>
#include <string_view>

namespace seernf {

// The 18-level ordinal rating scale: six main levels (VLo, Low, Nom, Hi,
// VHi, EHi), each split into -, plain, + sub-ratings. Level centers sit at
// the integers 1..18 inside the continuous domain [0, 19].
inline constexpr int kRatingLevels = 18;
inline constexpr double kPositionMin = 0.0;
inline constexpr double kPositionMax = 19.0;

// Canonical spellings, in scale order. ASCII '-' and '+' suffixes.
const std::array<std::string_view, kRatingLevels>& rating_labels();

struct RatingPosition {
    int rank = 8;     // 1-based rank of the nearest label
    double x = 8.0;   // continuous position in [0, 19]

    std::string_view label() const { return rating_labels()[rank - 1]; }

    friend bool operator==(const RatingPosition&, const RatingPosition&) = default;
};

// Parses one of the 18 canonical labels. Case-insensitive; a Unicode minus
// (U+2212) is accepted in place of ASCII '-'. Throws ParseError otherwise.
RatingPosition parse_rating(std::string_view text);

// Maps a continuous position in [0, 19] to the rating whose center is
// nearest; exact midpoints round toward the higher rank. Throws DomainError
// outside [0, 19].
RatingPosition rating_from_position(double x);

} // namespace seernf
