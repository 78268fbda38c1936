#pragma once

#include "oslash/error.hpp"
#include "oslash/rational.hpp"

#include <cstdint>
#include <limits>
#include <vector>

namespace oslash {

// Rationals written as integer multiples of one common unit.
struct ScaledVector {
    std::vector<std::int64_t> numerators;
    Rational unit;
};

inline ScaledVector scale_to_integers(const std::vector<Rational>& values) {
    mpz_class den = 1;
    for (const auto& v : values) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
    ScaledVector out;
    out.unit = Rational(mpz_class(1), den);
    out.numerators.reserve(values.size());
    for (const auto& v : values) {
        mpz_class n = v.get_num() * (den / v.get_den());
        if (!n.fits_slong_p()) fail_resource("values too fine-grained for 64-bit scaled arithmetic");
        out.numerators.push_back(n.get_si());
    }
    return out;
}

// Sum of magnitudes must stay well inside int64 so that subset sums cannot overflow.
inline std::int64_t checked_sum(const std::vector<std::int64_t>& xs) {
    __int128 total = 0, magnitude = 0;
    for (auto x : xs) {
        total += x;
        magnitude += x < 0 ? -static_cast<__int128>(x) : x;
    }
    if (magnitude > (static_cast<__int128>(1) << 61)) fail_resource("scaled sums overflow 64-bit arithmetic");
    return static_cast<std::int64_t>(total);
}

}  // namespace oslash
