#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace lieforge {

// Exact rational scalar used everywhere. No floating point in the core.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

inline std::string to_string(const Rat& r) { return r.get_str(); }

inline Rat rat_from_string(const std::string& s) {
    Rat r(s);
    r.canonicalize();
    return r;
}

inline Rat factorial(unsigned n) {
    mpz_class z;
    mpz_fac_ui(z.get_mpz_t(), n);
    return Rat(z);
}

inline Rat inv_factorial(unsigned n) { return 1 / factorial(n); }

struct RatHash {
    size_t operator()(const Rat& r) const {
        const std::string s = r.get_str();
        return std::hash<std::string>{}(s);
    }
};

}  // namespace lieforge
