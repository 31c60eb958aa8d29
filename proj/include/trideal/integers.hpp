#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace trideal {

// All exact arithmetic in this library runs on arbitrary-precision integers.
// Group element indices stay in 64-bit land; lattice/ring coefficients do not.
using Int = boost::multiprecision::cpp_int;

// Thrown when a configured resource bound (group order, tuple count) is hit.
class bound_exceeded : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Extended gcd: g = gcd(a, b) >= 0 and g == s*a + t*b.
inline Int ext_gcd(const Int& a, const Int& b, Int& s, Int& t) {
    Int old_r = a, r = b;
    Int old_s = 1, cur_s = 0;
    Int old_t = 0, cur_t = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * cur_s;
        old_s = cur_s;
        cur_s = tmp;
        tmp = old_t - q * cur_t;
        old_t = cur_t;
        cur_t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    s = old_s;
    t = old_t;
    return old_r;
}

// Floor division (cpp_int's operator/ truncates toward zero).
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

inline std::uint64_t ipow_u64(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && r > UINT64_MAX / base)
            throw std::overflow_error("ipow_u64: overflow");
        r *= base;
    }
    return r;
}

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace trideal
