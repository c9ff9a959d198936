#include "tamarilab/bigfloat.hpp"

#include <cstdio>
#include <vector>

namespace tamarilab {

std::string BigFloat::str(int digits) const {
    if (is_nan()) return "nan";
    char fmt[32];
    std::snprintf(fmt, sizeof fmt, "%%.%dRe", digits);
    std::vector<char> buf(static_cast<size_t>(digits) + 64);
    mpfr_snprintf(buf.data(), buf.size(), fmt, v_);
    return std::string(buf.data());
}

bool BigFloat::agree_digits(const BigFloat& a, const BigFloat& b, int digits) {
    if (a.is_nan() || b.is_nan()) return false;
    if (a.is_zero() && b.is_zero()) return true;
    BigFloat diff = (a - b).abs();
    BigFloat mag = a.abs();
    if (b.abs() > mag) mag = b.abs();
    BigFloat tol = mag * BigFloat(10.0).pow_si(-digits);
    return !(diff > tol);
}

}  // namespace tamarilab
