#pragma once
// ============================================================================
// Exact arithmetic in the Gaussian extension Q(sqrt5)(i).
//
// A GaussGolden is  re + im*i  with both components in Q(sqrt5); i^2 = -1
// governs multiplication.  The one operation the rest of the codebase needs is
//
//    re_im_pow(x, y, m) = ( Re((x+iy)^m), Im((x+iy)^m) )
//
// because for x > 0 these components equal, exactly,
//
//    Re = sqrt((x^2+y^2)^m) * cos(m * arctan(y/x))
//    Im = sqrt((x^2+y^2)^m) * sin(m * arctan(y/x))
//
// so every "modulus times cosine/sine" closed form becomes a field value with
// no floating point anywhere.  Conservation Re^2 + Im^2 = (x^2+y^2)^m is the
// exactness witness.
// ============================================================================

#include <utility>

#include "fibsum/golden.hpp"

namespace fibsum {

struct GaussGolden {
    GoldenNum re;
    GoldenNum im;

    friend bool operator==(const GaussGolden& x, const GaussGolden& y) {
        return x.re == y.re && x.im == y.im;
    }
    friend bool operator!=(const GaussGolden& x, const GaussGolden& y) { return !(x == y); }
};

GaussGolden gg_mul(const GaussGolden& x, const GaussGolden& y);

// (Re((x+iy)^m), Im((x+iy)^m)) by binary exponentiation; requires m >= 0
// (throws std::domain_error otherwise — nothing here is ever powered
// negatively).
std::pair<GoldenNum, GoldenNum> re_im_pow(const GoldenNum& x, const GoldenNum& y, long m);

}  // namespace fibsum
