#include "fibsum/gauss.hpp"

#include <stdexcept>

namespace fibsum {

GaussGolden gg_mul(const GaussGolden& x, const GaussGolden& y) {
    // (a + bi)(c + di) = (ac - bd) + (ad + bc)i
    return {gf_sub(gf_mul(x.re, y.re), gf_mul(x.im, y.im)),
            gf_add(gf_mul(x.re, y.im), gf_mul(x.im, y.re))};
}

std::pair<GoldenNum, GoldenNum> re_im_pow(const GoldenNum& x, const GoldenNum& y, long m) {
    if (m < 0) throw std::domain_error("re_im_pow: negative exponent");
    GaussGolden base{x, y};
    GaussGolden acc{GoldenNum(1), GoldenNum(0)};
    unsigned long e = static_cast<unsigned long>(m);
    while (e != 0) {
        if (e & 1UL) acc = gg_mul(acc, base);
        e >>= 1UL;
        if (e != 0) base = gg_mul(base, base);
    }
    return {acc.re, acc.im};
}

}  // namespace fibsum
