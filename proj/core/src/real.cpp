#include "cmunits/real.hpp"

#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace cmunits {

Real Real::from_string(const std::string& dec, mpfr_prec_t prec) {
    Real r(prec);
    if (mpfr_set_str(r.v_, dec.c_str(), 10, MPFR_RNDN) != 0)
        throw std::invalid_argument("Real::from_string: cannot parse '" + dec + "'");
    return r;
}

std::string Real::str(size_t digits) const {
    if (digits == 0) digits = static_cast<size_t>(static_cast<double>(prec()) * 0.30103) + 2;
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_sgn(v_) < 0 ? "-inf" : "inf";
    if (mpfr_zero_p(v_)) return "0";
    mpfr_exp_t e;
    char* s = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
    std::string mant(s);
    mpfr_free_str(s);
    std::string sign;
    if (mant[0] == '-') {
        sign = "-";
        mant = mant.substr(1);
    }
    // strip trailing zeros but keep one digit after the point
    size_t last = mant.find_last_not_of('0');
    if (last != std::string::npos && last + 1 < mant.size()) mant.erase(last + 1);
    std::string out = sign + mant.substr(0, 1);
    if (mant.size() > 1) out += "." + mant.substr(1);
    out += "e" + std::to_string(static_cast<long>(e) - 1);
    return out;
}

Complex Complex::pow_si(long e) const {
    mpfr_prec_t p = prec();
    if (e == 0) return Complex::one(p);
    Complex base = e < 0 ? inverse() : *this;
    unsigned long n = e < 0 ? static_cast<unsigned long>(-(e + 1)) + 1UL : static_cast<unsigned long>(e);
    Complex acc = Complex::one(p);
    while (n) {
        if (n & 1UL) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

std::string Complex::str(size_t digits) const {
    return re.str(digits) + (im.sgn() < 0 ? " - " : " + ") + (im.sgn() < 0 ? -im : im).str(digits) + "*I";
}

}  // namespace cmunits
