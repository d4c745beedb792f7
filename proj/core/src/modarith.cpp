#include "cmunits/modarith.hpp"

#include <algorithm>
#include <numeric>

namespace cmunits::modarith {

namespace {

uint64_t pollard_rho(uint64_t n) {
    if ((n & 1) == 0) return 2;
    for (uint64_t c = 1;; ++c) {
        uint64_t x = 2, y = 2, d = 1;
        while (d == 1) {
            x = (mulmod(x, x, n) + c) % n;
            y = (mulmod(y, y, n) + c) % n;
            y = (mulmod(y, y, n) + c) % n;
            d = std::gcd(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

void factor_into(uint64_t n, std::vector<uint64_t>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    for (uint64_t q = 2; q * q <= n && q < 100000; q == 2 ? q = 3 : q += 2) {
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) n /= q;
            factor_into(n, out);
            return;
        }
    }
    uint64_t d = pollard_rho(n);
    factor_into(d, out);
    uint64_t m = n;
    while (m % d == 0) m /= d;
    factor_into(m, out);
}

}  // namespace

std::vector<uint64_t> prime_factors(uint64_t n) {
    std::vector<uint64_t> out;
    factor_into(n, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

uint64_t mult_order(uint64_t a, uint64_t p) {
    uint64_t ord = p - 1;
    for (uint64_t q : prime_factors(p - 1)) {
        while (ord % q == 0 && powmod(a, ord / q, p) == 1) ord /= q;
    }
    return ord;
}

}  // namespace cmunits::modarith
