#include "covergap/lcm_profile.hpp"

#include <cmath>

#include "covergap/errors.hpp"

namespace covergap {

namespace {

std::uint64_t isqrt_u64(std::uint64_t x) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
    while (r > 0 && r * r > x) --r;
    while ((r + 1) * (r + 1) <= x) ++r;
    return r;
}

} // namespace

std::uint32_t lemma2_exponent(std::uint64_t p, std::uint64_t d) {
    if (p < 2) throw InvalidArgument("lemma2_exponent: p must be prime");
    std::uint32_t a = 0;
    // Grow p^(a+1) * (p+1) while it stays within d; overflow cannot occur
    // before exceeding d for any d representable here.
    unsigned __int128 pw = p;
    while (pw * (p + 1) <= d) {
        ++a;
        pw *= p;
    }
    return a;
}

std::uint32_t lemma1_exponent(std::uint64_t p, std::uint64_t m, int k) {
    if (p < 2) throw InvalidArgument("lemma1_exponent: p must be prime");
    if (m == 0 || k < 2) throw InvalidArgument("lemma1_exponent: bad window");
    std::uint64_t hi = static_cast<std::uint64_t>(k) * m;
    std::uint32_t a = 0;
    unsigned __int128 pw = p;
    while (pw <= hi) {
        std::uint64_t q = static_cast<std::uint64_t>(pw);
        std::uint64_t count = hi / q - (m - 1) / q;
        if (count < p + 1) break;
        ++a;
        pw *= p;
    }
    return a;
}

FactoredInteger compute_L(std::uint64_t m, int k, const FactorTable& table) {
    if (m < 3) throw InvalidArgument("compute_L: m must be at least 3");
    std::uint64_t hi = static_cast<std::uint64_t>(k) * m;
    if (hi > table.limit()) throw InvalidArgument("compute_L: window exceeds table limit");

    FactoredInteger L;
    // Only primes below sqrt((k-1)m + 1) can survive the count gate; see
    // lcm_profile.hpp.
    std::uint64_t p_cap = isqrt_u64((static_cast<std::uint64_t>(k) - 1) * m + 1);
    for (std::uint64_t p : table.primes_up_to(std::min(p_cap, table.limit()))) {
        if (p * p >= (static_cast<std::uint64_t>(k) - 1) * m + 1) break;
        std::uint64_t count = hi / p - (m - 1) / p;
        if (count < p + 1) continue; // too few multiples: p cannot appear at all
        std::uint32_t e = lemma2_exponent(p, hi);
        if (e > 0) L.factors.emplace(p, e);
    }
    return L;
}

Rational divisor_reciprocal_sum(const FactoredInteger& F,
                                std::uint64_t lo,
                                std::uint64_t hi) {
    auto ds = divisors_in_interval(F, lo, hi);
    return reciprocal_sum(ds);
}

} // namespace covergap
