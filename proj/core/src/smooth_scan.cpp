#include "covergap/smooth_scan.hpp"

#include <cmath>

#include "covergap/errors.hpp"

namespace covergap {

namespace {

constexpr unsigned __int128 kOne = static_cast<unsigned __int128>(1) << 96;

std::uint64_t isqrt_u64(std::uint64_t x) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
    while (r > 0 && r * r > x) --r;
    while ((r + 1) * (r + 1) <= x) ++r;
    return r;
}

std::uint64_t strict_bound(std::uint64_t m, int k) {
    return (static_cast<std::uint64_t>(k) - 1) * m + 1;
}

// Padded cutoffs used only by the descent (see the header): anchor sums
// admit primes one past the square root, walk terms two past.  Supersets
// of the strict rule, so certified upper bounds stay valid.
std::uint64_t anchor_prime_cutoff(std::uint64_t anchor, int k) {
    return isqrt_u64(strict_bound(anchor, k)) + 1;
}

std::uint64_t walk_prime_cutoff(std::uint64_t j, int k) {
    return isqrt_u64(strict_bound(j, k)) + 2;
}

void check_window(const FactorTable& table, std::uint64_t m, int k) {
    if (m == 0) throw InvalidArgument("m must be positive");
    if (k < 2) throw InvalidArgument("interval multiplier k must be at least 2");
    if (static_cast<std::uint64_t>(k) * m > table.limit())
        throw InvalidArgument("window [m, km] exceeds the factor table limit");
}

// Upper-bound accumulator for the padded anchor sum.
UpperFixed padded_anchor_upper(const FactorTable& table, std::uint64_t anchor, int k) {
    std::uint64_t cutoff = anchor_prime_cutoff(anchor, k);
    UpperFixed acc;
    for (std::uint64_t n = anchor; n <= static_cast<std::uint64_t>(k) * anchor; ++n)
        if (table.largest_prime_factor(n) <= cutoff) acc.add_reciprocal(n);
    return acc;
}

// Common denominator for exact resummation of descent terms: every term is
// cutoff-smooth and at most k*max_m, so it divides
//   D = prod over primes p <= isqrt((k-1)*max_m+1)+2 of p^floor(log_p(k*max_m)).
mpz_class descent_denominator(const FactorTable& table, const ScanConfig& cfg) {
    std::uint64_t hi = cfg.table_limit();
    std::uint64_t p_cap = isqrt_u64(strict_bound(cfg.max_m, cfg.k)) + 2;
    mpz_class D = 1;
    for (std::uint64_t p : table.primes_up_to(p_cap)) {
        unsigned long e = 0;
        unsigned __int128 pw = p;
        while (pw <= hi) {
            ++e;
            pw *= p;
        }
        mpz_class ppow;
        mpz_ui_pow_ui(ppow.get_mpz_t(), static_cast<unsigned long>(p), e);
        D *= ppow;
    }
    return D;
}

struct ExactBoundResult {
    Rational value;
    std::uint64_t terms = 0;
};

ExactBoundResult exact_chain_bound_impl(const FactorTable& table, const ScanConfig& cfg,
                                        std::uint64_t anchor, std::uint64_t low) {
    mpz_class D = descent_denominator(table, cfg);
    mpz_class acc = 0;
    mpz_class term;
    std::uint64_t terms = 0;

    std::uint64_t cutoff = anchor_prime_cutoff(anchor, cfg.k);
    for (std::uint64_t n = anchor; n <= static_cast<std::uint64_t>(cfg.k) * anchor; ++n) {
        if (table.largest_prime_factor(n) <= cutoff) {
            mpz_divexact_ui(term.get_mpz_t(), D.get_mpz_t(), static_cast<unsigned long>(n));
            acc += term;
            ++terms;
        }
    }
    for (std::uint64_t j = anchor - 1; j + 1 > low; --j) {
        if (table.largest_prime_factor(j) <= walk_prime_cutoff(j, cfg.k)) {
            mpz_divexact_ui(term.get_mpz_t(), D.get_mpz_t(), static_cast<unsigned long>(j));
            acc += term;
            ++terms;
        }
    }
    return {rat(acc, D), terms};
}

// Smallest grid value >= x, as a raw 2^-96 fixed-point word.
unsigned __int128 grid_ceil(const Rational& x) {
    mpz_class scaled = x.get_num();
    scaled <<= 96;
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled.get_mpz_t(), x.get_den().get_mpz_t());
    if (r != 0) q += 1;
    if (mpz_sizeinbase(q.get_mpz_t(), 2) > 126)
        throw std::overflow_error("grid_ceil: value out of accumulator range");
    unsigned __int128 out = 0;
    for (std::size_t limb = 0; limb * 64 < 128; ++limb) {
        mpz_class part = q >> (64 * limb);
        out |= static_cast<unsigned __int128>(part.get_ui() & 0xffffffffffffffffULL) << (64 * limb);
        if (part == 0) break;
    }
    return out;
}

} // namespace

bool is_smooth_term(const FactorTable& table, std::uint64_t n, std::uint64_t m, int k) {
    check_window(table, m, k);
    if (n == 0 || n > table.limit()) throw InvalidArgument("is_smooth_term: n out of range");
    if (n < m || n > static_cast<std::uint64_t>(k) * m) return false;
    std::uint64_t p = table.largest_prime_factor(n);
    return p * p < strict_bound(m, k);
}

Rational t_exact(const FactorTable& table, std::uint64_t m, const ScanConfig& cfg) {
    check_window(table, m, cfg.k);
    std::uint64_t bound = strict_bound(m, cfg.k);
    Rational total = 0;
    for (std::uint64_t n = m; n <= static_cast<std::uint64_t>(cfg.k) * m; ++n) {
        std::uint64_t p = table.largest_prime_factor(n);
        if (p * p < bound) total += Rational(1, static_cast<unsigned long>(n));
    }
    return total;
}

UpperFixed t_upper(const FactorTable& table, std::uint64_t m, const ScanConfig& cfg) {
    check_window(table, m, cfg.k);
    std::uint64_t bound = strict_bound(m, cfg.k);
    UpperFixed acc;
    for (std::uint64_t n = m; n <= static_cast<std::uint64_t>(cfg.k) * m; ++n) {
        std::uint64_t p = table.largest_prime_factor(n);
        if (p * p < bound) acc.add_reciprocal(n);
    }
    return acc;
}

Rational a_term(const FactorTable& table, std::uint64_t j, int k) {
    if (j == 0 || j > table.limit()) throw InvalidArgument("a_term: j out of range");
    std::uint64_t p = table.largest_prime_factor(j);
    if (p * p < strict_bound(j, k)) return Rational(1, static_cast<unsigned long>(j));
    return Rational(0);
}

Rational exact_chain_bound(const FactorTable& table, const ScanConfig& cfg,
                           std::uint64_t anchor, std::uint64_t low) {
    if (low == 0 || low > anchor) throw InvalidArgument("exact_chain_bound: need 1 <= low <= anchor");
    check_window(table, anchor, cfg.k);
    return exact_chain_bound_impl(table, cfg, anchor, low).value;
}

AnchorChain anchor_chain(const FactorTable& table, const ScanConfig& cfg,
                         int exact_confirmations) {
    std::uint64_t floor_m = cfg.scan_floor();
    if (cfg.max_m < floor_m) throw InvalidArgument("anchor_chain: range below the scan floor");
    check_window(table, cfg.max_m, cfg.k);

    AnchorChain chain;
    std::uint64_t anchor = cfg.max_m;
    std::uint64_t high = cfg.max_m;

    while (true) {
        UpperFixed acc = padded_anchor_upper(table, anchor, cfg.k);
        if (!acc.less_than_one()) {
            auto exact = exact_chain_bound_impl(table, cfg, anchor, anchor);
            if (exact.value >= 1)
                throw ScanFailure("anchor sum at m=" + std::to_string(anchor) +
                                  " is not below 1; the descent cannot start here");
            // Directed rounding alone crossed 1: fall back to the exact
            // value, re-rounded up to the grid, and keep going.
            chain.tie_events.push_back("anchor m=" + std::to_string(anchor) +
                                       ": grid bound reached 1 but exact sum is below 1");
            acc = UpperFixed::from_raw(grid_ceil(exact.value), exact.terms);
        }

        std::uint64_t low = anchor;
        std::uint64_t j = anchor - 1;
        while (j >= floor_m) {
            if (table.largest_prime_factor(j) <= walk_prime_cutoff(j, cfg.k)) {
                unsigned __int128 term = (kOne + j - 1) / j;
                unsigned __int128 next = acc.raw() + term;
                if (next >= kOne) {
                    // Within the provable slack of the grid the true sum
                    // may still be below 1; decide exactly.
                    if (next < kOne + acc.term_count() + 1) {
                        auto exact = exact_chain_bound_impl(table, cfg, anchor, j);
                        if (exact.value == 1)
                            chain.tie_events.push_back(
                                "walk at m=" + std::to_string(j) +
                                " (anchor " + std::to_string(anchor) + "): exact sum equals 1");
                        if (exact.value < 1) {
                            acc = UpperFixed::from_raw(grid_ceil(exact.value), exact.terms);
                            low = j;
                            --j;
                            continue;
                        }
                    }
                    break;
                }
                acc.add_reciprocal(j);
            }
            low = j;
            if (j == floor_m) break;
            --j;
        }

        chain.intervals.push_back(AnchorInterval{low, high, anchor, acc});

        if (low <= floor_m) break;
        if (low == anchor)
            throw ScanFailure("descent stalled at m=" + std::to_string(anchor) +
                              ": no interval extension possible");
        anchor = low;
        high = low - 1;
    }

    int confirmations = std::min<int>(exact_confirmations,
                                      static_cast<int>(chain.intervals.size()));
    for (int i = 0; i < confirmations; ++i) {
        AnchorInterval& row = chain.intervals[static_cast<std::size_t>(i)];
        auto exact = exact_chain_bound_impl(table, cfg, row.anchor, row.low);
        auto [gnum, gden] = row.bound.as_fraction();
        Rational grid = rat(gnum, gden);
        Rational slack = Rational(static_cast<unsigned long>(row.bound.term_count()));
        slack /= rat(mpz_class(1) << 96, 1);
        if (exact.value > grid || grid - exact.value >= slack)
            throw ScanFailure("exact confirmation failed at anchor " +
                              std::to_string(row.anchor));
        row.exact_confirmed = true;
        row.exact_num = exact.value.get_num().get_str();
        row.exact_den = exact.value.get_den().get_str();
        row.exact_approx = truncated_decimal(exact.value, 16);
    }

    return chain;
}

std::vector<SmallClassification> classify_small(const FactorTable& table,
                                                const ScanConfig& cfg) {
    std::uint64_t lo = std::max<std::uint64_t>(cfg.min_m, 3);
    std::uint64_t hi = std::min<std::uint64_t>(cfg.max_m, cfg.scan_floor() - 1);
    std::vector<SmallClassification> out;
    for (std::uint64_t m = lo; m <= hi; ++m) {
        SmallClassification c;
        c.m = m;
        c.t = t_exact(table, m, cfg);
        c.ge_one = c.t >= 1;
        out.push_back(std::move(c));
    }
    return out;
}

} // namespace covergap
