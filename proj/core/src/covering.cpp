#include "covergap/covering.hpp"

#include <algorithm>
#include <limits>

#include "covergap/errors.hpp"

namespace covergap {

namespace {

// Factorization by trial division; moduli here are desk-scale.
FactoredInteger factor_u64(std::uint64_t n) {
    FactoredInteger f;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        std::uint32_t e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.factors.emplace(p, e);
    }
    if (n > 1) f.factors.emplace(n, 1);
    return f;
}

std::uint64_t checked_lcm_value(const CoveringSystem& C, std::uint64_t bound) {
    mpz_class L = lcm_of(C).value();
    if (L > bound)
        throw OracleOverflow("modulus lcm " + L.get_str() + " exceeds the oracle bound " +
                             std::to_string(bound));
    return L.get_ui();
}

std::uint64_t extended_gcd(std::uint64_t a, std::uint64_t b, std::int64_t& x, std::int64_t& y) {
    if (b == 0) {
        x = 1;
        y = 0;
        return a;
    }
    std::int64_t x1, y1;
    std::uint64_t g = extended_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - static_cast<std::int64_t>(a / b) * y1;
    return g;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t n) {
    if (n == 1) return 0;
    std::int64_t x, y;
    std::uint64_t g = extended_gcd(a % n, n, x, y);
    if (g != 1) throw InvalidArgument("mod_inverse: arguments are not coprime");
    std::int64_t r = x % static_cast<std::int64_t>(n);
    if (r < 0) r += static_cast<std::int64_t>(n);
    return static_cast<std::uint64_t>(r);
}

std::vector<bool> covered_mask(const CoveringSystem& C, std::uint64_t L) {
    std::vector<bool> covered(L, false);
    for (const auto& c : C.congruences) {
        if (c.modulus == 0 || c.residue >= c.modulus)
            throw InvalidArgument("malformed congruence");
        for (std::uint64_t r = c.residue; r < L; r += c.modulus) covered[r] = true;
    }
    return covered;
}

// Selects the congruences with p^a | modulus and checks the shared
// hypotheses of the replacement/discard transformations.
std::vector<std::size_t> indices_divisible(const CoveringSystem& C, std::uint64_t p,
                                           std::uint32_t a) {
    if (a == 0) throw InvalidArgument("prime power exponent must be positive");
    mpz_class pa;
    mpz_ui_pow_ui(pa.get_mpz_t(), static_cast<unsigned long>(p), a);
    if (pa > std::numeric_limits<std::uint64_t>::max())
        throw InvalidArgument("prime power exceeds supported modulus range");
    std::uint64_t q = pa.get_ui();
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < C.congruences.size(); ++i)
        if (C.congruences[i].modulus % q == 0) idx.push_back(i);
    return idx;
}

} // namespace

FactoredInteger lcm_of(const CoveringSystem& C) {
    FactoredInteger L;
    for (const auto& c : C.congruences) L = L.lcm_with(factor_u64(c.modulus));
    return L;
}

bool is_covering(const CoveringSystem& C, std::uint64_t bound) {
    std::uint64_t L = checked_lcm_value(C, bound);
    auto covered = covered_mask(C, L);
    return std::all_of(covered.begin(), covered.end(), [](bool b) { return b; });
}

Rational uncovered_density(const CoveringSystem& C, std::uint64_t bound) {
    std::uint64_t L = checked_lcm_value(C, bound);
    auto covered = covered_mask(C, L);
    std::uint64_t uncovered =
        static_cast<std::uint64_t>(std::count(covered.begin(), covered.end(), false));
    return rat(mpz_class(static_cast<unsigned long>(uncovered)),
               mpz_class(static_cast<unsigned long>(L)));
}

std::uint64_t uncovered_count_tree(const CoveringSystem& C, std::uint64_t bound) {
    std::uint64_t L = checked_lcm_value(C, bound);
    FactoredInteger Lf = lcm_of(C);

    // Flatten the lcm into its prime-power splitting order.
    std::vector<std::uint64_t> primes;
    for (const auto& [p, e] : Lf.factors)
        for (std::uint32_t i = 0; i < e; ++i) primes.push_back(p);

    // Residue classes (r mod M) refine one prime at a time.  A class is
    // done when some congruence contains it entirely (n | M and r === a
    // mod n); a fully refined class (M = L) with no covering congruence is
    // one uncovered residue.
    auto walk = [&](auto&& self, std::uint64_t r, std::uint64_t M, std::size_t depth)
        -> std::uint64_t {
        for (const auto& c : C.congruences)
            if (M % c.modulus == 0 && r % c.modulus == c.residue) return 0;
        if (M == L) return 1;
        std::uint64_t p = primes[depth];
        std::uint64_t total = 0;
        for (std::uint64_t i = 0; i < p; ++i) total += self(self, r + i * M, M * p, depth + 1);
        return total;
    };
    return walk(walk, 0, 1, 0);
}

std::vector<Congruence> split(const Congruence& c, std::uint64_t p) {
    if (p < 2) throw InvalidArgument("split: p must be at least 2");
    std::vector<Congruence> out;
    out.reserve(p);
    for (std::uint64_t i = 0; i < p; ++i)
        out.push_back(Congruence{c.residue + i * c.modulus, c.modulus * p});
    return out;
}

CoveringSystem lemma1_discard(const CoveringSystem& C, std::uint64_t p, std::uint32_t a) {
    auto idx = indices_divisible(C, p, a);
    if (idx.size() >= p)
        throw LemmaPreconditionError("lemma1_discard: " + std::to_string(idx.size()) +
                                     " moduli divisible by the prime power, need fewer than " +
                                     std::to_string(p));
    if (lcm_of(C).valuation(p) < a)
        throw LemmaPreconditionError("lemma1_discard: prime power does not divide the lcm");

    CoveringSystem out;
    std::size_t k = 0;
    for (std::size_t i = 0; i < C.congruences.size(); ++i) {
        if (k < idx.size() && idx[k] == i) {
            ++k;
            continue;
        }
        out.congruences.push_back(C.congruences[i]);
    }
    return out;
}

std::pair<CoveringSystem, std::uint64_t> lemma3_replace(const CoveringSystem& C,
                                                        std::uint64_t p,
                                                        std::uint32_t a,
                                                        std::uint64_t bound) {
    if (lcm_of(C).valuation(p) != a)
        throw LemmaPreconditionError("lemma3_replace: lcm valuation at p is not exactly a");
    auto idx = indices_divisible(C, p, a);
    if (idx.size() != p)
        throw LemmaPreconditionError("lemma3_replace: found " + std::to_string(idx.size()) +
                                     " moduli divisible by the prime power, need exactly " +
                                     std::to_string(p));

    mpz_class pa;
    mpz_ui_pow_ui(pa.get_mpz_t(), static_cast<unsigned long>(p), a);
    std::uint64_t q = pa.get_ui();

    mpz_class cof_lcm = 1;
    for (std::size_t i : idx) {
        mpz_class cof(static_cast<unsigned long>(C.congruences[i].modulus / q));
        mpz_lcm(cof_lcm.get_mpz_t(), cof_lcm.get_mpz_t(), cof.get_mpz_t());
    }
    mpz_class repl = (pa / p) * cof_lcm;
    if (!repl.fits_ulong_p())
        throw InvalidArgument("lemma3_replace: replacement modulus out of range");
    std::uint64_t replacement = repl.get_ui();

    CoveringSystem base;
    std::size_t k = 0;
    for (std::size_t i = 0; i < C.congruences.size(); ++i) {
        if (k < idx.size() && idx[k] == i) {
            ++k;
            continue;
        }
        base.congruences.push_back(C.congruences[i]);
    }

    // The transformation guarantees a residue exists; find the first.
    for (std::uint64_t r = 0; r < replacement; ++r) {
        CoveringSystem candidate = base;
        candidate.congruences.push_back(Congruence{r, replacement});
        if (is_covering(candidate, bound)) return {candidate, r};
    }
    throw FalsificationError(
        "lemma3_replace: no residue completes a covering; the replacement rule failed "
        "on this instance");
}

CoveringSystem lemma3_discard_same_class(const CoveringSystem& C,
                                         std::uint64_t p,
                                         std::uint32_t a) {
    if (lcm_of(C).valuation(p) != a)
        throw LemmaPreconditionError("lemma3_discard_same_class: lcm valuation at p is not exactly a");
    auto idx = indices_divisible(C, p, a);
    if (idx.size() != p)
        throw LemmaPreconditionError("lemma3_discard_same_class: need exactly p moduli divisible by p^a");

    mpz_class pa;
    mpz_ui_pow_ui(pa.get_mpz_t(), static_cast<unsigned long>(p), a);
    std::uint64_t q = pa.get_ui();

    bool shared_class = false;
    for (std::size_t i = 0; i < idx.size() && !shared_class; ++i)
        for (std::size_t j = i + 1; j < idx.size(); ++j)
            if (C.congruences[idx[i]].residue % q == C.congruences[idx[j]].residue % q) {
                shared_class = true;
                break;
            }
    if (!shared_class)
        throw LemmaPreconditionError(
            "lemma3_discard_same_class: all p congruences lie in distinct classes mod p^a");

    CoveringSystem out;
    std::size_t k = 0;
    for (std::size_t i = 0; i < C.congruences.size(); ++i) {
        if (k < idx.size() && idx[k] == i) {
            ++k;
            continue;
        }
        out.congruences.push_back(C.congruences[i]);
    }
    return out;
}

std::vector<CoveringSystem> lemma4_reduce(const CoveringSystem& C, std::uint64_t p) {
    if (p < 2) throw InvalidArgument("lemma4_reduce: p must be at least 2");

    std::vector<CoveringSystem> out(p);
    for (std::uint64_t j = 0; j < p; ++j) {
        for (const auto& c : C.congruences) {
            if (c.modulus % p != 0) {
                // substitute x = j + p*y:  p*y === a - j (mod n)
                std::uint64_t inv = mod_inverse(p % c.modulus, c.modulus);
                std::uint64_t delta = (c.residue + c.modulus - j % c.modulus) % c.modulus;
                out[j].congruences.push_back(
                    Congruence{(delta * inv) % c.modulus, c.modulus});
            } else if (c.residue % p == j % p) {
                // only this class meets the congruence; y === (a - j)/p (mod n/p)
                std::uint64_t n_over_p = c.modulus / p;
                if (n_over_p == 1) {
                    out[j].congruences.push_back(Congruence{0, 1});
                    continue;
                }
                // a - j is divisible by p within [0, n); normalize first.
                std::uint64_t delta = (c.residue + c.modulus - j % c.modulus) % c.modulus;
                out[j].congruences.push_back(Congruence{(delta / p) % n_over_p, n_over_p});
            }
        }
    }
    return out;
}

} // namespace covergap
