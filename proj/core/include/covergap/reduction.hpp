#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "covergap/rational.hpp"

namespace covergap {

// Residue-free counterpart of covering.hpp: the case analyses argue purely
// about which moduli are available and their reciprocal mass, never about
// concrete residues.

// Multiset of positive moduli.  Duplicates matter: a replacement step can
// insert a modulus that is already present.
class ModuliMultiset {
public:
    ModuliMultiset() = default;
    explicit ModuliMultiset(const std::vector<std::uint64_t>& values);

    void insert(std::uint64_t value, std::uint32_t count = 1);
    // Removes one occurrence; throws InvalidArgument when absent.
    void erase_one(std::uint64_t value);

    std::uint32_t count(std::uint64_t value) const;
    std::uint64_t size() const; // total multiplicity
    bool empty() const { return entries_.empty(); }

    const std::map<std::uint64_t, std::uint32_t>& entries() const { return entries_; }
    std::vector<std::uint64_t> to_sorted_vector() const; // with multiplicity

    Rational reciprocal_sum() const;
    mpz_class lcm() const;

    bool operator==(const ModuliMultiset&) const = default;

private:
    std::map<std::uint64_t, std::uint32_t> entries_;
};

// Outcome of one multiset-level replacement/discard step.
struct MultisetStep {
    enum class Action { replaced, discarded };
    Action action = Action::replaced;
    std::uint32_t multiple_count = 0;          // elements divisible by p^a
    std::vector<std::uint64_t> removed;        // those elements
    std::uint64_t replacement = 0;             // inserted modulus (replaced only)
    ModuliMultiset result;
};

// Density-level replacement: requires the ambient lcm to have p-valuation
// exactly a and exactly p elements divisible by p^a (checked; violations
// throw LemmaPreconditionError).  Those x_i = p^a * m_i are removed and
// p^(a-1) * lcm(m_1..m_p) inserted.  With exactly p candidates in the
// whole window, any covering must use all of them, so the replacement is
// the worst case and its reciprocal mass dominates.
MultisetStep lemma3_multiset(const ModuliMultiset& S, std::uint64_t p, std::uint32_t a);

// Density-level discard: fewer than p elements divisible by p^a means no
// covering can assemble the p classes it would need from them, so none of
// these moduli is usable and all are removed.
MultisetStep lemma1_multiset(const ModuliMultiset& S, std::uint64_t p, std::uint32_t a);

// Splitting the available moduli by divisibility by p: M0 (not divisible,
// usable by every one of the p reduced coverings) and M1 (divisible,
// divided by p, each usable by exactly one).
struct ModSplit {
    std::uint64_t p = 0;
    ModuliMultiset M0;
    ModuliMultiset M1;
    Rational S0;      // reciprocal sum of M0
    Rational deficit; // 1 - S0, the mass each reduced covering still needs
};

ModSplit mod_p_split(const ModuliMultiset& S, std::uint64_t p);

// Result of the exact bin-covering search: the maximum number of pairwise
// disjoint sub-multisets of M1 whose reciprocal sums each reach `t`,
// together with a witness family realizing it.
struct ThresholdGroups {
    int count = 0;
    std::vector<std::vector<std::uint64_t>> witness;
};

inline constexpr std::size_t kMaxThresholdElements = 32;

// Exhaustive search with memoization; throws SearchSizeExceeded above
// kMaxThresholdElements elements and InvalidArgument for t <= 0.
ThresholdGroups max_threshold_groups(const ModuliMultiset& M1, const Rational& t);

struct BinVerdict {
    enum class Kind { feasible, infeasible, inconclusive };
    Kind kind = Kind::inconclusive;
    int max_groups = 0;
    std::vector<std::vector<std::uint64_t>> witness; // feasible only
};

// Each of the p reduced coverings needs reciprocal mass >= deficit from its
// private share of M1, so p disjoint threshold groups must exist; fewer is
// a contradiction.  deficit <= 0 yields inconclusive (never infeasible).
BinVerdict bins_coverable(const ModSplit& split);

// A complete distribution of (some of) M1 into p bins, each reaching the
// deficit.  Bins whose sum is exactly the deficit are tight: the covering
// they describe has density exactly 1 and can be reduced further.
struct Assignment {
    std::vector<std::vector<std::uint64_t>> bins; // size p, each sorted
    std::vector<bool> tight;                      // per bin
};

inline constexpr std::size_t kMaxEnumerationElements = 16;

// All feasible assignments, canonicalized up to bin permutation when
// `canonical` is true.  Guarded by kMaxEnumerationElements.
std::vector<Assignment> enumerate_feasible_assignments(const ModSplit& split,
                                                       bool canonical = true);

// The moduli available to the reduced covering behind a tight bin:
// M0 plus the bin's elements.  Throws InvalidArgument for non-tight bins.
ModuliMultiset tight_bin_moduli(const ModSplit& split, const Assignment& assignment,
                                std::size_t bin_index);

} // namespace covergap
