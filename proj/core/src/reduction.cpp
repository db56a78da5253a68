#include "covergap/reduction.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <unordered_map>

#include "covergap/errors.hpp"

namespace covergap {

namespace {

std::uint32_t valuation_u64(std::uint64_t n, std::uint64_t p) {
    std::uint32_t v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

std::uint64_t pow_u64_checked(std::uint64_t p, std::uint32_t a) {
    unsigned __int128 v = 1;
    for (std::uint32_t i = 0; i < a; ++i) {
        v *= p;
        if (v > std::numeric_limits<std::uint64_t>::max())
            throw InvalidArgument("prime power exceeds supported range");
    }
    return static_cast<std::uint64_t>(v);
}

} // namespace

ModuliMultiset::ModuliMultiset(const std::vector<std::uint64_t>& values) {
    for (std::uint64_t v : values) insert(v);
}

void ModuliMultiset::insert(std::uint64_t value, std::uint32_t count) {
    if (value == 0) throw InvalidArgument("ModuliMultiset: modulus must be positive");
    if (count == 0) return;
    entries_[value] += count;
}

void ModuliMultiset::erase_one(std::uint64_t value) {
    auto it = entries_.find(value);
    if (it == entries_.end()) throw InvalidArgument("ModuliMultiset: erasing absent value");
    if (--it->second == 0) entries_.erase(it);
}

std::uint32_t ModuliMultiset::count(std::uint64_t value) const {
    auto it = entries_.find(value);
    return it == entries_.end() ? 0 : it->second;
}

std::uint64_t ModuliMultiset::size() const {
    std::uint64_t total = 0;
    for (const auto& [_, c] : entries_) total += c;
    return total;
}

std::vector<std::uint64_t> ModuliMultiset::to_sorted_vector() const {
    std::vector<std::uint64_t> out;
    for (const auto& [v, c] : entries_)
        for (std::uint32_t i = 0; i < c; ++i) out.push_back(v);
    return out;
}

Rational ModuliMultiset::reciprocal_sum() const {
    Rational total = 0;
    for (const auto& [v, c] : entries_) {
        Rational term(c, static_cast<unsigned long>(v));
        term.canonicalize();
        total += term;
    }
    return total;
}

mpz_class ModuliMultiset::lcm() const {
    mpz_class L = 1;
    for (const auto& [v, _] : entries_)
        mpz_lcm_ui(L.get_mpz_t(), L.get_mpz_t(), static_cast<unsigned long>(v));
    return L;
}

namespace {

MultisetStep remove_hit_elements(const ModuliMultiset& S, std::uint64_t q) {
    MultisetStep step;
    step.result = S;
    for (const auto& [v, c] : S.entries()) {
        if (v % q != 0) continue;
        step.multiple_count += c;
        for (std::uint32_t i = 0; i < c; ++i) {
            step.removed.push_back(v);
            step.result.erase_one(v);
        }
    }
    return step;
}

} // namespace

MultisetStep lemma3_multiset(const ModuliMultiset& S, std::uint64_t p, std::uint32_t a) {
    if (a == 0) throw InvalidArgument("lemma3_multiset: exponent must be positive");
    std::uint64_t q = pow_u64_checked(p, a);

    std::uint32_t ambient = 0;
    for (const auto& [v, _] : S.entries()) ambient = std::max(ambient, valuation_u64(v, p));
    if (ambient != a)
        throw LemmaPreconditionError("lemma3_multiset: ambient lcm has p-valuation " +
                                     std::to_string(ambient) + ", expected " + std::to_string(a));

    MultisetStep step = remove_hit_elements(S, q);
    if (step.multiple_count != p)
        throw LemmaPreconditionError("lemma3_multiset: " + std::to_string(step.multiple_count) +
                                     " multiples of p^a available, need exactly " +
                                     std::to_string(p));

    mpz_class cof_lcm = 1;
    for (std::uint64_t x : step.removed)
        mpz_lcm_ui(cof_lcm.get_mpz_t(), cof_lcm.get_mpz_t(),
                   static_cast<unsigned long>(x / q));
    mpz_class repl = cof_lcm * (q / p);
    if (!repl.fits_ulong_p())
        throw InvalidArgument("lemma3_multiset: replacement modulus out of range");

    step.action = MultisetStep::Action::replaced;
    step.replacement = repl.get_ui();
    step.result.insert(step.replacement);
    return step;
}

MultisetStep lemma1_multiset(const ModuliMultiset& S, std::uint64_t p, std::uint32_t a) {
    if (a == 0) throw InvalidArgument("lemma1_multiset: exponent must be positive");
    std::uint64_t q = pow_u64_checked(p, a);

    MultisetStep step = remove_hit_elements(S, q);
    if (step.multiple_count >= p)
        throw LemmaPreconditionError("lemma1_multiset: " + std::to_string(step.multiple_count) +
                                     " multiples of p^a available, need fewer than " +
                                     std::to_string(p));
    step.action = MultisetStep::Action::discarded;
    return step;
}

ModSplit mod_p_split(const ModuliMultiset& S, std::uint64_t p) {
    if (p < 2) throw InvalidArgument("mod_p_split: p must be at least 2");
    ModSplit split;
    split.p = p;
    for (const auto& [v, c] : S.entries()) {
        if (v % p == 0)
            split.M1.insert(v / p, c);
        else
            split.M0.insert(v, c);
    }
    split.S0 = split.M0.reciprocal_sum();
    split.deficit = 1 - split.S0;
    return split;
}

namespace {

// Exhaustive threshold-group search.  Elements ascend by value (so descend
// by reciprocal); a candidate group always contains the lowest-index
// remaining element or that element is skipped for good, and a group stops
// growing the moment it reaches the threshold (supersets of a group never
// beat the group itself).  States memoize on the remaining-element bitmask.
class GroupSearch {
public:
    GroupSearch(std::vector<std::uint64_t> elems, Rational t)
        : elems_(std::move(elems)), t_(std::move(t)) {
        recip_.reserve(elems_.size());
        for (std::uint64_t v : elems_) {
            Rational r(1, static_cast<unsigned long>(v));
            recip_.push_back(r);
        }
    }

    int best(std::uint64_t mask) {
        if (mask == 0) return 0;
        if (auto it = memo_.find(mask); it != memo_.end()) return it->second;

        std::vector<std::size_t> live = live_indices(mask);
        std::vector<Rational> suffix = suffix_sums(live);
        int result = 0;
        if (suffix[0] >= t_) {
            // Groups containing the first live element.
            dfs_group(mask, live, suffix, 1, recip_[live[0]],
                      std::uint64_t{1} << live[0], result);
            // Or retire it unused.
            result = std::max(result, best(mask & ~(std::uint64_t{1} << live[0])));
        }
        memo_.emplace(mask, result);
        return result;
    }

    // Rebuilds a witness family of size best(mask), deterministically.
    std::vector<std::vector<std::uint64_t>> witness(std::uint64_t mask) {
        std::vector<std::vector<std::uint64_t>> groups;
        while (mask != 0 && best(mask) > 0) {
            std::uint64_t group_mask = find_group(mask);
            if (group_mask == 0) { // first element unused
                std::vector<std::size_t> live = live_indices(mask);
                mask &= ~(std::uint64_t{1} << live[0]);
                continue;
            }
            std::vector<std::uint64_t> group;
            for (std::size_t i = 0; i < elems_.size(); ++i)
                if (group_mask >> i & 1) group.push_back(elems_[i]);
            groups.push_back(std::move(group));
            mask &= ~group_mask;
        }
        return groups;
    }

private:
    std::vector<std::size_t> live_indices(std::uint64_t mask) const {
        std::vector<std::size_t> live;
        for (std::size_t i = 0; i < elems_.size(); ++i)
            if (mask >> i & 1) live.push_back(i);
        return live;
    }

    std::vector<Rational> suffix_sums(const std::vector<std::size_t>& live) const {
        std::vector<Rational> suffix(live.size() + 1, Rational(0));
        for (std::size_t i = live.size(); i-- > 0;)
            suffix[i] = suffix[i + 1] + recip_[live[i]];
        return suffix;
    }

    // pos indexes `live`; the group under construction holds `chosen`
    // (always including live[0]) with reciprocal sum `sum`.
    void dfs_group(std::uint64_t mask, const std::vector<std::size_t>& live,
                   const std::vector<Rational>& suffix, std::size_t pos,
                   const Rational& sum, std::uint64_t chosen, int& out) {
        if (sum >= t_) {
            out = std::max(out, 1 + best(mask & ~chosen));
            return;
        }
        if (pos >= live.size()) return;
        if (sum + suffix[pos] < t_) return; // cannot reach the threshold
        dfs_group(mask, live, suffix, pos + 1, sum + recip_[live[pos]],
                  chosen | (std::uint64_t{1} << live[pos]), out);
        // Equal values are interchangeable; skip the whole run.
        std::size_t next = pos + 1;
        while (next < live.size() && elems_[live[next]] == elems_[live[pos]]) ++next;
        dfs_group(mask, live, suffix, next, sum, chosen, out);
    }

    // Finds the first group (in search order) whose removal preserves
    // optimality, or 0 when the optimum retires the first element.
    std::uint64_t find_group(std::uint64_t mask) {
        int target = best(mask);
        std::vector<std::size_t> live = live_indices(mask);
        std::vector<Rational> suffix = suffix_sums(live);
        std::uint64_t found = 0;
        find_group_dfs(mask, live, suffix, 1, recip_[live[0]],
                       std::uint64_t{1} << live[0], target, found);
        return found;
    }

    bool find_group_dfs(std::uint64_t mask, const std::vector<std::size_t>& live,
                        const std::vector<Rational>& suffix, std::size_t pos,
                        const Rational& sum, std::uint64_t chosen, int target,
                        std::uint64_t& found) {
        if (sum >= t_) {
            if (1 + best(mask & ~chosen) == target) {
                found = chosen;
                return true;
            }
            return false;
        }
        if (pos >= live.size()) return false;
        if (sum + suffix[pos] < t_) return false;
        if (find_group_dfs(mask, live, suffix, pos + 1, sum + recip_[live[pos]],
                           chosen | (std::uint64_t{1} << live[pos]), target, found))
            return true;
        std::size_t next = pos + 1;
        while (next < live.size() && elems_[live[next]] == elems_[live[pos]]) ++next;
        return find_group_dfs(mask, live, suffix, next, sum, chosen, target, found);
    }

    std::vector<std::uint64_t> elems_;
    Rational t_;
    std::vector<Rational> recip_;
    std::unordered_map<std::uint64_t, int> memo_;
};

} // namespace

ThresholdGroups max_threshold_groups(const ModuliMultiset& M1, const Rational& t) {
    if (t <= 0) throw InvalidArgument("max_threshold_groups: threshold must be positive");
    auto elems = M1.to_sorted_vector();
    if (elems.size() > kMaxThresholdElements)
        throw SearchSizeExceeded("max_threshold_groups: " + std::to_string(elems.size()) +
                                 " elements exceed the search guard of " +
                                 std::to_string(kMaxThresholdElements));

    ThresholdGroups out;
    if (elems.empty()) return out;

    GroupSearch search(elems, t);
    std::uint64_t full = elems.size() == 64 ? ~std::uint64_t{0}
                                            : (std::uint64_t{1} << elems.size()) - 1;
    out.count = search.best(full);
    out.witness = search.witness(full);
    return out;
}

BinVerdict bins_coverable(const ModSplit& split) {
    BinVerdict verdict;
    if (split.deficit <= 0) {
        verdict.kind = BinVerdict::Kind::inconclusive;
        return verdict;
    }
    ThresholdGroups groups = max_threshold_groups(split.M1, split.deficit);
    verdict.max_groups = groups.count;
    if (groups.count >= static_cast<int>(split.p)) {
        verdict.kind = BinVerdict::Kind::feasible;
        verdict.witness = std::move(groups.witness);
    } else {
        verdict.kind = BinVerdict::Kind::infeasible;
    }
    return verdict;
}

std::vector<Assignment> enumerate_feasible_assignments(const ModSplit& split, bool canonical) {
    auto elems = split.M1.to_sorted_vector();
    if (elems.size() > kMaxEnumerationElements)
        throw SearchSizeExceeded("enumerate_feasible_assignments: " +
                                 std::to_string(elems.size()) +
                                 " elements exceed the enumeration guard of " +
                                 std::to_string(kMaxEnumerationElements));
    if (split.deficit <= 0)
        throw InvalidArgument("enumerate_feasible_assignments: deficit must be positive");

    const Rational& t = split.deficit;
    std::set<std::vector<std::vector<std::uint64_t>>> seen;
    std::vector<std::vector<std::vector<std::uint64_t>>> raw;

    // Bins are anchored: each new bin contains the smallest element still
    // unassigned, or that element is left unused.  Every distribution into
    // p unordered bins appears exactly once up to bin relabeling.
    auto rec = [&](auto&& self, const std::vector<std::uint64_t>& rem,
                   std::vector<std::vector<std::uint64_t>>& bins) -> void {
        if (bins.size() == split.p) {
            auto key = bins;
            for (auto& b : key) std::sort(b.begin(), b.end());
            std::sort(key.begin(), key.end());
            if (canonical) {
                if (seen.insert(key).second) raw.push_back(key);
            } else {
                raw.push_back(bins);
            }
            return;
        }
        if (rem.empty()) return;
        std::vector<std::uint64_t> rest(rem.begin() + 1, rem.end());
        std::uint32_t n_rest = static_cast<std::uint32_t>(rest.size());
        for (std::uint32_t mask = 0; mask < (1u << n_rest); ++mask) {
            std::vector<std::uint64_t> bin{rem[0]};
            for (std::uint32_t i = 0; i < n_rest; ++i)
                if (mask >> i & 1) bin.push_back(rest[i]);
            if (reciprocal_sum(bin) < t) continue;
            std::vector<std::uint64_t> left;
            for (std::uint32_t i = 0; i < n_rest; ++i)
                if (!(mask >> i & 1)) left.push_back(rest[i]);
            bins.push_back(bin);
            self(self, left, bins);
            bins.pop_back();
        }
        self(self, rest, bins); // rem[0] unused
    };

    std::vector<std::vector<std::uint64_t>> bins;
    rec(rec, elems, bins);

    std::vector<Assignment> out;
    out.reserve(raw.size());
    for (auto& binset : raw) {
        Assignment a;
        a.bins = std::move(binset);
        a.tight.reserve(a.bins.size());
        for (const auto& b : a.bins) a.tight.push_back(reciprocal_sum(b) == t);
        out.push_back(std::move(a));
    }
    return out;
}

ModuliMultiset tight_bin_moduli(const ModSplit& split, const Assignment& assignment,
                                std::size_t bin_index) {
    if (bin_index >= assignment.bins.size())
        throw InvalidArgument("tight_bin_moduli: bin index out of range");
    if (!assignment.tight[bin_index])
        throw InvalidArgument("tight_bin_moduli: bin is not tight");
    ModuliMultiset out = split.M0;
    for (std::uint64_t v : assignment.bins[bin_index]) out.insert(v);
    return out;
}

} // namespace covergap
