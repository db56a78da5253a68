#include "covergap/factored_integer.hpp"

#include <algorithm>

#include "covergap/errors.hpp"

namespace covergap {

mpz_class FactoredInteger::value() const {
    mpz_class v = 1;
    for (const auto& [p, e] : factors) {
        mpz_class pw;
        mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(p), e);
        v *= pw;
    }
    return v;
}

std::uint32_t FactoredInteger::valuation(std::uint64_t p) const {
    auto it = factors.find(p);
    return it == factors.end() ? 0 : it->second;
}

FactoredInteger FactoredInteger::lcm_with(const FactoredInteger& other) const {
    FactoredInteger out = *this;
    for (const auto& [p, e] : other.factors) {
        auto [it, inserted] = out.factors.emplace(p, e);
        if (!inserted) it->second = std::max(it->second, e);
    }
    return out;
}

std::string FactoredInteger::to_string() const {
    if (factors.empty()) return "1";
    std::string s;
    for (const auto& [p, e] : factors) {
        if (!s.empty()) s += " * ";
        s += std::to_string(p);
        if (e > 1) {
            s += '^';
            s += std::to_string(e);
        }
    }
    return s;
}

std::vector<std::uint64_t> divisors_in_interval(const FactoredInteger& F,
                                                std::uint64_t lo,
                                                std::uint64_t hi) {
    if (lo > hi) throw InvalidArgument("divisors_in_interval: lo > hi");

    std::vector<std::pair<std::uint64_t, std::uint32_t>> pe(F.factors.begin(), F.factors.end());
    std::vector<std::uint64_t> out;

    // Depth-first over exponent choices, abandoning a branch as soon as the
    // partial product leaves [1, hi].
    auto descend = [&](auto&& self, std::size_t i, std::uint64_t product) -> void {
        if (i == pe.size()) {
            if (product >= lo) out.push_back(product);
            return;
        }
        auto [p, e] = pe[i];
        std::uint64_t value = product;
        for (std::uint32_t j = 0; j <= e; ++j) {
            self(self, i + 1, value);
            if (j < e) {
                if (value > hi / p) break; // next power would exceed hi
                value *= p;
            }
        }
    };
    descend(descend, 0, 1);

    std::sort(out.begin(), out.end());
    return out;
}

} // namespace covergap
