#include "covergap/factor_table.hpp"

#include <cstring>
#include <fstream>

#include "covergap/errors.hpp"

namespace covergap {

namespace {

constexpr char kMagic[5] = {'C', 'G', 'S', 'V', '1'};

void put_u64_le(std::ofstream& out, std::uint64_t v) {
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(buf), 8);
}

bool get_u64_le(std::ifstream& in, std::uint64_t& v) {
    unsigned char buf[8];
    if (!in.read(reinterpret_cast<char*>(buf), 8)) return false;
    v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    return true;
}

} // namespace

FactorTable FactorTable::build(std::uint64_t limit) {
    if (limit == 0) throw InvalidArgument("factor table limit must be positive");

    FactorTable t;
    t.limit_ = limit;
    t.lpf_.assign(limit + 1, 0);
    t.spf_.assign(limit + 1, 0);
    t.lpf_[1] = 1;
    t.spf_[1] = 1;

    // For ascending primes p, stamping p over its multiples leaves the
    // LARGEST prime factor in lpf (later primes overwrite) and, writing
    // spf only once, the smallest in spf.
    for (std::uint64_t p = 2; p <= limit; ++p) {
        if (t.lpf_[p] != 0) continue; // composite, already stamped
        for (std::uint64_t q = p; q <= limit; q += p) {
            t.lpf_[q] = static_cast<std::uint32_t>(p);
            if (t.spf_[q] == 0) t.spf_[q] = static_cast<std::uint32_t>(p);
        }
    }
    return t;
}

void FactorTable::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open sieve cache for writing: " + path.string());
    out.write(kMagic, sizeof kMagic);
    put_u64_le(out, limit_);
    // Entries are little-endian on every supported target; write the raw
    // arrays (4-byte entries) for n = 1..limit.
    static_assert(sizeof(std::uint32_t) == 4);
    out.write(reinterpret_cast<const char*>(lpf_.data() + 1),
              static_cast<std::streamsize>(limit_ * 4));
    out.write(reinterpret_cast<const char*>(spf_.data() + 1),
              static_cast<std::streamsize>(limit_ * 4));
    if (!out) throw std::runtime_error("short write to sieve cache: " + path.string());
}

std::optional<FactorTable> FactorTable::try_load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    char magic[5];
    if (!in.read(magic, 5) || std::memcmp(magic, kMagic, 5) != 0) return std::nullopt;
    std::uint64_t limit = 0;
    if (!get_u64_le(in, limit) || limit == 0) return std::nullopt;

    FactorTable t;
    t.limit_ = limit;
    t.lpf_.assign(limit + 1, 0);
    t.spf_.assign(limit + 1, 0);
    if (!in.read(reinterpret_cast<char*>(t.lpf_.data() + 1),
                 static_cast<std::streamsize>(limit * 4)))
        return std::nullopt;
    if (!in.read(reinterpret_cast<char*>(t.spf_.data() + 1),
                 static_cast<std::streamsize>(limit * 4)))
        return std::nullopt;
    t.lpf_[1] = 1;
    t.spf_[1] = 1;
    return t;
}

FactorTable FactorTable::load_or_build(std::uint64_t limit,
                                       const std::optional<std::filesystem::path>& path) {
    if (path) {
        if (auto cached = try_load(*path); cached && cached->limit() >= limit)
            return std::move(*cached);
    }
    FactorTable t = build(limit);
    if (path) t.save(*path);
    return t;
}

std::uint64_t FactorTable::largest_prime_factor(std::uint64_t n) const {
    if (n == 0 || n > limit_) throw InvalidArgument("largest_prime_factor: n out of table range");
    return lpf_[n];
}

std::uint64_t FactorTable::smallest_prime_factor(std::uint64_t n) const {
    if (n == 0 || n > limit_) throw InvalidArgument("smallest_prime_factor: n out of table range");
    return spf_[n];
}

bool FactorTable::is_prime(std::uint64_t n) const {
    if (n == 0 || n > limit_) throw InvalidArgument("is_prime: n out of table range");
    return n >= 2 && spf_[n] == n;
}

std::vector<std::uint64_t> FactorTable::primes_up_to(std::uint64_t bound) const {
    if (bound > limit_) throw InvalidArgument("primes_up_to: bound exceeds table limit");
    std::vector<std::uint64_t> primes;
    for (std::uint64_t n = 2; n <= bound; ++n)
        if (spf_[n] == n) primes.push_back(n);
    return primes;
}

FactoredInteger FactorTable::factorize(std::uint64_t n) const {
    if (n == 0 || n > limit_) throw InvalidArgument("factorize: n out of table range");
    FactoredInteger f;
    while (n > 1) {
        std::uint64_t p = spf_[n];
        std::uint32_t e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.factors.emplace(p, e);
    }
    return f;
}

} // namespace covergap
