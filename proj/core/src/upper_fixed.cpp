#include "covergap/upper_fixed.hpp"

#include "covergap/errors.hpp"

namespace covergap {

namespace {
constexpr unsigned __int128 kOne = static_cast<unsigned __int128>(1) << 96;
constexpr unsigned __int128 kGuard = static_cast<unsigned __int128>(1) << 126;

mpz_class to_mpz(unsigned __int128 v) {
    mpz_class hi(static_cast<unsigned long>(v >> 64));
    mpz_class lo(static_cast<unsigned long>(v));
    return (hi << 64) + lo;
}
} // namespace

UpperFixed UpperFixed::from_raw(unsigned __int128 value, std::uint64_t terms) {
    if (value > kGuard) throw std::overflow_error("UpperFixed::from_raw: value out of range");
    UpperFixed u;
    u.value_ = value;
    u.terms_ = terms;
    return u;
}

void UpperFixed::add_reciprocal(std::uint64_t n) {
    if (n == 0) throw InvalidArgument("add_reciprocal: n must be positive");
    unsigned __int128 term = (kOne + n - 1) / n; // ceil(2^96 / n)
    if (value_ > kGuard - term)
        throw std::overflow_error("UpperFixed accumulator overflow");
    value_ += term;
    ++terms_;
}

UpperFixed& UpperFixed::operator+=(const UpperFixed& other) {
    if (value_ > kGuard - other.value_)
        throw std::overflow_error("UpperFixed accumulator overflow");
    value_ += other.value_;
    terms_ += other.terms_;
    return *this;
}

bool UpperFixed::less_than_one() const { return value_ < kOne; }

std::pair<mpz_class, mpz_class> UpperFixed::as_fraction() const {
    mpz_class num = to_mpz(value_);
    mpz_class den = to_mpz(kOne);
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (g != 0) {
        num /= g;
        den /= g;
    }
    return {num, den};
}

std::string UpperFixed::decimal_string(int digits) const {
    if (digits < 0) throw InvalidArgument("decimal_string: negative digit count");
    unsigned __int128 ip = value_ >> 96;
    unsigned __int128 frac = value_ & (kOne - 1);

    std::string out = std::to_string(static_cast<std::uint64_t>(ip));
    if (digits == 0) return out;
    out += '.';
    for (int i = 0; i < digits; ++i) {
        frac *= 10;
        out += static_cast<char>('0' + static_cast<int>(frac >> 96));
        frac &= kOne - 1;
    }
    return out;
}

} // namespace covergap
