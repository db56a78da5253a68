#include "covergap/rational.hpp"

#include "covergap/errors.hpp"

namespace covergap {

Rational rat(const mpz_class& numerator, const mpz_class& denominator) {
    if (denominator == 0) throw InvalidArgument("rat: zero denominator");
    Rational q(numerator, denominator);
    q.canonicalize();
    return q;
}

Rational rat(long numerator, long denominator) {
    return rat(mpz_class(numerator), mpz_class(denominator));
}

Rational reciprocal_sum(std::span<const std::uint64_t> ds) {
    Rational total = 0;
    Rational term;
    for (std::uint64_t d : ds) {
        if (d == 0) throw InvalidArgument("reciprocal_sum: zero entry");
        term = Rational(1, static_cast<unsigned long>(d));
        // Denominators of the form 1/d are already canonical.
        total += term;
    }
    return total;
}

std::string truncated_decimal(const Rational& x, int digits) {
    if (digits < 0) throw InvalidArgument("truncated_decimal: negative digit count");
    bool negative = x < 0;
    Rational ax = negative ? Rational(-x) : x;

    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    mpz_class scaled = (ax.get_num() * scale) / ax.get_den(); // floor; ax >= 0

    mpz_class ipart = scaled / scale;
    mpz_class fpart = scaled % scale;

    std::string frac = fpart.get_str();
    frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');

    std::string out = negative ? "-" : "";
    out += ipart.get_str();
    if (digits > 0) {
        out += '.';
        out += frac;
    }
    return out;
}

Rational rational_from_decimal(const std::string& decimal) {
    std::string s = decimal;
    bool negative = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        negative = s[0] == '-';
        s.erase(0, 1);
    }
    auto dot = s.find('.');
    std::string ipart = dot == std::string::npos ? s : s.substr(0, dot);
    std::string fpart = dot == std::string::npos ? "" : s.substr(dot + 1);
    if (ipart.empty() && fpart.empty())
        throw InvalidArgument("rational_from_decimal: empty literal");
    for (char c : ipart + fpart)
        if (c < '0' || c > '9') throw InvalidArgument("rational_from_decimal: bad literal '" + decimal + "'");

    // Base 10 must be explicit: the string constructor's default base 0
    // auto-detects, and fraction parts with leading zeros would be read
    // as octal.
    mpz_class num(ipart.empty() ? "0" : ipart, 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, fpart.size());
    num *= scale;
    if (!fpart.empty()) num += mpz_class(fpart, 10);
    if (negative) num = -num;
    return rat(num, scale);
}

Rational decimal_distance(const Rational& x, const std::string& decimal) {
    Rational d = x - rational_from_decimal(decimal);
    return d < 0 ? Rational(-d) : d;
}

Rational rational_from_strings(const std::string& num, const std::string& den) {
    try {
        return rat(mpz_class(num, 10), mpz_class(den, 10));
    } catch (const InvalidArgument&) {
        throw;
    } catch (const std::invalid_argument&) {
        throw InvalidArgument("rational_from_strings: bad integer literal '" + num + "'/'" +
                              den + "'");
    }
}

} // namespace covergap
