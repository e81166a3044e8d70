#include "disjlab/rational.hpp"

#include "disjlab/errors.hpp"

#include <cctype>
#include <cstdlib>

namespace disjlab {

std::string to_string(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::string to_string(const BigInt& z) { return z.get_str(); }

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

BigInt parse_integer(std::string_view s) {
    bool neg = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) throw Error(ErrorKind::Parse, "not an integer: '" + std::string(s) + "'");
    BigInt z(std::string(s), 10);
    return neg ? BigInt(-z) : z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw Error(ErrorKind::Parse, "empty rational");

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        BigInt num = parse_integer(text.substr(0, slash));
        std::string_view den_text = text.substr(slash + 1);
        if (!all_digits(den_text)) throw Error(ErrorKind::Parse, "bad denominator in '" + std::string(text) + "'");
        BigInt den(std::string(den_text), 10);
        if (den == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
        Rational q(num, den);
        q.canonicalize();
        return q;
    }

    // Decimal with optional exponent.
    std::string_view mantissa = text;
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        mantissa = text.substr(0, e);
        exponent = parse_integer(text.substr(e + 1)).get_si();
    }
    bool neg = false;
    if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
        neg = mantissa.front() == '-';
        mantissa.remove_prefix(1);
    }
    std::string digits;
    long frac_digits = 0;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = mantissa.substr(0, dot);
        std::string_view frac_part = mantissa.substr(dot + 1);
        if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)) ||
            (int_part.empty() && frac_part.empty())) {
            throw Error(ErrorKind::Parse, "bad decimal '" + std::string(text) + "'");
        }
        digits = std::string(int_part) + std::string(frac_part);
        frac_digits = static_cast<long>(frac_part.size());
    } else {
        if (!all_digits(mantissa)) throw Error(ErrorKind::Parse, "bad number '" + std::string(text) + "'");
        digits = std::string(mantissa);
    }
    Rational q(BigInt(digits, 10));
    long shift = exponent - frac_digits;
    BigInt ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    if (shift >= 0) {
        q *= ten_pow;
    } else {
        q /= ten_pow;
    }
    q.canonicalize();
    return neg ? Rational(-q) : q;
}

Rational pow2(long e) {
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
    if (e >= 0) return Rational(p);
    Rational q(BigInt(1), p);
    q.canonicalize();
    return q;
}

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace disjlab
