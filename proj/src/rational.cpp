#include "oslash/rational.hpp"

#include "oslash/error.hpp"

#include <cctype>

namespace oslash {

Rational make_rational(long num, long den) {
    if (den == 0) fail_input("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(std::string_view text) {
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t start = 0;
    while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
    s = s.substr(start);
    if (s.empty()) fail_input("empty rational literal");

    auto dot = s.find('.');
    if (dot != std::string::npos) {
        if (s.find('/') != std::string::npos) fail_input("bad rational literal: " + s);
        bool negative = s[0] == '-';
        std::string digits = s.substr(negative ? 1 : 0);
        dot = digits.find('.');
        std::string whole = digits.substr(0, dot);
        std::string frac = digits.substr(dot + 1);
        if (whole.empty()) whole = "0";
        for (char c : whole + frac) {
            if (!std::isdigit(static_cast<unsigned char>(c))) fail_input("bad rational literal: " + s);
        }
        mpz_class num(whole + frac, 10);
        mpz_class den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        Rational q(num, den);
        q.canonicalize();
        return negative ? Rational(-q) : q;
    }

    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        bool ok = std::isdigit(static_cast<unsigned char>(c)) || c == '/' || (c == '-' && (i == 0 || s[i - 1] == '/'));
        if (!ok) fail_input("bad rational literal: " + s);
    }
    Rational q;
    if (q.set_str(s, 10) != 0) fail_input("bad rational literal: " + s);
    if (q.get_den() == 0) fail_input("zero denominator in " + s);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

Rational abs(const Rational& q) { return ::abs(q); }

Rational pow(const Rational& q, unsigned e) {
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), e);
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::optional<std::int64_t> as_int64(const mpz_class& z) {
    if (!z.fits_slong_p()) return std::nullopt;
    return static_cast<std::int64_t>(z.get_si());
}

mpz_class common_denominator(const std::vector<Rational>& values) {
    mpz_class l = 1;
    for (const auto& v : values) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    }
    return l;
}

Rational sum(const std::vector<Rational>& values) {
    Rational s = 0;
    for (const auto& v : values) s += v;
    return s;
}

}  // namespace oslash
