#include "cantor/rational.hpp"

#include "cantor/errors.hpp"

namespace cantor {

Rational make_rational(long num, long den) {
    if (den == 0) throw ParseError("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw ParseError("empty rational");
    size_t slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in '" + s + "'");
        Rational q(num, den);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw ParseError("malformed rational '" + s + "'");
    }
}

std::string to_string(const Rational& q) { return q.get_str(); }

bool is_probability(const Rational& q) { return q >= 0 && q <= 1; }

void require_open_probability(const Rational& p, const char* what) {
    if (p <= 0 || p >= 1)
        throw PreconditionViolated(std::string(what) + " must be a rational strictly between 0 and 1, got " +
                                   to_string(p));
}

Rational pow_rational(const Rational& q, uint64_t e) {
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), q.get_num().get_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), q.get_den().get_mpz_t(), e);
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational pow2_inverse(uint32_t n) {
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, n);
    return Rational(Integer(1), den);
}

} // namespace cantor
