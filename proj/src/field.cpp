#include "cadph/field.hpp"

#include <charconv>

#include "cadph/errors.hpp"

namespace cadph {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

FieldSpec FieldSpec::gf(std::uint32_t p) {
    if (!is_prime(p)) {
        throw ParseError("field characteristic " + std::to_string(p) + " is not prime");
    }
    return {Kind::prime, p};
}

FieldSpec FieldSpec::parse(const std::string& text) {
    if (text == "rational" || text == "Q") return rational();
    if (text == "gf2") return gf(2);
    std::string digits;
    if (text.rfind("gf:", 0) == 0) {
        digits = text.substr(3);
    } else if (text.rfind("gf", 0) == 0) {
        digits = text.substr(2);
    } else {
        throw ParseError("unknown field '" + text + "' (expected gf2, gf:p or rational)");
    }
    std::uint64_t p = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty() ||
        p > 0x7fffffffULL) {
        throw ParseError("malformed field characteristic in '" + text + "'");
    }
    return gf(static_cast<std::uint32_t>(p));
}

std::string FieldSpec::to_string() const {
    if (kind == Kind::rational) return "rational";
    if (characteristic == 2) return "gf2";
    return "gf:" + std::to_string(characteristic);
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
    if (!is_prime(p)) {
        throw ParseError("field characteristic " + std::to_string(p) + " is not prime");
    }
}

PrimeField::value_type PrimeField::inv(value_type a) const {
    if (a == 0) throw std::domain_error("inverse of zero in GF(" + std::to_string(p_) + ")");
    // Extended Euclid on (a, p).
    long long t = 0, new_t = 1;
    long long r = p_, new_r = a;
    while (new_r != 0) {
        long long q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    return from_int(t);
}

PrimeField::value_type PrimeField::from_rational(const mpq_class& q) const {
    mpz_class p(p_);
    mpz_class num = q.get_num() % p;
    mpz_class den = q.get_den() % p;
    if (den == 0) {
        throw ParseError("coefficient " + q.get_str() + " has denominator divisible by " +
                         std::to_string(p_));
    }
    if (num < 0) num += p;
    return mul(static_cast<value_type>(num.get_ui()), inv(static_cast<value_type>(den.get_ui())));
}

RationalField::value_type RationalField::inv(const value_type& a) const {
    if (sgn(a) == 0) throw std::domain_error("inverse of zero rational");
    return 1 / a;
}

mpq_class parse_rational(const std::string& text) {
    mpq_class q;
    if (text.empty() || q.set_str(text, 10) != 0) {
        throw ParseError("malformed rational '" + text + "'");
    }
    if (q.get_den() == 0) throw ParseError("zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
}

}  // namespace cadph
