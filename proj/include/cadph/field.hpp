#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include <gmpxx.h>

namespace cadph {

struct FieldSpec {
    enum class Kind { prime, rational };

    Kind kind = Kind::prime;
    std::uint32_t characteristic = 2;

    static FieldSpec gf(std::uint32_t p);
    static FieldSpec rational() { return {Kind::rational, 0}; }

    /// Accepts "gf2", "gf:p" and "rational".
    static FieldSpec parse(const std::string& text);

    std::string to_string() const;

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

bool is_prime(std::uint64_t n);

/// GF(p) with residues kept in [0, p).
class PrimeField {
public:
    using value_type = std::uint32_t;

    explicit PrimeField(std::uint32_t p = 2);

    std::uint32_t characteristic() const { return p_; }

    value_type zero() const { return 0; }
    value_type one() const { return 1 % p_; }

    value_type from_int(long long v) const {
        long long r = v % static_cast<long long>(p_);
        return static_cast<value_type>(r < 0 ? r + p_ : r);
    }
    value_type from_rational(const mpq_class& q) const;

    bool is_zero(value_type a) const { return a == 0; }
    value_type add(value_type a, value_type b) const {
        std::uint64_t s = std::uint64_t{a} + b;
        return static_cast<value_type>(s >= p_ ? s - p_ : s);
    }
    value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + (p_ - b); }
    value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
    value_type mul(value_type a, value_type b) const {
        return static_cast<value_type>((std::uint64_t{a} * b) % p_);
    }
    value_type inv(value_type a) const;

    std::string to_string(value_type a) const { return std::to_string(a); }
    FieldSpec spec() const { return FieldSpec::gf(p_); }

    friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

private:
    std::uint32_t p_;
};

/// The rationals, exact via GMP.
class RationalField {
public:
    using value_type = mpq_class;

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_int(long long v) const { return mpq_class(static_cast<long>(v)); }
    value_type from_rational(const mpq_class& q) const { return q; }

    bool is_zero(const value_type& a) const { return sgn(a) == 0; }
    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type inv(const value_type& a) const;

    std::string to_string(const value_type& a) const { return a.get_str(); }
    FieldSpec spec() const { return FieldSpec::rational(); }

    friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

template <class F>
concept Field = requires(const F f, typename F::value_type a) {
    { f.zero() } -> std::convertible_to<typename F::value_type>;
    { f.one() } -> std::convertible_to<typename F::value_type>;
    { f.from_int(1LL) } -> std::convertible_to<typename F::value_type>;
    { f.is_zero(a) } -> std::convertible_to<bool>;
    { f.add(a, a) } -> std::convertible_to<typename F::value_type>;
    { f.sub(a, a) } -> std::convertible_to<typename F::value_type>;
    { f.mul(a, a) } -> std::convertible_to<typename F::value_type>;
    { f.inv(a) } -> std::convertible_to<typename F::value_type>;
    { f.spec() } -> std::same_as<FieldSpec>;
};

/// Calls fn with a PrimeField or RationalField matching spec.
template <class Fn>
decltype(auto) visit_field(const FieldSpec& spec, Fn&& fn) {
    if (spec.kind == FieldSpec::Kind::rational) {
        return std::forward<Fn>(fn)(RationalField{});
    }
    return std::forward<Fn>(fn)(PrimeField{spec.characteristic});
}

/// Parses "3", "-2", "1/2" into an exact rational.
mpq_class parse_rational(const std::string& text);

}  // namespace cadph
