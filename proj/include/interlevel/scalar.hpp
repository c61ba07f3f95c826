#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "interlevel/rational.hpp"

namespace interlevel {

struct FieldMismatchError : std::runtime_error {
    explicit FieldMismatchError(const std::string& what) : std::runtime_error(what) {}
};

// Field tag: p == 0 means the rationals, otherwise the prime field F_p (p < 2^31).
class FieldId {
  public:
    FieldId() : p_(0) {}
    static FieldId rationals() { return FieldId(); }
    static FieldId prime(std::uint32_t p) {
        if (!is_prime(p)) throw std::invalid_argument("F_p requires a prime modulus, got " + std::to_string(p));
        FieldId f;
        f.p_ = p;
        return f;
    }
    static FieldId parse(const std::string& s) {
        if (s == "Q") return rationals();
        if (s.size() >= 2 && s[0] == 'F') {
            const auto mod = std::stoull(s.substr(1));
            if (mod >= (1ull << 31)) throw std::invalid_argument("prime modulus out of range: " + s);
            return prime(static_cast<std::uint32_t>(mod));
        }
        throw std::invalid_argument("unknown field \"" + s + "\" (expected Q or F<p>)");
    }

    bool is_rational() const { return p_ == 0; }
    std::uint32_t p() const { return p_; }
    std::string to_string() const { return is_rational() ? "Q" : "F" + std::to_string(p_); }
    bool operator==(const FieldId& o) const { return p_ == o.p_; }
    bool operator!=(const FieldId& o) const { return p_ != o.p_; }

    static bool is_prime(std::uint64_t n) {
        if (n < 2) return false;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

  private:
    std::uint32_t p_;
};

// Exact field element. F_p values are kept as representatives in [0, p).
class Scalar {
  public:
    Scalar() : fp_(0) {}
    Scalar(FieldId f, long long v) : field_(f) {
        if (field_.is_rational())
            q_ = Rational(v);
        else
            fp_ = normalize(v, field_.p());
    }
    Scalar(FieldId f, const Rational& v) : field_(f) {
        if (field_.is_rational()) {
            q_ = v;
        } else {
            fp_ = from_rational(v, field_.p());
        }
    }

    static Scalar zero(FieldId f) { return Scalar(f, 0); }
    static Scalar one(FieldId f) { return Scalar(f, 1); }

    const FieldId& field() const { return field_; }
    bool is_zero() const { return field_.is_rational() ? q_ == 0 : fp_ == 0; }

    Scalar operator+(const Scalar& o) const {
        check(o);
        if (field_.is_rational()) return make(field_, q_ + o.q_);
        return make_fp(field_, (fp_ + o.fp_) % field_.p());
    }
    Scalar operator-(const Scalar& o) const {
        check(o);
        if (field_.is_rational()) return make(field_, q_ - o.q_);
        return make_fp(field_, (fp_ + field_.p() - o.fp_) % field_.p());
    }
    Scalar operator*(const Scalar& o) const {
        check(o);
        if (field_.is_rational()) return make(field_, q_ * o.q_);
        return make_fp(field_, (fp_ * o.fp_) % field_.p());
    }
    Scalar operator-() const {
        if (field_.is_rational()) return make(field_, -q_);
        return make_fp(field_, fp_ == 0 ? 0 : field_.p() - fp_);
    }
    Scalar inverse() const {
        if (is_zero()) throw std::domain_error("inverse of zero");
        if (field_.is_rational()) return make(field_, Rational(1) / q_);
        return make_fp(field_, pow_mod(fp_, field_.p() - 2, field_.p()));
    }
    Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }

    bool operator==(const Scalar& o) const {
        if (field_ != o.field_) return false;
        return field_.is_rational() ? q_ == o.q_ : fp_ == o.fp_;
    }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // Rational value for Q; representative in [0, p) for F_p.
    Rational as_rational() const { return field_.is_rational() ? q_ : Rational(fp_); }
    std::string to_string() const {
        return field_.is_rational() ? rat_to_string(q_) : std::to_string(static_cast<long long>(fp_));
    }

  private:
    static Scalar make(FieldId f, Rational v) {
        Scalar s;
        s.field_ = f;
        s.q_ = std::move(v);
        return s;
    }
    static Scalar make_fp(FieldId f, std::int64_t v) {
        Scalar s;
        s.field_ = f;
        s.fp_ = v;
        return s;
    }
    static std::int64_t normalize(long long v, std::uint32_t p) {
        auto r = v % static_cast<long long>(p);
        if (r < 0) r += p;
        return r;
    }
    static std::int64_t from_rational(const Rational& v, std::uint32_t p) {
        const BigInt num = numerator(v) % p;
        const BigInt den = denominator(v) % p;
        auto n = normalize(num.convert_to<long long>(), p);
        auto d = normalize(den.convert_to<long long>(), p);
        if (d == 0) throw std::domain_error("rational has no image in F_" + std::to_string(p));
        return (n * pow_mod(d, p - 2, p)) % p;
    }
    static std::int64_t pow_mod(std::int64_t base, std::uint64_t e, std::uint32_t p) {
        std::int64_t acc = 1 % p;
        base %= p;
        while (e) {
            if (e & 1) acc = (acc * base) % p;
            base = (base * base) % p;
            e >>= 1;
        }
        return acc;
    }
    void check(const Scalar& o) const {
        if (field_ != o.field_)
            throw FieldMismatchError("scalar field mismatch: " + field_.to_string() + " vs " + o.field_.to_string());
    }

    FieldId field_;
    std::int64_t fp_ = 0;
    Rational q_;
};

}  // namespace interlevel
