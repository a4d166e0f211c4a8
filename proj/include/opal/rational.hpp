#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace opal {

struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Arbitrary-precision signed integer, sign + little-endian base-2^32 magnitude.
class BigInt {
public:
    BigInt() = default;
    BigInt(long long v) {
        if (v == 0) return;
        sign_ = v < 0 ? -1 : 1;
        unsigned long long m = v < 0 ? ~static_cast<unsigned long long>(v) + 1ULL
                                     : static_cast<unsigned long long>(v);
        while (m) {
            limbs_.push_back(static_cast<uint32_t>(m & 0xffffffffULL));
            m >>= 32;
        }
    }

    static BigInt parse(std::string_view s) {
        if (s.empty()) throw input_error("empty integer literal");
        int sg = 1;
        size_t i = 0;
        if (s[0] == '-') { sg = -1; i = 1; }
        else if (s[0] == '+') { i = 1; }
        if (i == s.size()) throw input_error("bad integer literal");
        BigInt r;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9')
                throw input_error("bad integer literal: " + std::string(s));
            r = r.mul_small(10);
            r = r.add_small(static_cast<uint32_t>(s[i] - '0'));
        }
        if (!r.is_zero()) r.sign_ = sg;
        return r;
    }

    bool is_zero() const { return sign_ == 0; }
    bool is_negative() const { return sign_ < 0; }
    int sign() const { return sign_; }

    friend BigInt operator-(const BigInt& a) {
        BigInt r = a;
        r.sign_ = -r.sign_;
        return r;
    }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0) return b;
        if (b.sign_ == 0) return a;
        BigInt r;
        if (a.sign_ == b.sign_) {
            r.limbs_ = add_mag(a.limbs_, b.limbs_);
            r.sign_ = a.sign_;
        } else {
            int c = cmp_mag(a.limbs_, b.limbs_);
            if (c == 0) return BigInt();
            if (c > 0) {
                r.limbs_ = sub_mag(a.limbs_, b.limbs_);
                r.sign_ = a.sign_;
            } else {
                r.limbs_ = sub_mag(b.limbs_, a.limbs_);
                r.sign_ = b.sign_;
            }
        }
        return r;
    }

    friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0 || b.sign_ == 0) return BigInt();
        BigInt r;
        r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
        for (size_t i = 0; i < a.limbs_.size(); ++i) {
            uint64_t carry = 0;
            for (size_t j = 0; j < b.limbs_.size(); ++j) {
                uint64_t cur = static_cast<uint64_t>(a.limbs_[i]) * b.limbs_[j] +
                               r.limbs_[i + j] + carry;
                r.limbs_[i + j] = static_cast<uint32_t>(cur);
                carry = cur >> 32;
            }
            size_t k = i + b.limbs_.size();
            while (carry) {
                uint64_t cur = r.limbs_[k] + carry;
                r.limbs_[k] = static_cast<uint32_t>(cur);
                carry = cur >> 32;
                ++k;
            }
        }
        trim(r.limbs_);
        r.sign_ = a.sign_ * b.sign_;
        return r;
    }

    // Truncated division (quotient rounds toward zero, remainder has sign of a).
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
        if (b.sign_ == 0) throw input_error("division by zero");
        if (a.sign_ == 0) { q = BigInt(); r = BigInt(); return; }
        std::vector<uint32_t> qm, rm;
        divmod_mag(a.limbs_, b.limbs_, qm, rm);
        q.limbs_ = std::move(qm);
        r.limbs_ = std::move(rm);
        trim(q.limbs_);
        trim(r.limbs_);
        q.sign_ = q.limbs_.empty() ? 0 : a.sign_ * b.sign_;
        r.sign_ = r.limbs_.empty() ? 0 : a.sign_;
    }

    friend BigInt operator/(const BigInt& a, const BigInt& b) {
        BigInt q, r;
        divmod(a, b, q, r);
        return q;
    }
    friend BigInt operator%(const BigInt& a, const BigInt& b) {
        BigInt q, r;
        divmod(a, b, q, r);
        return r;
    }

    friend bool operator==(const BigInt& a, const BigInt& b) {
        return a.sign_ == b.sign_ && a.limbs_ == b.limbs_;
    }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
    friend bool operator<(const BigInt& a, const BigInt& b) {
        if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
        int c = cmp_mag(a.limbs_, b.limbs_);
        return a.sign_ >= 0 ? c < 0 : c > 0;
    }
    friend bool operator>(const BigInt& a, const BigInt& b) { return b < a; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return !(b < a); }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return !(a < b); }

    BigInt abs() const {
        BigInt r = *this;
        if (r.sign_ < 0) r.sign_ = 1;
        return r;
    }

    static BigInt gcd(BigInt a, BigInt b) {
        a = a.abs();
        b = b.abs();
        while (!b.is_zero()) {
            BigInt q, r;
            divmod(a, b, q, r);
            a = std::move(b);
            b = std::move(r);
        }
        return a;
    }

    std::string to_string() const {
        if (sign_ == 0) return "0";
        std::vector<uint32_t> m = limbs_;
        std::string digits;
        while (!m.empty()) {
            uint64_t rem = 0;
            for (size_t i = m.size(); i-- > 0;) {
                uint64_t cur = (rem << 32) | m[i];
                m[i] = static_cast<uint32_t>(cur / 1000000000ULL);
                rem = cur % 1000000000ULL;
            }
            trim(m);
            std::string chunk = std::to_string(rem);
            if (!m.empty()) chunk = std::string(9 - chunk.size(), '0') + chunk;
            digits = chunk + digits;
        }
        return sign_ < 0 ? "-" + digits : digits;
    }

private:
    int sign_ = 0;
    std::vector<uint32_t> limbs_;

    BigInt mul_small(uint32_t m) const {
        if (sign_ == 0 || m == 0) return BigInt();
        BigInt r;
        r.sign_ = sign_;
        uint64_t carry = 0;
        for (uint32_t limb : limbs_) {
            uint64_t cur = static_cast<uint64_t>(limb) * m + carry;
            r.limbs_.push_back(static_cast<uint32_t>(cur));
            carry = cur >> 32;
        }
        if (carry) r.limbs_.push_back(static_cast<uint32_t>(carry));
        return r;
    }

    BigInt add_small(uint32_t v) const {
        if (v == 0) return *this;
        if (sign_ < 0) throw input_error("internal: add_small on negative");
        BigInt r = *this;
        r.sign_ = 1;
        uint64_t carry = v;
        for (size_t i = 0; i < r.limbs_.size() && carry; ++i) {
            uint64_t cur = r.limbs_[i] + carry;
            r.limbs_[i] = static_cast<uint32_t>(cur);
            carry = cur >> 32;
        }
        if (carry) r.limbs_.push_back(static_cast<uint32_t>(carry));
        return r;
    }

    static void trim(std::vector<uint32_t>& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    }

    static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }

    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a,
                                         const std::vector<uint32_t>& b) {
        const auto& big = a.size() >= b.size() ? a : b;
        const auto& small = a.size() >= b.size() ? b : a;
        std::vector<uint32_t> r = big;
        uint64_t carry = 0;
        for (size_t i = 0; i < r.size(); ++i) {
            uint64_t cur = static_cast<uint64_t>(r[i]) + carry +
                           (i < small.size() ? small[i] : 0);
            r[i] = static_cast<uint32_t>(cur);
            carry = cur >> 32;
        }
        if (carry) r.push_back(static_cast<uint32_t>(carry));
        return r;
    }

    // requires |a| >= |b|
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a,
                                         const std::vector<uint32_t>& b) {
        std::vector<uint32_t> r = a;
        int64_t borrow = 0;
        for (size_t i = 0; i < r.size(); ++i) {
            int64_t cur = static_cast<int64_t>(r[i]) - borrow -
                          (i < b.size() ? static_cast<int64_t>(b[i]) : 0);
            if (cur < 0) {
                cur += (int64_t(1) << 32);
                borrow = 1;
            } else {
                borrow = 0;
            }
            r[i] = static_cast<uint32_t>(cur);
        }
        trim(r);
        return r;
    }

    static size_t bit_length(const std::vector<uint32_t>& v) {
        if (v.empty()) return 0;
        uint32_t top = v.back();
        size_t bits = (v.size() - 1) * 32;
        while (top) { ++bits; top >>= 1; }
        return bits;
    }

    static bool get_bit(const std::vector<uint32_t>& v, size_t i) {
        size_t limb = i / 32, off = i % 32;
        if (limb >= v.size()) return false;
        return (v[limb] >> off) & 1u;
    }

    // binary long division on magnitudes; plenty at the coefficient sizes
    // exact rational elimination produces here
    static void divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                           std::vector<uint32_t>& q, std::vector<uint32_t>& r) {
        q.assign(a.size(), 0);
        r.clear();
        if (cmp_mag(a, b) < 0) { q.clear(); r = a; trim(r); return; }
        size_t n = bit_length(a);
        for (size_t i = n; i-- > 0;) {
            // r = (r << 1) | bit_i(a)
            uint32_t carry = get_bit(a, i) ? 1u : 0u;
            for (size_t k = 0; k < r.size(); ++k) {
                uint32_t nxt = r[k] >> 31;
                r[k] = (r[k] << 1) | carry;
                carry = nxt;
            }
            if (carry) r.push_back(carry);
            if (cmp_mag(r, b) >= 0) {
                r = sub_mag(r, b);
                size_t limb = i / 32;
                if (limb >= q.size()) q.resize(limb + 1, 0);
                q[limb] |= (1u << (i % 32));
            }
        }
        trim(q);
        trim(r);
    }
};

// Exact rational scalar, always in lowest terms with positive denominator.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {}
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    // accepts "p", "-p", "p/q"
    static Rational parse(std::string_view s) {
        auto slash = s.find('/');
        if (slash == std::string_view::npos) return Rational(BigInt::parse(s), BigInt(1));
        BigInt n = BigInt::parse(s.substr(0, slash));
        BigInt d = BigInt::parse(s.substr(slash + 1));
        if (d.is_zero()) throw input_error("rational with zero denominator: " + std::string(s));
        return Rational(std::move(n), std::move(d));
    }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw input_error("rational division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }

    std::string to_string() const {
        if (den_ == BigInt(1)) return num_.to_string();
        return num_.to_string() + "/" + den_.to_string();
    }

private:
    BigInt num_, den_;

    void normalize() {
        if (den_.is_zero()) throw input_error("rational with zero denominator");
        if (num_.is_zero()) { den_ = BigInt(1); return; }
        if (den_.is_negative()) { num_ = -num_; den_ = -den_; }
        BigInt g = BigInt::gcd(num_, den_);
        if (!(g == BigInt(1))) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
    }
};

}  // namespace opal
