// Exact coefficient arithmetic: arbitrary-precision rationals and prime fields.

#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace dgc {

struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Arbitrary-precision integer, sign + little-endian base-10^9 magnitude.
class BigInt {
  public:
    BigInt() = default;
    BigInt(long long v) {
        if (v < 0) { sign_ = -1; v = -v; }
        else if (v > 0) sign_ = 1;
        while (v) { mag_.push_back(static_cast<uint32_t>(v % BASE)); v /= BASE; }
    }

    static BigInt parse(const std::string& s) {
        if (s.empty()) throw error("BigInt: empty literal");
        size_t i = 0;
        int sg = 1;
        if (s[0] == '-') { sg = -1; i = 1; }
        else if (s[0] == '+') i = 1;
        if (i == s.size()) throw error("BigInt: bare sign");
        BigInt r;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') throw error("BigInt: bad digit in '" + s + "'");
            r = mul_small(r, 10);
            r = add_small(r, static_cast<uint32_t>(s[i] - '0'));
        }
        if (!r.mag_.empty()) r.sign_ = sg;
        return r;
    }

    bool is_zero() const { return sign_ == 0; }
    int sign() const { return sign_; }

    friend BigInt operator-(const BigInt& a) {
        BigInt r = a;
        r.sign_ = -r.sign_;
        return r;
    }
    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0) return b;
        if (b.sign_ == 0) return a;
        if (a.sign_ == b.sign_) {
            BigInt r;
            r.mag_ = add_mag(a.mag_, b.mag_);
            r.sign_ = a.sign_;
            return r;
        }
        int c = cmp_mag(a.mag_, b.mag_);
        if (c == 0) return BigInt();
        BigInt r;
        if (c > 0) { r.mag_ = sub_mag(a.mag_, b.mag_); r.sign_ = a.sign_; }
        else { r.mag_ = sub_mag(b.mag_, a.mag_); r.sign_ = b.sign_; }
        return r;
    }
    friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }
    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0 || b.sign_ == 0) return BigInt();
        BigInt r;
        r.mag_.assign(a.mag_.size() + b.mag_.size(), 0);
        for (size_t i = 0; i < a.mag_.size(); ++i) {
            uint64_t carry = 0;
            for (size_t j = 0; j < b.mag_.size(); ++j) {
                uint64_t cur = static_cast<uint64_t>(a.mag_[i]) * b.mag_[j] + r.mag_[i + j] + carry;
                r.mag_[i + j] = static_cast<uint32_t>(cur % BASE);
                carry = cur / BASE;
            }
            size_t k = i + b.mag_.size();
            while (carry) {
                uint64_t cur = r.mag_[k] + carry;
                r.mag_[k] = static_cast<uint32_t>(cur % BASE);
                carry = cur / BASE;
                ++k;
            }
        }
        r.trim();
        r.sign_ = a.sign_ * b.sign_;
        return r;
    }

    // Truncated quotient and matching remainder (sign of remainder = sign of a).
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
        if (b.sign_ == 0) throw error("BigInt: division by zero");
        if (cmp_mag(a.mag_, b.mag_) < 0) { q = BigInt(); r = a; return; }
        std::vector<uint32_t> qm, rm;
        divmod_mag(a.mag_, b.mag_, qm, rm);
        q.mag_ = std::move(qm);
        q.trim();
        q.sign_ = q.mag_.empty() ? 0 : a.sign_ * b.sign_;
        r.mag_ = std::move(rm);
        r.trim();
        r.sign_ = r.mag_.empty() ? 0 : a.sign_;
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
        return a.sign_ == b.sign_ && a.mag_ == b.mag_;
    }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
    friend bool operator<(const BigInt& a, const BigInt& b) {
        if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
        int c = cmp_mag(a.mag_, b.mag_);
        return a.sign_ >= 0 ? c < 0 : c > 0;
    }

    static BigInt gcd(BigInt a, BigInt b) {
        a.sign_ = a.mag_.empty() ? 0 : 1;
        b.sign_ = b.mag_.empty() ? 0 : 1;
        while (!b.is_zero()) {
            BigInt r = a % b;
            a = b;
            b = r;
        }
        return a;
    }

    std::string str() const {
        if (sign_ == 0) return "0";
        std::string s = sign_ < 0 ? "-" : "";
        s += std::to_string(mag_.back());
        for (size_t i = mag_.size() - 1; i-- > 0;) {
            std::string part = std::to_string(mag_[i]);
            s += std::string(9 - part.size(), '0') + part;
        }
        return s;
    }

    long long to_ll() const {
        long long v = 0;
        for (size_t i = mag_.size(); i-- > 0;) v = v * BASE + mag_[i];
        return sign_ < 0 ? -v : v;
    }

  private:
    static constexpr uint32_t BASE = 1000000000u;
    int sign_ = 0;
    std::vector<uint32_t> mag_;

    void trim() {
        while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
        if (mag_.empty()) sign_ = 0;
    }
    static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }
    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
        std::vector<uint32_t> r;
        uint64_t carry = 0;
        for (size_t i = 0; i < a.size() || i < b.size() || carry; ++i) {
            uint64_t cur = carry;
            if (i < a.size()) cur += a[i];
            if (i < b.size()) cur += b[i];
            r.push_back(static_cast<uint32_t>(cur % BASE));
            carry = cur / BASE;
        }
        return r;
    }
    // requires a >= b
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
        std::vector<uint32_t> r = a;
        int64_t borrow = 0;
        for (size_t i = 0; i < r.size(); ++i) {
            int64_t cur = static_cast<int64_t>(r[i]) - borrow - (i < b.size() ? b[i] : 0);
            if (cur < 0) { cur += BASE; borrow = 1; }
            else borrow = 0;
            r[i] = static_cast<uint32_t>(cur);
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }
    static BigInt mul_small(const BigInt& a, uint32_t m) {
        BigInt r;
        if (a.sign_ == 0 || m == 0) return r;
        uint64_t carry = 0;
        for (uint32_t limb : a.mag_) {
            uint64_t cur = static_cast<uint64_t>(limb) * m + carry;
            r.mag_.push_back(static_cast<uint32_t>(cur % BASE));
            carry = cur / BASE;
        }
        while (carry) { r.mag_.push_back(static_cast<uint32_t>(carry % BASE)); carry /= BASE; }
        r.sign_ = a.sign_;
        return r;
    }
    static BigInt add_small(const BigInt& a, uint32_t v) {
        BigInt b;
        if (v) { b.mag_.push_back(v); b.sign_ = 1; }
        return a + b;
    }
    // Schoolbook long division on magnitudes, one quotient limb at a time.
    static void divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                           std::vector<uint32_t>& q, std::vector<uint32_t>& r) {
        q.assign(a.size(), 0);
        std::vector<uint32_t> cur; // running remainder, little-endian
        for (size_t i = a.size(); i-- > 0;) {
            cur.insert(cur.begin(), a[i]);
            while (!cur.empty() && cur.back() == 0) cur.pop_back();
            // binary search the quotient limb: largest d with b*d <= cur
            uint32_t lo = 0, hi = BASE - 1, d = 0;
            while (lo <= hi) {
                uint32_t mid = lo + (hi - lo) / 2;
                BigInt t;
                t.mag_ = b;
                t.sign_ = 1;
                t = mul_small(t, mid);
                if (cmp_mag(t.mag_, cur) <= 0) { d = mid; lo = mid + 1; }
                else {
                    if (mid == 0) break;
                    hi = mid - 1;
                }
            }
            q[i] = d;
            if (d) {
                BigInt t;
                t.mag_ = b;
                t.sign_ = 1;
                t = mul_small(t, d);
                cur = sub_mag(cur, t.mag_);
            }
        }
        r = cur;
    }
};

// Reduced fraction of BigInts, denominator > 0.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {}
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { reduce(); }

    static Rational parse(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(BigInt::parse(s), BigInt(1));
        return Rational(BigInt::parse(s.substr(0, slash)), BigInt::parse(s.substr(slash + 1)));
    }

    bool is_zero() const { return num_.is_zero(); }
    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw error("Rational: division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

    std::string str() const {
        if (den_ == BigInt(1)) return num_.str();
        return num_.str() + "/" + den_.str();
    }

  private:
    BigInt num_, den_;
    void reduce() {
        if (den_.is_zero()) throw error("Rational: zero denominator");
        if (den_.sign() < 0) { num_ = -num_; den_ = -den_; }
        if (num_.is_zero()) { den_ = BigInt(1); return; }
        BigInt g = BigInt::gcd(num_, den_);
        num_ = num_ / g;
        den_ = den_ / g;
    }
};

// Coefficient ring descriptor: p == 0 means exact rationals, otherwise F_p.
struct Ring {
    long long p = 0;

    bool is_rational() const { return p == 0; }
    friend bool operator==(const Ring& a, const Ring& b) { return a.p == b.p; }
    friend bool operator!=(const Ring& a, const Ring& b) { return !(a == b); }
    std::string str() const { return p == 0 ? "q" : "fp " + std::to_string(p); }
};

// A single exact field element, tagged with its ring.
class Scalar {
  public:
    Scalar() = default;
    Scalar(Ring r, long long v) : ring_(r) {
        if (ring_.is_rational()) rat_ = Rational(v);
        else rem_ = norm(v, ring_.p);
    }
    Scalar(Ring r, Rational q) : ring_(r) {
        if (!ring_.is_rational()) throw error("Scalar: rational literal in F_p context");
        rat_ = std::move(q);
    }

    static Scalar parse(Ring r, const std::string& s) {
        if (r.is_rational()) return Scalar(r, Rational::parse(s));
        auto slash = s.find('/');
        if (slash == std::string::npos) return Scalar(r, BigInt::parse(s).to_ll() % r.p);
        Scalar n(r, BigInt::parse(s.substr(0, slash)).to_ll() % r.p);
        Scalar d(r, BigInt::parse(s.substr(slash + 1)).to_ll() % r.p);
        return n / d;
    }

    Ring ring() const { return ring_; }
    bool is_zero() const { return ring_.is_rational() ? rat_.is_zero() : rem_ == 0; }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        a.match(b);
        if (a.ring_.is_rational()) return Scalar(a.ring_, a.rat_ + b.rat_);
        return Scalar(a.ring_, a.rem_ + b.rem_);
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        a.match(b);
        if (a.ring_.is_rational()) return Scalar(a.ring_, a.rat_ - b.rat_);
        return Scalar(a.ring_, a.rem_ - b.rem_);
    }
    friend Scalar operator-(const Scalar& a) {
        if (a.ring_.is_rational()) return Scalar(a.ring_, -a.rat_);
        return Scalar(a.ring_, -a.rem_);
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        a.match(b);
        if (a.ring_.is_rational()) return Scalar(a.ring_, a.rat_ * b.rat_);
        return Scalar(a.ring_, static_cast<long long>(
            static_cast<__int128>(a.rem_) * b.rem_ % a.ring_.p));
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        a.match(b);
        if (b.is_zero()) throw error("Scalar: division by zero");
        if (a.ring_.is_rational()) return Scalar(a.ring_, a.rat_ / b.rat_);
        return a * b.inverse();
    }
    Scalar inverse() const {
        if (is_zero()) throw error("Scalar: inverse of zero");
        if (ring_.is_rational()) return Scalar(ring_, Rational(1) / rat_);
        // extended Euclid mod p
        long long t = 0, nt = 1, r = ring_.p, nr = rem_;
        while (nr != 0) {
            long long qq = r / nr;
            long long tmp = t - qq * nt; t = nt; nt = tmp;
            tmp = r - qq * nr; r = nr; nr = tmp;
        }
        return Scalar(ring_, t);
    }
    friend bool operator==(const Scalar& a, const Scalar& b) {
        if (a.ring_ != b.ring_) return false;
        return a.ring_.is_rational() ? a.rat_ == b.rat_ : a.rem_ == b.rem_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    std::string str() const { return ring_.is_rational() ? rat_.str() : std::to_string(rem_); }

  private:
    Ring ring_;
    Rational rat_;
    long long rem_ = 0;
    static long long norm(long long v, long long p) {
        v %= p;
        return v < 0 ? v + p : v;
    }
    void match(const Scalar& o) const {
        if (ring_ != o.ring_) throw error("Scalar: mixed coefficient rings");
    }
};

inline Scalar sign_scalar(Ring r, int exp_mod2) { return Scalar(r, exp_mod2 % 2 ? -1 : 1); }

} // namespace dgc
