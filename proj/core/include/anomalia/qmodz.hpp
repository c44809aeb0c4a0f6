#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include "anomalia/errors.hpp"

namespace anomalia {

/**
 * Exact rational residue in Q/Z, stored as the canonical representative
 * num/den with 0 <= num < den and gcd(num, den) = 1. Every quadratic form
 * value and conformal weight in the library is one of these.
 */
class QmodZ {
public:
    constexpr QmodZ() = default;

    QmodZ(std::int64_t num, std::int64_t den) {
        if (den == 0) throw InvalidInputError("QmodZ: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        num %= den;
        if (num < 0) num += den;
        const std::int64_t g = std::gcd(num, den);
        num_ = num / g;
        den_ = den / g;
    }

    static QmodZ zero() { return QmodZ{}; }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_zero() const { return num_ == 0; }

    QmodZ operator+(const QmodZ& o) const {
        return QmodZ(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    QmodZ operator-(const QmodZ& o) const {
        return QmodZ(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    QmodZ operator-() const { return QmodZ(-num_, den_); }

    /// Integer scaling k * q (exact, reduced).
    QmodZ scaled(std::int64_t k) const { return QmodZ(num_ * k, den_); }

    QmodZ& operator+=(const QmodZ& o) { return *this = *this + o; }
    QmodZ& operator-=(const QmodZ& o) { return *this = *this - o; }

    bool operator==(const QmodZ& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const QmodZ& o) const { return !(*this == o); }
    bool operator<(const QmodZ& o) const { return num_ * o.den_ < o.num_ * den_; }
    bool operator>(const QmodZ& o) const { return o < *this; }
    bool operator<=(const QmodZ& o) const { return !(o < *this); }

    /// Representative in [0, 1) as a double; only the modular-data module
    /// should need this.
    double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// Canonical "num/den" string; "0" for the zero residue.
    std::string str() const {
        if (num_ == 0) return "0";
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Parses "num/den" or a bare integer; the value is reduced mod 1.
    static QmodZ parse(std::string_view s);

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline QmodZ QmodZ::parse(std::string_view s) {
    if (s.empty()) throw InvalidInputError("QmodZ: empty string");
    const auto slash = s.find('/');
    const auto to_int = [](std::string_view t) -> std::int64_t {
        if (t.empty()) throw InvalidInputError("QmodZ: malformed rational");
        std::size_t i = 0;
        bool neg = false;
        if (t[0] == '-' || t[0] == '+') { neg = t[0] == '-'; i = 1; }
        if (i == t.size()) throw InvalidInputError("QmodZ: malformed rational");
        std::int64_t v = 0;
        for (; i < t.size(); ++i) {
            if (t[i] < '0' || t[i] > '9') throw InvalidInputError("QmodZ: malformed rational");
            v = v * 10 + (t[i] - '0');
        }
        return neg ? -v : v;
    };
    if (slash == std::string_view::npos) return QmodZ(to_int(s), 1);
    return QmodZ(to_int(s.substr(0, slash)), to_int(s.substr(slash + 1)));
}

} // namespace anomalia
