#pragma once

// Exact rational vectors (weights) and a few dense rational linear-algebra
// helpers shared by the rest of the library.

#include <boost/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

// boost 1.74's mixed rational/int equality recurses forever once C++20 adds the
// reversed-operand candidates; exact non-template overloads win resolution.
namespace boost {
#define SPLINTER_RATIONAL_EQ(T)                                                                                    \
    inline bool operator==(const rational<std::int64_t>& a, T b) {                                               \
        return a.denominator() == 1 && a.numerator() == static_cast<std::int64_t>(b);                            \
    }                                                                                                            \
    inline bool operator==(T b, const rational<std::int64_t>& a) { return a == b; }                              \
    inline bool operator!=(const rational<std::int64_t>& a, T b) { return !(a == b); }                           \
    inline bool operator!=(T b, const rational<std::int64_t>& a) { return !(a == b); }
SPLINTER_RATIONAL_EQ(int)
SPLINTER_RATIONAL_EQ(long)
SPLINTER_RATIONAL_EQ(long long)
#undef SPLINTER_RATIONAL_EQ
}  // namespace boost

namespace splinter {

using Rational = boost::rational<std::int64_t>;

/// Rejected input (bad algebra name, non-dominant weight, rank mismatch, ...).
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An exact computation produced data that violates a mathematical invariant.
/// Always a bug (or a corrupted input that slipped past validation).
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline bool is_integer(const Rational& r) { return r.denominator() == 1; }

/// A vector with exact rational coordinates in the ambient orthogonal basis of
/// a root system. Coordinates are always kept reduced, so equality and
/// ordering are exact.
class Weight {
public:
    Weight() = default;
    explicit Weight(std::size_t dim) : coords_(dim, Rational(0)) {}
    explicit Weight(std::vector<Rational> coords) : coords_(std::move(coords)) {}
    Weight(std::initializer_list<Rational> coords) : coords_(coords) {}

    [[nodiscard]] std::size_t size() const { return coords_.size(); }
    [[nodiscard]] const Rational& operator[](std::size_t i) const { return coords_[i]; }
    Rational& operator[](std::size_t i) { return coords_[i]; }
    [[nodiscard]] const std::vector<Rational>& coords() const { return coords_; }

    [[nodiscard]] bool is_zero() const {
        return std::all_of(coords_.begin(), coords_.end(), [](const Rational& r) { return r == 0; });
    }

    Weight& operator+=(const Weight& o) {
        check_dim(o);
        for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
        return *this;
    }
    Weight& operator-=(const Weight& o) {
        check_dim(o);
        for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
        return *this;
    }
    Weight& operator*=(const Rational& s) {
        for (auto& c : coords_) c *= s;
        return *this;
    }

    friend Weight operator+(Weight a, const Weight& b) { return a += b; }
    friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
    friend Weight operator-(Weight a) {
        for (auto& c : a.coords_) c = -c;
        return a;
    }
    friend Weight operator*(const Rational& s, Weight a) { return a *= s; }
    friend Weight operator*(std::int64_t s, Weight a) { return a *= Rational(s); }

    friend bool operator==(const Weight& a, const Weight& b) { return a.coords_ == b.coords_; }
    friend bool operator!=(const Weight& a, const Weight& b) { return !(a == b); }
    friend bool operator<(const Weight& a, const Weight& b) {
        return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(), b.coords_.begin(),
                                            b.coords_.end());
    }

    [[nodiscard]] std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (i) s += ",";
            s += to_string(coords_[i]);
        }
        return s + ")";
    }

    friend std::ostream& operator<<(std::ostream& os, const Weight& w) { return os << w.str(); }

private:
    void check_dim(const Weight& o) const {
        if (o.coords_.size() != coords_.size())
            throw InvalidInput("weight dimension mismatch: " + std::to_string(coords_.size()) +
                               " vs " + std::to_string(o.coords_.size()));
    }

    std::vector<Rational> coords_;
};

using RationalMatrix = std::vector<std::vector<Rational>>;
using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Exact inverse by Gauss-Jordan elimination; nullopt when singular.
inline std::optional<RationalMatrix> invert(RationalMatrix a) {
    const std::size_t n = a.size();
    RationalMatrix inv(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        const Rational p = a[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            const Rational f = a[r][col];
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

/// Rank of a rational matrix (rows are vectors).
inline std::size_t matrix_rank(RationalMatrix a) {
    if (a.empty()) return 0;
    const std::size_t cols = a.front().size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < a.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < a.size() && a[pivot][col] == 0) ++pivot;
        if (pivot == a.size()) continue;
        std::swap(a[pivot], a[rank]);
        for (std::size_t r = rank + 1; r < a.size(); ++r) {
            if (a[r][col] == 0) continue;
            const Rational f = a[r][col] / a[rank][col];
            for (std::size_t j = col; j < cols; ++j) a[r][j] -= f * a[rank][j];
        }
        ++rank;
    }
    return rank;
}

inline std::string join_ints(const std::vector<std::int64_t>& v, const char* sep = ",") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(v[i]);
    }
    return s;
}

}  // namespace splinter

template <>
struct std::hash<splinter::Weight> {
    std::size_t operator()(const splinter::Weight& w) const noexcept {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (const auto& c : w.coords()) {
            h ^= std::hash<std::int64_t>{}(c.numerator()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h ^= std::hash<std::int64_t>{}(c.denominator()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};
