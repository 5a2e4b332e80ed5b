#pragma once

#include <cstdint>
#include <numeric>

#include "asymlat/errors.hpp"

namespace asymlat {

struct Label2 {
    std::int64_t n = 0;
    std::int64_t m = 0;

    friend Label2 operator+(Label2 a, Label2 b) { return {a.n + b.n, a.m + b.m}; }
    friend Label2 operator-(Label2 a, Label2 b) { return {a.n - b.n, a.m - b.m}; }
    friend bool operator==(Label2 a, Label2 b) { return a.n == b.n && a.m == b.m; }
    friend bool operator!=(Label2 a, Label2 b) { return !(a == b); }
    friend bool operator<(Label2 a, Label2 b) {
        return a.n < b.n || (a.n == b.n && a.m < b.m);
    }
};

struct Label2Hash {
    std::size_t operator()(Label2 k) const noexcept {
        std::uint64_t a = static_cast<std::uint64_t>(k.n) * 0x9e3779b97f4a7c15ull;
        a ^= static_cast<std::uint64_t>(k.m) + 0xbf58476d1ce4e5b9ull + (a << 6) + (a >> 2);
        return static_cast<std::size_t>(a ^ (a >> 31));
    }
};

// Row-major [[a,b],[c,d]] with det = +1 (orientation preserving).
struct UnimodularMatrix2 {
    std::int64_t a, b, c, d;

    UnimodularMatrix2(std::int64_t a_, std::int64_t b_, std::int64_t c_, std::int64_t d_)
        : a(a_), b(b_), c(c_), d(d_) {
        if (a * d - b * c != 1)
            fail("NotUnimodular", "matrix must have determinant +1");
    }

    static UnimodularMatrix2 identity() { return {1, 0, 0, 1}; }

    std::int64_t det() const { return a * d - b * c; }
    UnimodularMatrix2 inverse() const { return {d, -b, -c, a}; }
    UnimodularMatrix2 transpose() const { return {a, c, b, d}; }

    Label2 apply(Label2 k) const { return {a * k.n + b * k.m, c * k.n + d * k.m}; }

    friend UnimodularMatrix2 operator*(const UnimodularMatrix2& L, const UnimodularMatrix2& R) {
        return {L.a * R.a + L.b * R.c, L.a * R.b + L.b * R.d,
                L.c * R.a + L.d * R.c, L.c * R.b + L.d * R.d};
    }
    friend bool operator==(const UnimodularMatrix2& x, const UnimodularMatrix2& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
};

// Orientation-preserving integral affine transform k -> linear k + shift.
struct AffineInt2 {
    UnimodularMatrix2 linear;
    Label2 shift;

    static AffineInt2 identity() { return {UnimodularMatrix2::identity(), {0, 0}}; }

    Label2 apply(Label2 k) const { return linear.apply(k) + shift; }

    AffineInt2 inverse() const {
        UnimodularMatrix2 inv = linear.inverse();
        Label2 s = inv.apply(shift);
        return {inv, {-s.n, -s.m}};
    }
    // (this \circ other)(k) = this(other(k))
    friend AffineInt2 operator*(const AffineInt2& f, const AffineInt2& g) {
        return {f.linear * g.linear, f.linear.apply(g.shift) + f.shift};
    }
    friend bool operator==(const AffineInt2& x, const AffineInt2& y) {
        return x.linear == y.linear && x.shift == y.shift;
    }
};

inline Label2 affine_apply(const AffineInt2& t, Label2 k) { return t.apply(k); }

} // namespace asymlat
