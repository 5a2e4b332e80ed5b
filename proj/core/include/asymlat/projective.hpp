#pragma once

#include <cmath>

#include "asymlat/errors.hpp"
#include "asymlat/integer_affine.hpp"

namespace asymlat {

// A point [p : q] of RP^1. The homogeneous pair is stored as given so that
// integer inputs stay exact through Möbius arithmetic; canonical() produces
// the normalized representative (unit length, first nonzero coordinate
// positive) used for comparisons.
struct Projective1 {
    double p, q;

    Projective1(double p_, double q_) : p(p_), q(q_) {
        if ((p == 0.0 && q == 0.0) || !std::isfinite(p) || !std::isfinite(q))
            fail("InvalidProjectivePoint", "homogeneous pair must be finite and nonzero");
    }

    static Projective1 from_ratio(double w) {
        if (std::isinf(w)) return {1.0, 0.0};
        return {w, 1.0};
    }

    Projective1 canonical() const {
        double cp = p, cq = q;
        // iterate to a fixed point so canonicalizing twice is bit-identical
        for (int i = 0; i < 4; ++i) {
            double n = std::hypot(cp, cq);
            if (n == 1.0) break;
            cp /= n;
            cq /= n;
        }
        if (cp < 0.0 || (cp == 0.0 && cq < 0.0)) { cp = -cp; cq = -cq; }
        if (cp == 0.0) cp = 0.0; // normalize -0
        return {cp, cq};
    }

    // ratio p/q in the one-point compactification (infinity when q = 0)
    double ratio() const {
        if (q == 0.0) return std::numeric_limits<double>::infinity();
        return p / q;
    }
};

// Action of A = [[a,b],[c,d]] on RP^1: [p:q] -> [a p + c q : b p + d q].
// This homogeneous rule reproduces the scalar Möbius map
// w -> (a w + c)/(b w + d) on ratios w = p/q, and maps integer pairs to
// integer pairs. No normalization is applied here.
Projective1 mobius_apply(const UnimodularMatrix2& A, const Projective1& w);

// Angular distance between the two lines through the origin, in [0, pi/2].
double projective_distance(const Projective1& w1, const Projective1& w2);

// Exact projective equality: cross product of homogeneous pairs vanishes.
inline bool projective_same_exact(const Projective1& w1, const Projective1& w2) {
    return w1.p * w2.q - w2.p * w1.q == 0.0;
}

} // namespace asymlat
