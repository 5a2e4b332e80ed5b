#include "asymlat/projective.hpp"

#include <algorithm>

namespace asymlat {

Projective1 mobius_apply(const UnimodularMatrix2& A, const Projective1& w) {
    double ap = static_cast<double>(A.a) * w.p + static_cast<double>(A.c) * w.q;
    double bq = static_cast<double>(A.b) * w.p + static_cast<double>(A.d) * w.q;
    return {ap, bq};
}

double projective_distance(const Projective1& w1, const Projective1& w2) {
    double cross = std::abs(w1.p * w2.q - w2.p * w1.q);
    double dot = std::abs(w1.p * w2.p + w1.q * w2.q);
    return std::atan2(cross, dot);
}

} // namespace asymlat
