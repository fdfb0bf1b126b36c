#pragma once

#include <gmpxx.h>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace courant {

using Rational = mpq_class;

inline std::string rational_str(const Rational& q) {
    return q.get_str();
}

inline Rational parse_rational(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0) {
        throw std::invalid_argument("not a rational: '" + s + "'");
    }
    q.canonicalize();
    return q;
}

/// Deterministic source of small rationals and integers for seeded tests and
/// sample plans.  Numerators in [-9,9], denominators in [1,9].
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    int int_in(int lo, int hi) {
        std::uniform_int_distribution<int> d(lo, hi);
        return d(gen_);
    }

    Rational rational() {
        int num = int_in(-9, 9);
        int den = int_in(1, 9);
        Rational q(num, den);
        q.canonicalize();
        return q;
    }

    Rational nonzero_rational() {
        for (;;) {
            Rational q = rational();
            if (q != 0) return q;
        }
    }

    /// Rational in [lo, hi], resolution 1/16.
    Rational rational_in_box(const Rational& lo, const Rational& hi) {
        Rational t(int_in(0, 16), 16);
        t.canonicalize();
        return lo + t * (hi - lo);
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace courant
