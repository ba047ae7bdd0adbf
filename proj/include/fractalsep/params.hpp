#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fractalsep {

// Parameters of the fractal family S(d, b, A, m).
//
// A level-k lattice piece lives in [0, b^k)^d.  A point belongs to it when,
// for every base-b digit position, the number of coordinates whose digit at
// that position lies in A is at most m.
struct FractalParams {
    int d = 2;                   // ambient dimension, >= 2
    int b = 3;                   // digit base, >= 3
    std::vector<int> A;          // forbidden digit set, strictly increasing, subset of [0, b)
    int m = 1;                   // per-column tolerance, 0 <= m <= d

    // Validates and normalizes (sorts A, drops duplicates).
    // Throws std::invalid_argument on out-of-range values.
    static FractalParams create(int d, int b, std::vector<int> A, int m);

    static FractalParams carpet();   // S(2, 3, {1}, 1): Sierpinski carpet graph
    static FractalParams menger();   // S(3, 3, {1}, 1): Menger sponge graph

    bool operator==(const FractalParams&) const = default;

    // Stable text form "d=2,b=3,A={1},m=1", used in cache keys and reports.
    std::string describe() const;
};

// Digit j (0 = least significant) of x in base b.  x must be >= 0.
int digit(std::int64_t x, int j, int b);

// Number of digits of A present among the base-b digits of x at positions
// 0..k-1, capped at position k.
int count_a_digits(std::int64_t x, int k, int b, const std::vector<int>& A);

// b^k as int64, throws std::overflow_error if it does not fit.
std::int64_t ipow64(int b, int k);

}  // namespace fractalsep
