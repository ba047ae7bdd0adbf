#include "fractalsep/params.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fractalsep {

FractalParams FractalParams::create(int d, int b, std::vector<int> A, int m) {
    if (d < 2) throw std::invalid_argument("d must be >= 2, got " + std::to_string(d));
    if (b < 3) throw std::invalid_argument("b must be >= 3, got " + std::to_string(b));
    std::sort(A.begin(), A.end());
    A.erase(std::unique(A.begin(), A.end()), A.end());
    for (int a : A) {
        if (a < 0 || a >= b)
            throw std::invalid_argument("digit " + std::to_string(a) + " outside [0, " +
                                        std::to_string(b) + ")");
    }
    if (m < 0 || m > d)
        throw std::invalid_argument("m must be in [0, d], got " + std::to_string(m));
    FractalParams p;
    p.d = d;
    p.b = b;
    p.A = std::move(A);
    p.m = m;
    return p;
}

FractalParams FractalParams::carpet() { return create(2, 3, {1}, 1); }

FractalParams FractalParams::menger() { return create(3, 3, {1}, 1); }

std::string FractalParams::describe() const {
    std::ostringstream os;
    os << "d=" << d << ",b=" << b << ",A={";
    for (std::size_t i = 0; i < A.size(); ++i) {
        if (i) os << ' ';
        os << A[i];
    }
    os << "},m=" << m;
    return os.str();
}

int digit(std::int64_t x, int j, int b) {
    for (int i = 0; i < j; ++i) x /= b;
    return static_cast<int>(x % b);
}

int count_a_digits(std::int64_t x, int k, int b, const std::vector<int>& A) {
    int c = 0;
    for (int j = 0; j < k; ++j) {
        int dg = static_cast<int>(x % b);
        x /= b;
        if (std::binary_search(A.begin(), A.end(), dg)) ++c;
    }
    return c;
}

std::int64_t ipow64(int b, int k) {
    std::int64_t r = 1;
    for (int i = 0; i < k; ++i) {
        if (r > std::numeric_limits<std::int64_t>::max() / b)
            throw std::overflow_error("b^k overflows int64");
        r *= b;
    }
    return r;
}

}  // namespace fractalsep
