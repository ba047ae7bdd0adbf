#include "fractalsep/counting.hpp"

#include <cmath>
#include <stdexcept>

namespace fractalsep {

BigInt binomial(int n, int r) {
    if (r < 0 || r > n) return 0;
    BigInt v = 1;
    for (int i = 0; i < r; ++i) {
        v *= (n - i);
        v /= (i + 1);
    }
    return v;
}

namespace {

BigInt bigpow(BigInt base, int e) {
    BigInt r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

// Tuples of `slots` base-b digits with at most `cap` entries in A.
BigInt column_configs(int slots, int b, int a_size, int cap) {
    BigInt total = 0;
    for (int i = 0; i <= cap && i <= slots; ++i)
        total += binomial(slots, i) * bigpow(a_size, i) * bigpow(b - a_size, slots - i);
    return total;
}

}  // namespace

BigInt vertex_column_configs(const FractalParams& p) {
    return column_configs(p.d, p.b, static_cast<int>(p.A.size()), p.m);
}

BigInt vertex_count_formula(const FractalParams& p, int k) {
    return bigpow(vertex_column_configs(p), k);
}

BigInt line_column_configs(const FractalParams& p) {
    // With A empty no digit is ever restricted, so every line is complete and
    // the fixed coordinates range over all b^{d-1} columns.  Otherwise the
    // varying coordinate can always place a digit in A, which costs one of
    // the m slots in every column of the fixed coordinates.
    int cap = p.m - (p.A.empty() ? 0 : 1);
    if (cap < 0) return 0;
    return column_configs(p.d - 1, p.b, static_cast<int>(p.A.size()), cap);
}

BigInt complete_lines_count(const FractalParams& p, int k) {
    // N^0 = 1 even for N = 0: the level-0 line is the single vertex.
    return bigpow(line_column_configs(p), k);
}

BigInt plane_column_configs(const FractalParams& p) {
    return column_configs(p.d - 1, p.b, static_cast<int>(p.A.size()), p.m);
}

double separation_exponent(const FractalParams& p) {
    BigInt n = line_column_configs(p);
    if (n == 0)
        throw std::domain_error("separation exponent undefined: no complete line configurations");
    if (n == 1) return 0.0;
    double logn = std::log(n.convert_to<double>());
    return logn / (logn + std::log(static_cast<double>(p.b)));
}

BigInt constructive_bound(const FractalParams& p, int k) {
    BigInt n = line_column_configs(p);
    if (n < 1)
        throw std::domain_error("constructive bound needs >= 1 line config per column, have " +
                                n.str());
    BigInt geo = 0;  // 1 + N + ... + N^{k-1}
    for (int j = 0; j < k; ++j) geo = geo * n + 1;
    return BigInt(2 * p.d * p.b) * bigpow(n, k + 1) +
           BigInt(2 * p.d) * bigpow(p.b, p.d - 1) * geo + 1;
}

double constructive_coefficient(const FractalParams& p) {
    BigInt n = line_column_configs(p);
    if (n < 2)
        throw std::domain_error("constructive coefficient needs >= 2 line configs per column");
    double nd = n.convert_to<double>();
    double planes = std::pow(static_cast<double>(p.b), p.d - 1);
    return 2.0 * p.d * p.b * nd + 2.0 * p.d * planes / (nd - 1.0);
}

}  // namespace fractalsep
