#pragma once

#include <functional>
#include <vector>

namespace dln {

using ScalarFunction = std::function<double(double)>;

// Bisection on [lo, hi] where f(lo) and f(hi) differ in sign (or one is zero).
// Runs until the interval cannot be halved further in double precision.
double bisect(const ScalarFunction& f, double lo, double hi);

struct ScanOptions {
    int points = 10000;
    bool geometric = true;
    double dedup_rel = 1e-8;
};

// Samples f on a grid over [lo, hi], bisects every sign change and returns the
// sorted, deduplicated roots.
std::vector<double> scan_roots(const ScalarFunction& f, double lo, double hi, const ScanOptions& opt = {});

}  // namespace dln
