#include "dln/root_finding.hpp"

#include "dln/errors.hpp"

#include <algorithm>
#include <cmath>

namespace dln {

double bisect(const ScalarFunction& f, double lo, double hi) {
    double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) throw NumericalFailure("bisect: endpoints do not bracket a sign change");
    for (int iter = 0; iter < 2000; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return std::abs(flo) <= std::abs(f(hi)) ? lo : hi;
}

std::vector<double> scan_roots(const ScalarFunction& f, double lo, double hi, const ScanOptions& opt) {
    if (!(hi > lo)) return {};
    if (opt.points < 2) throw InvalidInput("scan_roots: need at least two grid points");
    const bool geo = opt.geometric && lo > 0.0;
    std::vector<double> grid(opt.points);
    for (int i = 0; i < opt.points; ++i) {
        const double t = static_cast<double>(i) / (opt.points - 1);
        grid[i] = geo ? lo * std::pow(hi / lo, t) : lo + t * (hi - lo);
    }
    grid.front() = lo;
    grid.back() = hi;

    std::vector<double> roots;
    double prev = f(grid[0]);
    if (prev == 0.0) roots.push_back(grid[0]);
    for (int i = 1; i < opt.points; ++i) {
        const double cur = f(grid[i]);
        if (cur == 0.0) {
            roots.push_back(grid[i]);
        } else if (prev != 0.0 && (prev > 0.0) != (cur > 0.0)) {
            roots.push_back(bisect(f, grid[i - 1], grid[i]));
        }
        prev = cur;
    }
    std::sort(roots.begin(), roots.end());
    std::vector<double> unique;
    for (double r : roots) {
        if (unique.empty() || std::abs(r - unique.back()) > opt.dedup_rel * std::max(std::abs(r), 1e-300))
            unique.push_back(r);
    }
    return unique;
}

}  // namespace dln
