// Copyright 2026 The hbac Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hbac/root_finding.h"

#include <cmath>

#include "hbac/bias.h"

namespace hbac {

double bisect_root(const std::function<double(double)> &f, double lo, double hi, double x_tol) {
    if (!(lo < hi)) {
        throw DomainError("bisection needs lo < hi");
    }
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) {
        return lo;
    }
    if (fhi == 0.0) {
        return hi;
    }
    if (std::signbit(flo) == std::signbit(fhi)) {
        throw DomainError("bisection bracket does not straddle a sign change");
    }
    while (hi - lo > x_tol) {
        double mid = lo + (hi - lo) / 2.0;
        if (mid <= lo || mid >= hi) {
            break;
        }
        double fmid = f(mid);
        if (fmid == 0.0) {
            return mid;
        }
        if (std::signbit(fmid) == std::signbit(flo)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return lo + (hi - lo) / 2.0;
}

double largest_descending_root(
    const std::function<double(double)> &f, double lo, double hi, int samples, double x_tol) {
    double step = (hi - lo) / samples;
    double upper = hi;
    double f_upper = f(upper);
    if (f_upper > 0.0) {
        return hi;
    }
    for (int k = samples - 1; k >= 1; k--) {
        double x = lo + step * k;
        double fx = f(x);
        if (fx > 0.0) {
            return bisect_root(f, x, upper, x_tol);
        }
        upper = x;
    }
    return lo;
}

}  // namespace hbac
