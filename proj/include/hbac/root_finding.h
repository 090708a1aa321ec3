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

#ifndef HBAC_ROOT_FINDING_H
#define HBAC_ROOT_FINDING_H

#include <functional>

namespace hbac {

/// Bracketed bisection. Requires f(lo) and f(hi) to have strictly opposite
/// signs (verified; DomainError otherwise) and stops once the bracket is
/// narrower than x_tol.
double bisect_root(const std::function<double(double)> &f, double lo, double hi, double x_tol = 1e-12);

/// Largest x in (lo, hi] where f changes sign from positive (below) to
/// nonpositive (above). The interval is scanned from hi downward on a grid
/// of `samples` points and the first sign change found is refined by
/// bisection. Returns lo when f is nonpositive on the whole grid.
double largest_descending_root(
    const std::function<double(double)> &f, double lo, double hi, int samples = 2000, double x_tol = 1e-12);

}  // namespace hbac

#endif
