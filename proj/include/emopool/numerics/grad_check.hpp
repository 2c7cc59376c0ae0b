// Copyright 2026 The emopool Authors
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace emopool {

struct GradCheckResult {
    double max_rel_error = 0.0;
    std::size_t worst_index = 0;
    double analytic = 0.0;
    double numeric = 0.0;
};

inline double relative_error(double a, double n) {
    return std::abs(a - n) / std::max({std::abs(a), std::abs(n), 1e-8});
}

// Compares an analytic gradient with central finite differences
// (f(x+eps) - f(x-eps)) / (2 eps), coordinate by coordinate. Runs in double
// precision only.
//
//   value(std::span<const double>)    -> double
//   gradient(std::span<const double>) -> std::vector<double>, same length as point
template <class Value, class Gradient>
GradCheckResult grad_check(Value&& value, Gradient&& gradient, std::span<const double> point,
                           double eps = 1e-5) {
    const std::vector<double> analytic = gradient(point);
    std::vector<double> x(point.begin(), point.end());
    GradCheckResult result;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double saved = x[i];
        x[i] = saved + eps;
        const double fp = value(std::span<const double>(x));
        x[i] = saved - eps;
        const double fm = value(std::span<const double>(x));
        x[i] = saved;
        const double numeric = (fp - fm) / (2.0 * eps);
        const double err = relative_error(analytic[i], numeric);
        if (err > result.max_rel_error || i == 0) {
            result = {err, i, analytic[i], numeric};
        }
    }
    return result;
}

}  // namespace emopool
