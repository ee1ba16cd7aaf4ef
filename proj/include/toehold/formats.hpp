#pragma once

#include <cstdint>
#include <string>

#include "toehold/model.hpp"

namespace toehold::formats {

/// {"n": 1, "sigma": "2/3", "x0": "4/9", "p0": "20/27", "x1": "2/3", "p1": "8/9", "profit": "8/9"}
std::string model_point_json(const model::ModelPoint& p);

std::string model_point_csv_header();
/// Decimals with `digits` places, rounded half-to-even from the exact values.
std::string model_point_csv_row(const model::ModelPoint& p, int digits);

/// n, then <q>_exact,<q>_approx,<q>_scaled_residual for q in
/// profit, p0, p1, x0, x1, p1_minus_p0, x1_minus_x0.
std::string sweep_csv_header();

/// Exact values against the large-n approximants
///   profit ~ sqrt(n/pi), p1 ~ 1/2 + s, p0 ~ 1/2 + s/2, x1 ~ 1/2 + s/2,
///   x0 ~ 1/2 - s/(6n), p1 - p0 ~ x1 - x0 ~ s/2, with s = 1/sqrt(pi n),
/// and the scaled residual sqrt(pi n) (exact - approx). Irrational columns
/// are evaluated with 2*digits + 16 decimal digits of working precision.
std::string sweep_csv_row(std::int64_t n, int digits);

}  // namespace toehold::formats
