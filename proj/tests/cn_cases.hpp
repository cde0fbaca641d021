// Explicit case lists for transitive representations of C_2 and C_3 with
// dimensions in {0, 1}; a[i] is the scalar on arrow i+1 (0 when an end is zero).
#pragma once

#include <array>
#include <vector>

namespace cn_cases {

// Index of the matching case (1-based), or 0.
inline int c2_case(const std::array<int, 2>& h, const std::array<double, 2>& a) {
  if (h[0] == 1 && h[1] == 0) return 1;
  if (h[0] == 0 && h[1] == 1) return 2;
  if (h[0] == 1 && h[1] == 1 && (a[0] != 0 || a[1] != 0)) return 3;
  return 0;
}

inline int c3_case(const std::array<int, 3>& h, const std::array<double, 3>& a) {
  if (h == std::array<int, 3>{1, 0, 0}) return 1;
  if (h == std::array<int, 3>{0, 1, 0}) return 2;
  if (h == std::array<int, 3>{0, 0, 1}) return 3;
  if (h == std::array<int, 3>{1, 1, 0} && a[0] != 0) return 4;
  if (h == std::array<int, 3>{0, 1, 1} && a[1] != 0) return 5;
  if (h == std::array<int, 3>{1, 0, 1} && a[2] != 0) return 6;
  if (h == std::array<int, 3>{1, 1, 1} &&
      (a[0] * a[1] != 0 || a[1] * a[2] != 0 || a[0] * a[2] != 0))
    return 7;
  return 0;
}

}  // namespace cn_cases
