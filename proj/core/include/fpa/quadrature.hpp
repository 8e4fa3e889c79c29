#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

namespace fpa {

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  int evaluations = 0;
};

namespace detail {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1], positive half.
inline constexpr double kGk15Nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
inline constexpr double kGk15Weights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
// Embedded 7-point Gauss weights, matching nodes 1, 3, 5, 7 above.
inline constexpr double kG7Weights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

template <class F>
inline void gk15_panel(F& f, double a, double b, double& kronrod,
                       double& err) {
  const double h = 0.5 * (b - a);
  const double c = 0.5 * (a + b);
  const double fc = f(c);
  double gauss = kG7Weights[3] * fc;
  kronrod = kGk15Weights[7] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kGk15Nodes[i];
    const double fsum = f(c - dx) + f(c + dx);
    kronrod += kGk15Weights[i] * fsum;
    if (i % 2 == 1) gauss += kG7Weights[(i - 1) / 2] * fsum;
  }
  kronrod *= h;
  gauss *= h;
  err = std::abs(kronrod - gauss);
}

}  // namespace detail

// Adaptive Gauss-Kronrod 7-15 on [a, b] with bisection until the local error
// estimate fits within the proportional share of abs_tol. Depth is capped;
// the result reports the achieved error estimate either way.
template <class F>
QuadResult integrate_gk15(F&& f, double a, double b, double abs_tol = 1e-10,
                          int max_depth = 28) {
  QuadResult out;
  if (a == b) return out;
  struct Seg {
    double a, b, tol;
    int depth;
  };
  // Manual stack keeps the evaluation order deterministic.
  Seg stack[64];
  int top = 0;
  stack[top++] = {a, b, abs_tol, 0};
  while (top > 0) {
    const Seg s = stack[--top];
    double k, e;
    detail::gk15_panel(f, s.a, s.b, k, e);
    out.evaluations += 15;
    if (e <= s.tol || s.depth >= max_depth || top >= 62) {
      out.value += k;
      out.abs_error += e;
    } else {
      const double m = 0.5 * (s.a + s.b);
      stack[top++] = {m, s.b, 0.5 * s.tol, s.depth + 1};
      stack[top++] = {s.a, m, 0.5 * s.tol, s.depth + 1};
    }
  }
  return out;
}

}  // namespace fpa
