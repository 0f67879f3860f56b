#pragma once

#include <cmath>
#include <complex>
#include <queue>
#include <vector>

#include "xxcrit/errors.hpp"

// Adaptive Gauss-Legendre integration in one and two dimensions.
namespace xxcrit::quadrature {

struct Rule {
  std::vector<double> nodes;  // on [-1, 1]
  std::vector<double> weights;
};

/// Gauss-Legendre rule of the given order on [-1, 1] (GSL glfixed tables).
Rule gauss_legendre(int order);

struct Options {
  int order = 20;
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  int max_intervals = 20000;
};

namespace detail {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }

template <class F>
auto fixed_1d(F& f, const Rule& rule, double a, double b) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  decltype(f(a)) sum{};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return sum * half;
}

}  // namespace detail

/// Globally adaptive bisection: the interval with the largest error estimate
/// (difference between one panel and its two halves) is split until the summed
/// estimate meets max(abs_tol, rel_tol*|I|). `breakpoints` seed the initial
/// partition and should include known kinks of the integrand.
template <class F>
auto integrate(F&& f, double a, double b, const Options& opt = {}, std::vector<double> breakpoints = {}) {
  using T = decltype(f(a));
  const Rule rule = gauss_legendre(opt.order);
  struct Panel {
    double a, b;
    T whole, refined;
    double err;
    bool operator<(const Panel& o) const { return err < o.err; }
  };
  auto make = [&](double lo, double hi) {
    const double m = 0.5 * (lo + hi);
    Panel p{lo, hi, detail::fixed_1d(f, rule, lo, hi), T{}, 0.0};
    p.refined = detail::fixed_1d(f, rule, lo, m) + detail::fixed_1d(f, rule, m, hi);
    p.err = detail::magnitude(p.whole - p.refined);
    return p;
  };
  std::vector<double> cuts{a};
  for (double x : breakpoints)
    if (x > a && x < b) cuts.push_back(x);
  cuts.push_back(b);
  std::priority_queue<Panel> queue;
  T total{};
  double err = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] <= cuts[i]) continue;
    Panel p = make(cuts[i], cuts[i + 1]);
    total += p.refined;
    err += p.err;
    queue.push(p);
  }
  int count = static_cast<int>(queue.size());
  while (err > std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(total))) {
    if (count >= opt.max_intervals)
      throw NumericError("adaptive quadrature did not converge (estimated error " + std::to_string(err) + ")");
    Panel worst = queue.top();
    queue.pop();
    const double m = 0.5 * (worst.a + worst.b);
    Panel left = make(worst.a, m);
    Panel right = make(m, worst.b);
    total += left.refined + right.refined - worst.refined;
    err += left.err + right.err - worst.err;
    queue.push(left);
    queue.push(right);
    count += 1;
  }
  return total;
}

struct Options2d {
  int order = 64;  // points per axis on each tile
  double abs_tol = 1e-14;
  double rel_tol = 1e-11;
  int max_tiles = 4096;
};

namespace detail {

template <class F>
double fixed_2d(F& f, const Rule& rule, double x0, double x1, double y0, double y1) {
  const double hx = 0.5 * (x1 - x0), mx = 0.5 * (x0 + x1);
  const double hy = 0.5 * (y1 - y0), my = 0.5 * (y0 + y1);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = mx + hx * rule.nodes[i];
    double row = 0.0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) row += rule.weights[j] * f(x, my + hy * rule.nodes[j]);
    sum += rule.weights[i] * row;
  }
  return sum * hx * hy;
}

}  // namespace detail

/// Tensor-product Gauss-Legendre over the box spanned by the x and y cut lists,
/// refining the worst tile into quadrants until the error estimate converges.
template <class F>
double integrate_2d(F&& f, const std::vector<double>& xcuts, const std::vector<double>& ycuts,
                    const Options2d& opt = {}) {
  const Rule rule = gauss_legendre(opt.order);
  struct Tile {
    double x0, x1, y0, y1, whole, refined, err;
    bool operator<(const Tile& o) const { return err < o.err; }
  };
  auto make = [&](double x0, double x1, double y0, double y1) {
    const double xm = 0.5 * (x0 + x1), ym = 0.5 * (y0 + y1);
    Tile t{x0, x1, y0, y1, detail::fixed_2d(f, rule, x0, x1, y0, y1), 0.0, 0.0};
    t.refined = detail::fixed_2d(f, rule, x0, xm, y0, ym) + detail::fixed_2d(f, rule, xm, x1, y0, ym) +
                detail::fixed_2d(f, rule, x0, xm, ym, y1) + detail::fixed_2d(f, rule, xm, x1, ym, y1);
    t.err = std::abs(t.whole - t.refined);
    return t;
  };
  std::priority_queue<Tile> queue;
  double total = 0.0, err = 0.0;
  for (std::size_t i = 0; i + 1 < xcuts.size(); ++i)
    for (std::size_t j = 0; j + 1 < ycuts.size(); ++j) {
      Tile t = make(xcuts[i], xcuts[i + 1], ycuts[j], ycuts[j + 1]);
      total += t.refined;
      err += t.err;
      queue.push(t);
    }
  int count = static_cast<int>(queue.size());
  while (err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
    if (count >= opt.max_tiles)
      throw NumericError("2D quadrature did not converge (estimated error " + std::to_string(err) + ")");
    Tile worst = queue.top();
    queue.pop();
    const double xm = 0.5 * (worst.x0 + worst.x1), ym = 0.5 * (worst.y0 + worst.y1);
    Tile kids[4] = {make(worst.x0, xm, worst.y0, ym), make(xm, worst.x1, worst.y0, ym),
                    make(worst.x0, xm, ym, worst.y1), make(xm, worst.x1, ym, worst.y1)};
    total -= worst.refined;
    err -= worst.err;
    for (const Tile& k : kids) {
      total += k.refined;
      err += k.err;
      queue.push(k);
    }
    count += 3;
  }
  return total;
}

}  // namespace xxcrit::quadrature
