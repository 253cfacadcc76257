#include "muflux/quadrature.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

#include "muflux/units.hpp"

namespace muflux::quadrature {

namespace {

struct GaussTable {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Newton iteration on P_n from the Chebyshev initial guess.
GaussTable make_gauss_table(std::size_t n) {
  GaussTable table;
  table.nodes.resize(n);
  table.weights.resize(n);
  const auto dn = static_cast<double>(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(units::kPi * (static_cast<double>(i) + 0.75) / (dn + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const auto dk = static_cast<double>(k);
        const double p2 = ((2.0 * dk - 1.0) * x * p1 - (dk - 1.0) * p0) / dk;
        p0 = p1;
        p1 = p2;
      }
      dp = dn * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) {
        break;
      }
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    table.nodes[i] = -x;
    table.nodes[n - 1 - i] = x;
    table.weights[i] = w;
    table.weights[n - 1 - i] = w;
  }
  return table;
}

const GaussTable& table_for(std::size_t order) {
  static const GaussTable t64 = make_gauss_table(64);
  static const GaussTable t128 = make_gauss_table(128);
  if (order == 64) return t64;
  if (order == 128) return t128;
  throw std::invalid_argument("gauss-legendre order must be 64 or 128");
}

struct Panel {
  double a;
  double b;
  double value;
  double error;

  bool operator<(const Panel& other) const { return error < other.error; }
};

double gauss_sum(const std::function<double(double)>& f, double a, double b,
                 const GaussTable& table) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t i = 0; i < table.nodes.size(); ++i) {
    sum += table.weights[i] * f(mid + half * table.nodes[i]);
  }
  return sum * half;
}

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b, PanelRule rule,
                     std::size_t& evaluations) {
  if (rule == PanelRule::GaussLegendre) {
    const double coarse = gauss_sum(f, a, b, table_for(64));
    const double fine = gauss_sum(f, a, b, table_for(128));
    evaluations += 192;
    return {a, b, fine, std::fabs(fine - coarse)};
  }
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(m);
  const double fl = f(0.5 * (a + m));
  const double fr = f(0.5 * (m + b));
  evaluations += 5;
  const double h = b - a;
  const double s1 = h / 6.0 * (fa + 4.0 * fm + fb);
  const double s2 = h / 12.0 * (fa + 4.0 * fl + 2.0 * fm + 4.0 * fr + fb);
  return {a, b, s2 + (s2 - s1) / 15.0, std::fabs(s2 - s1) / 15.0};
}

}  // namespace

std::span<const double> gauss_legendre_nodes(std::size_t order) { return table_for(order).nodes; }

std::span<const double> gauss_legendre_weights(std::size_t order) {
  return table_for(order).weights;
}

Result integrate(const std::function<double(double)>& f, std::span<const double> breakpoints,
                 const Options& options) {
  Result result;
  std::priority_queue<Panel> panels;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const double a = breakpoints[i];
    const double b = breakpoints[i + 1];
    if (!(b > a)) {
      continue;
    }
    panels.push(evaluate_panel(f, a, b, options.rule, result.evaluations));
  }

  // Totals are recomputed from the heap contents after each split so that
  // removing a panel never leaves cancellation residue behind.
  auto totals = [&panels]() {
    auto copy = panels;
    double value = 0.0;
    double error = 0.0;
    while (!copy.empty()) {
      value += copy.top().value;
      error += copy.top().error;
      copy.pop();
    }
    return std::pair{value, error};
  };

  auto [value, error] = totals();
  while (error > std::max(options.abs_tol, options.rel_tol * std::fabs(value))) {
    if (result.subdivisions >= options.max_subdivisions || panels.empty()) {
      result.converged = false;
      break;
    }
    const Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = evaluate_panel(f, worst.a, mid, options.rule, result.evaluations);
    const Panel right = evaluate_panel(f, mid, worst.b, options.rule, result.evaluations);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    ++result.subdivisions;
    if (result.subdivisions % 64 == 0) {
      std::tie(value, error) = totals();
    }
  }
  std::tie(value, error) = totals();
  result.value = value;
  result.error = error;
  return result;
}

}  // namespace muflux::quadrature
