#include "xxcrit/quadrature.hpp"

#include <memory>

#include <gsl/gsl_integration.h>

namespace xxcrit::quadrature {

Rule gauss_legendre(int order) {
  if (order < 1) throw ValidationError("Gauss-Legendre order must be >= 1");
  const std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> table(
      gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(order)), &gsl_integration_glfixed_table_free);
  if (!table) throw ResourceError("could not allocate a Gauss-Legendre table of order " + std::to_string(order));
  Rule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < order; ++i)
    gsl_integration_glfixed_point(-1.0, 1.0, static_cast<std::size_t>(i), &rule.nodes[i], &rule.weights[i],
                                  table.get());
  return rule;
}

}  // namespace xxcrit::quadrature
