#pragma once

#include <string>
#include <vector>

namespace backflow {

enum class GridScheme { gauss_legendre, trapezoid, panel_gauss_legendre };

std::string to_string(GridScheme s);
GridScheme grid_scheme_from_string(const std::string& s);

// Nodes and weights on (0, u_max]. The panel scheme tiles [0, u_max] with
// fixed-width Gauss-Legendre panels, which keeps oscillatory integrands
// resolved uniformly.
struct QuadratureGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
  double u_max = 0.0;
  GridScheme scheme = GridScheme::gauss_legendre;

  std::size_t size() const { return nodes.size(); }
  bool same_as(const QuadratureGrid& o) const;
};

}  // namespace backflow
