#ifndef FVPG_FIELDS_HPP
#define FVPG_FIELDS_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "fvpg/errors.hpp"
#include "fvpg/mesh.hpp"

namespace fvpg {

/// Piecewise-constant field: one value u_K per triangle.
struct P0Field {
  const Triangulation* mesh = nullptr;
  std::vector<double> value;

  P0Field() = default;
  explicit P0Field(const Triangulation& t)
      : mesh(&t), value(static_cast<std::size_t>(t.cell_count()), 0.0) {}
  P0Field(const Triangulation& t, std::vector<double> v)
      : mesh(&t), value(std::move(v)) {
    if (value.size() != static_cast<std::size_t>(t.cell_count()))
      throw DimensionMismatch("P0Field has " + std::to_string(value.size()) +
                              " values for " + std::to_string(t.cell_count()) +
                              " cells");
  }

  double operator[](int k) const { return value[k]; }
  double& operator[](int k) { return value[k]; }
  int size() const { return static_cast<int>(value.size()); }
};

/// Lowest-order Raviart-Thomas field: one flux p_a = \int_a p.n_a ds per edge.
struct RTField {
  const Triangulation* mesh = nullptr;
  std::vector<double> flux;

  RTField() = default;
  explicit RTField(const Triangulation& t)
      : mesh(&t), flux(static_cast<std::size_t>(t.edge_count()), 0.0) {}
  RTField(const Triangulation& t, std::vector<double> f)
      : mesh(&t), flux(std::move(f)) {
    if (flux.size() != static_cast<std::size_t>(t.edge_count()))
      throw DimensionMismatch("RTField has " + std::to_string(flux.size()) +
                              " fluxes for " + std::to_string(t.edge_count()) +
                              " edges");
  }

  double operator[](int a) const { return flux[a]; }
  double& operator[](int a) { return flux[a]; }
  int size() const { return static_cast<int>(flux.size()); }

  /// Local coefficient p_{K,i} = eps * p_a with eps = n_a . n_{K,i}.
  double local_flux(int k, int i) const {
    return mesh->cell_edge_sign(k, i) * flux[mesh->cell_edge(k, i)];
  }
};

}  // namespace fvpg

#endif
