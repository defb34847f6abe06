#ifndef FVPG_ERRORS_HPP
#define FVPG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fvpg {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateTriangle : Error {
  int cell;
  DegenerateTriangle(int cell_, const std::string& what_)
      : Error(what_), cell(cell_) {}
};

struct DuplicateTriangle : Error {
  int cell;
  DuplicateTriangle(int cell_, const std::string& what_)
      : Error(what_), cell(cell_) {}
};

struct NonConformingMesh : Error {
  using Error::Error;
};

/// Mesh file could not be parsed; `line` is 1-based.
struct ParseError : Error {
  int line;
  ParseError(int line_, const std::string& what_)
      : Error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

struct PointOutsideCell : Error {
  int cell;
  PointOutsideCell(int cell_, const std::string& what_)
      : Error(what_), cell(cell_) {}
};

/// An edge coefficient c_a fell below the admissibility threshold.
struct NonPositiveCoefficient : Error {
  int edge;
  double value;
  NonPositiveCoefficient(int edge_, double value_, const std::string& what_)
      : Error(what_), edge(edge_), value(value_) {}
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct ZeroDiagonal : Error {
  int row;
  ZeroDiagonal(int row_, const std::string& what_)
      : Error(what_), row(row_) {}
};

struct SolverDidNotConverge : Error {
  int iterations;
  double residual;
  SolverDidNotConverge(int iterations_, double residual_, const std::string& what_)
      : Error(what_), iterations(iterations_), residual(residual_) {}
};

}  // namespace fvpg

#endif
