#pragma once

#include <optional>

#include "finq/cmatrix.hpp"

namespace finq {

// A unital *-subalgebra of B(C^d) given by an orthonormal (Hilbert-Schmidt)
// spanning basis. Every "von Neumann algebra" in the project is one of
// these.
struct ConcreteStarAlgebra {
  int ambient = 0;
  std::vector<CMatrix> basis;
  bool contains_identity = true;

  int dim() const { return static_cast<int>(basis.size()); }

  std::vector<cplx> coords(const CMatrix& x) const;
  CMatrix from_coords(const std::vector<cplx>& c) const;
  double membership_residual(const CMatrix& x) const;  // relative to ||x||
  bool contains(const CMatrix& x, double tol = 1e-9) const;

  // Coordinate structure maps.
  CMatrix star_map() const;          // coords(x^*) = S conj(coords(x))
  CMatrix mult_map() const;          // coords(b_i b_j) as column (i*n+j)
  std::vector<cplx> unit_coords() const;
  CMatrix left_mult(const std::vector<cplx>& xc) const;   // L_x on coords
  CMatrix right_mult(const std::vector<cplx>& xc) const;  // R_x on coords
};

struct AlgebraCheck {
  double star_residual = 0.0;
  double product_residual = 0.0;
  double identity_residual = 0.0;
  bool pass(double tol) const {
    return star_residual <= tol && product_residual <= tol && identity_residual <= tol;
  }
};

// Orthonormalize a spanning family (rank cut at rcond * largest singular
// value) and package it. Throws InputError for shape mismatches.
ConcreteStarAlgebra make_algebra(int ambient, const std::vector<CMatrix>& spanning,
                                 double rcond = 1e-10);
ConcreteStarAlgebra full_matrix_algebra(int d);
ConcreteStarAlgebra scalar_algebra(int d);
AlgebraCheck check_star_algebra(const ConcreteStarAlgebra& a, double tol = 1e-9);

// Smallest unital *-algebra containing the generators.
ConcreteStarAlgebra generated_algebra(const std::vector<CMatrix>& gens, int ambient,
                                      double rcond = 1e-10);

// Full commutant in B(C^d), computed blockwise over the center.
ConcreteStarAlgebra commutant(const ConcreteStarAlgebra& a);

ConcreteStarAlgebra center(const ConcreteStarAlgebra& a);
bool is_factor(const ConcreteStarAlgebra& a, double tol = 1e-9);

// Span intersection of two algebras on the same ambient space.
ConcreteStarAlgebra intersect(const ConcreteStarAlgebra& a, const ConcreteStarAlgebra& b,
                              double rcond = 1e-10);

// Elements of `inside` commuting with every element of `gens`.
ConcreteStarAlgebra relative_commutant(const std::vector<CMatrix>& gens,
                                       const ConcreteStarAlgebra& inside,
                                       double rcond = 1e-10);

// Mutual span distance (max over both directions of the largest projection
// residual of one basis against the span of the other).
double span_distance(const ConcreteStarAlgebra& a, const ConcreteStarAlgebra& b);
bool span_equal(const ConcreteStarAlgebra& a, const ConcreteStarAlgebra& b, double tol = 1e-9);

// Multi-matrix structure: one entry per minimal central projection.
struct Block {
  CMatrix projection;  // minimal central projection, ambient matrix
  int size = 0;        // n_b: the block is M_{n_b}
  int mult = 0;        // m_b: multiplicity in the ambient representation
};

std::vector<Block> block_decomposition(const ConcreteStarAlgebra& a,
                                       std::mt19937_64* rng = nullptr);

// Integer inclusion matrix of a unital inclusion sub <= big; entry
// [beta][alpha] is the multiplicity of sub-block alpha inside big-block
// beta. Throws StructureError if the data does not come out integral.
std::vector<std::vector<int>> inclusion_matrix(const ConcreteStarAlgebra& sub,
                                               const ConcreteStarAlgebra& big,
                                               std::mt19937_64* rng = nullptr);

std::vector<std::vector<int>> transpose_int(const std::vector<std::vector<int>>& m);

}  // namespace finq
