#include "finq/algebra.hpp"

#include <algorithm>
#include <cmath>

#include "finq/lapack.hpp"

namespace finq {

static CMatrix vec_of(const CMatrix& m) {
  CMatrix v(static_cast<int>(m.a.size()), 1);
  for (size_t k = 0; k < m.a.size(); ++k) v.a[k] = m.a[k];
  return v;
}

static CMatrix stack_vecs(const std::vector<CMatrix>& ms) {
  if (ms.empty()) return CMatrix(0, 0);
  const int len = static_cast<int>(ms[0].a.size());
  CMatrix s(len, static_cast<int>(ms.size()));
  for (size_t j = 0; j < ms.size(); ++j) {
    if (static_cast<int>(ms[j].a.size()) != len) throw InputError("stack_vecs: shape mismatch");
    for (int i = 0; i < len; ++i) s(i, static_cast<int>(j)) = ms[j].a[i];
  }
  return s;
}

std::vector<cplx> ConcreteStarAlgebra::coords(const CMatrix& x) const {
  std::vector<cplx> c(basis.size());
  for (size_t i = 0; i < basis.size(); ++i) c[i] = hs_inner(x, basis[i]);
  return c;
}

CMatrix ConcreteStarAlgebra::from_coords(const std::vector<cplx>& c) const {
  if (c.size() != basis.size()) throw InputError("from_coords: size mismatch");
  CMatrix x(ambient, ambient);
  for (size_t i = 0; i < basis.size(); ++i)
    if (c[i] != cplx(0.0)) serial::axpy(c[i], basis[i], x);
  return x;
}

double ConcreteStarAlgebra::membership_residual(const CMatrix& x) const {
  const double nx = fro_norm(x);
  if (nx == 0.0) return 0.0;
  CMatrix r = x - from_coords(coords(x));
  return fro_norm(r) / nx;
}

bool ConcreteStarAlgebra::contains(const CMatrix& x, double tol) const {
  return membership_residual(x) <= tol;
}

CMatrix ConcreteStarAlgebra::star_map() const {
  const int n = dim();
  CMatrix s(n, n);
  for (int j = 0; j < n; ++j) {
    auto c = coords(adjoint(basis[j]));
    for (int i = 0; i < n; ++i) s(i, j) = c[i];
  }
  return s;
}

CMatrix ConcreteStarAlgebra::mult_map() const {
  const int n = dim();
  CMatrix m(n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto c = coords(matmul(basis[i], basis[j]));
      for (int k = 0; k < n; ++k) m(k, i * n + j) = c[k];
    }
  return m;
}

std::vector<cplx> ConcreteStarAlgebra::unit_coords() const {
  return coords(CMatrix::identity(ambient));
}

CMatrix ConcreteStarAlgebra::left_mult(const std::vector<cplx>& xc) const {
  const int n = dim();
  CMatrix l(n, n);
  CMatrix x = from_coords(xc);
  for (int j = 0; j < n; ++j) {
    auto c = coords(matmul(x, basis[j]));
    for (int i = 0; i < n; ++i) l(i, j) = c[i];
  }
  return l;
}

CMatrix ConcreteStarAlgebra::right_mult(const std::vector<cplx>& xc) const {
  const int n = dim();
  CMatrix r(n, n);
  CMatrix x = from_coords(xc);
  for (int j = 0; j < n; ++j) {
    auto c = coords(matmul(basis[j], x));
    for (int i = 0; i < n; ++i) r(i, j) = c[i];
  }
  return r;
}

ConcreteStarAlgebra make_algebra(int ambient, const std::vector<CMatrix>& spanning,
                                 double rcond) {
  for (const auto& m : spanning)
    if (m.rows != ambient || m.cols != ambient)
      throw InputError("make_algebra: matrix does not match ambient dimension");
  ConcreteStarAlgebra a;
  a.ambient = ambient;
  if (spanning.empty()) return a;
  CMatrix s = stack_vecs(spanning);
  CMatrix q = column_span(s, rcond);
  for (int j = 0; j < q.cols; ++j) {
    CMatrix b(ambient, ambient);
    for (int i = 0; i < q.rows; ++i) b.a[i] = q(i, j);
    a.basis.push_back(std::move(b));
  }
  a.contains_identity = a.contains(CMatrix::identity(ambient), 1e-8);
  return a;
}

ConcreteStarAlgebra full_matrix_algebra(int d) {
  std::vector<CMatrix> units;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      CMatrix e(d, d);
      e(i, j) = 1.0;
      units.push_back(std::move(e));
    }
  return make_algebra(d, units);
}

ConcreteStarAlgebra scalar_algebra(int d) {
  return make_algebra(d, {CMatrix::identity(d)});
}

AlgebraCheck check_star_algebra(const ConcreteStarAlgebra& a, double tol) {
  (void)tol;
  AlgebraCheck c;
  for (const auto& b : a.basis) {
    c.star_residual = std::max(c.star_residual, a.membership_residual(adjoint(b)));
    for (const auto& b2 : a.basis)
      c.product_residual = std::max(c.product_residual, a.membership_residual(matmul(b, b2)));
  }
  if (a.contains_identity)
    c.identity_residual = a.membership_residual(CMatrix::identity(a.ambient));
  return c;
}

// Incremental orthonormal span with projection-residual membership test.
namespace {
struct Span {
  int ambient;
  std::vector<CMatrix> basis;  // orthonormal under HS
  double tol;

  // Returns true if the candidate added a new direction.
  bool absorb(CMatrix x) {
    const double nx0 = fro_norm(x);
    if (nx0 < 1e-14) return false;
    // Two-pass modified Gram-Schmidt for numerical stability.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) serial::axpy(-hs_inner(x, b), b, x);
    const double nx = fro_norm(x);
    if (nx <= tol * std::max(1.0, nx0)) return false;
    x *= cplx(1.0 / nx);
    basis.push_back(std::move(x));
    return true;
  }
};
}  // namespace

ConcreteStarAlgebra generated_algebra(const std::vector<CMatrix>& gens, int ambient,
                                      double rcond) {
  Span span{ambient, {}, std::max(rcond, 1e-11)};
  std::vector<CMatrix> g = gens;
  for (const auto& x : gens) g.push_back(adjoint(x));
  span.absorb(CMatrix::identity(ambient));
  for (const auto& x : g) span.absorb(x);
  // Closing the span under left multiplication by generators reaches every
  // word in the generators; products of words are again words.
  size_t frontier_begin = 0;
  while (frontier_begin < span.basis.size()) {
    const size_t frontier_end = span.basis.size();
    for (const auto& gen : g) {
      for (size_t k = frontier_begin; k < frontier_end; ++k) {
        span.absorb(matmul(gen, span.basis[k]));
        if (span.basis.size() >= static_cast<size_t>(ambient) * ambient) break;
      }
    }
    frontier_begin = frontier_end;
  }
  ConcreteStarAlgebra a;
  a.ambient = ambient;
  a.basis = std::move(span.basis);
  a.contains_identity = true;
  return a;
}

ConcreteStarAlgebra center(const ConcreteStarAlgebra& a) {
  // Null space of z -> [z, b_i] with z restricted to the algebra.
  const int n = a.dim();
  const int d = a.ambient;
  if (n == 0) return a;
  CMatrix sys(n * d * d, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      CMatrix c = matmul(a.basis[j], a.basis[i]) - matmul(a.basis[i], a.basis[j]);
      for (int k = 0; k < d * d; ++k) sys(i * d * d + k, j) = c.a[k];
    }
  CMatrix ns = null_space(sys);
  std::vector<CMatrix> zs;
  for (int j = 0; j < ns.cols; ++j) {
    std::vector<cplx> c(n);
    for (int i = 0; i < n; ++i) c[i] = ns(i, j);
    zs.push_back(a.from_coords(c));
  }
  return make_algebra(d, zs);
}

bool is_factor(const ConcreteStarAlgebra& a, double tol) {
  (void)tol;
  return center(a).dim() == 1;
}

ConcreteStarAlgebra intersect(const ConcreteStarAlgebra& a, const ConcreteStarAlgebra& b,
                              double rcond) {
  if (a.ambient != b.ambient) throw InputError("intersect: ambient mismatch");
  // x = A ca = B cb  ->  [A | -B] null space.
  const int d = a.ambient;
  CMatrix sys(d * d, a.dim() + b.dim());
  for (int j = 0; j < a.dim(); ++j)
    for (int k = 0; k < d * d; ++k) sys(k, j) = a.basis[j].a[k];
  for (int j = 0; j < b.dim(); ++j)
    for (int k = 0; k < d * d; ++k) sys(k, a.dim() + j) = -b.basis[j].a[k];
  CMatrix ns = null_space(sys, rcond);
  std::vector<CMatrix> xs;
  for (int j = 0; j < ns.cols; ++j) {
    std::vector<cplx> c(a.dim());
    for (int i = 0; i < a.dim(); ++i) c[i] = ns(i, j);
    xs.push_back(a.from_coords(c));
  }
  return make_algebra(d, xs, rcond);
}

ConcreteStarAlgebra relative_commutant(const std::vector<CMatrix>& gens,
                                       const ConcreteStarAlgebra& inside, double rcond) {
  const int n = inside.dim();
  const int d = inside.ambient;
  CMatrix sys(static_cast<int>(gens.size()) * d * d, n);
  for (size_t i = 0; i < gens.size(); ++i)
    for (int j = 0; j < n; ++j) {
      CMatrix c = matmul(gens[i], inside.basis[j]) - matmul(inside.basis[j], gens[i]);
      for (int k = 0; k < d * d; ++k) sys(static_cast<int>(i) * d * d + k, j) = c.a[k];
    }
  CMatrix ns = null_space(sys, rcond);
  std::vector<CMatrix> xs;
  for (int j = 0; j < ns.cols; ++j) {
    std::vector<cplx> c(n);
    for (int i = 0; i < n; ++i) c[i] = ns(i, j);
    xs.push_back(inside.from_coords(c));
  }
  return make_algebra(d, xs, rcond);
}

double span_distance(const ConcreteStarAlgebra& a, const ConcreteStarAlgebra& b) {
  double r = 0.0;
  for (const auto& x : a.basis) r = std::max(r, b.membership_residual(x));
  for (const auto& x : b.basis) r = std::max(r, a.membership_residual(x));
  return r;
}

bool span_equal(const ConcreteStarAlgebra& a, const ConcreteStarAlgebra& b, double tol) {
  if (a.ambient != b.ambient || a.dim() != b.dim()) return false;
  return span_distance(a, b) <= tol;
}

// Minimal central projections via eigen-clustering of a random Hermitian
// central element; retried with fresh coefficients if the clustering is
// ambiguous.
static std::vector<CMatrix> minimal_central_projections(const ConcreteStarAlgebra& a,
                                                        std::mt19937_64& rng) {
  ConcreteStarAlgebra z = center(a);
  const int k = z.dim();
  if (k == 0) throw StructureError("minimal_central_projections: empty center");
  if (k == 1) return {CMatrix::identity(a.ambient)};
  std::uniform_real_distribution<double> u(0.5, 1.5);
  for (int attempt = 0; attempt < 20; ++attempt) {
    CMatrix h(a.ambient, a.ambient);
    for (const auto& b : z.basis) {
      CMatrix hb = b + adjoint(b);
      serial::axpy(cplx(u(rng)), hb, h);
      CMatrix ab = cplx(0, 1.0) * (b - adjoint(b));
      serial::axpy(cplx(u(rng)), ab, h);
    }
    HermEig e = eigh(h);
    // cluster eigenvalues
    std::vector<std::pair<double, double>> clusters;  // [lo, hi]
    const double gap = 1e-6 * std::max(1.0, std::abs(e.w.back()) + std::abs(e.w.front()));
    std::vector<std::vector<int>> groups;
    for (int i = 0; i < static_cast<int>(e.w.size()); ++i) {
      if (groups.empty() || e.w[i] - e.w[groups.back().back()] > gap)
        groups.push_back({i});
      else
        groups.back().push_back(i);
    }
    if (static_cast<int>(groups.size()) != k) continue;
    std::vector<CMatrix> projs;
    bool ok = true;
    for (const auto& gidx : groups) {
      CMatrix p(a.ambient, a.ambient);
      for (int i : gidx) {
        for (int r = 0; r < a.ambient; ++r)
          for (int c = 0; c < a.ambient; ++c)
            p(r, c) += e.v(r, i) * std::conj(e.v(c, i));
      }
      if (z.membership_residual(p) > 1e-7) {
        ok = false;
        break;
      }
      projs.push_back(std::move(p));
    }
    if (ok) return projs;
  }
  throw NumericalError("minimal_central_projections: clustering failed");
}

// Orthonormal columns spanning range(p) for a projection p.
static CMatrix range_isometry(const CMatrix& p) {
  HermEig e = eigh(p);
  int r = 0;
  for (double w : e.w)
    if (w > 0.5) ++r;
  CMatrix q(p.rows, r);
  int col = 0;
  for (int i = 0; i < static_cast<int>(e.w.size()); ++i) {
    if (e.w[i] <= 0.5) continue;
    for (int k = 0; k < p.rows; ++k) q(k, col) = e.v(k, i);
    ++col;
  }
  return q;
}

std::vector<Block> block_decomposition(const ConcreteStarAlgebra& a, std::mt19937_64* rng) {
  std::mt19937_64 local(12345);
  std::mt19937_64& r = rng ? *rng : local;
  std::vector<Block> blocks;
  for (auto& p : minimal_central_projections(a, r)) {
    Block blk;
    const CMatrix q = range_isometry(p);
    const int rdim = q.cols;
    // Compress the algebra onto the block and measure its span dimension.
    std::vector<CMatrix> comp;
    for (const auto& b : a.basis) comp.push_back(matmul(adjoint(q), matmul(b, q)));
    CMatrix s = stack_vecs(comp);
    const int n2 = rank(s, 1e-8);
    const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n2))));
    if (n * n != n2) throw StructureError("block_decomposition: non-square block span");
    if (n == 0 || rdim % n != 0)
      throw StructureError("block_decomposition: non-integral multiplicity");
    blk.projection = std::move(p);
    blk.size = n;
    blk.mult = rdim / n;
    blocks.push_back(std::move(blk));
  }
  return blocks;
}

// Dense commutant of the compressed algebra on one central block via the
// positive semidefinite commutation form.
static std::vector<CMatrix> block_commutant(const std::vector<CMatrix>& gens, int r) {
  CMatrix t(r * r, r * r);
  for (const auto& g : gens) {
    const CMatrix gh = adjoint(g);
    const CMatrix ghg = matmul(gh, g);
    const CMatrix ggh = matmul(g, gh);
    const CMatrix id = CMatrix::identity(r);
    // (L-R)^*(L-R) with L = g (x) I, R = I (x) g^T on row-major vec.
    CMatrix term = kron(ghg, id);
    term += kron(id, transpose(ggh));
    term -= kron(gh, transpose(g));
    term -= kron(g, conjugate(g));
    t += term;
  }
  HermEig e = eigh(t);
  const double cut = 1e-9 * std::max(1.0, e.w.empty() ? 0.0 : std::abs(e.w.back()));
  std::vector<CMatrix> out;
  for (int i = 0; i < static_cast<int>(e.w.size()); ++i) {
    if (e.w[i] > cut) continue;
    CMatrix m(r, r);
    for (int k = 0; k < r * r; ++k) m.a[k] = e.v(k, i);
    out.push_back(std::move(m));
  }
  return out;
}

ConcreteStarAlgebra commutant(const ConcreteStarAlgebra& a) {
  const int d = a.ambient;
  if (a.dim() == 0) return full_matrix_algebra(d);
  std::mt19937_64 rng(987654321);
  std::vector<CMatrix> out;
  for (auto& p : minimal_central_projections(a, rng)) {
    const CMatrix q = range_isometry(p);
    const int r = q.cols;
    std::vector<CMatrix> comp;
    for (const auto& b : a.basis) comp.push_back(matmul(adjoint(q), matmul(b, q)));
    for (auto& c : block_commutant(comp, r)) {
      out.push_back(matmul(q, matmul(c, adjoint(q))));
    }
  }
  return make_algebra(d, out);
}

std::vector<std::vector<int>> inclusion_matrix(const ConcreteStarAlgebra& sub,
                                               const ConcreteStarAlgebra& big,
                                               std::mt19937_64* rng) {
  if (sub.ambient != big.ambient) throw InputError("inclusion_matrix: ambient mismatch");
  std::mt19937_64 local(424242);
  std::mt19937_64& r = rng ? *rng : local;
  auto sb = block_decomposition(sub, &r);
  auto bb = block_decomposition(big, &r);
  std::vector<std::vector<int>> lam(bb.size(), std::vector<int>(sb.size(), 0));
  for (size_t be = 0; be < bb.size(); ++be)
    for (size_t al = 0; al < sb.size(); ++al) {
      const CMatrix prod = matmul(sb[al].projection, bb[be].projection);
      const int rk = rank(prod, 1e-8);
      if (rk % sb[al].size != 0)
        throw StructureError("inclusion_matrix: non-integral multiplicity");
      // rank(z_alpha q_beta) = n_alpha * (multiplicity of alpha in beta-block
      // representation); divide out the beta-side multiplicity of big.
      const int m = rk / sb[al].size;
      if (m % bb[be].mult != 0)
        throw StructureError("inclusion_matrix: multiplicity not divisible");
      lam[be][al] = m / bb[be].mult;
    }
  return lam;
}

std::vector<std::vector<int>> transpose_int(const std::vector<std::vector<int>>& m) {
  if (m.empty()) return {};
  std::vector<std::vector<int>> t(m[0].size(), std::vector<int>(m.size(), 0));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

}  // namespace finq
