#include <algorithm>
#include <numeric>

#include "finq/lapack.hpp"
#include "finq/legs.hpp"
#include "finq/qgroup.hpp"

namespace finq {

namespace {

// Everything an isomorphism candidate is measured against.
struct IsoProblem {
  int n;
  CMatrix star_a, star_b;
  CMatrix mult_b;            // n x n^2
  std::vector<std::vector<cplx>> prod_a;  // coords_a(b_i b_j)
  CMatrix delta_a, delta_b;
  std::vector<cplx> unit_a, unit_b, eps_a, eps_b, haar_a, haar_b;
  CMatrix antipode_a, antipode_b;
};

IsoProblem make_problem(const FiniteQuantumGroup& a, const FiniteQuantumGroup& b) {
  IsoProblem p;
  p.n = a.dim();
  p.star_a = a.alg.star_map();
  p.star_b = b.alg.star_map();
  p.mult_b = b.alg.mult_map();
  p.prod_a.resize(static_cast<size_t>(p.n) * p.n);
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.n; ++j)
      p.prod_a[static_cast<size_t>(i) * p.n + j] =
          a.alg.coords(matmul(a.alg.basis[i], a.alg.basis[j]));
  p.delta_a = a.delta;
  p.delta_b = b.delta;
  p.unit_a = a.alg.unit_coords();
  p.unit_b = b.alg.unit_coords();
  p.eps_a = a.counit;
  p.eps_b = b.counit;
  p.haar_a = a.haar.values;
  p.haar_b = b.haar.values;
  p.antipode_a = a.antipode;
  p.antipode_b = b.antipode;
  return p;
}

std::vector<cplx> col(const CMatrix& m, int j) {
  std::vector<cplx> c(m.rows);
  for (int i = 0; i < m.rows; ++i) c[i] = m(i, j);
  return c;
}

// Quadratic residuals only (multiplicativity and Delta-intertwining); the
// linear constraints are enforced exactly by the affine parametrization.
std::vector<cplx> quad_residual(const IsoProblem& p, const CMatrix& t) {
  const int n = p.n;
  std::vector<cplx> f;
  f.reserve(static_cast<size_t>(n) * n * n + static_cast<size_t>(n) * n * n);
  for (int i = 0; i < n; ++i) {
    auto ti = col(t, i);
    for (int j = 0; j < n; ++j) {
      auto tj = col(t, j);
      auto lhs = mat_vec(t, p.prod_a[static_cast<size_t>(i) * n + j]);
      auto rhs = mat_vec(p.mult_b, tensor_vec(ti, tj));
      for (int k = 0; k < n; ++k) f.push_back(lhs[k] - rhs[k]);
    }
  }
  CMatrix tt = kron(t, t);
  CMatrix lhs = matmul(tt, p.delta_a);
  CMatrix rhs = matmul(p.delta_b, t);
  for (size_t k = 0; k < lhs.a.size(); ++k) f.push_back(lhs.a[k] - rhs.a[k]);
  return f;
}

// Directional derivative of quad_residual along dt at t.
std::vector<cplx> quad_dresidual(const IsoProblem& p, const CMatrix& t, const CMatrix& dt) {
  const int n = p.n;
  std::vector<cplx> f;
  f.reserve(static_cast<size_t>(n) * n * n * 2);
  for (int i = 0; i < n; ++i) {
    auto ti = col(t, i);
    auto di = col(dt, i);
    for (int j = 0; j < n; ++j) {
      auto tj = col(t, j);
      auto dj = col(dt, j);
      auto lhs = mat_vec(dt, p.prod_a[static_cast<size_t>(i) * n + j]);
      auto r1 = mat_vec(p.mult_b, tensor_vec(di, tj));
      auto r2 = mat_vec(p.mult_b, tensor_vec(ti, dj));
      for (int k = 0; k < n; ++k) f.push_back(lhs[k] - r1[k] - r2[k]);
    }
  }
  CMatrix tt = matmul(kron(dt, t) + kron(t, dt), p.delta_a) - matmul(p.delta_b, dt);
  for (size_t k = 0; k < tt.a.size(); ++k) f.push_back(tt.a[k]);
  return f;
}

double full_residual(const IsoProblem& p, const CMatrix& t) {
  const int n = p.n;
  double r = 0.0;
  auto q = quad_residual(p, t);
  for (const auto& v : q) r += std::norm(v);
  auto un = mat_vec(t, p.unit_a);
  for (int i = 0; i < n; ++i) r += std::norm(un[i] - p.unit_b[i]);
  CMatrix sr = matmul(t, p.star_a) - matmul(p.star_b, conjugate(t));
  r += fro_norm(sr) * fro_norm(sr);
  cplx hv = 0.0;
  for (int j = 0; j < n; ++j) {
    cplx hb = 0.0, eb = 0.0;
    for (int i = 0; i < n; ++i) {
      hb += p.haar_b[i] * t(i, j);
      eb += p.eps_b[i] * t(i, j);
    }
    r += std::norm(hb - p.haar_a[j]);
    r += std::norm(eb - p.eps_a[j]);
    (void)hv;
  }
  CMatrix ar = matmul(t, p.antipode_a) - matmul(p.antipode_b, t);
  r += fro_norm(ar) * fro_norm(ar);
  return std::sqrt(r);
}

// Real-linear constraint system rows for the linear laws. Unknown layout:
// [Re vec(T); Im vec(T)].
struct AffineSpace {
  CMatrix part;                // particular solution (as complex T)
  std::vector<CMatrix> dirs;   // real-basis directions
};

AffineSpace linear_constraints(const IsoProblem& p) {
  const int n = p.n;
  const int nn = n * n;
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  auto add_complex_eq = [&](const std::vector<cplx>& re_coeff,
                            const std::vector<cplx>& im_coeff, cplx value) {
    // coefficient vectors over Re(T) and Im(T) parts in complex form:
    // equation sum re_coeff * Re(T) + im_coeff * Im(T) = value, split into
    // real and imaginary rows.
    std::vector<double> r1(2 * nn), r2(2 * nn);
    for (int k = 0; k < nn; ++k) {
      r1[k] = re_coeff[k].real();
      r1[nn + k] = im_coeff[k].real();
      r2[k] = re_coeff[k].imag();
      r2[nn + k] = im_coeff[k].imag();
    }
    rows.push_back(std::move(r1));
    rhs.push_back(value.real());
    rows.push_back(std::move(r2));
    rhs.push_back(value.imag());
  };
  auto idx = [n](int i, int j) { return i * n + j; };

  // T unit_a = unit_b : sum_j T[i][j] u_a[j] = u_b[i]
  for (int i = 0; i < n; ++i) {
    std::vector<cplx> re(nn, 0.0), im(nn, 0.0);
    for (int j = 0; j < n; ++j) {
      re[idx(i, j)] = p.unit_a[j];
      im[idx(i, j)] = cplx(0, 1) * p.unit_a[j];
    }
    add_complex_eq(re, im, p.unit_b[i]);
  }
  // eps_b T = eps_a and haar_b T = haar_a
  for (int j = 0; j < n; ++j) {
    std::vector<cplx> re(nn, 0.0), im(nn, 0.0), re2(nn, 0.0), im2(nn, 0.0);
    for (int i = 0; i < n; ++i) {
      re[idx(i, j)] = p.eps_b[i];
      im[idx(i, j)] = cplx(0, 1) * p.eps_b[i];
      re2[idx(i, j)] = p.haar_b[i];
      im2[idx(i, j)] = cplx(0, 1) * p.haar_b[i];
    }
    add_complex_eq(re, im, p.eps_a[j]);
    add_complex_eq(re2, im2, p.haar_a[j]);
  }
  // T S_a = S_b T
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<cplx> re(nn, 0.0), im(nn, 0.0);
      for (int k = 0; k < n; ++k) {
        re[idx(i, k)] += p.antipode_a(k, j);
        im[idx(i, k)] += cplx(0, 1) * p.antipode_a(k, j);
        re[idx(k, j)] -= p.antipode_b(i, k);
        im[idx(k, j)] -= cplx(0, 1) * p.antipode_b(i, k);
      }
      add_complex_eq(re, im, 0.0);
    }
  // T C_a = C_b conj(T): conj makes this real-linear only.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<cplx> re(nn, 0.0), im(nn, 0.0);
      for (int k = 0; k < n; ++k) {
        re[idx(i, k)] += p.star_a(k, j);
        im[idx(i, k)] += cplx(0, 1) * p.star_a(k, j);
        re[idx(k, j)] -= p.star_b(i, k);
        im[idx(k, j)] += cplx(0, 1) * p.star_b(i, k);  // conj(T) flips Im sign
      }
      add_complex_eq(re, im, 0.0);
    }

  // Solve the real system with the complex machinery.
  const int m = static_cast<int>(rows.size());
  CMatrix a(m, 2 * nn), b(m, 1);
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < 2 * nn; ++c) a(r, c) = rows[r][c];
    b(r, 0) = rhs[r];
  }
  CMatrix p0 = pinv_solve(a, b, 1e-10);
  CMatrix ns = null_space(a, 1e-9);

  auto realify = [&](const CMatrix& v) {
    CMatrix t(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        t(i, j) = cplx(v(i * n + j, 0).real(), 0.0) + cplx(0.0, v(nn + i * n + j, 0).real());
    return t;
  };

  AffineSpace sp;
  sp.part = realify(p0);
  // The null space of a real matrix computed in complex arithmetic: take
  // real and imaginary parts of each column and re-orthonormalize.
  std::vector<CMatrix> cand;
  for (int c = 0; c < ns.cols; ++c) {
    CMatrix vr(2 * nn, 1), vi(2 * nn, 1);
    for (int r = 0; r < 2 * nn; ++r) {
      vr(r, 0) = ns(r, c).real();
      vi(r, 0) = ns(r, c).imag();
    }
    cand.push_back(vr);
    cand.push_back(vi);
  }
  // Gram-Schmidt over R.
  std::vector<CMatrix> kept;
  for (auto& v : cand) {
    for (const auto& k : kept) {
      double dot = 0.0;
      for (int r = 0; r < 2 * nn; ++r) dot += v(r, 0).real() * k(r, 0).real();
      for (int r = 0; r < 2 * nn; ++r) v(r, 0) -= dot * k(r, 0);
    }
    double nv = 0.0;
    for (int r = 0; r < 2 * nn; ++r) nv += v(r, 0).real() * v(r, 0).real();
    nv = std::sqrt(nv);
    if (nv > 1e-8) {
      for (int r = 0; r < 2 * nn; ++r) v(r, 0) = v(r, 0).real() / nv;
      kept.push_back(v);
    }
  }
  for (const auto& v : kept) sp.dirs.push_back(realify(v));
  return sp;
}

// Gauss-Newton over the affine space, minimizing the quadratic residuals.
double refine(const IsoProblem& p, const AffineSpace& sp, CMatrix& t, int max_iter = 40) {
  const int k = static_cast<int>(sp.dirs.size());
  if (k == 0) return full_residual(p, t);
  auto norm_of = [](const std::vector<cplx>& f) {
    double s = 0.0;
    for (const auto& v : f) s += std::norm(v);
    return std::sqrt(s);
  };
  double cur = norm_of(quad_residual(p, t));
  for (int iter = 0; iter < max_iter && cur > 1e-12; ++iter) {
    // wrong branches stall well above the solve tolerance; bail early
    if (iter == 15 && cur > 1e-7) break;
    auto f = quad_residual(p, t);
    const int m = static_cast<int>(f.size());
    // real least squares: 2m rows, k unknowns
    CMatrix jac(2 * m, k), rhs(2 * m, 1);
    for (int c = 0; c < k; ++c) {
      auto df = quad_dresidual(p, t, sp.dirs[c]);
      for (int r = 0; r < m; ++r) {
        jac(2 * r, c) = df[r].real();
        jac(2 * r + 1, c) = df[r].imag();
      }
    }
    for (int r = 0; r < m; ++r) {
      rhs(2 * r, 0) = -f[r].real();
      rhs(2 * r + 1, 0) = -f[r].imag();
    }
    CMatrix step = pinv_solve(jac, rhs, 1e-10);
    double scale = 1.0;
    bool improved = false;
    for (int bt = 0; bt < 12; ++bt) {
      CMatrix tnew = t;
      for (int c = 0; c < k; ++c) serial::axpy(cplx(scale * step(c, 0).real()), sp.dirs[c], tnew);
      double nres = norm_of(quad_residual(p, tnew));
      if (nres < cur) {
        t = tnew;
        cur = nres;
        improved = true;
        break;
      }
      scale *= 0.5;
    }
    if (!improved) break;
  }
  return full_residual(p, t);
}

// Project an arbitrary complex matrix onto the affine space.
CMatrix project_to_affine(const AffineSpace& sp, const CMatrix& seed) {
  CMatrix t = sp.part;
  CMatrix d = seed - sp.part;
  for (const auto& dir : sp.dirs) {
    // real inner product of complex matrices as R^{2nn} vectors
    double dot = 0.0;
    for (size_t r = 0; r < d.a.size(); ++r)
      dot += d.a[r].real() * dir.a[r].real() + d.a[r].imag() * dir.a[r].imag();
    serial::axpy(cplx(dot), dir, t);
  }
  return t;
}

// Intersect an affine space with additional linear equations T g_k = h_k.
// Returns false when the combined system is infeasible.
bool pin_vectors(const AffineSpace& in, const std::vector<std::vector<cplx>>& gs,
                 const std::vector<std::vector<cplx>>& hs, AffineSpace& out) {
  const int k = static_cast<int>(in.dirs.size());
  const int n = in.part.rows;
  const int m = static_cast<int>(gs.size());
  if (m == 0) {
    out = in;
    return true;
  }
  // Unknowns: real coefficients t over in.dirs. Equations (complex):
  // sum_c t_c (dirs_c g_k) = h_k - part g_k.
  CMatrix sys(2 * m * n, std::max(1, k)), rhs(2 * m * n, 1);
  for (int q = 0; q < m; ++q) {
    auto pg = mat_vec(in.part, gs[q]);
    for (int c = 0; c < k; ++c) {
      auto dg = mat_vec(in.dirs[c], gs[q]);
      for (int i = 0; i < n; ++i) {
        sys(2 * (q * n + i), c) = dg[i].real();
        sys(2 * (q * n + i) + 1, c) = dg[i].imag();
      }
    }
    for (int i = 0; i < n; ++i) {
      cplx want = hs[q][i] - pg[i];
      rhs(2 * (q * n + i), 0) = want.real();
      rhs(2 * (q * n + i) + 1, 0) = want.imag();
    }
  }
  CMatrix t0 = pinv_solve(sys, rhs, 1e-9);
  if (rel_residual(matmul(sys, t0), rhs) > 1e-7) return false;
  CMatrix ns = null_space(sys, 1e-9);
  out.part = in.part;
  for (int c = 0; c < k; ++c) serial::axpy(cplx(t0(c, 0).real()), in.dirs[c], out.part);
  out.dirs.clear();
  for (int j = 0; j < ns.cols; ++j) {
    CMatrix dir(n, n);
    bool real_col = true;
    for (int c = 0; c < k && real_col; ++c)
      if (std::abs(ns(c, j).imag()) > 1e-9) real_col = false;
    // columns of the null space of a real system may be complex; split
    for (int pass = 0; pass < 2; ++pass) {
      CMatrix d(n, n);
      double nz = 0.0;
      for (int c = 0; c < k; ++c) {
        double coeff = pass == 0 ? ns(c, j).real() : ns(c, j).imag();
        nz += coeff * coeff;
        serial::axpy(cplx(coeff), in.dirs[c], d);
      }
      if (nz > 1e-16) out.dirs.push_back(d);
      if (real_col) break;
    }
  }
  // re-orthonormalize directions over R
  std::vector<CMatrix> kept;
  for (auto& v : out.dirs) {
    for (const auto& w : kept) {
      double dot = 0.0;
      for (size_t r = 0; r < v.a.size(); ++r)
        dot += v.a[r].real() * w.a[r].real() + v.a[r].imag() * w.a[r].imag();
      serial::axpy(cplx(-dot), w, v);
    }
    double nv = fro_norm(v);
    if (nv > 1e-8) {
      v *= cplx(1.0 / nv);
      kept.push_back(v);
    }
  }
  out.dirs = std::move(kept);
  return true;
}

// Group-like elements Delta(g) = g (x) g, eps(g) = 1, computed through the
// characters of the dual algebra: g = sum_i chi(w_i) b_i.
std::vector<std::vector<cplx>> group_likes(const FiniteQuantumGroup& qg) {
  std::vector<std::vector<cplx>> out;
  const DualData& d = build_dual(qg);
  const int n = qg.dim();
  std::mt19937_64 rng(5150);
  for (const auto& blk : block_decomposition(d.alg_hat, &rng)) {
    if (blk.size != 1) continue;
    const double tr = trace(blk.projection).real();
    std::vector<cplx> g(n);
    for (int i = 0; i < n; ++i)
      g[i] = trace(matmul(qg.w_legs[i], blk.projection)) / tr;
    // verify group-likeness before trusting it
    CMatrix lhs = tensor2_matrix(qg.alg, mat_vec(qg.delta, g));
    CMatrix rhs = kron(qg.alg.from_coords(g), qg.alg.from_coords(g));
    if (rel_residual(lhs, rhs) < 1e-7) out.push_back(std::move(g));
  }
  return out;
}

// Multiplication table of a finite set of group-likes; empty on failure.
std::vector<std::vector<int>> group_like_table(const FiniteQuantumGroup& qg,
                                               std::vector<std::vector<cplx>>& gs) {
  const int m = static_cast<int>(gs.size());
  // put the unit first
  const auto unit = qg.alg.unit_coords();
  for (int i = 0; i < m; ++i) {
    double d = 0.0;
    for (size_t k = 0; k < unit.size(); ++k) d += std::norm(gs[i][k] - unit[k]);
    if (std::sqrt(d) < 1e-7) {
      std::swap(gs[0], gs[i]);
      break;
    }
  }
  std::vector<std::vector<int>> table(m, std::vector<int>(m, -1));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      auto prod = qg.alg.coords(matmul(qg.alg.from_coords(gs[i]), qg.alg.from_coords(gs[j])));
      for (int k = 0; k < m; ++k) {
        double d = 0.0;
        for (size_t q = 0; q < prod.size(); ++q) d += std::norm(prod[q] - gs[k][q]);
        if (std::sqrt(d) < 1e-7) {
          table[i][j] = k;
          break;
        }
      }
      if (table[i][j] < 0) return {};
    }
  return table;
}

}  // namespace

IsoResult find_isomorphism(const FiniteQuantumGroup& a, const FiniteQuantumGroup& b,
                           double tol, int seeds_per_matching, unsigned long long seed) {
  IsoResult best;
  if (a.dim() != b.dim()) return best;
  const int n = a.dim();
  IsoProblem prob = make_problem(a, b);
  std::mt19937_64 rng(seed);

  auto consider = [&](const CMatrix& t, double resid) {
    if (resid < best.residual) {
      best.residual = resid;
      best.map = t;
      best.identified = resid <= tol && smallest_singular_value(t) > 1e-6;
    }
  };

  // Fast path for a pair of commutative algebras: a *-isomorphism permutes
  // the minimal projections; Delta-compatibility picks out the right one.
  if (is_commutative(a) && is_commutative(b) && n <= 8) {
    auto pa = block_decomposition(a.alg);
    auto pb = block_decomposition(b.alg);
    if (pa.size() == static_cast<size_t>(n) && pb.size() == static_cast<size_t>(n)) {
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      do {
        // T maps projection pa[k] to pb[perm[k]]; solve T on the projection
        // frame (a basis, since the algebras are commutative).
        CMatrix pa_mat(n, n), pb_mat(n, n);
        for (int k = 0; k < n; ++k) {
          auto ca = a.alg.coords(pa[k].projection);
          auto cb = b.alg.coords(pb[perm[k]].projection);
          for (int i = 0; i < n; ++i) {
            pa_mat(i, k) = ca[i];
            pb_mat(i, k) = cb[i];
          }
        }
        CMatrix tt = matmul(pb_mat, inverse(pa_mat));
        double r = full_residual(prob, tt);
        consider(tt, r);
        if (best.identified) return best;
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }

  // General path: enforce the linear laws exactly, pin group-like elements
  // to group-like elements, Gauss-Newton on what is left.
  AffineSpace sp = linear_constraints(prob);
  if (sp.dirs.empty() && fro_norm(sp.part) < 1e-9) return best;

  std::normal_distribution<double> g(0.0, 1.0);
  const double target_norm = std::sqrt(static_cast<double>(n));  // ||T||_F of a *-iso

  auto run_space = [&](const AffineSpace& space, int tries) {
    for (int s = 0; s < tries && !best.identified; ++s) {
      CMatrix seed_mat(n, n);
      if (s == 0) {
        seed_mat = CMatrix::identity(n);
      } else {
        for (auto& v : seed_mat.a) v = cplx(g(rng), g(rng));
        seed_mat *= cplx(target_norm / fro_norm(seed_mat));
      }
      CMatrix t = project_to_affine(space, seed_mat);
      double r = refine(prob, space, t);
      consider(t, r);
    }
  };

  auto gs_a = group_likes(a);
  auto gs_b = group_likes(b);
  if (gs_a.size() == gs_b.size() && gs_a.size() > 1 && gs_a.size() <= 8) {
    auto ta = group_like_table(a, gs_a);
    auto tb = group_like_table(b, gs_b);
    const int m = static_cast<int>(gs_a.size());
    if (!ta.empty() && !tb.empty()) {
      // enumerate group isomorphisms sigma with sigma(e) = e
      std::vector<int> perm(m - 1);
      std::iota(perm.begin(), perm.end(), 1);
      do {
        std::vector<int> sigma(m);
        sigma[0] = 0;
        for (int i = 1; i < m; ++i) sigma[i] = perm[i - 1];
        bool homo = true;
        for (int i = 0; i < m && homo; ++i)
          for (int j = 0; j < m && homo; ++j)
            if (sigma[ta[i][j]] != tb[sigma[i]][sigma[j]]) homo = false;
        if (!homo) continue;
        std::vector<std::vector<cplx>> hs(m);
        for (int i = 0; i < m; ++i) hs[i] = gs_b[sigma[i]];
        AffineSpace pinned;
        if (!pin_vectors(sp, gs_a, hs, pinned)) continue;
        run_space(pinned, std::max(1, seeds_per_matching));
        if (best.identified) return best;
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }

  run_space(sp, std::max(1, seeds_per_matching) * 8);
  return best;
}

}  // namespace finq
