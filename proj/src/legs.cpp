#include "finq/legs.hpp"

#include <algorithm>
#include <numeric>

namespace finq {

CMatrix flip(int dim1, int dim2) {
  CMatrix s(dim1 * dim2, dim1 * dim2);
  for (int i = 0; i < dim1; ++i)
    for (int j = 0; j < dim2; ++j) s(j * dim1 + i, i * dim2 + j) = 1.0;
  return s;
}

static std::vector<long long> strides_of(const std::vector<int>& dims) {
  std::vector<long long> st(dims.size(), 1);
  for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i)
    st[i] = st[i + 1] * dims[i + 1];
  return st;
}

CMatrix leg_permutation_operator(const std::vector<int>& dims, const std::vector<int>& perm) {
  if (perm.size() != dims.size()) throw InputError("leg permutation: arity mismatch");
  long long total = 1;
  for (int d : dims) total *= d;
  std::vector<int> out_dims(dims.size());
  for (size_t p = 0; p < perm.size(); ++p) out_dims[p] = dims[perm[p]];
  auto in_st = strides_of(dims);
  auto out_st = strides_of(out_dims);
  CMatrix P(static_cast<int>(total), static_cast<int>(total));
  std::vector<int> idx(dims.size(), 0);
  for (long long col = 0; col < total; ++col) {
    long long rest = col;
    for (size_t l = 0; l < dims.size(); ++l) {
      idx[l] = static_cast<int>(rest / in_st[l]);
      rest %= in_st[l];
    }
    long long row = 0;
    for (size_t p = 0; p < perm.size(); ++p) row += idx[perm[p]] * out_st[p];
    P(static_cast<int>(row), static_cast<int>(col)) = 1.0;
  }
  return P;
}

CMatrix permute_legs(const CMatrix& x, const std::vector<int>& dims,
                     const std::vector<int>& perm) {
  CMatrix P = leg_permutation_operator(dims, perm);
  return matmul(P, matmul(x, adjoint(P)));
}

CMatrix embed_legs(const CMatrix& x, const std::vector<int>& dims, const std::vector<int>& legs) {
  for (size_t i = 1; i < legs.size(); ++i)
    if (legs[i] <= legs[i - 1]) throw InputError("embed_legs: legs must be increasing");
  long long sub = 1;
  for (int l : legs) sub *= dims[l];
  if (x.rows != sub || x.cols != sub) throw InputError("embed_legs: operator size mismatch");
  long long total = 1;
  for (int d : dims) total *= d;
  auto st = strides_of(dims);
  std::vector<int> sub_dims;
  for (int l : legs) sub_dims.push_back(dims[l]);
  auto sub_st = strides_of(sub_dims);

  // Complement legs and their strides.
  std::vector<int> comp;
  for (int l = 0; l < static_cast<int>(dims.size()); ++l)
    if (std::find(legs.begin(), legs.end(), l) == legs.end()) comp.push_back(l);
  long long comp_total = 1;
  for (int l : comp) comp_total *= dims[l];

  CMatrix out(static_cast<int>(total), static_cast<int>(total));
#pragma omp parallel for schedule(static)
  for (long long c = 0; c < comp_total; ++c) {
    // base offset contributed by complement indices (same on row and column)
    long long base = 0;
    long long rest = c;
    for (size_t q = 0; q < comp.size(); ++q) {
      long long csz = 1;
      for (size_t r = q + 1; r < comp.size(); ++r) csz *= dims[comp[r]];
      const long long iq = rest / csz;
      rest %= csz;
      base += iq * st[comp[q]];
    }
    for (long long r = 0; r < sub; ++r) {
      long long row = base;
      long long rr = r;
      for (size_t q = 0; q < legs.size(); ++q) {
        row += (rr / sub_st[q]) * st[legs[q]];
        rr %= sub_st[q];
      }
      for (long long s = 0; s < sub; ++s) {
        const cplx v = x(static_cast<int>(r), static_cast<int>(s));
        if (v == cplx(0.0)) continue;
        long long col = base;
        long long ss = s;
        for (size_t q = 0; q < legs.size(); ++q) {
          col += (ss / sub_st[q]) * st[legs[q]];
          ss %= sub_st[q];
        }
        out(static_cast<int>(row), static_cast<int>(col)) = v;
      }
    }
  }
  return out;
}

CMatrix slice_left(const CMatrix& x, int d1, int d2, const std::vector<cplx>& xi,
                   const std::vector<cplx>& eta) {
  if (x.rows != d1 * d2 || x.cols != d1 * d2) throw InputError("slice_left: dimension mismatch");
  if (static_cast<int>(xi.size()) != d1 || static_cast<int>(eta.size()) != d1)
    throw InputError("slice_left: vector dimension mismatch");
  CMatrix y(d2, d2);
  for (int i = 0; i < d1; ++i) {
    const cplx ec = std::conj(eta[i]);
    if (ec == cplx(0.0)) continue;
    for (int j = 0; j < d1; ++j) {
      const cplx f = ec * xi[j];
      if (f == cplx(0.0)) continue;
      for (int k = 0; k < d2; ++k)
        for (int l = 0; l < d2; ++l) y(k, l) += f * x(i * d2 + k, j * d2 + l);
    }
  }
  return y;
}

CMatrix slice_right(const CMatrix& x, int d1, int d2, const std::vector<cplx>& xi,
                    const std::vector<cplx>& eta) {
  if (x.rows != d1 * d2 || x.cols != d1 * d2) throw InputError("slice_right: dimension mismatch");
  if (static_cast<int>(xi.size()) != d2 || static_cast<int>(eta.size()) != d2)
    throw InputError("slice_right: vector dimension mismatch");
  CMatrix y(d1, d1);
  for (int k = 0; k < d2; ++k) {
    const cplx ec = std::conj(eta[k]);
    if (ec == cplx(0.0)) continue;
    for (int l = 0; l < d2; ++l) {
      const cplx f = ec * xi[l];
      if (f == cplx(0.0)) continue;
      for (int i = 0; i < d1; ++i)
        for (int j = 0; j < d1; ++j) y(i, j) += f * x(i * d2 + k, j * d2 + l);
    }
  }
  return y;
}

CMatrix slice_left_density(const CMatrix& x, int d1, int d2, const CMatrix& dens) {
  if (x.rows != d1 * d2 || dens.rows != d1 || dens.cols != d1)
    throw InputError("slice_left_density: dimension mismatch");
  CMatrix y(d2, d2);
  for (int i = 0; i < d1; ++i)
    for (int j = 0; j < d1; ++j) {
      const cplx f = dens(i, j);
      if (f == cplx(0.0)) continue;
      for (int k = 0; k < d2; ++k)
        for (int l = 0; l < d2; ++l) y(k, l) += f * x(j * d2 + k, i * d2 + l);
    }
  return y;
}

CMatrix slice_right_density(const CMatrix& x, int d1, int d2, const CMatrix& dens) {
  if (x.rows != d1 * d2 || dens.rows != d2 || dens.cols != d2)
    throw InputError("slice_right_density: dimension mismatch");
  CMatrix y(d1, d1);
  for (int k = 0; k < d2; ++k)
    for (int l = 0; l < d2; ++l) {
      const cplx f = dens(k, l);
      if (f == cplx(0.0)) continue;
      for (int i = 0; i < d1; ++i)
        for (int j = 0; j < d1; ++j) y(i, j) += f * x(i * d2 + l, j * d2 + k);
    }
  return y;
}

std::vector<cplx> tensor_vec(const std::vector<cplx>& v, const std::vector<cplx>& w) {
  std::vector<cplx> out(v.size() * w.size());
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = 0; j < w.size(); ++j) out[i * w.size() + j] = v[i] * w[j];
  return out;
}

std::vector<cplx> basis_vec(int dim, int k) {
  std::vector<cplx> v(dim, cplx(0.0));
  v[k] = 1.0;
  return v;
}

}  // namespace finq
