#include "hklag/symplin.hpp"

#include <algorithm>
#include <numeric>

namespace hklag {

RatMat rref(RatMat m) {
  if (m.empty()) return m;
  int rows = static_cast<int>(m.size());
  int cols = static_cast<int>(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[r], m[piv]);
    Rational inv = 1 / m[r][c];
    for (int j = c; j < cols; ++j) m[r][j] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return m;
}

int rank(const RatMat& m) {
  RatMat e = rref(m);
  int r = 0;
  for (const auto& row : e)
    if (std::any_of(row.begin(), row.end(),
                    [](const Rational& q) { return q != 0; }))
      ++r;
  return r;
}

RatMat row_space_basis(const RatMat& m) {
  RatMat e = rref(m);
  RatMat out;
  for (auto& row : e)
    if (std::any_of(row.begin(), row.end(),
                    [](const Rational& q) { return q != 0; }))
      out.push_back(std::move(row));
  return out;
}

RatMat nullspace(const RatMat& m) {
  if (m.empty()) return {};
  int cols = static_cast<int>(m[0].size());
  RatMat e = rref(m);
  std::vector<int> pivot_col;
  for (const auto& row : e) {
    for (int c = 0; c < cols; ++c)
      if (row[c] != 0) {
        pivot_col.push_back(c);
        break;
      }
  }
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  RatMat basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RatVec v(cols, 0);
    v[free] = 1;
    for (size_t i = 0; i < pivot_col.size(); ++i)
      v[pivot_col[i]] = -e[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

SymplecticSpace::SymplecticSpace(int n_half) : n(n_half) {
  gram.assign(2 * n, RatVec(2 * n, 0));
  for (int i = 0; i < n; ++i) {
    gram[i][n + i] = 1;
    gram[n + i][i] = -1;
  }
}

SymplecticSpace::SymplecticSpace(int n_half, RatMat gram_matrix)
    : n(n_half), gram(std::move(gram_matrix)) {
  int d = static_cast<int>(gram.size());
  if (d != 2 * n) throw std::invalid_argument("gram must be 2n x 2n");
  for (int i = 0; i < d; ++i) {
    if (static_cast<int>(gram[i].size()) != d)
      throw std::invalid_argument("gram must be square");
    for (int j = 0; j < d; ++j)
      if (gram[i][j] != -gram[j][i])
        throw std::invalid_argument("gram must be antisymmetric");
  }
  if (d > 0 && rank(gram) != d)
    throw std::invalid_argument("gram must be invertible");
}

SymplecticSubspace::SymplecticSubspace(SymplecticSpace space,
                                       RatMat basis_rows)
    : ambient(std::move(space)), basis(std::move(basis_rows)) {
  for (const auto& row : basis)
    if (static_cast<int>(row.size()) != ambient.dim())
      throw std::invalid_argument("basis vector has wrong length");
  if (rank(basis) != static_cast<int>(basis.size()))
    throw std::invalid_argument("basis vectors are dependent");
}

bool SymplecticSubspace::same_space(const SymplecticSubspace& o) const {
  return row_space_basis(basis) == row_space_basis(o.basis);
}

bool SymplecticSubspace::contains(const SymplecticSubspace& o) const {
  RatMat stacked = basis;
  for (const auto& r : o.basis) stacked.push_back(r);
  return rank(stacked) == dim();
}

namespace {

RatVec mat_vec(const RatMat& m, const RatVec& v) {
  RatVec out(m.size(), 0);
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  return out;
}

Rational pairing(const SymplecticSpace& sp, const RatVec& a, const RatVec& b) {
  Rational acc = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      if (sp.gram[i][j] != 0) acc += a[i] * sp.gram[i][j] * b[j];
  }
  return acc;
}

// Restriction of the form to the subspace basis: A_ab = Omega(b_a, b_b).
RatMat restricted_form(const SymplecticSubspace& c) {
  int m = c.dim();
  RatMat a(m, RatVec(m, 0));
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      a[i][j] = pairing(c.ambient, c.basis[i], c.basis[j]);
      a[j][i] = -a[i][j];
    }
  return a;
}

Rational pfaffian(const RatMat& a, const std::vector<int>& idx) {
  if (idx.empty()) return 1;
  // expand along the first row
  Rational acc = 0;
  int sign = 1;
  for (size_t j = 1; j < idx.size(); ++j) {
    Rational aij = a[idx[0]][idx[j]];
    if (aij != 0) {
      std::vector<int> rest;
      for (size_t k = 1; k < idx.size(); ++k)
        if (k != j) rest.push_back(idx[k]);
      acc += Rational(sign) * aij * pfaffian(a, rest);
    }
    sign = -sign;
  }
  return acc;
}

bool all_pfaffians_vanish(const RatMat& a, int block) {
  int m = static_cast<int>(a.size());
  if (block > m) return true;
  std::vector<int> idx(block);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    if (pfaffian(a, idx) != 0) return false;
    // next combination
    int i = block - 1;
    while (i >= 0 && idx[i] == m - block + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int k = i + 1; k < block; ++k) idx[k] = idx[k - 1] + 1;
  }
  return true;
}

}  // namespace

SymplecticSubspace perp(const SymplecticSubspace& c) {
  // v in C^perp  iff  B G v = 0
  if (c.basis.empty()) {
    RatMat id(c.ambient.dim(), RatVec(c.ambient.dim(), 0));
    for (int i = 0; i < c.ambient.dim(); ++i) id[i][i] = 1;
    return SymplecticSubspace(c.ambient, id);
  }
  RatMat bg;
  for (const auto& row : c.basis) bg.push_back(mat_vec(c.ambient.gram, row));
  // row * gram gives covector row; mat_vec computed gram*row which works
  // since gram is antisymmetric only up to sign; the kernel is the same.
  RatMat ker = nullspace(bg);
  return SymplecticSubspace(c.ambient, row_space_basis(ker));
}

Classification classify(const SymplecticSubspace& c) {
  SymplecticSubspace p = perp(c);
  bool iso = p.contains(c);
  bool coiso = c.contains(p);
  if (iso && coiso) return Classification::Lagrangian;
  if (iso) return Classification::Isotropic;
  if (coiso) return Classification::Coisotropic;
  return Classification::None;
}

bool wedge_power_vanishes(const SymplecticSubspace& c, int k) {
  if (k < 1 || k > c.ambient.n) throw BadExponent("k out of range");
  RatMat a = restricted_form(c);
  return all_pfaffians_vanish(a, 2 * k);
}

SymplecticSubspace hyperplane_intersection(const SymplecticSpace& space,
                                           const RatMat& covectors) {
  if (rank(covectors) != static_cast<int>(covectors.size()))
    throw DependentHyperplanes("covectors are dependent");
  RatMat ker = nullspace(covectors);
  return SymplecticSubspace(space, row_space_basis(ker));
}

HyperplaneCheck coisotropic_via_hyperplanes(const SymplecticSpace& space,
                                            const RatMat& covectors) {
  if (rank(covectors) != static_cast<int>(covectors.size()))
    throw DependentHyperplanes("covectors are dependent");
  int m = static_cast<int>(covectors.size());
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      RatMat pair = {covectors[i], covectors[j]};
      SymplecticSubspace dij = hyperplane_intersection(space, pair);
      if (!wedge_power_vanishes(dij, space.n - 1))
        return {false, std::make_pair(i, j)};
    }
  return {true, std::nullopt};
}

RatVec SymplecticReduction::project(const RatVec& v) const {
  // solve v = sum c_a section_a  (mod D^perp) by a linear system
  int dim = static_cast<int>(v.size());
  int ns = static_cast<int>(section.size());
  int np = static_cast<int>(dperp.size());
  RatMat sys(dim, RatVec(ns + np + 1, 0));
  for (int i = 0; i < dim; ++i) {
    for (int a = 0; a < ns; ++a) sys[i][a] = section[a][i];
    for (int b = 0; b < np; ++b) sys[i][ns + b] = dperp[b][i];
    sys[i][ns + np] = v[i];
  }
  RatMat e = rref(sys);
  // back-read solution: each pivot row with pivot in column < ns
  RatVec coeff(ns, 0);
  for (const auto& row : e) {
    int c = -1;
    for (int j = 0; j < ns + np + 1; ++j)
      if (row[j] != 0) {
        c = j;
        break;
      }
    if (c < 0) continue;
    if (c == ns + np)
      throw std::invalid_argument("vector not in D");
    if (c < ns) coeff[c] = row[ns + np];
  }
  return coeff;
}

SymplecticReduction reduce(const SymplecticSubspace& d) {
  Classification cls = classify(d);
  if (cls != Classification::Coisotropic && cls != Classification::Lagrangian)
    throw NotCoisotropic("reduce requires a coisotropic subspace");
  SymplecticSubspace dp = perp(d);
  // extend D^perp to a basis of D: rows of D independent from D^perp
  RatMat section;
  RatMat acc = dp.basis;
  for (const auto& row : d.basis) {
    RatMat test = acc;
    test.push_back(row);
    if (rank(test) > static_cast<int>(acc.size())) {
      section.push_back(row);
      acc.push_back(row);
    }
  }
  int q = static_cast<int>(section.size());
  RatMat gram(q, RatVec(q, 0));
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      gram[i][j] = pairing(d.ambient, section[i], section[j]);
  SymplecticSpace quot(q / 2, gram);
  return SymplecticReduction{std::move(quot), std::move(section), dp.basis};
}

SymplecticSubspace intersect(const SymplecticSubspace& a,
                             const SymplecticSubspace& b) {
  // kernel trick: coefficients (u, w) with u.A = w.B
  int da = a.dim(), db = b.dim(), dim = a.ambient.dim();
  RatMat sys(dim, RatVec(da + db, 0));
  for (int i = 0; i < dim; ++i) {
    for (int r = 0; r < da; ++r) sys[i][r] = a.basis[r][i];
    for (int r = 0; r < db; ++r) sys[i][da + r] = -b.basis[r][i];
  }
  RatMat ker = nullspace(sys);
  RatMat vecs;
  for (const auto& k : ker) {
    RatVec v(dim, 0);
    for (int r = 0; r < da; ++r)
      for (int i = 0; i < dim; ++i) v[i] += k[r] * a.basis[r][i];
    vecs.push_back(std::move(v));
  }
  return SymplecticSubspace(a.ambient, row_space_basis(vecs));
}

SymplecticSubspace sum(const SymplecticSubspace& a,
                       const SymplecticSubspace& b) {
  RatMat stacked = a.basis;
  for (const auto& r : b.basis) stacked.push_back(r);
  return SymplecticSubspace(a.ambient, row_space_basis(stacked));
}

SymplecticSubspace lag_project(const SymplecticSubspace& c,
                               const SymplecticSubspace& d) {
  if (classify(c) != Classification::Lagrangian)
    throw NotLagrangian("lag_project requires Lagrangian C");
  Classification cd = classify(d);
  if (cd != Classification::Coisotropic && cd != Classification::Lagrangian)
    throw NotCoisotropic("lag_project requires coisotropic D");
  return sum(intersect(c, d), perp(d));
}

SymplecticSubspace lag_reduce(const SymplecticSubspace& c,
                              const SymplecticSubspace& d,
                              const SymplecticReduction& red) {
  if (classify(c) != Classification::Lagrangian)
    throw NotLagrangian("lag_reduce requires Lagrangian C");
  SymplecticSubspace cd = intersect(c, d);
  RatMat images;
  for (const auto& v : cd.basis) images.push_back(red.project(v));
  return SymplecticSubspace(red.quotient, row_space_basis(images));
}

}  // namespace hklag
