#include "floquet_ssh/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "floquet_ssh/errors.hpp"

namespace fssh {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

inline double abs1(const Complex& v) { return std::abs(v.real()) + std::abs(v.imag()); }

// Householder reduction to upper Hessenberg form, h <- Q^H h Q. Accumulates Q if q != nullptr.
void reduce_to_hessenberg(ComplexMatrix& h, ComplexMatrix* q) {
  const std::size_t n = h.dim();
  if (n < 3) return;
  std::vector<Complex> v(n);
  std::vector<Complex> w(n);
  auto reflect_right = [&](ComplexMatrix& a, std::size_t k, std::size_t len) {
    // a[:, k+1:] <- a[:, k+1:] (I - 2 v v^H)
    std::fill(w.begin(), w.end(), Complex{});
    for (std::size_t l = 0; l < len; ++l) {
      const Complex vl = v[l];
      const Complex* col = a.data() + (k + 1 + l) * n;
      for (std::size_t i = 0; i < n; ++i) w[i] += col[i] * vl;
    }
    for (std::size_t l = 0; l < len; ++l) {
      const Complex f = 2.0 * std::conj(v[l]);
      Complex* col = a.data() + (k + 1 + l) * n;
      for (std::size_t i = 0; i < n; ++i) col[i] -= w[i] * f;
    }
  };

  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t len = n - k - 1;
    double xnorm2 = 0.0;
    for (std::size_t i = k + 2; i < n; ++i) xnorm2 += std::norm(h(i, k));
    if (xnorm2 == 0.0) continue;  // already Hessenberg in this column
    xnorm2 += std::norm(h(k + 1, k));
    const double xnorm = std::sqrt(xnorm2);
    const Complex x0 = h(k + 1, k);
    const Complex phase = (x0 == Complex{}) ? Complex(1.0) : x0 / std::abs(x0);
    const Complex alpha = -phase * xnorm;

    for (std::size_t i = 0; i < len; ++i) v[i] = h(k + 1 + i, k);
    v[0] -= alpha;
    double vnorm = 0.0;
    for (std::size_t i = 0; i < len; ++i) vnorm += std::norm(v[i]);
    vnorm = std::sqrt(vnorm);
    if (vnorm == 0.0) continue;
    for (std::size_t i = 0; i < len; ++i) v[i] /= vnorm;

    // h[k+1:, k:] <- (I - 2 v v^H) h[k+1:, k:]
    for (std::size_t j = k + 1; j < n; ++j) {
      Complex* col = h.data() + j * n + k + 1;
      Complex s{};
      for (std::size_t i = 0; i < len; ++i) s += std::conj(v[i]) * col[i];
      s *= 2.0;
      for (std::size_t i = 0; i < len; ++i) col[i] -= v[i] * s;
    }
    h(k + 1, k) = alpha;
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = Complex{};

    reflect_right(h, k, len);
    if (q != nullptr) reflect_right(*q, k, len);
  }
}

// Rotation G = [[c, s], [-conj(s), c]] with G [x; y] = [r; 0].
inline void make_givens(const Complex& x, const Complex& y, double& c, Complex& s) {
  const double ax = std::abs(x);
  const double ay = std::abs(y);
  if (ay == 0.0) {
    c = 1.0;
    s = Complex{};
    return;
  }
  if (ax == 0.0) {
    c = 0.0;
    s = std::conj(y) / ay;
    return;
  }
  const double r = std::hypot(ax, ay);
  c = ax / r;
  s = (x / ax) * std::conj(y) / r;
}

Complex wilkinson_shift(const ComplexMatrix& h, std::size_t hi) {
  const Complex a = h(hi - 1, hi - 1);
  const Complex b = h(hi - 1, hi);
  const Complex c = h(hi, hi - 1);
  const Complex d = h(hi, hi);
  const Complex p = 0.5 * (a - d);
  const Complex bc = b * c;
  const Complex disc = std::sqrt(p * p + bc);
  const Complex plus = p + disc;
  const Complex minus = p - disc;
  const Complex den = std::abs(plus) >= std::abs(minus) ? plus : minus;
  if (den == Complex{}) return d;
  return d - bc / den;
}

// Single-shift complex QR on an upper Hessenberg matrix. With want_schur the full
// triangular Schur form is produced and the rotations are accumulated into z.
int hessenberg_qr(ComplexMatrix& h, ComplexMatrix* z, bool want_schur) {
  const std::size_t n = h.dim();
  if (n == 0) return 0;
  const int max_total = 30 * static_cast<int>(std::max<std::size_t>(10, n));
  double hnorm = h.norm1();
  if (hnorm == 0.0) hnorm = 1.0;

  std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n) - 1;
  int its = 0;
  int total = 0;
  while (hi > 0) {
    std::ptrdiff_t l = hi;
    for (; l > 0; --l) {
      double scale = abs1(h(l - 1, l - 1)) + abs1(h(l, l));
      if (scale == 0.0) scale = hnorm;
      if (abs1(h(l, l - 1)) <= kEps * scale) {
        h(l, l - 1) = Complex{};
        break;
      }
    }
    if (l == hi) {
      --hi;
      its = 0;
      continue;
    }
    if (total >= max_total) {
      throw SolverError(FailureCode::NonConvergence,
                        "QR iteration did not converge: active block [" + std::to_string(l) +
                            ", " + std::to_string(hi) + "] of dimension " + std::to_string(n) +
                            " after " + std::to_string(total) + " sweeps");
    }

    Complex mu;
    if (its > 0 && its % 20 == 0) {
      mu = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1).real());
    } else if (its > 0 && its % 10 == 0) {
      mu = h(l, l) + 0.75 * std::abs(h(l + 1, l).real());
    } else {
      mu = wilkinson_shift(h, static_cast<std::size_t>(hi));
    }

    const std::size_t lo = static_cast<std::size_t>(l);
    const std::size_t top = static_cast<std::size_t>(hi);
    const std::size_t col_end = want_schur ? n - 1 : top;
    Complex x = h(lo, lo) - mu;
    Complex y = h(lo + 1, lo);
    for (std::size_t k = lo; k < top; ++k) {
      if (k > lo) {
        x = h(k, k - 1);
        y = h(k + 1, k - 1);
      }
      double c;
      Complex s;
      make_givens(x, y, c, s);
      const Complex sc = std::conj(s);

      for (std::size_t j = (k > lo ? k - 1 : lo); j <= col_end; ++j) {
        const Complex a = h(k, j);
        const Complex b = h(k + 1, j);
        h(k, j) = c * a + s * b;
        h(k + 1, j) = -sc * a + c * b;
      }
      if (k > lo) h(k + 1, k - 1) = Complex{};

      const std::size_t row_begin = want_schur ? 0 : lo;
      const std::size_t row_end = std::min(k + 2, top);
      Complex* ck = h.data() + k * n;
      Complex* ck1 = h.data() + (k + 1) * n;
      for (std::size_t i = row_begin; i <= row_end; ++i) {
        const Complex a = ck[i];
        const Complex b = ck1[i];
        ck[i] = a * c + b * sc;
        ck1[i] = -a * s + b * c;
      }
      if (z != nullptr) {
        Complex* zk = z->data() + k * n;
        Complex* zk1 = z->data() + (k + 1) * n;
        for (std::size_t i = 0; i < n; ++i) {
          const Complex a = zk[i];
          const Complex b = zk1[i];
          zk[i] = a * c + b * sc;
          zk1[i] = -a * s + b * c;
        }
      }
    }
    ++its;
    ++total;
  }
  return total;
}

std::vector<std::size_t> spectral_order(const std::vector<Complex>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return spectral_less(values[a], values[b]);
  });
  return order;
}

// Right eigenvectors of the upper triangular t, mapped back through z.
ComplexMatrix schur_eigenvectors(const ComplexMatrix& t, const ComplexMatrix& z) {
  const std::size_t n = t.dim();
  const double small = std::max(kEps * t.norm1(), std::numeric_limits<double>::min());
  constexpr double kBig = 1e150;
  ComplexMatrix v(n);
  std::vector<Complex> x(n);
  std::vector<Complex> rhs(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex lambda = t(k, k);
    x[k] = 1.0;
    for (std::size_t i = 0; i < k; ++i) rhs[i] = -t(i, k);
    for (std::size_t jj = k; jj-- > 0;) {
      Complex den = t(jj, jj) - lambda;
      if (std::abs(den) < small) den = small;
      x[jj] = rhs[jj] / den;
      const double mag = std::abs(x[jj]);
      if (mag > kBig) {
        const double f = 1.0 / mag;
        for (std::size_t i = jj; i <= k; ++i) x[i] *= f;
        for (std::size_t i = 0; i < jj; ++i) rhs[i] *= f;
      }
      const Complex* tj = t.data() + jj * n;
      for (std::size_t i = 0; i < jj; ++i) rhs[i] -= tj[i] * x[jj];
    }
    Complex* out = v.data() + k * n;
    for (std::size_t j = 0; j <= k; ++j) {
      const Complex xj = x[j];
      const Complex* zj = z.data() + j * n;
      for (std::size_t i = 0; i < n; ++i) out[i] += zj[i] * xj;
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += std::norm(out[i]);
    norm = std::sqrt(norm);
    if (norm > 0.0)
      for (std::size_t i = 0; i < n; ++i) out[i] /= norm;
  }
  return v;
}

void require_finite_square(const ComplexMatrix& m, const char* who) {
  if (!m.all_finite()) {
    throw SolverError(FailureCode::Overflow, std::string(who) + ": matrix has non-finite entries");
  }
}

}  // namespace

bool spectral_less(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

Spectrum eig_dense(const ComplexMatrix& m) {
  require_finite_square(m, "eig_dense");
  const std::size_t n = m.dim();
  Spectrum out;
  if (n == 0) return out;

  ComplexMatrix t = m;
  ComplexMatrix z = ComplexMatrix::identity(n);
  reduce_to_hessenberg(t, &z);
  out.qr_iterations = hessenberg_qr(t, &z, true);

  ComplexMatrix vectors = schur_eigenvectors(t, z);
  std::vector<Complex> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = t(i, i);

  const auto order = spectral_order(values);
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = values[order[k]];
    std::copy_n(vectors.column(order[k]).begin(), n, out.eigenvectors.column(k).begin());
  }

  const ComplexMatrix mv = matmul(m, out.eigenvectors);
  for (std::size_t k = 0; k < n; ++k) {
    double r = 0.0;
    const auto col = mv.column(k);
    const auto vk = out.eigenvectors.column(k);
    for (std::size_t i = 0; i < n; ++i) r += std::norm(col[i] - out.eigenvalues[k] * vk[i]);
    out.max_residual = std::max(out.max_residual, std::sqrt(r));
  }
  return out;
}

std::vector<Complex> eigenvalues_dense(const ComplexMatrix& m) {
  require_finite_square(m, "eigenvalues_dense");
  ComplexMatrix t = m;
  reduce_to_hessenberg(t, nullptr);
  hessenberg_qr(t, nullptr, false);
  std::vector<Complex> values(t.dim());
  for (std::size_t i = 0; i < t.dim(); ++i) values[i] = t(i, i);
  std::stable_sort(values.begin(), values.end(), spectral_less);
  return values;
}

ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t n = a.dim();
  ComplexMatrix lu = a;
  ComplexMatrix x = b;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(lu(i, k));
      if (v > best) {
        best = v;
        pivot = i;
      }
    }
    if (best == 0.0) throw SolverError(FailureCode::NonConvergence, "singular matrix in solve");
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(lu(k, j), lu(pivot, j));
        std::swap(x(k, j), x(pivot, j));
      }
    }
    const Complex inv = 1.0 / lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) lu(i, k) *= inv;
    for (std::size_t j = k + 1; j < n; ++j) {
      const Complex ukj = lu(k, j);
      if (ukj == Complex{}) continue;
      Complex* col = lu.data() + j * n;
      const Complex* lk = lu.data() + k * n;
      for (std::size_t i = k + 1; i < n; ++i) col[i] -= lk[i] * ukj;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    Complex* col = x.data() + j * n;
    for (std::size_t k = 0; k < n; ++k) {
      const Complex* lk = lu.data() + k * n;
      for (std::size_t i = k + 1; i < n; ++i) col[i] -= lk[i] * col[k];
    }
    for (std::size_t k = n; k-- > 0;) {
      col[k] /= lu(k, k);
      const Complex* uk = lu.data() + k * n;
      for (std::size_t i = 0; i < k; ++i) col[i] -= uk[i] * col[k];
    }
  }
  return x;
}

ComplexMatrix inverse(const ComplexMatrix& a) {
  return solve(a, ComplexMatrix::identity(a.dim()));
}

namespace {

// Higham (2005) thresholds on the 1-norm for Pade degrees 3, 5, 7, 9, 13.
constexpr std::array<double, 5> kPadeTheta = {1.495585217958292e-2, 2.539398330063230e-1,
                                              9.504178996162932e-1, 2.097847961257068e0,
                                              5.371920351148152e0};

ComplexMatrix pade_ratio(const ComplexMatrix& a, int degree) {
  const std::size_t n = a.dim();
  const ComplexMatrix id = ComplexMatrix::identity(n);
  const ComplexMatrix a2 = matmul(a, a);
  ComplexMatrix u(n);
  ComplexMatrix v(n);

  auto poly = [&](std::initializer_list<std::pair<double, const ComplexMatrix*>> terms) {
    ComplexMatrix sum(n);
    for (const auto& [coef, mat] : terms) sum += Complex(coef) * *mat;
    return sum;
  };

  switch (degree) {
    case 3: {
      constexpr double b[] = {120.0, 60.0, 12.0, 1.0};
      u = matmul(a, poly({{b[3], &a2}, {b[1], &id}}));
      v = poly({{b[2], &a2}, {b[0], &id}});
      break;
    }
    case 5: {
      constexpr double b[] = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
      const ComplexMatrix a4 = matmul(a2, a2);
      u = matmul(a, poly({{b[5], &a4}, {b[3], &a2}, {b[1], &id}}));
      v = poly({{b[4], &a4}, {b[2], &a2}, {b[0], &id}});
      break;
    }
    case 7: {
      constexpr double b[] = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                              25200.0,    1512.0,    56.0,      1.0};
      const ComplexMatrix a4 = matmul(a2, a2);
      const ComplexMatrix a6 = matmul(a4, a2);
      u = matmul(a, poly({{b[7], &a6}, {b[5], &a4}, {b[3], &a2}, {b[1], &id}}));
      v = poly({{b[6], &a6}, {b[4], &a4}, {b[2], &a2}, {b[0], &id}});
      break;
    }
    case 9: {
      constexpr double b[] = {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
                              2162160.0,     110880.0,     3960.0,       90.0,        1.0};
      const ComplexMatrix a4 = matmul(a2, a2);
      const ComplexMatrix a6 = matmul(a4, a2);
      const ComplexMatrix a8 = matmul(a6, a2);
      u = matmul(a, poly({{b[9], &a8}, {b[7], &a6}, {b[5], &a4}, {b[3], &a2}, {b[1], &id}}));
      v = poly({{b[8], &a8}, {b[6], &a6}, {b[4], &a4}, {b[2], &a2}, {b[0], &id}});
      break;
    }
    default: {
      constexpr double b[] = {64764752532480000.0,
                              32382376266240000.0,
                              7771770303897600.0,
                              1187353796428800.0,
                              129060195264000.0,
                              10559470521600.0,
                              670442572800.0,
                              33522128640.0,
                              1323241920.0,
                              40840800.0,
                              960960.0,
                              16380.0,
                              182.0,
                              1.0};
      const ComplexMatrix a4 = matmul(a2, a2);
      const ComplexMatrix a6 = matmul(a4, a2);
      const ComplexMatrix inner_u = matmul(a6, poly({{b[13], &a6}, {b[11], &a4}, {b[9], &a2}}));
      u = matmul(a, inner_u + poly({{b[7], &a6}, {b[5], &a4}, {b[3], &a2}, {b[1], &id}}));
      const ComplexMatrix inner_v = matmul(a6, poly({{b[12], &a6}, {b[10], &a4}, {b[8], &a2}}));
      v = inner_v + poly({{b[6], &a6}, {b[4], &a4}, {b[2], &a2}, {b[0], &id}});
      break;
    }
  }
  return solve(v - u, v + u);
}

}  // namespace

ComplexMatrix expm(const ComplexMatrix& m) {
  require_finite_square(m, "expm");
  const std::size_t n = m.dim();
  if (n == 0) return m;
  const double norm = m.norm1();
  if (!std::isfinite(norm)) throw SolverError(FailureCode::Overflow, "expm: infinite norm");

  constexpr std::array<int, 4> kDegrees = {3, 5, 7, 9};
  for (std::size_t i = 0; i < kDegrees.size(); ++i) {
    if (norm <= kPadeTheta[i]) return pade_ratio(m, kDegrees[i]);
  }

  const int squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / kPadeTheta[4]))));
  if (squarings > 1000) {
    throw SolverError(FailureCode::Overflow, "expm: norm too large for scaling and squaring");
  }
  ComplexMatrix scaled = m;
  scaled *= std::ldexp(1.0, -squarings);
  ComplexMatrix r = pade_ratio(scaled, 13);
  for (int i = 0; i < squarings; ++i) r = matmul(r, r);
  if (!r.all_finite()) throw SolverError(FailureCode::Overflow, "expm: result overflowed");
  return r;
}

Complex principal_log(const Complex& mu) {
  Complex l = std::log(mu);
  if (l.imag() == -std::numbers::pi) l.imag(std::numbers::pi);
  return l;
}

EigenLogs logm_eig_decomposed(const ComplexMatrix& u) {
  EigenLogs out;
  out.spectrum = eig_dense(u);
  out.logs.reserve(out.spectrum.eigenvalues.size());
  for (const auto& mu : out.spectrum.eigenvalues) {
    if (std::abs(mu) < 1e-14) {
      throw SolverError(FailureCode::PropagatorCollapse,
                        "logm_eig: eigenvalue with modulus below 1e-14");
    }
    out.logs.push_back(principal_log(mu));
  }
  try {
    out.eigenvector_condition =
        out.spectrum.eigenvectors.norm1() * inverse(out.spectrum.eigenvectors).norm1();
  } catch (const SolverError&) {
    out.eigenvector_condition = std::numeric_limits<double>::infinity();
  }
  return out;
}

std::vector<Complex> logm_eig(const ComplexMatrix& u) { return logm_eig_decomposed(u).logs; }

}  // namespace fssh
