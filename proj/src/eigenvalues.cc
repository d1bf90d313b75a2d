// Copyright 2026 The Passive Hopper Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "hopper/linalg.h"

namespace hopper {
namespace {

constexpr int kMaxQrSweeps = 200;

// Diagonal similarity scaling by powers of two so that row and column norms
// are comparable. Eigenvalues are unchanged; rounding errors shrink.
void Balance(Eigen::MatrixXd& a) {
  constexpr double kRadix = 2.0;
  constexpr double kRadixSq = kRadix * kRadix;
  const Eigen::Index n = a.rows();
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / kRadix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= kRadix;
        c *= kRadixSq;
      }
      g = r * kRadix;
      while (c > g) {
        f /= kRadix;
        c /= kRadixSq;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

// Householder reduction to upper Hessenberg form, in place.
void ReduceToHessenberg(Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  for (Eigen::Index k = 0; k + 2 < n; ++k) {
    const Eigen::Index m = n - k - 1;
    Eigen::VectorXd v = a.col(k).tail(m);
    const double alpha = v.norm();
    if (alpha == 0.0) continue;
    const double beta = v[0] >= 0.0 ? -alpha : alpha;
    v[0] -= beta;
    const double vnorm = v.norm();
    if (vnorm == 0.0) continue;
    v /= vnorm;
    // a <- (I - 2 v v^T) a (I - 2 v v^T) on the trailing block.
    a.bottomRows(m) -= 2.0 * v * (v.transpose() * a.bottomRows(m));
    a.rightCols(m) -= 2.0 * (a.rightCols(m) * v) * v.transpose();
    a.col(k).tail(m - 1).setZero();
    a(k + 1, k) = beta;
  }
}

// Francis double-shift QR on an upper Hessenberg matrix. Adapted from the
// classic EISPACK hqr routine; indices are 1-based internally to keep the
// structure of the original recurrences.
std::vector<std::complex<double>> HessenbergQr(Eigen::MatrixXd& h) {
  const int n = static_cast<int>(h.rows());
  auto a = [&h](int i, int j) -> double& { return h(i - 1, j - 1); };
  std::vector<double> wr(n + 1, 0.0), wi(n + 1, 0.0);
  constexpr double kEps = std::numeric_limits<double>::epsilon();

  double anorm = 0.0;
  for (int i = 1; i <= n; ++i) {
    for (int j = std::max(i - 1, 1); j <= n; ++j) anorm += std::abs(a(i, j));
  }

  int sweeps = 0;
  int nn = n;
  double t = 0.0;
  double p = 0.0, q = 0.0, r = 0.0, s = 0.0, w = 0.0, x = 0.0, y = 0.0,
         z = 0.0;
  while (nn >= 1) {
    int its = 0;
    int l = 0;
    do {
      for (l = nn; l >= 2; --l) {
        s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
        if (s == 0.0) s = anorm;
        if (std::abs(a(l, l - 1)) <= kEps * s) {
          a(l, l - 1) = 0.0;
          break;
        }
      }
      x = a(nn, nn);
      if (l == nn) {
        wr[nn] = x + t;
        wi[nn--] = 0.0;
      } else {
        y = a(nn - 1, nn - 1);
        w = a(nn, nn - 1) * a(nn - 1, nn);
        if (l == nn - 1) {
          // Trailing 2x2 block solved in closed form.
          p = 0.5 * (y - x);
          q = p * p + w;
          z = std::sqrt(std::abs(q));
          x += t;
          if (q >= 0.0) {
            z = p + std::copysign(z, p);
            wr[nn - 1] = wr[nn] = x + z;
            if (z != 0.0) wr[nn] = x - w / z;
            wi[nn - 1] = wi[nn] = 0.0;
          } else {
            wr[nn - 1] = wr[nn] = x + p;
            wi[nn - 1] = z;
            wi[nn] = -z;
          }
          nn -= 2;
        } else {
          if (++sweeps > kMaxQrSweeps) {
            throw EigenvalueError("Eigenvalues: QR iteration did not converge");
          }
          if (its == 10 || its == 20) {
            // Exceptional shift.
            t += x;
            for (int i = 1; i <= nn; ++i) a(i, i) -= x;
            s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
            y = x = 0.75 * s;
            w = -0.4375 * s * s;
          }
          ++its;
          int m = nn - 2;
          for (; m >= l; --m) {
            z = a(m, m);
            r = x - z;
            s = y - z;
            p = (r * s - w) / a(m + 1, m) + a(m, m + 1);
            q = a(m + 1, m + 1) - z - r - s;
            r = a(m + 2, m + 1);
            s = std::abs(p) + std::abs(q) + std::abs(r);
            p /= s;
            q /= s;
            r /= s;
            if (m == l) break;
            const double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
            const double v = std::abs(p) * (std::abs(a(m - 1, m - 1)) +
                                            std::abs(z) +
                                            std::abs(a(m + 1, m + 1)));
            if (u <= kEps * v) break;
          }
          for (int i = m + 2; i <= nn; ++i) {
            a(i, i - 2) = 0.0;
            if (i != m + 2) a(i, i - 3) = 0.0;
          }
          for (int k = m; k <= nn - 1; ++k) {
            if (k != m) {
              p = a(k, k - 1);
              q = a(k + 1, k - 1);
              r = 0.0;
              if (k != nn - 1) r = a(k + 2, k - 1);
              x = std::abs(p) + std::abs(q) + std::abs(r);
              if (x != 0.0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            s = std::copysign(std::sqrt(p * p + q * q + r * r), p);
            if (s == 0.0) continue;
            if (k == m) {
              if (l != m) a(k, k - 1) = -a(k, k - 1);
            } else {
              a(k, k - 1) = -s * x;
            }
            p += s;
            x = p / s;
            y = q / s;
            z = r / s;
            q /= p;
            r /= p;
            for (int j = k; j <= nn; ++j) {
              p = a(k, j) + q * a(k + 1, j);
              if (k != nn - 1) {
                p += r * a(k + 2, j);
                a(k + 2, j) -= p * z;
              }
              a(k + 1, j) -= p * y;
              a(k, j) -= p * x;
            }
            const int mmin = nn < k + 3 ? nn : k + 3;
            for (int i = l; i <= mmin; ++i) {
              p = x * a(i, k) + y * a(i, k + 1);
              if (k != nn - 1) {
                p += z * a(i, k + 2);
                a(i, k + 2) -= p * r;
              }
              a(i, k + 1) -= p * q;
              a(i, k) -= p;
            }
          }
        }
      }
    } while (l < nn - 1);
  }

  std::vector<std::complex<double>> out;
  out.reserve(n);
  for (int i = 1; i <= n; ++i) out.emplace_back(wr[i], wi[i]);
  return out;
}

}  // namespace

std::vector<std::complex<double>> Eigenvalues(const Eigen::MatrixXd& A) {
  if (A.rows() != A.cols()) {
    throw std::invalid_argument("Eigenvalues: matrix must be square");
  }
  if (!A.allFinite()) {
    throw EigenvalueError("Eigenvalues: matrix has non-finite entries");
  }
  if (A.rows() == 0) return {};
  Eigen::MatrixXd h = A;
  Balance(h);
  ReduceToHessenberg(h);
  std::vector<std::complex<double>> values = HessenbergQr(h);

  // Descending magnitude. Conjugate partners have bit-identical magnitudes,
  // so ties fall through to real part and then imaginary part.
  std::sort(values.begin(), values.end(),
            [](const std::complex<double>& a, const std::complex<double>& b) {
              const double ma = std::abs(a), mb = std::abs(b);
              if (ma != mb) return ma > mb;
              if (a.real() != b.real()) return a.real() > b.real();
              return a.imag() > b.imag();
            });
  return values;
}

}  // namespace hopper
