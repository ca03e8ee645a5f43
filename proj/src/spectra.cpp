#include "ptreal/spectra.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <sstream>

#include "ptreal/oscillator_basis.hpp"

namespace ptreal {
namespace {

double sign_of(double magnitude, double sign) { return sign < 0.0 ? -magnitude : magnitude; }

struct SchurState {
  RMatrix t;  // quasi-triangular on exit
  RMatrix z;  // accumulated orthogonal transform
  std::vector<cplx> eigenvalues;
};

// Francis double-shift QR on an upper Hessenberg matrix, accumulating the
// transformations into s.z. Follows the EISPACK hqr2 iteration (without the
// eigenvector back-substitution).
void francis_qr(SchurState& s) {
  RMatrix& h = s.t;
  RMatrix& v = s.z;
  const int nn = static_cast<int>(h.rows());
  const int max_iterations = 40 * nn;
  const double eps = kDeflationEpsilon;
  std::vector<double> wr(nn), wi(nn);

  double norm = 0.0;
  for (int i = 0; i < nn; ++i)
    for (int j = std::max(i - 1, 0); j < nn; ++j) norm += std::abs(h(i, j));

  int n = nn - 1;
  int iter = 0;
  int total_iterations = 0;
  double exshift = 0.0;
  double p = 0, q = 0, r = 0, sc = 0, z = 0, w = 0, x = 0, y = 0;

  while (n >= 0) {
    // Look for a single small subdiagonal element.
    int l = n;
    while (l > 0) {
      sc = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
      if (sc == 0.0) sc = norm;
      if (std::abs(h(l, l - 1)) <= eps * sc) break;
      --l;
    }
    if (l > 0) h(l, l - 1) = 0.0;

    if (l == n) {
      // One real root.
      h(n, n) += exshift;
      wr[n] = h(n, n);
      wi[n] = 0.0;
      --n;
      iter = 0;
    } else if (l == n - 1) {
      // Two roots from the trailing 2x2 block.
      w = h(n, n - 1) * h(n - 1, n);
      p = (h(n - 1, n - 1) - h(n, n)) / 2.0;
      q = p * p + w;
      z = std::sqrt(std::abs(q));
      h(n, n) += exshift;
      h(n - 1, n - 1) += exshift;
      x = h(n, n);
      if (q >= 0.0) {
        z = p >= 0.0 ? p + z : p - z;
        wr[n - 1] = x + z;
        wr[n] = wr[n - 1];
        if (z != 0.0) wr[n] = x - w / z;
        wi[n - 1] = 0.0;
        wi[n] = 0.0;
        // Rotate the real pair into upper triangular form.
        x = h(n, n - 1);
        sc = std::abs(x) + std::abs(z);
        p = x / sc;
        q = z / sc;
        r = std::sqrt(p * p + q * q);
        p /= r;
        q /= r;
        for (int j = n - 1; j < nn; ++j) {
          z = h(n - 1, j);
          h(n - 1, j) = q * z + p * h(n, j);
          h(n, j) = q * h(n, j) - p * z;
        }
        for (int i = 0; i <= n; ++i) {
          z = h(i, n - 1);
          h(i, n - 1) = q * z + p * h(i, n);
          h(i, n) = q * h(i, n) - p * z;
        }
        for (int i = 0; i < nn; ++i) {
          z = v(i, n - 1);
          v(i, n - 1) = q * z + p * v(i, n);
          v(i, n) = q * v(i, n) - p * z;
        }
        h(n, n - 1) = 0.0;
      } else {
        wr[n - 1] = x + p;
        wr[n] = x + p;
        wi[n - 1] = z;
        wi[n] = -z;
      }
      n -= 2;
      iter = 0;
    } else {
      if (total_iterations >= max_iterations) {
        std::ostringstream os;
        os << "QR iteration did not converge after " << total_iterations
           << " iterations (stalled at block index " << n << ")";
        throw Error(ErrorKind::non_convergence, os.str());
      }
      x = h(n, n);
      y = h(n - 1, n - 1);
      w = h(n, n - 1) * h(n - 1, n);

      if (iter > 0 && iter % 10 == 0) {
        if ((iter / 10) % 2 == 1) {
          // Wilkinson's ad hoc shift.
          exshift += x;
          for (int i = 0; i <= n; ++i) h(i, i) -= x;
          sc = std::abs(h(n, n - 1)) + std::abs(h(n - 1, n - 2));
          x = y = 0.75 * sc;
          w = -0.4375 * sc * sc;
        } else {
          // Shift towards the eigenvalue of the trailing block nearest h(n,n).
          sc = (y - x) / 2.0;
          sc = sc * sc + w;
          if (sc > 0.0) {
            sc = std::sqrt(sc);
            if (y < x) sc = -sc;
            sc = x - w / ((y - x) / 2.0 + sc);
            for (int i = 0; i <= n; ++i) h(i, i) -= sc;
            exshift += sc;
            x = y = w = 0.964;
          }
        }
      }
      ++iter;
      ++total_iterations;

      // Look for two consecutive small subdiagonal elements.
      int m = n - 2;
      while (m >= l) {
        z = h(m, m);
        r = x - z;
        sc = y - z;
        p = (r * sc - w) / h(m + 1, m) + h(m, m + 1);
        q = h(m + 1, m + 1) - z - r - sc;
        r = h(m + 2, m + 1);
        sc = std::abs(p) + std::abs(q) + std::abs(r);
        p /= sc;
        q /= sc;
        r /= sc;
        if (m == l) break;
        if (std::abs(h(m, m - 1)) * (std::abs(q) + std::abs(r)) <
            eps * (std::abs(p) * (std::abs(h(m - 1, m - 1)) + std::abs(z) +
                                  std::abs(h(m + 1, m + 1))))) {
          break;
        }
        --m;
      }
      for (int i = m + 2; i <= n; ++i) {
        h(i, i - 2) = 0.0;
        if (i > m + 2) h(i, i - 3) = 0.0;
      }

      // Double QR step on rows l..n and columns m..n.
      for (int k = m; k <= n - 1; ++k) {
        const bool notlast = k != n - 1;
        if (k != m) {
          p = h(k, k - 1);
          q = h(k + 1, k - 1);
          r = notlast ? h(k + 2, k - 1) : 0.0;
          x = std::abs(p) + std::abs(q) + std::abs(r);
          if (x == 0.0) continue;
          p /= x;
          q /= x;
          r /= x;
        }
        sc = sign_of(std::sqrt(p * p + q * q + r * r), p);
        if (sc == 0.0) continue;
        if (k != m) {
          h(k, k - 1) = -sc * x;
        } else if (l != m) {
          h(k, k - 1) = -h(k, k - 1);
        }
        p += sc;
        x = p / sc;
        y = q / sc;
        z = r / sc;
        q /= p;
        r /= p;

        for (int j = k; j < nn; ++j) {
          p = h(k, j) + q * h(k + 1, j);
          if (notlast) {
            p += r * h(k + 2, j);
            h(k + 2, j) -= p * z;
          }
          h(k, j) -= p * x;
          h(k + 1, j) -= p * y;
        }
        for (int i = 0; i <= std::min(n, k + 3); ++i) {
          p = x * h(i, k) + y * h(i, k + 1);
          if (notlast) {
            p += z * h(i, k + 2);
            h(i, k + 2) -= p * r;
          }
          h(i, k) -= p;
          h(i, k + 1) -= p * q;
        }
        for (int i = 0; i < nn; ++i) {
          p = x * v(i, k) + y * v(i, k + 1);
          if (notlast) {
            p += z * v(i, k + 2);
            v(i, k + 2) -= p * r;
          }
          v(i, k) -= p;
          v(i, k + 1) -= p * q;
        }
      }
    }
  }

  // Everything below the quasi-diagonal is numerically zero now.
  for (int i = 0; i < nn; ++i)
    for (int j = 0; j + 1 < i; ++j) h(i, j) = 0.0;
  for (int i = 1; i < nn; ++i)
    if (wi[i] == 0.0 || wi[i - 1] == 0.0 || wi[i] > 0.0) h(i, i - 1) = 0.0;

  s.eigenvalues.resize(nn);
  for (int i = 0; i < nn; ++i) s.eigenvalues[i] = cplx(wr[i], wi[i]);
}

}  // namespace

HessenbergForm hessenberg(const RMatrix& m) {
  if (!m.square() || m.rows() < 2) {
    throw Error(ErrorKind::invalid_input, "hessenberg: matrix must be square with N >= 2");
  }
  const std::size_t n = m.rows();
  HessenbergForm out{m, RMatrix::identity(n)};
  RMatrix& h = out.h;
  RMatrix& q = out.q;
  std::vector<double> v(n);

  for (std::size_t k = 0; k + 2 < n; ++k) {
    double scale = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) scale += std::abs(h(i, k));
    if (scale == 0.0) continue;
    double sigma = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      v[i] = h(i, k) / scale;
      sigma += v[i] * v[i];
    }
    const double alpha = sign_of(std::sqrt(sigma), v[k + 1]);
    v[k + 1] += alpha;
    double beta = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) beta += v[i] * v[i];

    // h <- P h, with P = I - 2 v v^T / (v^T v) acting on rows k+1..n-1.
    for (std::size_t j = 0; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) dot += v[i] * h(i, j);
      const double f = 2.0 * dot / beta;
      for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= f * v[i];
    }
    // h <- h P and q <- q P.
    for (RMatrix* target : {&h, &q}) {
      RMatrix& a = *target;
      for (std::size_t i = 0; i < n; ++i) {
        double dot = 0.0;
        for (std::size_t j = k + 1; j < n; ++j) dot += a(i, j) * v[j];
        const double f = 2.0 * dot / beta;
        for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * v[j];
      }
    }
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
  return out;
}

void sort_eigenvalues(std::vector<cplx>& values) {
  std::sort(values.begin(), values.end(), [](const cplx& a, const cplx& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

RealEigenResult eigenvalues_real(const RMatrix& m) {
  if (!m.square() || m.rows() < 1) {
    throw Error(ErrorKind::invalid_input, "eigenvalues_real: matrix must be square");
  }
  if (m.rows() > static_cast<std::size_t>(kMaxEigenDimension)) {
    throw Error(ErrorKind::invalid_input, "eigenvalues_real: dimension exceeds " +
                                              std::to_string(kMaxEigenDimension));
  }
  for (double e : m.data()) {
    if (!std::isfinite(e)) throw Error(ErrorKind::invalid_input, "eigenvalues_real: non-finite entry");
  }
  RealEigenResult out;
  if (m.rows() == 1) {
    out.eigenvalues = {cplx(m(0, 0), 0.0)};
    return out;
  }

  auto hf = hessenberg(m);
  SchurState s{std::move(hf.h), std::move(hf.q), {}};
  francis_qr(s);

  const RMatrix recon = s.z * s.t * transpose(s.z);
  out.backward_error = max_abs(recon - m);
  out.eigenvalues = std::move(s.eigenvalues);
  sort_eigenvalues(out.eigenvalues);
  return out;
}

SpectrumReport classify_spectrum(const std::vector<cplx>& eigs, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::invalid_input, "classification tolerance must be > 0");
  SpectrumReport report;
  report.eigenvalues = eigs;
  sort_eigenvalues(report.eigenvalues);
  report.tol_classify = tol;
  report.n_basis = static_cast<int>(eigs.size());

  double scale = 1.0;
  for (const auto& e : eigs) scale = std::max(scale, std::abs(e));
  const double cut = tol * scale;

  std::vector<cplx> pending;
  for (const auto& e : report.eigenvalues) {
    if (std::abs(e.imag()) <= cut) {
      report.real_set.push_back(e.real());
    } else {
      pending.push_back(e);
    }
  }

  std::vector<bool> used(pending.size(), false);
  for (std::size_t i = 0; i < pending.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    std::size_t partner = pending.size();
    double best = 0.0;
    for (std::size_t j = 0; j < pending.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(pending[i] - std::conj(pending[j]));
      if (partner == pending.size() || d < best) {
        partner = j;
        best = d;
      }
    }
    if (partner == pending.size() || best > cut) {
      std::ostringstream os;
      os.precision(17);
      os << "conjugation-closure violation: eigenvalue " << pending[i].real()
         << (pending[i].imag() < 0 ? "-" : "+") << std::abs(pending[i].imag())
         << "i has no conjugate partner within " << cut;
      throw Error(ErrorKind::closure_violation, os.str());
    }
    used[partner] = true;
    auto pair = std::make_pair(pending[i], pending[partner]);
    if (pair.first.imag() < pair.second.imag()) std::swap(pair.first, pair.second);
    report.pairs.push_back(pair);
  }
  return report;
}

SpectrumReport spectrum_report(const RMatrix& m, double tol) {
  const auto eig = eigenvalues_real(m);
  auto report = classify_spectrum(eig.eigenvalues, tol);
  report.backward_error = eig.backward_error;
  report.n_basis = static_cast<int>(m.rows());
  return report;
}

std::vector<SweepRow> convergence_sweep(const PotentialSpec& p, const std::vector<int>& n_list,
                                        int m_track) {
  if (n_list.empty()) throw Error(ErrorKind::invalid_input, "sweep: empty size list");
  if (!std::is_sorted(n_list.begin(), n_list.end()) ||
      std::adjacent_find(n_list.begin(), n_list.end()) != n_list.end()) {
    throw Error(ErrorKind::invalid_input, "sweep: sizes must be strictly ascending");
  }
  if (m_track < 1 || m_track > n_list.front()) {
    throw Error(ErrorKind::invalid_input, "sweep: m_track must be in [1, smallest N]");
  }

  auto lowest = [&p, m_track](int n) {
    const auto h = hamiltonian_matrix(p, n);
    const auto real = realify(h, phase_unitary(n));
    auto values = eigenvalues_real(real.entries).eigenvalues;
    std::stable_sort(values.begin(), values.end(),
                     [](const cplx& a, const cplx& b) { return std::abs(a) < std::abs(b); });
    values.resize(static_cast<std::size_t>(m_track));
    sort_eigenvalues(values);
    return values;
  };

  std::vector<std::future<std::vector<cplx>>> jobs;
  for (int n : n_list) jobs.push_back(std::async(std::launch::async, lowest, n));

  std::vector<SweepRow> rows;
  std::vector<cplx> previous;
  for (std::size_t idx = 0; idx < n_list.size(); ++idx) {
    const auto values = jobs[idx].get();
    for (int level = 0; level < m_track; ++level) {
      const auto& e = values[static_cast<std::size_t>(level)];
      const double diff =
          previous.empty() ? 0.0 : std::abs(e - previous[static_cast<std::size_t>(level)]);
      rows.push_back({n_list[idx], level, e, diff});
    }
    previous = values;
  }
  return rows;
}

std::vector<cplx> durand_kerner(const std::vector<cplx>& coeffs) {
  if (coeffs.size() < 2 || coeffs.front() == cplx(0.0)) {
    throw Error(ErrorKind::invalid_input, "durand_kerner: need degree >= 1 with nonzero lead");
  }
  const std::size_t degree = coeffs.size() - 1;
  std::vector<cplx> monic(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) monic[i] = coeffs[i] / coeffs.front();

  // Cauchy bound on the root moduli sets the starting circle.
  double radius = 0.0;
  for (std::size_t i = 1; i < monic.size(); ++i) radius = std::max(radius, std::abs(monic[i]));
  radius += 1.0;

  auto eval = [&monic](cplx z) {
    cplx acc = 0.0;
    for (const auto& c : monic) acc = acc * z + c;
    return acc;
  };

  std::vector<cplx> roots(degree);
  const cplx seed(0.4, 0.9);
  cplx power = 1.0;
  for (std::size_t i = 0; i < degree; ++i) {
    power *= seed;
    roots[i] = radius * power / std::abs(power) * (0.5 + 0.5 * double(i + 1) / double(degree));
  }

  for (int it = 0; it < 5000; ++it) {
    double change = 0.0;
    for (std::size_t i = 0; i < degree; ++i) {
      cplx denom = 1.0;
      for (std::size_t j = 0; j < degree; ++j)
        if (j != i) denom *= roots[i] - roots[j];
      if (denom == cplx(0.0)) denom = 1e-300;
      const cplx delta = eval(roots[i]) / denom;
      roots[i] -= delta;
      change = std::max(change, std::abs(delta) / std::max(1.0, std::abs(roots[i])));
    }
    if (change < 1e-15) break;
  }
  return roots;
}

}  // namespace ptreal
