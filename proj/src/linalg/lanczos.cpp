// Copyright 2026 The qzk authors
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

#include "qzk/linalg/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace qzk::linalg {

namespace {

Complex dot(const CVec& a, const CVec& b) {
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double norm(const CVec& a) {
  double acc = 0.0;
  for (const auto& x : a) acc += std::norm(x);
  return std::sqrt(acc);
}

void axpy(Complex alpha, const CVec& x, CVec& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void scale(CVec& x, double s) {
  for (auto& v : x) v *= s;
}

CVec random_unit(std::uint64_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVec v(dim);
  for (auto& x : v) x = Complex{gauss(rng), gauss(rng)};
  double nv = norm(v);
  scale(v, 1.0 / nv);
  return v;
}

// Remove components of v along every basis vector (two passes for stability).
void reorthogonalize(CVec& v, const std::vector<CVec>& basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) {
      Complex c = dot(b, v);
      axpy(-c, b, v);
    }
  }
}

LanczosResult dense_path(std::uint64_t dim, const MatVec& apply,
                         bool largest) {
  const auto d = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXcd h(d, d);
  CVec in(dim), out(dim);
  for (std::uint64_t c = 0; c < dim; ++c) {
    std::fill(in.begin(), in.end(), Complex{0.0, 0.0});
    in[c] = Complex{1.0, 0.0};
    apply(in, out);
    for (std::uint64_t r = 0; r < dim; ++r) {
      h(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = out[r];
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Eigen::Index pick = largest ? d - 1 : 0;
  LanczosResult res;
  res.eigenvalue = es.eigenvalues()(pick);
  res.eigenvector.resize(dim);
  for (std::uint64_t r = 0; r < dim; ++r) {
    res.eigenvector[r] = es.eigenvectors()(static_cast<Eigen::Index>(r), pick);
  }
  res.matvecs = static_cast<int>(dim);
  res.residual = 0.0;
  res.converged = true;
  return res;
}

}  // namespace

LanczosResult extremal_eigenpair(std::uint64_t dim, const MatVec& apply,
                                 const LanczosOptions& opts) {
  if (dim == 0) throw ValidationError("empty operator");
  if (dim <= 512) return dense_path(dim, apply, opts.largest);

  // Negating the operator turns a largest-eigenvalue search into the
  // default smallest-eigenvalue search.
  MatVec op = apply;
  if (opts.largest) {
    op = [&apply](const CVec& in, CVec& out) {
      apply(in, out);
      for (auto& x : out) x = -x;
    };
  }

  // Keep the whole basis within roughly 1.5 GB whatever the dimension.
  const std::uint64_t vec_bytes = dim * sizeof(Complex);
  const std::uint64_t mem_cap =
      std::max<std::uint64_t>(4, (3ULL << 29) / vec_bytes);
  const int basis_cap = static_cast<int>(std::min<std::uint64_t>(
      {static_cast<std::uint64_t>(opts.max_basis), mem_cap, dim}));

  std::mt19937_64 rng(opts.seed);
  LanczosResult best;
  best.eigenvalue = 0.0;
  CVec v;
  if (opts.initial.size() == dim) {
    v = opts.initial;
    const double vn = norm(v);
    if (vn > 1e-14) {
      scale(v, 1.0 / vn);
    } else {
      v = random_unit(dim, rng);
    }
  } else {
    v = random_unit(dim, rng);
  }
  CVec w(dim), ritz(dim);
  double norm_est = 1.0;
  int matvecs = 0;
  int random_injections = 0;

  for (int cycle = 0; cycle < opts.max_restarts; ++cycle) {
    std::vector<CVec> basis;
    std::vector<double> alpha, beta;
    basis.push_back(v);

    bool cycle_done = false;
    while (static_cast<int>(basis.size()) <= basis_cap && !cycle_done) {
      op(basis.back(), w);
      ++matvecs;
      double a = dot(basis.back(), w).real();
      alpha.push_back(a);
      reorthogonalize(w, basis);
      double b = norm(w);

      // Ritz extraction from the tridiagonal projection.
      const auto j = static_cast<Eigen::Index>(alpha.size());
      Eigen::VectorXd diag(j), sub(std::max<Eigen::Index>(j - 1, 0));
      for (Eigen::Index i = 0; i < j; ++i) diag(i) = alpha[i];
      for (Eigen::Index i = 0; i + 1 < j; ++i) sub(i) = beta[i];
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
      es.computeFromTridiagonal(diag, sub);
      norm_est = std::max({norm_est, std::abs(es.eigenvalues()(0)),
                           std::abs(es.eigenvalues()(j - 1))});
      double theta = es.eigenvalues()(0);
      double resid_bound = (j < 2) ? b : b * std::abs(es.eigenvectors()(j - 1, 0));

      const double target = opts.tol * std::max(1.0, norm_est);
      const bool breakdown = b <= 1e-13 * std::max(1.0, norm_est);
      if (resid_bound <= target || breakdown ||
          static_cast<int>(basis.size()) == basis_cap) {
        // Assemble the Ritz vector and measure the true residual.
        std::fill(ritz.begin(), ritz.end(), Complex{0.0, 0.0});
        for (Eigen::Index i = 0; i < j; ++i) {
          axpy(Complex{es.eigenvectors()(i, 0), 0.0}, basis[i], ritz);
        }
        double rn = norm(ritz);
        if (rn > 0.0) scale(ritz, 1.0 / rn);
        op(ritz, w);
        ++matvecs;
        axpy(Complex{-theta, 0.0}, ritz, w);
        double true_resid = norm(w);

        if (!best.converged || theta < best.eigenvalue ||
            true_resid < best.residual) {
          best.eigenvalue = theta;
          best.eigenvector = ritz;
          best.residual = true_resid;
        }
        if (true_resid <= target) {
          best.eigenvalue = theta;
          best.eigenvector = ritz;
          best.residual = true_resid;
          best.converged = true;
          best.matvecs = matvecs;
          if (opts.largest) best.eigenvalue = -best.eigenvalue;
          return best;
        }
        if (breakdown) {
          // Invariant subspace without convergence: bring in fresh
          // randomness orthogonal to everything seen this cycle.
          if (++random_injections > 5) {
            cycle_done = true;
            v = ritz;
            break;
          }
          CVec fresh = random_unit(dim, rng);
          reorthogonalize(fresh, basis);
          double fn = norm(fresh);
          if (fn < 1e-12) {
            cycle_done = true;
            v = ritz;
            break;
          }
          scale(fresh, 1.0 / fn);
          beta.push_back(0.0);
          basis.push_back(std::move(fresh));
          continue;
        }
        if (static_cast<int>(basis.size()) == basis_cap) {
          // Restart from the best Ritz vector.
          v = ritz;
          cycle_done = true;
          break;
        }
      }

      scale(w, 1.0 / b);
      beta.push_back(b);
      basis.push_back(w);
    }
  }

  best.matvecs = matvecs;
  if (opts.largest) best.eigenvalue = -best.eigenvalue;
  return best;
}

}  // namespace qzk::linalg
