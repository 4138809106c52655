#include "polystab/semigroup.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

#include "polystab/parallel.hpp"

namespace polystab {

namespace {

bool is_diagonal(const Matrix& m) { return m.isDiagonal(0.0); }

Vector diagonal_exp(const Matrix& m, double t) {
  return (m.diagonal().array() * t).exp().matrix();
}

}  // namespace

Matrix matexp(const Matrix& m, double t) {
  if (m.rows() != m.cols()) throw DimensionError("matexp of non-square matrix");
  if (!(t >= 0)) throw InvariantError("matexp requires t >= 0");
  if (!m.allFinite()) throw InvariantError("matexp of non-finite matrix");
  if (t == 0.0) return Matrix::Identity(m.rows(), m.cols());
  Matrix out;
  if (is_diagonal(m)) {
    out = diagonal_exp(m, t).asDiagonal();
  } else {
    out = (m * t).exp();
  }
  if (!out.allFinite()) throw NumericError("matexp overflow");
  return out;
}

namespace {

Vector diagonal_power_vector(const DiagonalGenerator& gen, double beta) {
  Vector p(gen.mode_count());
  for (Index k = 0; k < gen.mode_count(); ++k) {
    p(k) = principal_power(-gen.eigenvalues()[static_cast<std::size_t>(k)], -beta);
  }
  return p;
}

}  // namespace

SweepSamples decay_curve(const Matrix& m, const std::optional<DiagonalGenerator>& gen,
                         double beta, const std::vector<double>& ts) {
  if (m.rows() != m.cols()) throw DimensionError("decay curve of non-square matrix");
  if (beta < 0) throw InvariantError("decay curve requires beta >= 0");
  if (ts.empty()) throw InvariantError("time grid is empty");
  double prev = 0;
  for (double t : ts) {
    if (!(t > prev)) throw InvariantError("time grid must be strictly increasing and positive");
    prev = t;
  }

  SweepSamples out;
  out.axis = SweepAxis::Time;
  out.points.resize(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) out.points[i].param = ts[i];
  out.window_lo = ts.front();
  out.window_hi = ts.back();

  if (gen) {
    bool matches = gen->mode_count() == m.rows() && is_diagonal(m);
    for (Index k = 0; matches && k < m.rows(); ++k) {
      matches = m(k, k) == gen->eigenvalues()[static_cast<std::size_t>(k)];
    }
    if (!matches) {
      throw InvariantError("decay curve: matrix is not the diagonal of the given generator");
    }
    Vector p = beta == 0.0 ? Vector::Ones(m.rows()).eval() : diagonal_power_vector(*gen, beta);
    parallel_for(static_cast<Index>(ts.size()), [&](Index i) {
      Vector e = diagonal_exp(m, ts[static_cast<std::size_t>(i)]);
      out.points[static_cast<std::size_t>(i)].value = (e.array() * p.array()).abs().maxCoeff();
    });
    return out;
  }

  Matrix power;  // P
  if (beta == 0.0) {
    power = Matrix::Identity(m.rows(), m.cols());
  } else if (beta == 1.0) {
    power = (-m).partialPivLu().inverse();
  } else {
    throw InvariantError("general beta needs a diagonal generator; dense systems support beta in {0, 1}");
  }

  if (is_diagonal(m)) {
    if (!(m.diagonal().real().maxCoeff() < 0)) {
      throw InvariantError("decay curve requires spectrum in the open left half-plane");
    }
    parallel_for(static_cast<Index>(ts.size()), [&](Index i) {
      Matrix e = diagonal_exp(m, ts[static_cast<std::size_t>(i)]).asDiagonal();
      out.points[static_cast<std::size_t>(i)].value = operator_norm(e * power);
    });
    return out;
  }

  // Dense path: one eigendecomposition serves every time point when the
  // eigenvector basis is well-conditioned.
  Eigen::ComplexEigenSolver<Matrix> es(m, true);
  if (es.info() == Eigen::Success && !(es.eigenvalues().real().maxCoeff() < 0)) {
    throw InvariantError("decay curve requires spectrum in the open left half-plane");
  }
  bool use_eig = es.info() == Eigen::Success;
  Matrix v, w;
  Vector evals;
  if (use_eig) {
    v = es.eigenvectors();
    Eigen::BDCSVD<Matrix> svd(v);
    const auto& sv = svd.singularValues();
    double cond = sv(0) / sv(sv.size() - 1);
    use_eig = std::isfinite(cond) && cond < 1e6;
    if (use_eig) {
      evals = es.eigenvalues();
      w = v.partialPivLu().solve(power);  // V^{-1} P
    }
  }

  parallel_for(static_cast<Index>(ts.size()), [&](Index i) {
    const double t = ts[static_cast<std::size_t>(i)];
    Matrix et_p;
    if (use_eig) {
      Vector scale = (evals.array() * t).exp().matrix();
      et_p = v * scale.asDiagonal() * w;
      if (!et_p.allFinite()) throw NumericError("matexp overflow");
    } else {
      et_p = matexp(m, t) * power;
    }
    out.points[static_cast<std::size_t>(i)].value = operator_norm(et_p);
  });
  return out;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw InvariantError("gauss_legendre needs n >= 1");
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  static std::mutex cache_mutex;
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(n);
    if (it != cache.end()) {
      nodes = it->second.first;
      weights = it->second.second;
      return;
    }
  }
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev-based initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double wgt = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[static_cast<std::size_t>(i)] = -x;
    nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    weights[static_cast<std::size_t>(i)] = wgt;
    weights[static_cast<std::size_t>(n - 1 - i)] = wgt;
  }
  std::lock_guard<std::mutex> lock(cache_mutex);
  cache.emplace(n, std::make_pair(nodes, weights));
}

namespace {

Matrix convolution_at_level(const BlockSystem& sys, double t, int q) {
  std::vector<double> nodes, weights;
  gauss_legendre(q, nodes, weights);
  const Matrix& b = sys.coupling_12().left.entries;
  const Matrix& c = sys.coupling_12().right.entries;
  Matrix acc = Matrix::Zero(sys.dim1(), sys.dim2());
  if (b.cols() == 0) return acc;
  const double half = t / 2.0;
  for (int i = 0; i < q; ++i) {
    const double s = half * (nodes[static_cast<std::size_t>(i)] + 1.0);
    Matrix t1b = matexp(sys.a1(), t - s) * b;
    Matrix ct2 = c * matexp(sys.a2(), s);
    acc.noalias() += (half * weights[static_cast<std::size_t>(i)]) * (t1b * ct2);
  }
  return acc;
}

}  // namespace

Matrix convolution_block(const BlockSystem& sys, double t, int quad_points) {
  if (sys.kind() != BlockKind::Triangular) {
    throw InvariantError("convolution block needs a triangular system");
  }
  if (!(t > 0)) throw InvariantError("convolution block requires t > 0");
  if (quad_points < 8) throw InvariantError("quad_points must be >= 8");

  constexpr int kMaxNodes = 4096;
  constexpr double kTol = 1e-6;
  Matrix prev = convolution_at_level(sys, t, quad_points);
  for (int q = 2 * quad_points; q <= kMaxNodes; q *= 2) {
    Matrix cur = convolution_at_level(sys, t, q);
    double diff = (cur - prev).norm();
    double scale = cur.norm();
    if (diff <= kTol * scale || (scale == 0.0 && diff == 0.0)) return cur;
    prev = std::move(cur);
  }
  throw NumericError("quadrature not converged");
}

namespace reference {

SweepSamples decay_curve(const Matrix& m, double beta, const std::vector<double>& ts) {
  if (m.rows() != m.cols()) throw DimensionError("decay curve of non-square matrix");
  SweepSamples out;
  out.axis = SweepAxis::Time;
  out.points.resize(ts.size());
  out.window_lo = ts.front();
  out.window_hi = ts.back();
  Matrix power;
  if (beta == 0.0) {
    power = Matrix::Identity(m.rows(), m.cols());
  } else if (beta == 1.0) {
    power = (-m).partialPivLu().inverse();
  } else {
    // Reference path only covers the Definition-style measures.
    throw InvariantError("reference decay curve supports beta in {0, 1}");
  }
  for (std::size_t i = 0; i < ts.size(); ++i) {
    out.points[i].param = ts[i];
    Matrix e = (m * ts[i]).exp();  // dense scaling-and-squaring, no shortcuts
    out.points[i].value = operator_norm(e * power);
  }
  return out;
}

}  // namespace reference

}  // namespace polystab
