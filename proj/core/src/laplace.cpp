#include "multising/laplace.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <cmath>

#include "multising/numeric.hpp"

namespace multising {

namespace {

// Rows are cells, columns the active sufficient statistics.
Eigen::MatrixXd design_matrix(std::size_t p, const EdgeIndicators& delta,
                              std::vector<Pair>& active_pairs) {
  active_pairs.clear();
  for (std::size_t k = 0; k < delta.size(); ++k)
    if (delta.bits[k]) active_pairs.push_back(pair_at(k));
  const std::size_t cells = std::size_t{1} << p;
  const std::size_t d = p + active_pairs.size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(cells), static_cast<Eigen::Index>(d));
  for (std::size_t c = 0; c < cells; ++c) {
    const auto row = static_cast<Eigen::Index>(c);
    for (std::size_t r = 0; r < p; ++r)
      m(row, static_cast<Eigen::Index>(r)) = static_cast<double>((c >> r) & 1u);
    for (std::size_t k = 0; k < active_pairs.size(); ++k) {
      const auto [r, j] = active_pairs[k];
      m(row, static_cast<Eigen::Index>(p + k)) =
          static_cast<double>(((c >> r) & 1u) & ((c >> j) & 1u));
    }
  }
  return m;
}

struct KernelEval {
  double value;
  Eigen::VectorXd weights;  // cell probabilities under the current lambda
};

KernelEval evaluate(const Eigen::MatrixXd& design, const Eigen::VectorXd& s,
                    double g, const Eigen::VectorXd& lambda) {
  Eigen::VectorXd eta = design * lambda;
  const double m = eta.maxCoeff();
  Eigen::VectorXd w = (eta.array() - m).exp().matrix();
  const double z = w.sum();
  w /= z;
  return {s.dot(lambda) - g * (m + std::log(z)), std::move(w)};
}

}  // namespace

LaplaceResult laplace_log_normconst(const CanonicalParams& s, double g,
                                    const EdgeIndicators& delta,
                                    const LaplaceOptions& options) {
  const std::size_t p = s.p();
  if (p > kMaxEnumerationNodes)
    throw DimensionError("Laplace normalising constant needs p <= 20");
  if (delta.size() != s.inter.size())
    throw DimensionError("laplace_log_normconst: edge indicator size mismatch");
  if (!(g > 0.0)) throw ConfigError("laplace_log_normconst: g must be positive");

  std::vector<Pair> active;
  const Eigen::MatrixXd design = design_matrix(p, delta, active);
  const auto d = design.cols();
  Eigen::VectorXd svec(d);
  for (std::size_t r = 0; r < p; ++r) svec(static_cast<Eigen::Index>(r)) = s.main[r];
  for (std::size_t k = 0; k < active.size(); ++k)
    svec(static_cast<Eigen::Index>(p + k)) = s.interaction(active[k].r, active[k].j);

  LaplaceResult res;
  res.dimension = static_cast<std::size_t>(d);
  Eigen::VectorXd lambda = Eigen::VectorXd::Zero(d);
  KernelEval cur = evaluate(design, svec, g, lambda);

  auto neg_hessian = [&](const Eigen::VectorXd& w) {
    const Eigen::VectorXd mean = design.transpose() * w;
    const Eigen::MatrixXd root = design.array().colwise() * w.array().sqrt();
    Eigen::MatrixXd a = root.transpose() * root;
    a.noalias() -= mean * mean.transpose();
    return Eigen::MatrixXd(g * a);
  };

  for (int it = 0; it <= options.max_iterations; ++it) {
    const Eigen::VectorXd grad = svec - g * (design.transpose() * cur.weights);
    res.gradient_norm = grad.lpNorm<Eigen::Infinity>();
    res.iterations = it;
    if (!std::isfinite(res.gradient_norm)) break;
    if (res.gradient_norm < options.tolerance) {
      res.converged = true;
      break;
    }
    if (it == options.max_iterations) break;
    const Eigen::LLT<Eigen::MatrixXd> llt(neg_hessian(cur.weights));
    if (llt.info() != Eigen::Success) break;
    const Eigen::VectorXd step = llt.solve(grad);
    // Halve until the concave kernel does not decrease.
    double t = 1.0;
    bool moved = false;
    for (int halving = 0; halving < 50; ++halving, t *= 0.5) {
      Eigen::VectorXd trial = lambda + t * step;
      KernelEval next = evaluate(design, svec, g, trial);
      if (std::isfinite(next.value) &&
          next.value >= cur.value - 1e-12 * std::max(1.0, std::abs(cur.value))) {
        lambda = std::move(trial);
        cur = std::move(next);
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }

  const Eigen::LLT<Eigen::MatrixXd> llt(neg_hessian(cur.weights));
  if (llt.info() != Eigen::Success) {
    res.converged = false;
    res.log_c = std::numeric_limits<double>::quiet_NaN();
  } else {
    const double log_det = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
    res.log_c = cur.value + 0.5 * static_cast<double>(d) * kLog2Pi - 0.5 * log_det;
    if (!std::isfinite(res.log_c)) res.converged = false;
  }
  res.mode.assign(lambda.data(), lambda.data() + d);
  return res;
}

DyHyper posterior_hyper(const DyHyper& prior, const MarginalCounts& y) {
  const std::size_t p = prior.s.p();
  if (y.p != p) throw DimensionError("posterior_hyper: dimension mismatch");
  DyHyper post = prior;
  post.g = prior.g + static_cast<double>(y.n);
  for (std::size_t r = 0; r < p; ++r) {
    post.s.main[r] += static_cast<double>(y(r, r));
    for (std::size_t j = 0; j < r; ++j)
      post.s.interaction(r, j) += static_cast<double>(y(r, j));
  }
  return post;
}

LogMarginal log_marginal(const MarginalCounts& y, const DyHyper& hyper,
                         const EdgeIndicators& delta, const LaplaceOptions& options) {
  if (y.n == 0) return {0.0, true};
  const auto post = posterior_hyper(hyper, y);
  const auto num = laplace_log_normconst(post.s, post.g, delta, options);
  const auto den = laplace_log_normconst(hyper.s, hyper.g, delta, options);
  return {num.log_c - den.log_c, num.converged && den.converged};
}

}  // namespace multising
