#include "recon/solvers.hpp"

#include <chrono>
#include <cmath>

namespace recon {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

RealVec sp_apply(const Sparsifier& s, const RealVec& g, int dims) {
  return dims == 1 ? apply_1d(*s.L, g) : apply_flat(*s.L, g, s.axis);
}

RealVec sp_adjoint(const Sparsifier& s, const RealVec& v, int dims) {
  return dims == 1 ? adjoint_apply(*s.L, v) : adjoint_apply_flat(*s.L, v, s.axis);
}

long sp_out_size(const Sparsifier& s, int dims) {
  long r = s.L->out_size();
  return dims == 1 ? r : r * s.L->n;
}

struct CgOutcome {
  int iterations = 0;
  double rel_residual = 0.0;
  bool converged = false;
};

// Conjugate gradient on an SPD normal operator.
CgOutcome cg_normal(const std::function<RealVec(const RealVec&)>& H,
                    const RealVec& rhs, RealVec& x, double tol, int max_iter,
                    const std::function<void(const RealVec&)>& observer) {
  CgOutcome out;
  double bnorm = rhs.norm();
  if (bnorm == 0.0) {
    x.setZero();
    out.converged = true;
    return out;
  }
  RealVec r = rhs - H(x);
  RealVec p = r;
  double rs = r.squaredNorm();
  for (int it = 0; it < max_iter; ++it) {
    if (std::sqrt(rs) <= tol * bnorm) {
      out.converged = true;
      break;
    }
    RealVec Hp = H(p);
    double pHp = p.dot(Hp);
    if (!(pHp > 0.0))
      throw std::runtime_error("cg: breakdown, operator not positive definite on search direction");
    double alpha = rs / pHp;
    x += alpha * p;
    r -= alpha * Hp;
    double rs_new = r.squaredNorm();
    p = r + (rs_new / rs) * p;
    rs = rs_new;
    ++out.iterations;
    if (observer) observer(x);
  }
  if (!out.converged && std::sqrt(rs) <= tol * bnorm) out.converged = true;
  out.rel_residual = std::sqrt(rs) / bnorm;
  return out;
}

}  // namespace

std::pair<RealVec, SolveReport> split_bregman(const WeightedL1Problem& p,
                                              const RealVec& init) {
  if (!p.A) throw std::invalid_argument("split_bregman: missing operator");
  if (!(p.reg > 0.0)) throw std::invalid_argument("split_bregman: reg must be positive");
  if (init.size() != p.A->cols())
    throw std::invalid_argument("split_bregman: init size mismatch");
  auto t0 = Clock::now();

  const int na = static_cast<int>(p.sparsifiers.size());
  const double beta = p.opts.beta > 0.0 ? p.opts.beta : 4.0 * p.reg;

  std::vector<RealVec> wts(na);
  for (int a = 0; a < na; ++a) {
    long sz = sp_out_size(p.sparsifiers[a], p.dims);
    if (a < static_cast<int>(p.weights.size()) && p.weights[a].size() > 0) {
      if (p.weights[a].size() != sz)
        throw std::invalid_argument("split_bregman: weight size mismatch");
      wts[a] = p.weights[a];
    } else {
      wts[a] = RealVec::Ones(sz);
    }
  }

  RealVec rhs0 = 2.0 * p.A->adjoint_re(p.b);

  // Closed-form inner solve when the fidelity matrix is materialized; the
  // normal matrix is fixed across outer iterations so one factorization
  // serves the whole run.
  const CplxMat* Fd = p.A->dense();
  Eigen::LDLT<RealMat> factor;
  if (Fd) {
    RealMat Q = 2.0 * (Fd->adjoint() * (*Fd)).real();
    for (int a = 0; a < na; ++a) {
      RealMat D = dense_matrix(*p.sparsifiers[a].L);
      Q += beta * (D.transpose() * D);
    }
    factor.compute(Q);
    if (factor.info() != Eigen::Success)
      throw std::runtime_error("split_bregman: dense factorization failed");
  }

  auto H = [&](const RealVec& g) {
    RealVec out = 2.0 * p.A->adjoint_re(p.A->apply(g));
    for (int a = 0; a < na; ++a)
      out += beta * sp_adjoint(p.sparsifiers[a], sp_apply(p.sparsifiers[a], g, p.dims), p.dims);
    return out;
  };

  RealVec g = init;
  std::vector<RealVec> u(na), bb(na);
  for (int a = 0; a < na; ++a) {
    u[a] = RealVec::Zero(sp_out_size(p.sparsifiers[a], p.dims));
    bb[a] = u[a];
  }

  SolveReport rep;
  double rel_change = 0.0;
  for (int outer = 0; outer < p.opts.max_outer; ++outer) {
    RealVec rhs = rhs0;
    for (int a = 0; a < na; ++a)
      rhs += beta * sp_adjoint(p.sparsifiers[a], u[a] - bb[a], p.dims);

    RealVec g_new;
    if (Fd) {
      g_new = factor.solve(rhs);
    } else {
      g_new = g;  // warm start
      cg_normal(H, rhs, g_new, p.opts.inner_tol, p.opts.inner_max, nullptr);
    }

    for (int a = 0; a < na; ++a) {
      RealVec z = sp_apply(p.sparsifiers[a], g_new, p.dims) + bb[a];
      RealVec thr = (p.reg / beta) * wts[a];
      RealVec u_new(z.size());
      for (long i = 0; i < z.size(); ++i) {
        double mag = std::abs(z[i]) - thr[i];
        u_new[i] = mag > 0.0 ? (z[i] > 0.0 ? mag : -mag) : 0.0;
      }
      bb[a] = z - u_new;
      u[a] = std::move(u_new);
    }

    ++rep.iterations;
    rel_change = (g_new - g).norm() / std::max(g_new.norm(), 1e-30);
    g = std::move(g_new);
    if (rel_change <= p.opts.outer_tol) {
      rep.converged = true;
      break;
    }
  }
  rep.residual = rel_change;
  rep.seconds = seconds_since(t0);
  return {std::move(g), rep};
}

std::pair<RealVec, SolveReport> cg_solve(const MaskedL2Problem& p, const RealVec& init) {
  if (!p.A) throw std::invalid_argument("cg_solve: missing operator");
  if (!(p.lambda >= 0.0)) throw std::invalid_argument("cg_solve: negative lambda");
  if (init.size() != p.A->cols())
    throw std::invalid_argument("cg_solve: init size mismatch");
  if (p.masks.size() != p.sparsifiers.size())
    throw std::invalid_argument("cg_solve: mask/sparsifier count mismatch");
  auto t0 = Clock::now();

  const int na = static_cast<int>(p.sparsifiers.size());
  for (int a = 0; a < na; ++a)
    if (p.masks[a].size() != sp_out_size(p.sparsifiers[a], p.dims))
      throw std::invalid_argument("cg_solve: mask size mismatch");

  auto H = [&](const RealVec& g) {
    RealVec out = p.A->adjoint_re(p.A->apply(g));
    for (int a = 0; a < na; ++a) {
      RealVec v = sp_apply(p.sparsifiers[a], g, p.dims);
      v.array() *= p.masks[a].array();
      out += p.lambda * sp_adjoint(p.sparsifiers[a], v, p.dims);
    }
    return out;
  };

  RealVec rhs = p.A->adjoint_re(p.b);
  RealVec x = init;
  CgOutcome oc = cg_normal(H, rhs, x, p.opts.tol, p.opts.max_iter, p.opts.observer);

  SolveReport rep;
  rep.iterations = oc.iterations;
  rep.residual = oc.rel_residual;
  rep.converged = oc.converged;
  rep.seconds = seconds_since(t0);
  return {std::move(x), rep};
}

RealVec direct_solve(const MaskedL2Problem& p) {
  if (!p.A) throw std::invalid_argument("direct_solve: missing operator");
  const CplxMat* Fd = p.A->dense();
  if (!Fd)
    throw std::invalid_argument("direct_solve: dense path unavailable (1D, n <= 513 only)");
  if (p.masks.size() != p.sparsifiers.size())
    throw std::invalid_argument("direct_solve: mask/sparsifier count mismatch");

  RealMat H = (Fd->adjoint() * (*Fd)).real();
  for (size_t a = 0; a < p.sparsifiers.size(); ++a) {
    RealMat D = dense_matrix(*p.sparsifiers[a].L);
    H += p.lambda * (D.transpose() * p.masks[a].asDiagonal() * D);
  }
  RealVec rhs = (Fd->adjoint() * p.b).real();
  Eigen::LDLT<RealMat> ldlt(H);
  RealVec x = ldlt.solve(rhs);
  if (ldlt.info() != Eigen::Success || !x.allFinite())
    throw std::runtime_error(
        "direct_solve: singular normal equations; increase lambda or supply more data");
  return x;
}

}  // namespace recon
