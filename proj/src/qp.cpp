#include "delamid/qp.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "delamid/errors.hpp"

namespace delamid {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class State : std::uint8_t { Free, Lower, Upper, Pinned };

double clip(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

}  // namespace

QPSolution solve_box_qp(const BoxQP& qp, double tol, const QPSolution* warm) {
  const int n = static_cast<int>(qp.c.size());
  if (qp.H.rows() != n || qp.H.cols() != n || qp.lo.size() != n || qp.hi.size() != n)
    throw std::invalid_argument("solve_box_qp: dimension mismatch");
  for (int j = 0; j < n; ++j)
    if (!(qp.lo(j) <= qp.hi(j)))
      throw std::invalid_argument("solve_box_qp: inconsistent bounds at coordinate " +
                                  std::to_string(j));

  const double scale = qp.c.lpNorm<Eigen::Infinity>() + 1.0;
  const double drop_eps = tol * scale;

  std::vector<State> state(n, State::Free);
  Eigen::VectorXd x(n);
  for (int j = 0; j < n; ++j) {
    if (qp.lo(j) == qp.hi(j)) {
      state[j] = State::Pinned;
      x(j) = qp.lo(j);
      continue;
    }
    double xj = warm ? clip(warm->x(j), qp.lo(j), qp.hi(j)) : clip(0.0, qp.lo(j), qp.hi(j));
    if (warm && j < static_cast<int>(warm->activity.size())) {
      if (warm->activity[j] == Activity::Lower && qp.lo(j) > -kInf) xj = qp.lo(j);
      if (warm->activity[j] == Activity::Upper && qp.hi(j) < kInf) xj = qp.hi(j);
    }
    x(j) = xj;
    if (xj == qp.lo(j)) state[j] = State::Lower;
    else if (xj == qp.hi(j)) state[j] = State::Upper;
  }

  const int max_iter = 20 * n + 50;
  int iter = 0;
  for (;; ++iter) {
    if (iter > max_iter)
      throw numerical_error("solve_box_qp: active-set iteration guard exceeded");

    std::vector<int> free_idx;
    for (int j = 0; j < n; ++j)
      if (state[j] == State::Free) free_idx.push_back(j);
    const int nf = static_cast<int>(free_idx.size());

    // Candidate: minimize over the free block with actives at their bounds.
    Eigen::VectorXd y = x;
    if (nf > 0) {
      Eigen::MatrixXd Hff(nf, nf);
      Eigen::VectorXd rhs(nf);
      for (int r = 0; r < nf; ++r) {
        rhs(r) = -qp.c(free_idx[r]);
        for (int cidx = 0; cidx < nf; ++cidx) Hff(r, cidx) = qp.H(free_idx[r], free_idx[cidx]);
        for (int j = 0; j < n; ++j)
          if (state[j] != State::Free) rhs(r) -= qp.H(free_idx[r], j) * x(j);
      }
      Eigen::LLT<Eigen::MatrixXd> llt(Hff);
      if (llt.info() != Eigen::Success)
        throw numerical_error("solve_box_qp: Hessian block is not positive definite");
      const Eigen::VectorXd yf = llt.solve(rhs);
      for (int r = 0; r < nf; ++r) y(free_idx[r]) = yf(r);
    }

    // Longest feasible step toward the candidate.
    double t = 1.0;
    int blocker = -1;
    State blocker_side = State::Free;
    for (int r = 0; r < nf; ++r) {
      const int j = free_idx[r];
      const double d = y(j) - x(j);
      if (d > 0 && y(j) > qp.hi(j)) {
        const double tj = (qp.hi(j) - x(j)) / d;
        if (tj < t) { t = tj; blocker = j; blocker_side = State::Upper; }
      } else if (d < 0 && y(j) < qp.lo(j)) {
        const double tj = (qp.lo(j) - x(j)) / d;
        if (tj < t) { t = tj; blocker = j; blocker_side = State::Lower; }
      }
    }

    if (blocker >= 0) {
      x += t * (y - x);
      x(blocker) = blocker_side == State::Lower ? qp.lo(blocker) : qp.hi(blocker);
      state[blocker] = blocker_side;
      continue;
    }

    x = y;
    const Eigen::VectorXd g = qp.H * x + qp.c;

    // Check multiplier signs on the working set; release the worst violator.
    int worst = -1;
    double worst_viol = drop_eps;
    for (int j = 0; j < n; ++j) {
      double viol = 0.0;
      if (state[j] == State::Lower) viol = -g(j);
      else if (state[j] == State::Upper) viol = g(j);
      else continue;
      if (viol > worst_viol) { worst_viol = viol; worst = j; }
    }
    if (worst >= 0) {
      state[worst] = State::Free;
      continue;
    }

    QPSolution sol;
    sol.x = x;
    sol.lambda = Eigen::VectorXd::Zero(n);
    sol.activity.resize(n);
    sol.biactive.assign(n, false);
    sol.iterations = iter + 1;
    double resid = 0.0;
    for (int j = 0; j < n; ++j) {
      switch (state[j]) {
        case State::Free:
          sol.activity[j] = Activity::Inactive;
          resid = std::max(resid, std::abs(g(j)));
          break;
        case State::Lower:
          sol.activity[j] = Activity::Lower;
          sol.lambda(j) = g(j);
          resid = std::max(resid, std::max(0.0, -g(j)));
          break;
        case State::Upper:
          sol.activity[j] = Activity::Upper;
          sol.lambda(j) = g(j);
          resid = std::max(resid, std::max(0.0, g(j)));
          break;
        case State::Pinned:
          sol.activity[j] = Activity::Pinned;
          sol.lambda(j) = g(j);
          break;
      }
      if (sol.activity[j] == Activity::Lower || sol.activity[j] == Activity::Upper)
        sol.biactive[j] = std::abs(sol.lambda(j)) <= 10.0 * tol * scale;
    }
    sol.kkt_residual = resid / scale;
    return sol;
  }
}

QPSolution solve_contact_qp(const ContactQP& qp, double tol, const QPSolution* warm) {
  const int n = static_cast<int>(qp.c.size());
  BoxQP box;
  box.H = qp.H;
  box.c = qp.c;
  box.lo = Eigen::VectorXd::Constant(n, -kInf);
  box.hi = Eigen::VectorXd::Constant(n, kInf);
  for (int j : qp.unilateral) {
    if (j < 0 || j >= n)
      throw std::invalid_argument("solve_contact_qp: unilateral index out of range");
    box.lo(j) = 0.0;
  }
  return solve_box_qp(box, tol, warm);
}

}  // namespace delamid
