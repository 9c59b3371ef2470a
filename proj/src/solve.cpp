#include "sdsc/solve.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace sdsc {

namespace {

// Fixed point of the information-price problem on normalized utilities:
//   max sum_w mu(w) P(a|w) V(a,w) - price * I(P)
// via alternating updates
//   P(a|w) proportional to m(a) exp(V(a,w)/price),  m(a) = sum_w mu(w) P(a|w).
struct InnerState {
  Matrix conditionals;
  Vector marginal;
  int iterations = 0;
  double residual = 0.0;
};

InnerState information_price_fixed_point(const Vector& prior, const Matrix& v,
                                         double price, Vector marginal_start,
                                         const SolverOptions& options) {
  const int n_actions = static_cast<int>(v.rows());
  const int n_states = static_cast<int>(v.cols());

  // Per-state shift keeps the exponentials in (0, 1].
  Matrix tilted(n_actions, n_states);
  for (int w = 0; w < n_states; ++w) {
    const double shift = v.col(w).maxCoeff();
    tilted.col(w) = ((v.col(w).array() - shift) / price).exp();
  }

  InnerState state;
  state.marginal = marginal_start.size() == n_actions
                       ? std::move(marginal_start)
                       : Vector::Constant(n_actions, 1.0 / n_actions).eval();
  state.conditionals = Matrix::Zero(n_actions, n_states);
  Matrix joint_before = Matrix::Zero(n_actions, n_states);

  for (state.iterations = 1; state.iterations <= options.max_inner_iterations;
       ++state.iterations) {
    for (int w = 0; w < n_states; ++w) {
      Vector column = state.marginal.cwiseProduct(tilted.col(w));
      const double mass = column.sum();
      state.conditionals.col(w) =
          mass > 0.0 ? (column / mass).eval()
                     : Vector::Constant(n_actions, 1.0 / n_actions).eval();
    }
    state.marginal = state.conditionals * prior;

    const Matrix joint = state.conditionals * prior.asDiagonal();
    state.residual = (joint - joint_before).cwiseAbs().maxCoeff();
    if (state.residual <= options.inner_tolerance) return state;
    joint_before = joint;
  }

  std::ostringstream message;
  message << "information-price fixed point did not converge: residual "
          << state.residual << " after " << options.max_inner_iterations
          << " iterations (price " << price << ")";
  throw std::runtime_error(message.str());
}

Matrix joint_from_conditionals(const Matrix& conditionals,
                               const Vector& prior) {
  return conditionals * prior.asDiagonal();
}

// All-equal utilities make every bit of information worthless; park the
// whole mass on the first action.
bool degenerate_prizes(const Matrix& utilities) {
  return utilities.maxCoeff() - utilities.minCoeff() == 0.0;
}

SolveResult uninformative_result(const Vector& prior,
                                 const Matrix& utilities) {
  SolveResult result;
  result.joint = Matrix::Zero(utilities.rows(), utilities.cols());
  result.joint.row(0) = prior.transpose();
  result.mutual_info = 0.0;
  result.objective = (result.joint.array() * utilities.array()).sum();
  return result;
}

void check_inputs(const Vector& prior, const Matrix& utilities,
                  const char* who) {
  if (prior.size() != utilities.cols() || utilities.rows() < 1) {
    throw std::invalid_argument(std::string(who) +
                                ": utility shape does not match the prior");
  }
  if (!utilities.allFinite()) {
    throw std::invalid_argument(std::string(who) + ": non-finite utilities");
  }
  if ((prior.array() <= 0.0).any() || std::abs(prior.sum() - 1.0) > 1e-9) {
    throw std::invalid_argument(std::string(who) +
                                ": prior must be strictly positive and sum "
                                "to 1");
  }
}

}  // namespace

double entropy(const Vector& distribution) {
  double h = 0.0;
  for (int i = 0; i < distribution.size(); ++i) {
    const double p = distribution(i);
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

double mutual_information(const Matrix& joint, const Vector& prior) {
  const Vector action_marginal = joint.rowwise().sum();
  double information = 0.0;
  for (int a = 0; a < joint.rows(); ++a) {
    for (int w = 0; w < joint.cols(); ++w) {
      const double p = joint(a, w);
      if (p > 0.0) {
        information += p * std::log(p / (action_marginal(a) * prior(w)));
      }
    }
  }
  return std::max(0.0, information);
}

SolveResult solve_fixed_capacity(const Vector& prior, const Matrix& utilities,
                                 double capacity,
                                 const SolverOptions& options) {
  check_inputs(prior, utilities, "solve_fixed_capacity");
  if (!(capacity > 0.0)) {
    throw std::invalid_argument("solve_fixed_capacity: capacity must be > 0");
  }
  if (degenerate_prizes(utilities)) {
    return uninformative_result(prior, utilities);
  }

  const double scale = utilities.cwiseAbs().maxCoeff();
  const Matrix v = utilities / scale;

  // Unconstrained optimum: deterministic best action per state.
  Matrix full_info = Matrix::Zero(utilities.rows(), utilities.cols());
  for (int w = 0; w < utilities.cols(); ++w) {
    int best = 0;
    v.col(w).maxCoeff(&best);
    full_info(best, w) = prior(w);
  }
  const double full_mi = mutual_information(full_info, prior);
  if (full_mi <= capacity) {
    SolveResult result;
    result.joint = full_info;
    result.mutual_info = full_mi;
    result.objective = (full_info.array() * utilities.array()).sum();
    result.constraint_binding = false;
    return result;
  }

  // The constraint binds; bisect the information price until MI hits C.
  // MI is decreasing in the price, from full_mi near zero price to 0.
  double price_low = 1e-6;   // effectively the deterministic solution
  double price_high = 1.0;
  Vector warm;
  InnerState inner =
      information_price_fixed_point(prior, v, price_high, warm, options);
  int outer = 1;
  while (mutual_information(joint_from_conditionals(inner.conditionals, prior),
                            prior) > capacity) {
    price_high *= 2.0;
    if (price_high > 1e12) {
      throw std::runtime_error(
          "solve_fixed_capacity: no information price brackets the "
          "capacity");
    }
    inner = information_price_fixed_point(prior, v, price_high, warm, options);
    ++outer;
  }

  SolveResult result;
  double gap = std::numeric_limits<double>::infinity();
  for (; outer <= options.max_outer_iterations; ++outer) {
    const double price = std::sqrt(price_low * price_high);
    inner = information_price_fixed_point(prior, v, price, warm, options);
    warm = inner.marginal;
    const Matrix joint = joint_from_conditionals(inner.conditionals, prior);
    const double info = mutual_information(joint, prior);
    if (std::abs(info - capacity) < gap) {
      gap = std::abs(info - capacity);
      result.joint = joint;
      result.mutual_info = info;
      result.multiplier = price * scale;
      result.inner_iterations = inner.iterations;
      result.residual = inner.residual;
    }
    if (gap <= options.capacity_tolerance) break;
    if (info > capacity) {
      price_low = price;
    } else {
      price_high = price;
    }
  }
  if (gap > options.capacity_tolerance) {
    std::ostringstream message;
    message << "solve_fixed_capacity: |MI - C| = " << gap << " > "
            << options.capacity_tolerance << " after "
            << options.max_outer_iterations << " bisection steps";
    throw std::runtime_error(message.str());
  }
  result.objective = (result.joint.array() * utilities.array()).sum();
  result.constraint_binding = true;
  result.outer_iterations = outer;
  return result;
}

SolveResult solve_shannon_elastic(const Vector& prior, const Matrix& utilities,
                                  double marginal_cost,
                                  const SolverOptions& options) {
  check_inputs(prior, utilities, "solve_shannon_elastic");
  if (!(marginal_cost > 0.0)) {
    throw std::invalid_argument(
        "solve_shannon_elastic: marginal cost must be > 0");
  }
  if (degenerate_prizes(utilities)) {
    return uninformative_result(prior, utilities);
  }

  const double scale = utilities.cwiseAbs().maxCoeff();
  const Matrix v = utilities / scale;
  Vector warm;
  const InnerState inner = information_price_fixed_point(
      prior, v, marginal_cost / scale, warm, options);

  SolveResult result;
  result.joint = joint_from_conditionals(inner.conditionals, prior);
  result.mutual_info = mutual_information(result.joint, prior);
  result.objective = (result.joint.array() * utilities.array()).sum();
  result.multiplier = marginal_cost;
  result.constraint_binding = false;
  result.inner_iterations = inner.iterations;
  result.residual = inner.residual;
  return result;
}

}  // namespace sdsc
