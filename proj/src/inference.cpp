#include "sdsc/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "sdsc/rng.hpp"
#include "sdsc/stats.hpp"
#include "sdsc/validate.hpp"

namespace sdsc {

namespace {

void require_counts(const DecisionProblem& problem, const char* who) {
  if (!problem.has_counts() || problem.state_counts.sum() <= 0.0) {
    throw std::invalid_argument(std::string(who) + ": problem '" + problem.id +
                                "' carries no trial counts");
  }
}

// argmax_a' of sum_w mu(w) cond(a,w) prizes(a',w) for one data row a;
// ties resolve to the lowest action index.
int frozen_argmax(const Vector& weighted_row, const Matrix& prize_points) {
  int best = 0;
  (prize_points * weighted_row).maxCoeff(&best);
  return best;
}

}  // namespace

Matrix conditional_covariance(const DecisionProblem& problem, int state) {
  require_counts(problem, "conditional_covariance");
  if (state < 0 || state >= problem.joint.cols()) {
    throw std::out_of_range("conditional_covariance: bad state index");
  }
  const double n = problem.state_counts(state);
  const Vector p = problem.conditionals().col(state);
  Matrix block = -(p * p.transpose());
  block.diagonal() = p.array() * (1.0 - p.array());
  if (n > 0.0) {
    block /= n;
  } else {
    block.setZero();
  }
  return block;
}

double delta_variance(const SdscDataset& dataset,
                      const std::vector<Matrix>& coefficients) {
  if (coefficients.size() != dataset.problems.size()) {
    throw std::invalid_argument(
        "delta_variance: one coefficient matrix per problem required");
  }
  double variance = 0.0;
  for (size_t k = 0; k < coefficients.size(); ++k) {
    if (coefficients[k].size() == 0) continue;
    const auto& problem = dataset.problems[k];
    require_counts(problem, "delta_variance");
    if (coefficients[k].rows() != problem.joint.rows() ||
        coefficients[k].cols() != problem.joint.cols()) {
      throw std::invalid_argument(
          "delta_variance: coefficient shape mismatch for problem '" +
          problem.id + "'");
    }
    for (int w = 0; w < problem.joint.cols(); ++w) {
      const Vector c = coefficients[k].col(w);
      variance += c.dot(conditional_covariance(problem, w) * c);
    }
  }
  return variance;
}

PairwiseTest pairwise_switch_test(const SdscDataset& dataset, int problem_i,
                                  int problem_j) {
  const int n = dataset.problem_count();
  if (problem_i < 0 || problem_i >= n || problem_j < 0 || problem_j >= n ||
      problem_i == problem_j) {
    throw std::invalid_argument("pairwise_switch_test: need two distinct problems");
  }
  const DecisionProblem& pi = dataset.problems[problem_i];
  const DecisionProblem& pj = dataset.problems[problem_j];
  require_counts(pi, "pairwise_switch_test");
  require_counts(pj, "pairwise_switch_test");

  const Vector& prior = dataset.states.prior;
  const Matrix cond_i = pi.conditionals();
  const Matrix cond_j = pj.conditionals();

  // Delta-hat = RHS_ij - LHS_i as a linear functional of the estimated
  // conditionals, with the RHS argmax frozen at its point estimate.
  std::vector<Matrix> coefficients(dataset.problems.size());
  Matrix ci = Matrix::Zero(pi.joint.rows(), pi.joint.cols());
  for (int a = 0; a < pi.joint.rows(); ++a) {
    ci.row(a) = -(prior.array() * pi.prizes.points.row(a).transpose().array())
                     .transpose();
  }
  Matrix cj = Matrix::Zero(pj.joint.rows(), pj.joint.cols());
  PairwiseTest test;
  test.problem_i = problem_i;
  test.problem_j = problem_j;
  for (int a = 0; a < pj.joint.rows(); ++a) {
    const Vector weighted_row =
        prior.cwiseProduct(cond_j.row(a).transpose());
    const Vector switch_values = pi.prizes.points * weighted_row;
    int best = 0;
    switch_values.maxCoeff(&best);
    cj.row(a) = (prior.array() *
                 pi.prizes.points.row(best).transpose().array())
                    .transpose();

    // Flag argmax rows whose runner-up sits within two standard errors.
    if (switch_values.size() >= 2) {
      double second = -std::numeric_limits<double>::infinity();
      int second_index = -1;
      for (int alt = 0; alt < switch_values.size(); ++alt) {
        if (alt != best && switch_values(alt) > second) {
          second = switch_values(alt);
          second_index = alt;
        }
      }
      double gap_variance = 0.0;
      for (int w = 0; w < pj.joint.cols(); ++w) {
        const double d = prior(w) * (pi.prizes.points(best, w) -
                                     pi.prizes.points(second_index, w));
        const double p = cond_j(a, w);
        const double nw = pj.state_counts(w);
        if (nw > 0.0) gap_variance += d * d * p * (1.0 - p) / nw;
      }
      if (switch_values(best) - second <
          2.0 * std::sqrt(std::max(0.0, gap_variance))) {
        test.near_tie = true;
      }
    }
  }

  test.lhs = -(ci.array() * cond_i.array()).sum();
  test.rhs = (cj.array() * cond_j.array()).sum();
  test.delta = test.rhs - test.lhs;

  coefficients[static_cast<size_t>(problem_i)] = ci;
  coefficients[static_cast<size_t>(problem_j)] = cj;
  test.variance = delta_variance(dataset, coefficients);

  if (test.variance <= 0.0) {
    test.degenerate = true;
    test.z = 0.0;
    test.p_value = test.delta > 0.0 ? 0.0 : 1.0;  // exact comparison
    return test;
  }
  test.z = test.delta / std::sqrt(test.variance);
  test.p_value = 1.0 - normal_cdf(test.z);
  return test;
}

JointWaldTest joint_accuracy_wald(const SdscDataset& dataset) {
  const int n = dataset.problem_count();
  if (n < 2) {
    throw std::invalid_argument("joint_accuracy_wald: need >= 2 problems");
  }
  const Vector& prior = dataset.states.prior;

  bool binary = dataset.states.size() == 2;
  for (const auto& problem : dataset.problems) {
    require_counts(problem, "joint_accuracy_wald");
    if (problem.action_count() != 2) binary = false;
  }

  JointWaldTest test;
  test.theta.resize(n);
  Vector variances(n);

  if (binary) {
    // Binary reduction: theta_i = P_i(a1|w1) + P_i(a2|w2).
    for (int k = 0; k < n; ++k) {
      const Matrix cond = dataset.problems[k].conditionals();
      test.theta[k] = cond(0, 0) + cond(1, 1);
      double variance = 0.0;
      for (int w = 0; w < 2; ++w) {
        const double p = cond(w, w);
        const double nw = dataset.problems[k].state_counts(w);
        if (nw > 0.0) variance += p * (1.0 - p) / nw;
      }
      variances(k) = variance;
    }
  } else {
    // Generalized equality test on the problem-level switch-value
    // functional, which is comparable across problems only when prizes
    // are proportional.
    test.generalized = true;
    const Matrix reference =
        dataset.problems[0].prizes.points /
        dataset.problems[0].prizes.points.cwiseAbs().maxCoeff();
    for (const auto& problem : dataset.problems) {
      const double scale = problem.prizes.points.cwiseAbs().maxCoeff();
      if (scale <= 0.0 ||
          (problem.prizes.points / scale - reference).cwiseAbs().maxCoeff() >
              1e-9) {
        throw std::invalid_argument(
            "joint_accuracy_wald: prize structures are not proportional "
            "across problems; use pairwise switch tests instead");
      }
    }
    PrizeSpec common;
    common.points = reference;
    for (int k = 0; k < n; ++k) {
      const auto& problem = dataset.problems[k];
      const Matrix cond = problem.conditionals();
      Matrix coeff = Matrix::Zero(cond.rows(), cond.cols());
      double value = 0.0;
      for (int a = 0; a < cond.rows(); ++a) {
        const Vector weighted_row = prior.cwiseProduct(cond.row(a).transpose());
        const int best = frozen_argmax(weighted_row, reference);
        coeff.row(a) =
            (prior.array() * reference.row(best).transpose().array())
                .transpose();
        value += coeff.row(a).dot(cond.row(a));
      }
      test.theta[k] = value;
      std::vector<Matrix> coefficients(dataset.problems.size());
      coefficients[static_cast<size_t>(k)] = coeff;
      variances(k) = delta_variance(dataset, coefficients);
    }
  }

  // Adjacent-difference contrasts; the statistic is invariant to any
  // full-rank choice.
  const int df = n - 1;
  Matrix contrasts = Matrix::Zero(df, n);
  for (int r = 0; r < df; ++r) {
    contrasts(r, r) = -1.0;
    contrasts(r, r + 1) = 1.0;
  }
  const Vector theta =
      Eigen::Map<const Vector>(test.theta.data(), static_cast<int>(n));
  const Vector d = contrasts * theta;
  const Matrix s =
      contrasts * variances.asDiagonal() * contrasts.transpose();

  Eigen::FullPivLU<Matrix> lu(s);
  if (!lu.isInvertible()) {
    throw std::runtime_error("joint_accuracy_wald: singular contrast covariance");
  }
  test.statistic = d.dot(lu.solve(d));
  test.degrees_of_freedom = df;
  test.p_value = chi_squared_sf(test.statistic, df);
  return test;
}

BootstrapNiasReport bootstrap_nias(const std::vector<TrialRecord>& records,
                                   const SdscDataset& definitions,
                                   int replications, std::uint64_t seed,
                                   double threshold) {
  if (replications < 1) {
    throw std::invalid_argument("bootstrap_nias: need at least 1 replication");
  }
  // Resolve labels once via the aggregation path, which also validates them.
  const SdscDataset base = aggregate_trials(records, definitions);

  std::map<std::string, int> state_index;
  for (int w = 0; w < base.states.size(); ++w) {
    state_index[base.states.labels[w]] = w;
  }

  struct ProblemTrials {
    std::vector<std::pair<int, int>> cells;  // (action row, state)
  };
  std::vector<ProblemTrials> trials(base.problems.size());
  for (const auto& record : records) {
    const int p = base.find_problem(record.problem_id);
    const auto& actions = base.problems[p].actions;
    int row = -1;
    for (size_t r = 0; r < actions.size(); ++r) {
      if (base.action_labels[actions[r]] == record.action) {
        row = static_cast<int>(r);
        break;
      }
    }
    trials[p].cells.push_back({row, state_index.at(record.state)});
  }
  for (size_t p = 0; p < trials.size(); ++p) {
    if (trials[p].cells.empty()) {
      throw std::invalid_argument("bootstrap_nias: problem '" +
                                  base.problems[p].id + "' has no trials");
    }
  }

  BootstrapNiasReport report;
  report.replications = replications;
  report.seed = seed;
  report.threshold = threshold;

  std::vector<Matrix> failures(base.problems.size());
  for (size_t p = 0; p < base.problems.size(); ++p) {
    failures[p] = Matrix::Zero(base.problems[p].joint.rows(), 1);
  }

  for (int b = 0; b < replications; ++b) {
    std::mt19937_64 engine = make_stream(seed, static_cast<std::uint64_t>(b));
    for (size_t p = 0; p < base.problems.size(); ++p) {
      const auto& cells = trials[p].cells;
      const std::uint64_t count = cells.size();
      Matrix resampled = Matrix::Zero(base.problems[p].joint.rows(),
                                      base.states.size());
      for (std::uint64_t k = 0; k < count; ++k) {
        const auto& cell =
            cells[static_cast<size_t>(next_unit(engine) * count)];
        resampled(cell.first, cell.second) += 1.0;
      }
      // NIAS on raw counts; the normalization cancels.
      const Matrix& prizes = base.problems[p].prizes.points;
      for (int a = 0; a < resampled.rows(); ++a) {
        const double own = resampled.row(a).dot(prizes.row(a));
        const double scale = std::max(1.0, std::abs(own));
        for (int alt = 0; alt < resampled.rows(); ++alt) {
          if (alt == a) continue;
          if (own < resampled.row(a).dot(prizes.row(alt)) - 1e-12 * scale) {
            failures[p](a, 0) += 1.0;
            break;
          }
        }
      }
    }
  }

  for (size_t p = 0; p < base.problems.size(); ++p) {
    for (int a = 0; a < failures[p].rows(); ++a) {
      BootstrapActionRow row;
      row.problem = static_cast<int>(p);
      row.action = a;
      row.failure_fraction = failures[p](a, 0) / replications;
      if (row.failure_fraction > threshold) report.rejected = true;
      report.rows.push_back(row);
    }
  }
  return report;
}

InferenceReport run_inference(const SdscDataset& dataset, double alpha) {
  InferenceReport report;
  report.alpha = alpha;
  const int n = dataset.problem_count();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      report.pairwise.push_back(pairwise_switch_test(dataset, i, j));
    }
  }
  report.joint = joint_accuracy_wald(dataset);
  return report;
}

}  // namespace sdsc
