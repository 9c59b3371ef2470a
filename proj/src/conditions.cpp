#include "sdsc/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sdsc/revealed.hpp"

namespace sdsc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_joints(const SdscDataset& dataset, const char* who) {
  for (const auto& problem : dataset.problems) {
    if (!problem.has_joint()) {
      throw std::invalid_argument(std::string(who) + ": problem '" +
                                  problem.id +
                                  "' has no joint distribution");
    }
  }
}

void require_nonnegative_prizes(const SdscDataset& dataset, const char* who) {
  for (const auto& problem : dataset.problems) {
    if ((problem.prizes.points.array() < 0.0).any()) {
      throw std::domain_error(std::string(who) + ": problem '" + problem.id +
                              "' has negative prize utilities");
    }
  }
}

// values(i, j) = G(Q_j^P | A_i, x_i): indirect utility of problem j's
// revealed experiment under problem i's prizes.
Matrix revealed_value_grid(const SdscDataset& dataset) {
  const int n = dataset.problem_count();
  std::vector<Experiment> experiments(n);
  for (int j = 0; j < n; ++j) {
    experiments[j] = revealed_experiment(dataset.problems[j]).experiment;
  }
  Matrix values(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      values(i, j) =
          indirect_utility(experiments[j], dataset.problems[i].prizes).value;
    }
  }
  return values;
}

// Any directed cycle with total shifted weight < 0?  All-zero initial
// distances act as a super-source, so every cycle is reachable.
bool relaxation_finds_cycle(const Matrix& weights, double shift) {
  const int n = static_cast<int>(weights.rows());
  std::vector<double> dist(n, 0.0);
  for (int pass = 0; pass <= n; ++pass) {
    bool relaxed = false;
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        if (u == v) continue;
        const double candidate = dist[u] + weights(u, v) + shift;
        if (candidate < dist[v]) {
          dist[v] = candidate;
          relaxed = true;
        }
      }
    }
    if (!relaxed) return false;
  }
  return true;
}

struct CycleSearch {
  double weight = kInf;
  std::vector<int> cycle;
};

// Exact minimum-weight simple cycle by dynamic programming over vertex
// subsets, anchored at each cycle's smallest vertex.  O(2^n n^2); fine for
// the problem counts this tool meets.
CycleSearch min_weight_cycle(const Matrix& weights) {
  const int n = static_cast<int>(weights.rows());
  CycleSearch best;
  for (int anchor = 0; anchor + 1 < n; ++anchor) {
    const int m = n - anchor;  // local vertices 0..m-1; 0 is the anchor
    const std::size_t n_masks = std::size_t{1} << m;
    std::vector<std::vector<double>> dp(n_masks,
                                        std::vector<double>(m, kInf));
    std::vector<std::vector<int>> parent(n_masks, std::vector<int>(m, -1));
    dp[1][0] = 0.0;
    for (std::size_t mask = 1; mask < n_masks; mask += 2) {
      for (int v = 0; v < m; ++v) {
        const double base = dp[mask][v];
        if (base == kInf || !(mask & (std::size_t{1} << v))) continue;
        if (v != 0) {
          // Close the cycle back to the anchor.
          const double total = base + weights(anchor + v, anchor);
          if (total < best.weight) {
            best.weight = total;
            best.cycle.clear();
            std::size_t walk_mask = mask;
            int walk = v;
            while (walk != -1) {
              best.cycle.push_back(anchor + walk);
              const int prev = parent[walk_mask][walk];
              walk_mask &= ~(std::size_t{1} << walk);
              walk = prev;
            }
            std::reverse(best.cycle.begin(), best.cycle.end());
          }
        }
        for (int u = 1; u < m; ++u) {
          if (mask & (std::size_t{1} << u)) continue;
          const std::size_t next = mask | (std::size_t{1} << u);
          const double candidate = base + weights(anchor + v, anchor + u);
          if (candidate < dp[next][u]) {
            dp[next][u] = candidate;
            parent[next][u] = v;
          }
        }
      }
    }
  }
  return best;
}

}  // namespace

double attention_switch_value(const PrizeSpec& prizes_i,
                              const Matrix& joint_j) {
  return (joint_j * prizes_i.points.transpose())
      .rowwise()
      .maxCoeff()
      .sum();
}

std::vector<InequalityResult> check_nias(const SdscDataset& dataset,
                                         double tau) {
  require_joints(dataset, "check_nias");
  std::vector<InequalityResult> rows;
  for (int i = 0; i < dataset.problem_count(); ++i) {
    const auto& problem = dataset.problems[i];
    for (int a = 0; a < problem.joint.rows(); ++a) {
      for (int alt = 0; alt < problem.joint.rows(); ++alt) {
        if (a == alt) continue;
        InequalityResult row;
        row.kind = InequalityKind::kNias;
        row.problem_i = i;
        row.problem_j = i;
        row.action = a;
        row.alt_action = alt;
        row.lhs = problem.joint.row(a).dot(problem.prizes.points.row(a));
        row.rhs = problem.joint.row(a).dot(problem.prizes.points.row(alt));
        row.slack = row.lhs - row.rhs;
        row.pass = row.slack >= -tau;
        rows.push_back(row);
      }
    }
  }
  return rows;
}

std::vector<InequalityResult> check_nis(const SdscDataset& dataset,
                                        double tau) {
  require_joints(dataset, "check_nis");
  std::vector<InequalityResult> rows;
  const int n = dataset.problem_count();
  for (int i = 0; i < n; ++i) {
    const double lhs = expected_utility(dataset.problems[i]);
    for (int j = 0; j < n; ++j) {
      InequalityResult row;
      row.kind =
          i == j ? InequalityKind::kNisWithin : InequalityKind::kNisCross;
      row.problem_i = i;
      row.problem_j = j;
      row.lhs = lhs;
      row.rhs = attention_switch_value(dataset.problems[i].prizes,
                                       dataset.problems[j].joint);
      row.slack = row.lhs - row.rhs;
      row.pass = row.slack >= -tau;
      rows.push_back(row);
    }
  }
  return rows;
}

NiacResult check_niac(const SdscDataset& dataset, double tau) {
  require_joints(dataset, "check_niac");
  NiacResult result;
  result.values = revealed_value_grid(dataset);
  const int n = dataset.problem_count();
  if (n < 2) return result;  // no cycles of length >= 2

  Matrix weights(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      weights(i, j) = result.values(i, i) - result.values(i, j);
    }
  }

  // The shift keeps float-noise cycles out while guaranteeing that any
  // cycle below -tau still triggers the exact search.
  if (!relaxation_finds_cycle(weights, tau / n)) return result;

  const CycleSearch found = min_weight_cycle(weights);
  if (found.weight < -tau) {
    result.pass = false;
    result.witness = CycleWitness{found.cycle, found.weight};
  }
  return result;
}

double improvability_difference_index(const SdscDataset& dataset,
                                      IdiNormalization normalization) {
  require_joints(dataset, "improvability_difference_index");
  require_nonnegative_prizes(dataset, "improvability_difference_index");
  const int n = dataset.problem_count();
  const Vector& prior = dataset.states.prior;
  double index = 0.0;
  for (int i = 0; i < n; ++i) {
    const Matrix& points = dataset.problems[i].prizes.points;
    const double normalizer =
        normalization == IdiNormalization::kFullInformation
            ? (points.colwise().maxCoeff() * prior).value()
            : (points * prior).maxCoeff();
    if (normalizer <= 0.0) {
      throw std::domain_error(
          "improvability_difference_index: zero normalizer in problem '" +
          dataset.problems[i].id + "' (all-zero prizes)");
    }
    const double lhs = expected_utility(dataset.problems[i]);
    for (int j = 0; j < n; ++j) {
      const double rhs = attention_switch_value(dataset.problems[i].prizes,
                                                dataset.problems[j].joint);
      index = std::max(index, std::max(0.0, (rhs - lhs) / normalizer));
    }
  }
  return index;
}

double improvability_efficiency_index(const SdscDataset& dataset) {
  require_joints(dataset, "improvability_efficiency_index");
  require_nonnegative_prizes(dataset, "improvability_efficiency_index");
  const int n = dataset.problem_count();
  double epsilon = 1.0;
  for (int i = 0; i < n; ++i) {
    const double lhs = expected_utility(dataset.problems[i]);
    for (int j = 0; j < n; ++j) {
      const double rhs = attention_switch_value(dataset.problems[i].prizes,
                                                dataset.problems[j].joint);
      if (rhs > 0.0) epsilon = std::min(epsilon, lhs / rhs);
    }
  }
  return std::min(1.0, epsilon);
}

ConditionReport audit_dataset(const SdscDataset& dataset, double tau) {
  require_joints(dataset, "audit_dataset");
  ConditionReport report;
  report.tau = tau;
  report.nias_rows = check_nias(dataset, tau);
  report.nis_rows = check_nis(dataset, tau);
  report.niac = check_niac(dataset, tau);

  report.nias_pass = std::all_of(report.nias_rows.begin(),
                                 report.nias_rows.end(),
                                 [](const InequalityResult& r) { return r.pass; });
  report.nis_pass = std::all_of(report.nis_rows.begin(), report.nis_rows.end(),
                                [](const InequalityResult& r) { return r.pass; });

  report.worst_violation = 0.0;
  for (const auto& row : report.nis_rows) {
    report.worst_violation = std::min(report.worst_violation, row.slack);
  }

  for (int i = 0; i < dataset.problem_count(); ++i) {
    const double realized = expected_utility(dataset.problems[i]);
    if (std::abs(realized - report.niac.values(i, i)) > tau) {
      report.nias_divergent_problems.push_back(i);
    }
  }

  report.idi_full_information = improvability_difference_index(
      dataset, IdiNormalization::kFullInformation);
  report.idi_no_information = improvability_difference_index(
      dataset, IdiNormalization::kNoInformation);
  report.iei = improvability_efficiency_index(dataset);
  return report;
}

}  // namespace sdsc
