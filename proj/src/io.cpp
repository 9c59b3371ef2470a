#include "sdsc/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace sdsc {

namespace {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    throw std::runtime_error(where + ": expected a matrix (array of arrays)");
  }
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (static_cast<int>(j[r].size()) != cols) {
      throw std::runtime_error(where + ": ragged matrix rows");
    }
    for (int c = 0; c < cols; ++c) m(r, c) = j[r][c].get<double>();
  }
  return m;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Vector vector_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw std::runtime_error(where + ": expected an array");
  Vector v(static_cast<int>(j.size()));
  for (int i = 0; i < v.size(); ++i) v(i) = j[i].get<double>();
  return v;
}

const json& require(const json& j, const char* key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw std::runtime_error(where + ": missing required key '" + key + "'");
  }
  return *it;
}

}  // namespace

SdscDataset problems_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("problems.json: ") + e.what());
  }

  SdscDataset dataset;
  dataset.name = j.value("name", std::string());
  if (j.contains("metadata")) dataset.metadata_json = j["metadata"].dump();

  const json& states = require(j, "states", "problems.json");
  for (const auto& label : require(states, "labels", "states")) {
    dataset.states.labels.push_back(label.get<std::string>());
  }
  dataset.states.prior = vector_from_json(require(states, "prior", "states"),
                                          "states.prior");

  for (const auto& label : require(j, "actions", "problems.json")) {
    dataset.action_labels.push_back(label.get<std::string>());
  }

  for (const auto& p : require(j, "problems", "problems.json")) {
    DecisionProblem problem;
    problem.id = require(p, "id", "problem").get<std::string>();
    const std::string where = "problem " + problem.id;
    for (const auto& label : require(p, "actions", where)) {
      const std::string name = label.get<std::string>();
      int index = -1;
      for (size_t a = 0; a < dataset.action_labels.size(); ++a) {
        if (dataset.action_labels[a] == name) {
          index = static_cast<int>(a);
          break;
        }
      }
      if (index < 0) {
        throw std::runtime_error(where + ": action '" + name +
                                 "' is not in the global action list");
      }
      problem.actions.push_back(index);
    }
    problem.prizes.points = matrix_from_json(
        require(p, "prize_matrix", where), where + ".prize_matrix");
    problem.prizes.cash_amount = p.value("prize_cash", 0.0);
    if (p.contains("joint")) {
      problem.joint = matrix_from_json(p["joint"], where + ".joint");
    }
    if (p.contains("counts_per_state")) {
      problem.state_counts =
          vector_from_json(p["counts_per_state"], where + ".counts_per_state");
    }
    dataset.problems.push_back(std::move(problem));
  }
  return dataset;
}

std::string problems_to_json(const SdscDataset& dataset) {
  json j;
  if (!dataset.name.empty()) j["name"] = dataset.name;
  if (!dataset.metadata_json.empty()) {
    j["metadata"] = json::parse(dataset.metadata_json);
  }
  j["states"] = {{"labels", dataset.states.labels},
                 {"prior", vector_to_json(dataset.states.prior)}};
  j["actions"] = dataset.action_labels;
  json problems = json::array();
  for (const auto& problem : dataset.problems) {
    json p;
    p["id"] = problem.id;
    json actions = json::array();
    for (int a : problem.actions) actions.push_back(dataset.action_labels[a]);
    p["actions"] = std::move(actions);
    p["prize_matrix"] = matrix_to_json(problem.prizes.points);
    if (problem.prizes.cash_amount != 0.0) {
      p["prize_cash"] = problem.prizes.cash_amount;
    }
    if (problem.has_joint()) p["joint"] = matrix_to_json(problem.joint);
    if (problem.has_counts()) {
      p["counts_per_state"] = vector_to_json(problem.state_counts);
    }
    problems.push_back(std::move(p));
  }
  j["problems"] = std::move(problems);
  return j.dump(2) + "\n";
}

SdscDataset load_problems(const std::string& path) {
  return problems_from_json(read_file(path));
}

std::vector<TrialRecord> trials_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("trials.csv: empty file");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "problem_id,subject_id,state,action") {
    throw std::runtime_error(
        "trials.csv: expected header problem_id,subject_id,state,action");
  }
  std::vector<TrialRecord> records;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    TrialRecord record;
    std::string* fields[4] = {&record.problem_id, &record.subject_id,
                              &record.state, &record.action};
    size_t start = 0;
    for (int f = 0; f < 4; ++f) {
      const size_t comma = line.find(',', start);
      if (f < 3 && comma == std::string::npos) {
        throw std::runtime_error("trials.csv line " + std::to_string(lineno) +
                                 ": expected 4 comma-separated fields");
      }
      *fields[f] = line.substr(
          start, comma == std::string::npos ? std::string::npos
                                            : comma - start);
      start = comma + 1;
    }
    if (record.action.find(',') != std::string::npos) {
      throw std::runtime_error("trials.csv line " + std::to_string(lineno) +
                               ": too many fields");
    }
    records.push_back(std::move(record));
  }
  return records;
}

std::string trials_to_csv(const std::vector<TrialRecord>& records) {
  std::ostringstream out;
  out << "problem_id,subject_id,state,action\n";
  for (const auto& record : records) {
    out << record.problem_id << ',' << record.subject_id << ','
        << record.state << ',' << record.action << '\n';
  }
  return out.str();
}

std::vector<TrialRecord> load_trials(const std::string& path) {
  return trials_from_csv(read_file(path));
}

std::string validation_report_to_json(const ValidationReport& report) {
  json issues = json::array();
  for (const auto& issue : report.issues) {
    issues.push_back({{"code", issue.code},
                      {"location", issue.location},
                      {"message", issue.message}});
  }
  json j = {{"pass", report.passed()}, {"issues", std::move(issues)}};
  return j.dump(2) + "\n";
}

namespace {

json inequality_to_json(const InequalityResult& row,
                        const SdscDataset& dataset) {
  json j;
  j["problem_i"] = dataset.problems[row.problem_i].id;
  j["problem_j"] = dataset.problems[row.problem_j].id;
  if (row.kind == InequalityKind::kNias) {
    const auto& problem = dataset.problems[row.problem_i];
    j["action"] = dataset.action_labels[problem.actions[row.action]];
    j["alt_action"] = dataset.action_labels[problem.actions[row.alt_action]];
  }
  j["lhs"] = row.lhs;
  j["rhs"] = row.rhs;
  j["slack"] = row.slack;
  j["pass"] = row.pass;
  return j;
}

}  // namespace

std::string condition_report_to_json(const ConditionReport& report,
                                     const SdscDataset& dataset) {
  json nias_rows = json::array();
  for (const auto& row : report.nias_rows) {
    nias_rows.push_back(inequality_to_json(row, dataset));
  }
  json nis_rows = json::array();
  for (const auto& row : report.nis_rows) {
    nis_rows.push_back(inequality_to_json(row, dataset));
  }
  json niac = {{"pass", report.niac.pass}};
  if (report.niac.witness) {
    json cycle = json::array();
    for (int p : report.niac.witness->problems) {
      cycle.push_back(dataset.problems[p].id);
    }
    niac["witness_cycle"] = {{"problems", std::move(cycle)},
                             {"weight", report.niac.witness->weight}};
  }
  json divergent = json::array();
  for (int p : report.nias_divergent_problems) {
    divergent.push_back(dataset.problems[p].id);
  }
  json j = {{"tau", report.tau},
            {"nias", {{"pass", report.nias_pass}, {"rows", std::move(nias_rows)}}},
            {"nis", {{"pass", report.nis_pass}, {"rows", std::move(nis_rows)}}},
            {"niac", std::move(niac)},
            {"idi", {{"eq18", report.idi_full_information},
                     {"no_info", report.idi_no_information}}},
            {"iei", report.iei},
            {"worst_violation", report.worst_violation},
            {"nias_divergent_problems", std::move(divergent)}};
  return j.dump(2) + "\n";
}

std::string inference_report_to_json(const InferenceReport& report,
                                     const SdscDataset& dataset) {
  json pairwise = json::array();
  for (const auto& test : report.pairwise) {
    pairwise.push_back({{"problem_i", dataset.problems[test.problem_i].id},
                        {"problem_j", dataset.problems[test.problem_j].id},
                        {"lhs", test.lhs},
                        {"rhs", test.rhs},
                        {"delta", test.delta},
                        {"variance", test.variance},
                        {"z", test.z},
                        {"p_value", test.p_value},
                        {"degenerate", test.degenerate},
                        {"near_tie", test.near_tie}});
  }
  json j;
  j["alpha"] = report.alpha;
  j["pairwise"] = std::move(pairwise);
  j["joint"] = {{"statistic", report.joint.statistic},
                {"degrees_of_freedom", report.joint.degrees_of_freedom},
                {"p_value", report.joint.p_value},
                {"theta", report.joint.theta},
                {"generalized", report.joint.generalized}};
  if (report.bootstrap) {
    json rows = json::array();
    for (const auto& row : report.bootstrap->rows) {
      const auto& problem = dataset.problems[row.problem];
      rows.push_back(
          {{"problem", problem.id},
           {"action", dataset.action_labels[problem.actions[row.action]]},
           {"failure_fraction", row.failure_fraction}});
    }
    j["bootstrap"] = {{"replications", report.bootstrap->replications},
                      {"seed", report.bootstrap->seed},
                      {"threshold", report.bootstrap->threshold},
                      {"rejected", report.bootstrap->rejected},
                      {"rows", std::move(rows)}};
  }
  return j.dump(2) + "\n";
}

std::string ground_truth_to_json(const GroundTruth& truth) {
  json joints = json::array();
  for (const auto& joint : truth.population_joints) {
    joints.push_back(matrix_to_json(joint));
  }
  json j = {{"model", truth.model},
            {"parameter", truth.parameter},
            {"prior", vector_to_json(truth.prior)},
            {"prizes", truth.prizes},
            {"population_joints", std::move(joints)},
            {"expected",
             {{"nis_pass", truth.expect_nis_pass},
              {"nias_pass", truth.expect_nias_pass},
              {"niac_pass", truth.expect_niac_pass}}}};
  return j.dump(2) + "\n";
}

std::string experiment_to_json(const RevealedStrategy& revealed) {
  json strategy;
  for (int g = 0; g < revealed.experiment.support_size(); ++g) {
    strategy[std::to_string(g)] =
        vector_to_json(revealed.strategy.choice.row(g).transpose());
  }
  json j = {{"support", matrix_to_json(revealed.experiment.support)},
            {"weights", vector_to_json(revealed.experiment.weights)},
            {"strategy", std::move(strategy)}};
  return j.dump(2) + "\n";
}

RevealedStrategy experiment_from_json(const std::string& text) {
  const json j = json::parse(text);
  RevealedStrategy revealed;
  revealed.experiment.support =
      matrix_from_json(require(j, "support", "experiment"), "support");
  revealed.experiment.weights =
      vector_from_json(require(j, "weights", "experiment"), "weights");
  const json& strategy = require(j, "strategy", "experiment");
  const int n = revealed.experiment.support_size();
  for (int g = 0; g < n; ++g) {
    const Vector row = vector_from_json(
        require(strategy, std::to_string(g).c_str(), "strategy"),
        "strategy row");
    if (g == 0) {
      revealed.strategy.choice.resize(n, row.size());
    }
    revealed.strategy.choice.row(g) = row.transpose();
  }
  return revealed;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string temp = path + ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open '" + temp + "' for writing");
    }
    out << content;
    if (!out.flush()) {
      throw std::runtime_error("write to '" + temp + "' failed");
    }
  }
  if (std::rename(temp.c_str(), path.c_str()) != 0) {
    std::remove(temp.c_str());
    throw std::runtime_error("cannot rename '" + temp + "' to '" + path + "'");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "'");
  }
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace sdsc
