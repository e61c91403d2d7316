// Copyright 2026 The bangbang Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     https://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bangbang/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "bangbang/errors.hpp"
#include "bangbang/ocp.hpp"
#include "bangbang/oracle.hpp"
#include "bangbang/trajectory_csv.hpp"

namespace bangbang::cli {

namespace {

namespace fs = std::filesystem;

BangBangProblem to_problem(const ScenarioConfig& c) {
  BangBangProblem p{c.v0, c.vf, c.length, c.a_plus, c.a_minus, {c.c0, c.c1}};
  validate(p);
  if (c.samples < 2) throw InvalidInputError("samples must be at least 2");
  return p;
}

void add_scenario_options(CLI::App* cmd, ScenarioConfig* c) {
  cmd->add_option("--v0", c->v0, "initial speed [m/s]")->capture_default_str();
  cmd->add_option("--vf", c->vf, "final speed [m/s]")->capture_default_str();
  cmd->add_option("--length", c->length, "path length [m]")->capture_default_str();
  cmd->add_option("--a-plus", c->a_plus, "maximum acceleration [m/s^2]")->capture_default_str();
  cmd->add_option("--a-minus", c->a_minus, "maximum braking [m/s^2]")->capture_default_str();
  cmd->add_option("--c0", c->c0, "linear drag [1/s]")->capture_default_str();
  cmd->add_option("--c1", c->c1, "quadratic drag [1/m]")->capture_default_str();
  cmd->add_option("--samples", c->samples, "trajectory samples")->capture_default_str();
}

void print_row(std::ostream& out, const char* label, const std::string& value) {
  out << std::left << std::setw(10) << label << value << '\n';
}

int cmd_solve(const ScenarioConfig& config, std::ostream& out) {
  const BangBangProblem p = to_problem(config);
  const Feasibility f = feasibility(p);
  print_row(out, "verdict", std::string(verdict_name(f.verdict)));
  print_row(out, "vf_min", format_number(f.vf_min));
  print_row(out, "vf_max", format_number(f.vf_max));
  if (f.verdict != Verdict::kFeasible) return kExitInfeasible;
  const BangBangSolution sol = solve(p);
  print_row(out, "s_sigma", format_number(sol.s_sigma));
  print_row(out, "t_sigma", format_number(sol.t_sigma));
  print_row(out, "T", format_number(sol.total_time));
  if (sol.degenerate) print_row(out, "switch", sol.s_sigma < p.length / 2 ? "at start" : "at end");
  return kExitOk;
}

// Writes the trajectory, or the two envelopes when infeasible.
Verdict write_profile(const BangBangProblem& p, int samples, std::ostream& csv,
                      Feasibility* feas_out, std::optional<BangBangSolution>* sol_out) {
  const Feasibility f = feasibility(p);
  if (feas_out != nullptr) *feas_out = f;
  if (f.verdict == Verdict::kFeasible) {
    BangBangSolution sol = solve(p);
    write_trajectory_csv(csv, sample_trajectory(sol, samples));
    if (sol_out != nullptr) sol_out->emplace(std::move(sol));
  } else {
    write_trajectory_csv(csv, sample_envelopes(p, samples));
  }
  return f.verdict;
}

int cmd_sample(const ScenarioConfig& config, const std::string& path, std::ostream& out,
               std::ostream& err) {
  const BangBangProblem p = to_problem(config);
  Verdict verdict;
  if (path.empty() || path == "-") {
    verdict = write_profile(p, config.samples, out, nullptr, nullptr);
  } else {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw InvalidInputError("cannot open " + path + " for writing");
    verdict = write_profile(p, config.samples, file, nullptr, nullptr);
  }
  if (verdict != Verdict::kFeasible) {
    err << "infeasible: " << verdict_name(verdict) << " (envelope curves written)\n";
    return kExitInfeasible;
  }
  return kExitOk;
}

struct SweepRow {
  double value = 0.0;
  Feasibility feas;
  std::optional<BangBangSolution> sol;
  std::exception_ptr error;
};

int cmd_sweep(const ScenarioConfig& base, const SweepSpec& spec, const std::string& dir,
              std::ostream& out) {
  to_problem(base);
  if (dir.empty()) throw InvalidInputError("sweep needs --out <directory>");
  fs::create_directories(dir);

  std::vector<BangBangProblem> problems;
  for (double value : spec.values) {
    ScenarioConfig c = base;
    if (spec.parameter == "c0") c.c0 = value;
    if (spec.parameter == "c1") c.c1 = value;
    if (spec.parameter == "a_plus") c.a_plus = value;
    if (spec.parameter == "a_minus") c.a_minus = value;
    problems.push_back(to_problem(c));
  }

  std::vector<SweepRow> rows(spec.values.size());
  auto work = [&](std::size_t i) {
    SweepRow& row = rows[i];
    row.value = spec.values[i];
    try {
      const fs::path file =
          fs::path(dir) / (spec.parameter + "_" + format_number(row.value) + ".csv");
      std::ofstream csv(file, std::ios::binary);
      if (!csv) throw InvalidInputError("cannot open " + file.string() + " for writing");
      write_profile(problems[i], base.samples, csv, &row.feas, &row.sol);
    } catch (...) {
      row.error = std::current_exception();
    }
  };
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(),
                                                     rows.size()));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < rows.size(); i += workers) work(i);
      });
    }
  }
  for (const SweepRow& row : rows) {
    if (row.error) std::rethrow_exception(row.error);
  }

  std::ofstream summary(fs::path(dir) / "summary.csv", std::ios::binary);
  if (!summary) throw InvalidInputError("cannot write summary.csv in " + dir);
  summary << "param,value,verdict,s_sigma,T,vf_min,vf_max\n";
  for (const SweepRow& row : rows) {
    summary << spec.parameter << ',' << format_number(row.value) << ','
            << verdict_name(row.feas.verdict) << ',';
    if (row.sol) summary << format_number(row.sol->s_sigma) << ',' << format_number(row.sol->total_time);
    else summary << ',';
    summary << ',' << format_number(row.feas.vf_min) << ',' << format_number(row.feas.vf_max)
            << '\n';
    out << spec.parameter << '=' << format_number(row.value) << ' '
        << verdict_name(row.feas.verdict) << '\n';
  }
  return kExitOk;
}

}  // namespace

SweepSpec parse_sweep(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw InvalidInputError("sweep: expected <param>=<list>");
  SweepSpec spec;
  spec.parameter = text.substr(0, eq);
  std::replace(spec.parameter.begin(), spec.parameter.end(), '-', '_');
  if (spec.parameter != "c0" && spec.parameter != "c1" && spec.parameter != "a_plus" &&
      spec.parameter != "a_minus") {
    throw InvalidInputError("sweep: parameter must be one of c0, c1, a_plus, a_minus");
  }
  std::istringstream list(text.substr(eq + 1));
  std::string item;
  while (std::getline(list, item, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || !std::isfinite(x)) {
      throw InvalidInputError("sweep: bad value '" + item + "'");
    }
    const bool drag = spec.parameter == "c0" || spec.parameter == "c1";
    if (drag ? x < 0.0 : x <= 0.0) {
      throw InvalidInputError("sweep: value " + item + " not admissible for " + spec.parameter);
    }
    spec.values.push_back(x);
  }
  if (spec.values.empty()) throw InvalidInputError("sweep: empty value list");
  return spec;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimum-time bang-bang speed profiles with linear and quadratic drag"};
  app.require_subcommand(1);

  ScenarioConfig config;
  std::string out_path;
  std::string sweep_text;

  CLI::App* solve_cmd = app.add_subcommand("solve", "feasibility, switching point and total time");
  add_scenario_options(solve_cmd, &config);

  CLI::App* sample_cmd = app.add_subcommand("sample", "write the trajectory as CSV");
  add_scenario_options(sample_cmd, &config);
  sample_cmd->add_option("--out", out_path, "output file (default: stdout)");

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "solve over a list of parameter values");
  add_scenario_options(sweep_cmd, &config);
  sweep_cmd->add_option("--sweep", sweep_text, "<c0|c1|a_plus|a_minus>=<v1,v2,...>")->required();
  sweep_cmd->add_option("--out", out_path, "output directory")->required();

  // Debugging aid: reference integration of one arc.
  ArcInput arc_input{2.0, 6.0, {0.01, 0.01}};
  std::optional<double> t_end;
  std::optional<double> zeta;
  CLI::App* oracle_cmd = app.add_subcommand("oracle", "reference integration of a single arc");
  oracle_cmd->group("");
  oracle_cmd->add_option("--a", arc_input.a);
  oracle_cmd->add_option("--v0", arc_input.v0);
  oracle_cmd->add_option("--c0", arc_input.drag.c0);
  oracle_cmd->add_option("--c1", arc_input.drag.c1);
  auto* t_opt = oracle_cmd->add_option("--t", t_end);
  oracle_cmd->add_option("--zeta", zeta)->excludes(t_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(config, out);
    if (sample_cmd->parsed()) return cmd_sample(config, out_path, out, err);
    if (sweep_cmd->parsed()) return cmd_sweep(config, parse_sweep(sweep_text), out_path, out);
    if (oracle_cmd->parsed()) {
      const oracle::OracleState st = zeta ? oracle::state_at_space(arc_input, *zeta)
                                          : oracle::integrate_arc(arc_input, t_end.value_or(1.0));
      out << "t," << format_number(st.t) << "\ns," << format_number(st.s) << "\nv,"
          << format_number(st.v) << "\nsteps," << st.steps << '\n';
      return kExitOk;
    }
  } catch (const InvalidInputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace bangbang::cli
