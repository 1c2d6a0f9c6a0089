// Copyright 2026 the bwrsolve authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Exit codes: 0 success, 1 input error, 2 internal
// inconsistency, 3 precision exhaustion.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bwr/game_io.hpp"
#include "bwr/generate.hpp"
#include "bwr/solver.hpp"

namespace {

using nlohmann::json;

struct CommonOptions {
  std::string mode = "practical";
  long b_exponent = 8;
  long precision_bits = 0;
  long cap = 2000000;
  bool force = false;
  std::string out;
};

void add_common(CLI::App* cmd, CommonOptions& c) {
  cmd->add_option("--mode", c.mode, "paper or practical")
      ->check(CLI::IsMember({"paper", "practical"}));
  cmd->add_option("--b-exponent", c.b_exponent, "softmax base exponent c (practical mode)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--precision-bits", c.precision_bits,
                  "working precision override (0 = derived)");
  cmd->add_option("--cap", c.cap, "strategy enumeration cap (0 disables warm starts)");
  cmd->add_flag("--force", c.force, "bypass the paper-mode size gate");
  cmd->add_option("--out", c.out, "output file (default: stdout)");
}

bwr::SolverOptions solver_options(const CommonOptions& c) {
  bwr::SolverOptions o;
  o.mode = c.mode == "paper" ? bwr::Mode::Paper : bwr::Mode::Practical;
  o.practical_exponent = c.b_exponent;
  o.force = c.force;
  o.hint_cap = bwr::Integer(c.cap);
  long prec = c.precision_bits;
  if (!prec) {
    if (const char* env = std::getenv("BWR_PRECISION_BITS")) prec = std::atol(env);
  }
  o.precision_bits = prec;
  return o;
}

void emit(const CommonOptions& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw bwr::GameError("cannot write " + c.out);
  f << text << "\n";
}

// Rewards are normalized to [0, U] at ingestion; `shift` is added to every
// reward and subtracted from every reported value.
struct LoadedGame {
  bwr::BwrGame game;
  bwr::Rational shift;
};

LoadedGame load_game(const std::string& path, bwr::MergePolicy merge) {
  std::ifstream in(path);
  if (!in) throw bwr::GameError("cannot open " + path);
  json j = json::parse(in);
  bwr::GameDesc d = bwr::game_desc_from_json(j);
  bwr::Rational minr(0);
  for (const auto& a : d.arcs) minr = std::min(minr, a.reward);
  bwr::Rational shift = -minr;
  if (shift > 0) {
    for (auto& a : d.arcs) a.reward += shift;
  }
  return {bwr::validate(d, merge), shift};
}

std::vector<std::string> sorted_ids(const bwr::BwrGame& g, const std::set<int>& s) {
  std::vector<std::string> ids;
  for (int v : s) ids.push_back(g.id_of(v));
  std::sort(ids.begin(), ids.end());
  return ids;
}

json values_json(const bwr::BwrGame& g, const bwr::VertexMap& values,
                 const bwr::Rational& shift) {
  json j = json::object();
  for (int v = 0; v < g.size(); ++v) j[g.id_of(v)] = bwr::to_string(values[v] - shift);
  return j;
}

json strategy_json(const bwr::BwrGame& g, const bwr::Strategy& s) {
  json j = json::object();
  for (int v = 0; v < g.size(); ++v) {
    if (v < static_cast<int>(s.size()) && s[v] >= 0) {
      j[g.id_of(v)] = g.id_of(g.arc(s[v]).to);
    }
  }
  return j;
}

json choices_json(const std::vector<bwr::StrategyChoice>& cs) {
  json j = json::object();
  for (const auto& c : cs) j[c.from] = c.to;
  return j;
}

json classification_json(const bwr::BwrGame& g, const bwr::ClassificationResult& res,
                         const bwr::Rational& shift) {
  json j;
  j["t_max"] = bwr::to_string(res.t_max - shift);
  j["t_min"] = bwr::to_string(res.t_min - shift);
  j["top"] = sorted_ids(g, res.top);
  j["bottom"] = sorted_ids(g, res.bottom);
  j["strategies_top"] = {{"max", choices_json(res.strategies_top.max_choices)},
                         {"min", choices_json(res.strategies_top.min_choices)}};
  j["strategies_bottom"] = {{"max", choices_json(res.strategies_bottom.max_choices)},
                            {"min", choices_json(res.strategies_bottom.min_choices)}};
  return j;
}

json params_json(const bwr::GameParams& p) {
  json j;
  j["mode"] = p.mode == bwr::Mode::Paper ? "paper" : "practical";
  j["n"] = p.n;
  j["k"] = p.k;
  j["U"] = bwr::to_string(p.U);
  j["D"] = bwr::to_string(p.D);
  j["reward_scale"] = bwr::to_string(p.reward_scale);
  j["lambda_sq"] = bwr::to_string(p.lambda_sq);
  j["den_bound"] = bwr::to_string(p.den_bound);
  j["L"] = bwr::to_string(p.L);
  j["base"] = p.base.str();
  return j;
}

int run(int argc, char** argv) {
  CLI::App app{"bwrsolve: mean-payoff game solving via convex programming"};
  app.require_subcommand(1);

  CommonOptions c;
  std::string path;
  bool merge_expectation = false;

  auto* validate_cmd = app.add_subcommand("validate", "normalize and echo a game");
  auto* solve_cmd = app.add_subcommand("solve", "solve an ergodic game");
  auto* classify_cmd = app.add_subcommand("classify", "extreme values and classes");
  auto* oracle_cmd = app.add_subcommand("oracle", "exact enumeration solution");
  auto* compare_cmd = app.add_subcommand("compare", "diff classify against the oracle");
  auto* dot_cmd = app.add_subcommand("export-dot", "DOT rendering");
  for (auto* cmd : {validate_cmd, solve_cmd, classify_cmd, oracle_cmd, compare_cmd, dot_cmd}) {
    cmd->add_option("game", path, "game JSON file")->required();
    cmd->add_flag("--merge-expectation", merge_expectation,
                  "merge parallel Random arcs into their expectation");
    add_common(cmd, c);
  }

  auto* gen_cmd = app.add_subcommand("generate", "emit a seeded random game");
  bwr::GenerateOptions gen;
  long seed = 0;
  gen_cmd->add_option("--n", gen.n, "number of positions")->required();
  gen_cmd->add_option("--k", gen.k, "number of Random positions");
  gen_cmd->add_option("--max-reward", gen.max_reward, "maximum reward U");
  gen_cmd->add_option("--prob-den", gen.prob_denominator, "probability denominator D");
  gen_cmd->add_option("--min-degree", gen.min_out_degree, "minimum out-degree");
  gen_cmd->add_option("--max-degree", gen.max_out_degree, "maximum out-degree");
  gen_cmd->add_option("--seed", seed, "generator seed");
  add_common(gen_cmd, c);

  CLI11_PARSE(app, argc, argv);

  bwr::MergePolicy merge =
      merge_expectation ? bwr::MergePolicy::Expectation : bwr::MergePolicy::Strict;

  if (gen_cmd->parsed()) {
    gen.seed = static_cast<std::uint64_t>(seed);
    emit(c, bwr::game_to_json(bwr::generate_game(gen)).dump(2));
    return 0;
  }

  LoadedGame lg = load_game(path, merge);
  const bwr::BwrGame& g = lg.game;

  if (validate_cmd->parsed()) {
    bwr::SolverOptions opt = solver_options(c);
    bwr::DeriveOptions dopt;
    dopt.practical_exponent = opt.practical_exponent;
    json j;
    j["game"] = bwr::game_to_json(g);
    j["reward_shift"] = bwr::to_string(lg.shift);
    j["params"] = params_json(bwr::derive_params(g, opt.mode, dopt));
    emit(c, j.dump(2));
    return 0;
  }
  if (oracle_cmd->parsed()) {
    bwr::GameSolution sol = bwr::solve_exact(g, bwr::Integer(c.cap));
    json j;
    j["values"] = values_json(g, sol.values, lg.shift);
    j["certified"] = sol.certified;
    j["max_strategy"] = strategy_json(g, sol.max_strategy);
    j["min_strategy"] = strategy_json(g, sol.min_strategy);
    emit(c, j.dump(2));
    return 0;
  }
  if (dot_cmd->parsed()) {
    emit(c, bwr::game_to_dot(g));
    return 0;
  }

  bwr::SolverOptions opt = solver_options(c);
  if (classify_cmd->parsed()) {
    bwr::SolverContext ctx = bwr::make_solver(g, opt);
    emit(c, classification_json(g, bwr::classify(ctx), lg.shift).dump(2));
    return 0;
  }
  if (solve_cmd->parsed()) {
    bwr::SolverContext ctx = bwr::make_solver(g, opt);
    json j;
    try {
      bwr::GameSolution sol = bwr::solve_ergodic(ctx);
      j["ergodic"] = true;
      j["value"] = bwr::to_string(sol.values[0] - lg.shift);
      j["values"] = values_json(g, sol.values, lg.shift);
      j["max_strategy"] = strategy_json(g, sol.max_strategy);
      j["min_strategy"] = strategy_json(g, sol.min_strategy);
    } catch (const bwr::NotErgodicError& e) {
      j["ergodic"] = false;
      j["notice"] = e.what();
      j["classification"] = classification_json(g, bwr::classify(ctx), lg.shift);
    }
    emit(c, j.dump(2));
    return 0;
  }
  if (compare_cmd->parsed()) {
    bwr::SolverContext ctx = bwr::make_solver(g, opt);
    bwr::ClassificationResult res = bwr::classify(ctx);
    bwr::GameSolution sol = bwr::solve_exact(g, bwr::Integer(c.cap));
    bwr::Rational o_max = *std::max_element(sol.values.begin(), sol.values.end());
    bwr::Rational o_min = *std::min_element(sol.values.begin(), sol.values.end());
    std::set<int> o_top, o_bottom;
    for (int v = 0; v < g.size(); ++v) {
      if (sol.values[v] == o_max) o_top.insert(v);
      if (sol.values[v] == o_min) o_bottom.insert(v);
    }
    json diffs = json::array();
    if (res.t_max != o_max) {
      diffs.push_back({{"field", "t_max"},
                       {"pipeline", bwr::to_string(res.t_max - lg.shift)},
                       {"oracle", bwr::to_string(o_max - lg.shift)}});
    }
    if (res.t_min != o_min) {
      diffs.push_back({{"field", "t_min"},
                       {"pipeline", bwr::to_string(res.t_min - lg.shift)},
                       {"oracle", bwr::to_string(o_min - lg.shift)}});
    }
    if (res.top != o_top) {
      diffs.push_back({{"field", "top"},
                       {"pipeline", sorted_ids(g, res.top)},
                       {"oracle", sorted_ids(g, o_top)}});
    }
    if (res.bottom != o_bottom) {
      diffs.push_back({{"field", "bottom"},
                       {"pipeline", sorted_ids(g, res.bottom)},
                       {"oracle", sorted_ids(g, o_bottom)}});
    }
    json j;
    j["match"] = diffs.empty();
    j["diffs"] = diffs;
    j["classification"] = classification_json(g, res, lg.shift);
    j["oracle_values"] = values_json(g, sol.values, lg.shift);
    emit(c, j.dump(2));
    if (!diffs.empty()) throw bwr::InconsistencyError("pipeline disagrees with the oracle");
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const bwr::PrecisionError& e) {
    std::cerr << "precision exhausted: " << e.what() << "\n";
    return 3;
  } catch (const bwr::InconsistencyError& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return 2;
  } catch (const bwr::GameError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
