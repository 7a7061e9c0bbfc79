// Copyright 2026 The dpcp Authors.
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

// Experiment config files.
//
// One `key = value` per line; `#` starts a comment. `instance` and
// `adversary` may repeat; every other key may appear once.
//
//   task          = sweep | exhaustive                (default sweep)
//   language      = nonbipartite | leader | span      (required)
//   instance      = <generator descriptor>            (one or more)
//   adversary     = <strategy descriptor>             (sweep only; default honest)
//   blr_reps      = 1,2,3                             (default 1)
//   verifier_reps = 1,2,3                             (default 1)
//   trials        = <Monte Carlo trials>              (default 10000)
//   seed          = <u64>                             (required)
//   output        = <csv path>                        (default stdout)
//   mode          = auto | exact | mc                 (default auto)
//   jobs          = <threads>                         (default from DPCP_JOBS)

#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dpcp/errors.hpp"
#include "dpcp/generate.hpp"
#include "dpcp/graph.hpp"
#include "dpcp/harness.hpp"
#include "dpcp/io.hpp"
#include "dpcp/prover.hpp"

namespace dpcp {

struct ExperimentConfig {
  enum class Task { kSweep, kExhaustive };

  Task task = Task::kSweep;
  LanguageId language = LanguageId::kNonbipartite;
  std::vector<std::string> instances;
  std::vector<std::string> adversaries;
  std::vector<unsigned> blr_reps{1};
  std::vector<unsigned> verifier_reps{1};
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
  std::string output;
  MeasureMode mode = MeasureMode::kAuto;
  std::optional<unsigned> jobs;

  static ExperimentConfig parse(std::istream& in);
};

namespace detail {

inline std::vector<unsigned> parse_reps(std::string_view v, std::size_t line) {
  std::vector<unsigned> out;
  for (auto piece : split(v, ',')) {
    const auto r = parse_number<unsigned>(trim(piece), line);
    if (r == 0) throw ConfigError(line, "repetition counts must be at least 1");
    out.push_back(r);
  }
  return out;
}

}  // namespace detail

inline ExperimentConfig ExperimentConfig::parse(std::istream& in) {
  ExperimentConfig cfg;
  std::vector<std::string> seen;
  bool have_language = false, have_seed = false;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view s = raw;
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = detail::trim(s);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line, "expected 'key = value'");
    const std::string key(detail::trim(s.substr(0, eq)));
    const std::string_view value = detail::trim(s.substr(eq + 1));
    if (value.empty()) throw ConfigError(line, "empty value for '" + key + "'");
    if (key != "instance" && key != "adversary") {
      if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
        throw ConfigError(line, "duplicate key '" + key + "'");
      }
      seen.push_back(key);
    }
    try {
      if (key == "task") {
        if (value == "sweep") {
          cfg.task = Task::kSweep;
        } else if (value == "exhaustive") {
          cfg.task = Task::kExhaustive;
        } else {
          throw ConfigError(line, "task must be sweep or exhaustive");
        }
      } else if (key == "language") {
        const auto lang = parse_language(value);
        if (!lang) throw ConfigError(line, "unknown language '" + std::string(value) + "'");
        cfg.language = *lang;
        have_language = true;
      } else if (key == "instance") {
        cfg.instances.push_back(GeneratorDescriptor::parse(value).text());
      } else if (key == "adversary") {
        cfg.adversaries.push_back(AdversaryStrategy::parse(value).text());
      } else if (key == "blr_reps") {
        cfg.blr_reps = detail::parse_reps(value, line);
      } else if (key == "verifier_reps") {
        cfg.verifier_reps = detail::parse_reps(value, line);
      } else if (key == "trials") {
        cfg.trials = detail::parse_number<std::uint64_t>(value, line);
      } else if (key == "seed") {
        cfg.seed = detail::parse_number<std::uint64_t>(value, line);
        have_seed = true;
      } else if (key == "output") {
        cfg.output = std::string(value);
      } else if (key == "mode") {
        if (value == "auto") {
          cfg.mode = MeasureMode::kAuto;
        } else if (value == "exact") {
          cfg.mode = MeasureMode::kExact;
        } else if (value == "mc") {
          cfg.mode = MeasureMode::kMonteCarlo;
        } else {
          throw ConfigError(line, "mode must be auto, exact or mc");
        }
      } else if (key == "jobs") {
        cfg.jobs = detail::parse_number<unsigned>(value, line);
        if (*cfg.jobs == 0) throw ConfigError(line, "jobs must be at least 1");
      } else {
        throw ConfigError(line, "unknown key '" + key + "'");
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError(line, e.what());
    }
  }
  if (!have_language) throw ConfigError(line, "missing required key 'language'");
  if (!have_seed) throw ConfigError(line, "missing required key 'seed'");
  if (cfg.instances.empty()) throw ConfigError(line, "at least one 'instance' is required");
  if (cfg.task == Task::kExhaustive && !cfg.adversaries.empty()) {
    throw ConfigError(line, "exhaustive tasks take no adversaries");
  }
  if (cfg.task == Task::kSweep && cfg.adversaries.empty()) cfg.adversaries.push_back("honest");
  return cfg;
}

/// Runs the experiment and returns its CSV rows in cell order.
inline std::vector<SweepCell> run_experiment(const ExperimentConfig& cfg, unsigned jobs = 1) {
  if (cfg.jobs) jobs = *cfg.jobs;
  std::vector<SweepInstance> instances;
  for (const auto& d : cfg.instances) instances.push_back({d, generate(d, cfg.seed)});

  if (cfg.task == ExperimentConfig::Task::kSweep) {
    SweepSpec plan;
    plan.language = cfg.language;
    plan.instances = std::move(instances);
    for (const auto& a : cfg.adversaries) plan.adversaries.push_back(AdversaryStrategy::parse(a));
    plan.blr_grid = cfg.blr_reps;
    plan.verifier_grid = cfg.verifier_reps;
    plan.trials = cfg.trials;
    plan.seed = cfg.seed;
    plan.mode = cfg.mode;
    plan.jobs = jobs;
    return soundness_sweep(plan);
  }

  if (cfg.mode == MeasureMode::kMonteCarlo) {
    throw ConfigError(0, "exhaustive tasks are exact only");
  }
  std::vector<SweepCell> cells;
  for (const auto& [id, inst] : instances) {
    for (unsigned blr : cfg.blr_reps) {
      for (unsigned vr : cfg.verifier_reps) {
        const ProtocolConfig pc{cfg.language, blr, vr};
        const SoundnessReport rep = certify_soundness_exhaustive(inst, cfg.language, pc);
        const MultiProof best =
            adversarial_proof(inst, cfg.language, AdversaryStrategy::parse(rep.argmax));
        const RunReport run = run_protocol(inst, best, pc, cfg.seed);
        SweepCell cell;
        cell.language = std::string(to_string(cfg.language));
        cell.instance_id = id;
        cell.n = inst.size();
        cell.adversary = rep.argmax;
        cell.blr_reps = blr;
        cell.verifier_reps = vr;
        cell.mode = MeasureMode::kExact;
        cell.exact = rep.max_acceptance;
        cell.acceptance = to_double(*rep.max_acceptance);
        cell.interval = {cell.acceptance, cell.acceptance};
        cell.max_queries = run.max_queries();
        cell.max_random_bits = run.max_random_bits();
        cell.proof_bits = best.total_bits();
        cell.trials = rep.enumerated;
        cell.seed = cfg.seed;
        cells.push_back(std::move(cell));
      }
    }
  }
  return cells;
}

}  // namespace dpcp
