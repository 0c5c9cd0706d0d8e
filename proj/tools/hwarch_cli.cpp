// Copyright 2026 The hwarch Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <system_error>
#include <variant>

#include <CLI11.hpp>

#include "hwarch/config.hpp"
#include "hwarch/error.hpp"
#include "hwarch/experiments.hpp"
#include "hwarch/results.hpp"
#include "hwarch/snapshot.hpp"

namespace {

using hwarch::Backend;
using hwarch::Errc;
using hwarch::Error;
using hwarch::ExperimentConfig;
using hwarch::ExperimentKind;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;
constexpr int kExitOther = 3;

struct Flags {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> reps;
  std::string backend;
  std::string format;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON config file");
  cmd->add_option("--out", f.out, "output directory (overrides output.dir)");
  cmd->add_option("--seed", f.seed, "master seed; every other seed derives from it");
  cmd->add_option("--reps", f.reps, "number of repetitions");
  cmd->add_option("--backend", f.backend,
                  "ventral: cortex backend; mtl: hippocampus backend; equiv: only this backend")
      ->check(CLI::IsMember({"exact", "svd", "rp", "wta"}));
  cmd->add_option("--format", f.format, "csv, json or both")
      ->check(CLI::IsMember({"csv", "json", "both"}));
}

ExperimentConfig resolve(ExperimentKind kind, const Flags& f) {
  ExperimentConfig c = f.config.empty() ? hwarch::default_config(kind) : hwarch::load_config(f.config);
  if (c.experiment != kind) {
    throw Error(Errc::kConfigError, "experiment: config describes '" +
                                        std::string(hwarch::experiment_name(c.experiment)) +
                                        "', not '" + std::string(hwarch::experiment_name(kind)) + "'");
  }
  if (f.seed) c.seed = *f.seed;
  if (f.reps) c.reps = *f.reps;
  if (!f.out.empty()) c.output.dir = f.out;
  if (!f.format.empty()) c.output.format = hwarch::parse_format(f.format);
  if (!f.backend.empty()) {
    const Backend b = hwarch::parse_backend(f.backend);
    switch (kind) {
      case ExperimentKind::kVentral: c.cortex.backend = b; break;
      case ExperimentKind::kMtl: c.hippocampus.backend = b; break;
      case ExperimentKind::kEquiv: c.equiv.backends = {b}; break;
      case ExperimentKind::kOjaDemo:
        throw Error(Errc::kConfigError, "--backend: does not apply to oja-demo");
    }
  }
  hwarch::validate(c);
  return c;
}

int run(ExperimentKind kind, const Flags& f) {
  const ExperimentConfig c = resolve(kind, f);
  const hwarch::RunResult result = hwarch::run_experiment(c);
  for (const auto& path : hwarch::write_outputs(result, c.output.dir, c.output.format)) {
    std::cout << path.string() << '\n';
  }
  return kExitOk;
}

int save(const Flags& f, const std::string& experiment, std::optional<std::size_t> study_size) {
  const ExperimentKind kind = f.config.empty() ? hwarch::parse_experiment(experiment)
                                               : hwarch::load_config(f.config).experiment;
  const ExperimentConfig c = resolve(kind, f);
  const std::filesystem::path dir = c.output.dir;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(Errc::kIoError, "cannot create " + dir.string() + ": " + ec.message());
  std::filesystem::path snapshot = dir / (std::string(hwarch::experiment_name(kind)) + ".hwsn");
  if (kind == ExperimentKind::kVentral) {
    hwarch::save_model(hwarch::prepare_ventral(c, 0).cortex, snapshot);
  } else if (kind == ExperimentKind::kMtl) {
    const std::size_t size = study_size.value_or(c.mtl.study_sizes.front());
    const hwarch::MtlRep rep = hwarch::prepare_mtl(c, 0);
    if (size == 0 || size > rep.data.individuals.size()) {
      throw Error(Errc::kConfigError, "--study-size: must lie in [1, " +
                                          std::to_string(rep.data.individuals.size()) + "]");
    }
    hwarch::CortexHippocampusModel model =
        hwarch::build_mtl_model(c, rep, hwarch::mtl_cells(c).front());
    hwarch::study_individuals(model, rep.data, size);
    hwarch::save_model(model, snapshot);
  } else {
    throw Error(Errc::kConfigError, "experiment: only ventral and mtl models can be saved");
  }
  const std::filesystem::path config_path =
      dir / (std::string(hwarch::experiment_name(kind)) + ".config.json");
  std::ofstream out(config_path);
  out << hwarch::to_json_text(c) << '\n';
  if (!out) throw Error(Errc::kIoError, "cannot write " + config_path.string());
  std::cout << snapshot.string() << '\n' << config_path.string() << '\n';
  return kExitOk;
}

void describe(const hwarch::HwLayer& layer, const std::string& name) {
  std::cout << name << ": backend=" << hwarch::backend_name(layer.backend())
            << " input_dim=" << layer.input_dim() << " modules=" << layer.size() << '\n';
}

int load(const std::string& path, const std::string& config_path) {
  const hwarch::Snapshot snap = hwarch::load_snapshot(path);
  if (const auto* arch = std::get_if<hwarch::HwArchitecture>(&snap)) {
    std::cout << "architecture: input_dim=" << arch->input_dim() << " stages=" << arch->depth() << '\n';
    for (std::size_t s = 0; s < arch->depth(); ++s) {
      const auto& branches = arch->stage(s).branches;
      for (std::size_t b = 0; b < branches.size(); ++b) {
        describe(branches[b].layer, "stage " + std::to_string(s) + " branch " + std::to_string(b));
      }
    }
  } else {
    const auto& model = std::get<hwarch::CortexHippocampusModel>(snap);
    std::cout << "model: input_dim=" << model.input_dim() << '\n';
    describe(model.cortex1(), "cortex1");
    if (model.cortex2()) describe(*model.cortex2(), "cortex2");
    describe(model.hippocampus(), "hippocampus");
  }
  if (config_path.empty()) return kExitOk;

  const ExperimentConfig c = hwarch::load_config(config_path);
  hwarch::RunResult replay{c, {}};
  if (const auto* arch = std::get_if<hwarch::HwArchitecture>(&snap)) {
    replay.records = hwarch::replay_ventral(c, 0, *arch);
  } else {
    replay.records = hwarch::replay_mtl(c, 0, std::get<hwarch::CortexHippocampusModel>(snap));
  }
  hwarch::write_csv(std::cout, replay);
  return kExitOk;
}

int exit_code(const Error& e) {
  switch (e.code()) {
    case Errc::kConfigError: return kExitConfig;
    case Errc::kIoError:
    case Errc::kVersionError:
    case Errc::kCorruptSnapshot: return kExitIo;
    default: return kExitOther;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hubel-Wiesel module experiments"};
  app.require_subcommand(1);

  Flags flags;
  struct Experiment {
    const char* name;
    ExperimentKind kind;
    const char* help;
  };
  const Experiment experiments[] = {
      {"ventral", ExperimentKind::kVentral, "same/different matching of unfamiliar identities"},
      {"mtl", ExperimentKind::kMtl, "face/name study and recall sweep"},
      {"equiv", ExperimentKind::kEquiv, "approximate backends against the exact QUERY"},
      {"oja-demo", ExperimentKind::kOjaDemo, "Oja's rule against batch PCA"},
  };
  std::optional<ExperimentKind> chosen;
  for (const Experiment& e : experiments) {
    CLI::App* cmd = app.add_subcommand(e.name, e.help);
    add_common(cmd, flags);
    cmd->callback([&chosen, kind = e.kind] { chosen = kind; });
  }

  CLI::App* save_cmd = app.add_subcommand("save", "build a trained model and write a snapshot");
  add_common(save_cmd, flags);
  std::string save_experiment = "ventral";
  std::optional<std::size_t> study_size;
  save_cmd->add_option("--experiment", save_experiment, "ventral or mtl, when no --config is given")
      ->check(CLI::IsMember({"ventral", "mtl"}));
  save_cmd->add_option("--study-size", study_size, "mtl: individuals studied before saving");

  CLI::App* load_cmd = app.add_subcommand("load", "inspect a snapshot, optionally replaying it");
  std::string snapshot_path, replay_config;
  load_cmd->add_option("snapshot", snapshot_path, "snapshot file")->required();
  load_cmd->add_option("--config", replay_config, "config written by save; replays repetition 0");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (chosen) return run(*chosen, flags);
    if (save_cmd->parsed()) return save(flags, save_experiment, study_size);
    return load(snapshot_path, replay_config);
  } catch (const Error& e) {
    std::cerr << "hwarch: " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "hwarch: " << e.what() << '\n';
    return kExitOther;
  }
}
