// Copyright 2026 The nmqw authors
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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nmqw/blp.hpp"
#include "nmqw/qwalk.hpp"

namespace nmqw {

/// A fully resolved command. run() is the single entry point behind the CLI
/// so pipelines can also be driven in-process (and tested without spawning).
struct CommandSpec {
  std::string subcommand;  // simulate | tomo-plan | reconstruct | quantify | scan | table1
  std::string input_path;
  std::string output_path;
  std::string table_path;   // trajectory table; defaults to output_path + ".dat"
  std::string config_path;  // optional config document for simulate
  int dim = 0;              // tomo-plan
  QWConfig config;
  OptimizerOptions optimizer;
  int n_theta = 200;
  int n_phi = 400;
  Tolerances data_tolerances;
  int verbosity = 0;
};

/// Execute one command; returns the process exit status. Failures print a
/// one-line diagnostic to `err` and return nonzero.
int run(const CommandSpec& spec, std::ostream& out, std::ostream& err);

/// Parse argv-style arguments (excluding the program name) and run.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nmqw
