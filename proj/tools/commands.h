// Copyright 2026  The dnsgen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef DNSGEN_TOOLS_COMMANDS_H_
#define DNSGEN_TOOLS_COMMANDS_H_

#include <string>

#include "dnsgen/config.h"

namespace dnsgen::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitSomeFailed = 1;  // some items failed, others written
inline constexpr int kExitFailed = 2;      // nothing useful produced

struct RunOptions {
  bool force = false;  // overwrite existing outputs
};

int Synthesize(const PipelineConfig &config, const RunOptions &run);
int BuildTestset(const PipelineConfig &config, const RunOptions &run,
                 bool synthesize_now);
int FilterCorpus(const PipelineConfig &config, const RunOptions &run);
int BalanceNoise(const PipelineConfig &config, const RunOptions &run);
int BuildGroups(const PipelineConfig &config, const RunOptions &run,
                const std::string &clips_path);
int AggregateRatings(const PipelineConfig &config, const RunOptions &run);
int VerifyRt(const PipelineConfig &config, const RunOptions &run,
             const std::string &processor_command);
int RankEntries(const PipelineConfig &config, const RunOptions &run);

}  // namespace dnsgen::cli

#endif  // DNSGEN_TOOLS_COMMANDS_H_
