// SPDX-License-Identifier: Apache-2.0
//
// mmt-sim: link-level simulator and rate engine for the MIMO broadcast channel
// with delayed, quantized channel state feedback
// Copyright (C) 2026 the mmt-sim contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef mmt_experiment_H
#define mmt_experiment_H

#include "mmt/config.hpp"

namespace mmt
{

    inline constexpr const char *mmt_version = "0.1.0";

    // Runs the configured experiment and writes, under cfg.out_dir:
    //   <kind>.csv (or .json per run.format), <kind>_manifest.json,
    //   and <kind>.gp when run.plot is set.
    // Everything is computed before anything is written, so a failure leaves
    // no partial files. Floats in CSV cells carry 9 significant digits; given
    // the same config and seed the CSV bytes are identical on every run,
    // whatever run.workers says.
    void run_experiment(const ExperimentConfig &cfg);

} // namespace mmt

#endif
