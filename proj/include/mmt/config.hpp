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

#ifndef mmt_config_H
#define mmt_config_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "mmt/channel.hpp"

namespace mmt
{

    struct Diagnostic
    {
        std::string path;   // dotted field path, e.g. "system.nt"
        std::string reason; // why the field is unusable
    };

    inline std::string to_string(const Diagnostic &d)
    {
        return d.path + ": " + d.reason;
    }

    // Experiment kinds the runner understands.
    bool known_experiment_kind(const std::string &kind);

    struct ExperimentConfig
    {
        std::string kind;

        // system
        int nt = 4;
        int users = 8;
        double fc_ghz = 2.1;
        std::optional<double> tau_ms; // feedback delay; falls back to ts_ms
        std::optional<double> ts_ms;  // slot duration
        std::optional<double> v_kmh;  // mutually exclusive with fd_ts
        std::optional<double> fd_ts;
        std::optional<int> bits;
        std::optional<long long> total_bits;
        std::vector<double> snr_db;
        std::string precoder = "zf"; // zf | mmse
        std::optional<int> mode;     // simulate: restrict to one mode
        bool perfect_csit = false;
        std::vector<double> speeds_kmh;  // operating-region axis with fixed bits
        std::vector<int> bits_grid;      // operating-region / high-snr-mode axis
        std::vector<double> fd_ts_grid;  // high-snr-mode axis
        std::vector<int> per_user_bits;  // feedback-budget baseline sweep
        long long slots = 1000;          // schedule length

        // run
        long long trials = 10000;
        std::uint64_t seed = 1;
        std::string out_dir = "out";
        std::string format = "csv"; // csv | json
        bool plot = false;
        int workers = 0;

        // feedback delay in seconds: tau_ms when set, otherwise ts_ms
        double delay_s() const;
        // from fd_ts directly, or from (v_kmh, fc_ghz, delay_s)
        DopplerParams doppler() const;
    };

    // Runnable defaults for each experiment kind (desk-scale grids).
    ExperimentConfig default_config(const std::string &kind);

    // Reads config_path (optional, "" = none), applies --set overrides
    // ("section.key=value", value parsed as JSON when possible), reconciles the
    // kind with cli_kind ("" = take the file's), validates, and fills out.
    // Returns all diagnostics; out is only usable when the list is empty.
    std::vector<Diagnostic> load_config(const std::string &config_path,
                                        const std::string &cli_kind,
                                        const std::vector<std::string> &overrides,
                                        ExperimentConfig &out);

    // Full config echo for the run manifest.
    nlohmann::json config_echo(const ExperimentConfig &cfg);

} // namespace mmt

#endif
