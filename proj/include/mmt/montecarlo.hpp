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

#ifndef mmt_montecarlo_H
#define mmt_montecarlo_H

#include <cstdint>
#include <vector>

#include "mmt/analytic_rates.hpp"
#include "mmt/common.hpp"
#include "mmt/precoding.hpp"

namespace mmt
{

    // One link-level simulation setup. Per trial the engine draws a stale
    // channel per scheduled user, quantizes it with that user's codebook,
    // precodes on the quantized directions, evolves the channels across the
    // feedback delay, and scores the resulting SINRs.
    struct SimScenario
    {
        int nt = 4;
        int mode = 1;     // number of simultaneously served users
        double p = 1.0;   // total transmit SNR, linear
        PrecoderKind kind = PrecoderKind::zero_forcing;
        bool perfect_csit = false;
        // one entry shared by every user, or exactly `mode` entries
        std::vector<ImperfectionParams> users;
        long long trials = 10000;
        std::uint64_t seed = 1;
        int workers = 0; // 0 = hardware concurrency; never affects results
    };

    // Ergodic sum rate estimate, deterministic for a given (scenario, seed)
    // regardless of worker count: trials are split into fixed 1024-wide batches
    // with per-trial substreams and the per-batch partial sums are reduced in
    // batch order. Precoder conditioning failures redraw the trial from a fresh
    // substream; more than 0.1% redraws aborts with numerical_error.
    // redraws_out, when given, receives the redraw count.
    Estimate simulate_sum_rate(const SimScenario &sc, long long *redraws_out = nullptr);

    // Raw per-user samples for distribution tests, |h_u^H f_v|^2 terms kept
    // unscaled by the per-stream power.
    struct SinrSamples
    {
        // indexed [user][trial]
        std::vector<std::vector<double>> sinr;
        std::vector<std::vector<double>> signal_gain;  // |h_u^H f_u|^2
        std::vector<std::vector<double>> interference; // sum_{v!=u} |h_u^H f_v|^2
    };

    SinrSamples simulate_sinr_samples(const SimScenario &sc, long long count);

} // namespace mmt

#endif
