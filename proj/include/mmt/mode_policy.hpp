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

#ifndef mmt_mode_policy_H
#define mmt_mode_policy_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mmt/analytic_rates.hpp"

namespace mmt
{

    enum class RateBasis
    {
        perfect_csit,       // closed-form zero-forcing sum rates
        imperfect_analytic, // delay+quantization approximations, SU proxy
        monte_carlo         // full link-level simulation per mode
    };

    struct ModeSelectOptions
    {
        long long trials = 10000; // monte_carlo basis and SU estimator runs
        std::uint64_t seed = 1;
        bool su_monte_carlo = false; // simulate the SU rate instead of the proxy
        int workers = 0;
    };

    struct ModeDecision
    {
        int chosen_mode = 1; // argmax of per-mode sum rates, ties toward smaller M
        RateReport per_mode_rates;
        RateBasis basis = RateBasis::imperfect_analytic;
    };

    // Evaluates the sum rate of every mode 1..Nt on the requested basis and
    // picks the best. imp is required unless basis is perfect_csit (or
    // monte_carlo with a perfect-CSIT intent, expressed by absent imp).
    ModeDecision select_mode(int nt, double p,
                             const std::optional<ImperfectionParams> &imp,
                             RateBasis basis, const ModeSelectOptions &opt = {});

    struct RegionAxis
    {
        std::string name;
        std::vector<double> values;
    };

    struct RegionGrid
    {
        RegionAxis axis1; // SNR in dB
        RegionAxis axis2; // speed in km/hr or feedback bits
        std::vector<int> cells; // row-major, cells[i1 * axis2.size + i2]

        int at(std::size_t i1, std::size_t i2) const
        {
            return cells[i1 * axis2.values.size() + i2];
        }
    };

    // Exactly one of fixed_bits / fixed_speed_kmh is set; the free quantity is
    // swept along axis2.
    struct RegionQuery
    {
        std::vector<double> snr_db;
        std::optional<int> fixed_bits;
        std::vector<double> speeds_kmh; // axis2 when fixed_bits is set
        std::optional<double> fixed_speed_kmh;
        std::vector<int> bits_grid; // axis2 when fixed_speed_kmh is set
    };

    // Chosen mode per (SNR, speed-or-bits) cell on the imperfect_analytic basis.
    RegionGrid operating_region(int nt, double fc_hz, double tau_s,
                                const RegionQuery &query);

    // The MU mode whose interference-limited sum-rate ceiling is largest,
    // ties toward smaller M.
    int dominant_high_snr_mode(int nt, double fd_ts, int bits);

} // namespace mmt

#endif
