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

#include "mmt/mode_policy.hpp"

#include <cmath>
#include <stdexcept>

#include "mmt/channel.hpp"
#include "mmt/montecarlo.hpp"
#include "mmt/rng.hpp"

namespace mmt
{

    namespace
    {
        double mode_sum_rate(int mode, int nt, double p,
                             const std::optional<ImperfectionParams> &imp,
                             RateBasis basis, const ModeSelectOptions &opt)
        {
            switch (basis)
            {
            case RateBasis::perfect_csit:
                return rate_csit_sum(mode, p, nt);
            case RateBasis::imperfect_analytic:
                if (mode == 1)
                    return opt.su_monte_carlo
                               ? rate_su_imperfect(p, nt, *imp, opt.trials,
                                                   derive_seed(opt.seed, 0x5e1u))
                                     .mean
                               : rate_su_proxy(p, nt, *imp);
                return mode * rate_qd_user(mode, p, nt, *imp);
            case RateBasis::monte_carlo:
            {
                SimScenario sc;
                sc.nt = nt;
                sc.mode = mode;
                sc.p = p;
                sc.perfect_csit = !imp.has_value();
                if (imp)
                    sc.users = {*imp};
                sc.trials = opt.trials;
                sc.seed = derive_seed(opt.seed, 0x30deu, static_cast<std::uint64_t>(mode));
                sc.workers = opt.workers;
                return simulate_sum_rate(sc).mean;
            }
            }
            throw std::invalid_argument("select_mode: unknown basis");
        }
    } // namespace

    ModeDecision select_mode(int nt, double p,
                             const std::optional<ImperfectionParams> &imp,
                             RateBasis basis, const ModeSelectOptions &opt)
    {
        if (nt < 1)
            throw std::invalid_argument("select_mode: requires Nt >= 1");
        if (!(p > 0.0))
            throw std::invalid_argument("select_mode: requires P > 0");
        if (basis == RateBasis::imperfect_analytic && !imp.has_value())
            throw std::invalid_argument(
                "select_mode: imperfect_analytic basis needs an impairment profile");

        ModeDecision out;
        out.basis = basis;
        out.per_mode_rates.nt = nt;
        out.per_mode_rates.per_mode.resize(static_cast<std::size_t>(nt));

        double best = -1.0;
        for (int m = 1; m <= nt; ++m)
        {
            ModeRate &entry = out.per_mode_rates.per_mode[static_cast<std::size_t>(m - 1)];
            entry.analytic_sum_rate = mode_sum_rate(m, nt, p, imp, basis, opt);
            if (imp)
            {
                entry.loss_bound = m * rate_loss_bound(m, p, *imp).bound_bits;
                if (m > 1)
                    entry.high_snr_ceiling = m * rate_qd_highsnr_user(m, nt, *imp);
            }
            // strict improvement keeps the smaller mode on ties
            if (entry.analytic_sum_rate > best)
            {
                best = entry.analytic_sum_rate;
                out.chosen_mode = m;
            }
        }
        return out;
    }

    RegionGrid operating_region(int nt, double fc_hz, double tau_s,
                                const RegionQuery &query)
    {
        if (query.snr_db.empty())
            throw std::invalid_argument("operating_region: SNR grid is empty");
        if (query.fixed_bits.has_value() == query.fixed_speed_kmh.has_value())
            throw std::invalid_argument(
                "operating_region: set exactly one of fixed_bits / fixed_speed_kmh");
        if (!(fc_hz > 0.0) || !(tau_s > 0.0))
            throw std::invalid_argument("operating_region: requires fc > 0 and tau > 0");

        RegionGrid grid;
        grid.axis1 = {"snr_db", query.snr_db};
        if (query.fixed_bits)
        {
            if (query.speeds_kmh.empty())
                throw std::invalid_argument("operating_region: speed grid is empty");
            grid.axis2 = {"v_kmh", query.speeds_kmh};
        }
        else
        {
            if (query.bits_grid.empty())
                throw std::invalid_argument("operating_region: bits grid is empty");
            grid.axis2.name = "bits";
            for (int b : query.bits_grid)
                grid.axis2.values.push_back(static_cast<double>(b));
        }

        grid.cells.resize(grid.axis1.values.size() * grid.axis2.values.size());
        for (std::size_t i1 = 0; i1 < grid.axis1.values.size(); ++i1)
        {
            const double p = std::pow(10.0, grid.axis1.values[i1] / 10.0);
            for (std::size_t i2 = 0; i2 < grid.axis2.values.size(); ++i2)
            {
                int bits;
                double v_kmh;
                if (query.fixed_bits)
                {
                    bits = *query.fixed_bits;
                    v_kmh = grid.axis2.values[i2];
                }
                else
                {
                    bits = query.bits_grid[i2];
                    v_kmh = *query.fixed_speed_kmh;
                }
                const ImperfectionParams imp = ImperfectionParams::make(
                    nt, bits, doppler_correlation(v_kmh, fc_hz, tau_s));
                grid.cells[i1 * grid.axis2.values.size() + i2] =
                    select_mode(nt, p, imp, RateBasis::imperfect_analytic).chosen_mode;
            }
        }
        return grid;
    }

    int dominant_high_snr_mode(int nt, double fd_ts, int bits)
    {
        if (nt < 2)
            throw std::invalid_argument("dominant_high_snr_mode: requires Nt >= 2");
        if (!(fd_ts > 0.0) || !(fd_ts < 0.5))
            throw std::invalid_argument(
                "dominant_high_snr_mode: requires 0 < fd_ts < 0.5");
        if (bits < 1)
            throw std::invalid_argument("dominant_high_snr_mode: requires B >= 1");

        const ImperfectionParams imp =
            ImperfectionParams::make(nt, bits, doppler_from_fdts(fd_ts));
        int best_mode = 2;
        double best = -1.0;
        for (int m = 2; m <= nt; ++m)
        {
            const double r = m * rate_qd_highsnr_user(m, nt, imp);
            if (r > best)
            {
                best = r;
                best_mode = m;
            }
        }
        return best_mode;
    }

} // namespace mmt
