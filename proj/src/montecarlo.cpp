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

#include "mmt/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "mmt/channel.hpp"

namespace mmt
{

    namespace
    {
        // fixed decomposition; results must not depend on how batches are
        // assigned to workers
        constexpr long long batch_size = 1024;
        constexpr int max_attempts = 64;

        struct UserSample
        {
            double sinr = 0.0;
            double signal = 0.0;
            double interference = 0.0;
        };

        const ImperfectionParams &profile_of(const SimScenario &sc, int u)
        {
            return sc.users.size() == 1 ? sc.users[0]
                                        : sc.users[static_cast<std::size_t>(u)];
        }

        void validate_scenario(const SimScenario &sc, long long trials)
        {
            if (sc.nt < 1)
                throw std::invalid_argument("montecarlo: requires Nt >= 1");
            if (sc.mode < 1 || sc.mode > sc.nt)
                throw std::invalid_argument("montecarlo: requires 1 <= M <= Nt");
            if (!(sc.p > 0.0))
                throw std::invalid_argument("montecarlo: requires P > 0");
            if (trials < 1)
                throw std::invalid_argument("montecarlo: requires trials >= 1");
            if (sc.mode > 1 && sc.kind == PrecoderKind::eigen)
                throw std::invalid_argument(
                    "montecarlo: eigen beamforming serves a single user only");
            if (!sc.perfect_csit)
            {
                if (sc.nt < 2)
                    throw std::invalid_argument(
                        "montecarlo: quantized feedback requires Nt >= 2");
                if (sc.users.empty())
                    throw std::invalid_argument(
                        "montecarlo: imperfect scenario needs an impairment profile");
                if (sc.users.size() != 1 &&
                    static_cast<int>(sc.users.size()) != sc.mode)
                    throw std::invalid_argument(
                        "montecarlo: impairment profile count must be 1 or M");
            }
        }

        // one realization end to end; conditioning_error escapes to request a redraw
        void run_trial(const SimScenario &sc, const std::vector<Codebook> &cbs,
                       Rng &rng, UserSample *out)
        {
            const int m = sc.mode, nt = sc.nt;
            Eigen::MatrixXcd dirs(nt, m);
            Eigen::MatrixXcd h(nt, m);
            for (int u = 0; u < m; ++u)
            {
                const Eigen::VectorXcd h_stale = draw_channel(nt, rng);
                if (sc.perfect_csit)
                {
                    dirs.col(u) = h_stale.normalized();
                    h.col(u) = h_stale;
                }
                else
                {
                    const ImperfectionParams &imp = profile_of(sc, u);
                    const QuantizeResult q = quantize(h_stale, cbs[static_cast<std::size_t>(u)]);
                    dirs.col(u) = cbs[static_cast<std::size_t>(u)].vector(q.index);
                    DopplerParams dop;
                    dop.rho = std::sqrt(imp.rho_sq);
                    dop.eps_sq = imp.eps_sq;
                    h.col(u) = evolve_channel(h_stale, dop, rng);
                }
            }

            Eigen::MatrixXcd f;
            if (m == 1)
                f = dirs; // beamforming on the (possibly quantized, stale) direction
            else if (sc.kind == PrecoderKind::mmse)
                f = mmse_precoders(dirs, sc.p).vectors;
            else
                f = zf_precoders(dirs).vectors;

            const double ps = sc.p / m;
            for (int u = 0; u < m; ++u)
            {
                double sig = std::norm(h.col(u).dot(f.col(u)));
                double intf = 0.0;
                for (int v = 0; v < m; ++v)
                    if (v != u)
                        intf += std::norm(h.col(u).dot(f.col(v)));
                out[u].signal = sig;
                out[u].interference = intf;
                out[u].sinr = ps * sig / (1.0 + ps * intf);
            }
        }

        using Sink = std::function<void(long long, const UserSample *)>;

        long long run_batch(const SimScenario &sc, const std::vector<Codebook> &cbs,
                            long long first, long long last, const Sink &sink)
        {
            long long redraws = 0;
            std::vector<UserSample> row(static_cast<std::size_t>(sc.mode));
            for (long long t = first; t < last; ++t)
            {
                int attempt = 0;
                for (;;)
                {
                    Rng rng(derive_seed(sc.seed, 0x7121u, static_cast<std::uint64_t>(t),
                                        static_cast<std::uint64_t>(attempt)));
                    try
                    {
                        run_trial(sc, cbs, rng, row.data());
                        break;
                    }
                    catch (const conditioning_error &)
                    {
                        ++redraws;
                        if (++attempt >= max_attempts)
                            throw numerical_error("montecarlo: trial redraw limit reached");
                    }
                }
                sink(t, row.data());
            }
            return redraws;
        }

        long long run_engine(const SimScenario &sc, long long trials, const Sink &sink)
        {
            validate_scenario(sc, trials);

            std::vector<Codebook> cbs;
            if (!sc.perfect_csit)
            {
                const std::uint64_t base = derive_seed(sc.seed, 0xc0deu);
                cbs.reserve(static_cast<std::size_t>(sc.mode));
                for (int u = 0; u < sc.mode; ++u)
                    cbs.emplace_back(sc.nt, profile_of(sc, u).bits,
                                     base ^ static_cast<std::uint64_t>(u));
            }

            const long long nbatches = (trials + batch_size - 1) / batch_size;
            std::vector<long long> redraws(static_cast<std::size_t>(nbatches), 0);

            int nw = sc.workers > 0
                         ? sc.workers
                         : static_cast<int>(std::thread::hardware_concurrency());
            nw = std::clamp(nw, 1, 64);
            nw = static_cast<int>(std::min<long long>(nw, nbatches));

            std::atomic<long long> next{0};
            std::exception_ptr err;
            std::mutex err_mu;
            auto work = [&]() {
                try
                {
                    for (;;)
                    {
                        const long long b = next.fetch_add(1);
                        if (b >= nbatches)
                            return;
                        const long long lo = b * batch_size;
                        const long long hi = std::min(trials, lo + batch_size);
                        redraws[static_cast<std::size_t>(b)] =
                            run_batch(sc, cbs, lo, hi, sink);
                    }
                }
                catch (...)
                {
                    const std::lock_guard<std::mutex> lock(err_mu);
                    if (!err)
                        err = std::current_exception();
                }
            };

            if (nw <= 1)
            {
                work();
            }
            else
            {
                std::vector<std::thread> pool;
                pool.reserve(static_cast<std::size_t>(nw - 1));
                for (int i = 0; i < nw - 1; ++i)
                    pool.emplace_back(work);
                work();
                for (std::thread &th : pool)
                    th.join();
            }
            if (err)
                std::rethrow_exception(err);

            long long total_redraws = 0;
            for (long long r : redraws)
                total_redraws += r;
            if (total_redraws * 1000 > trials)
                throw numerical_error(
                    "montecarlo: conditioning redraws exceeded 0.1% of trials");
            return total_redraws;
        }
    } // namespace

    Estimate simulate_sum_rate(const SimScenario &sc, long long *redraws_out)
    {
        const long long n = sc.trials;
        const long long nb = (n + batch_size - 1) / batch_size;
        std::vector<double> bsum(static_cast<std::size_t>(nb), 0.0);
        std::vector<double> bsq(static_cast<std::size_t>(nb), 0.0);
        const int m = sc.mode;

        const long long redraws = run_engine(
            sc, n, [&](long long t, const UserSample *row) {
                double r = 0.0;
                for (int u = 0; u < m; ++u)
                    r += std::log2(1.0 + row[u].sinr);
                const std::size_t b = static_cast<std::size_t>(t / batch_size);
                bsum[b] += r;
                bsq[b] += r * r;
            });

        double s = 0.0, q = 0.0;
        for (long long b = 0; b < nb; ++b)
        {
            s += bsum[static_cast<std::size_t>(b)];
            q += bsq[static_cast<std::size_t>(b)];
        }
        Estimate out;
        out.trials = n;
        out.mean = s / static_cast<double>(n);
        const double var =
            std::max(0.0, q / static_cast<double>(n) - out.mean * out.mean);
        out.std_error = std::sqrt(var / static_cast<double>(n));
        if (redraws_out)
            *redraws_out = redraws;
        return out;
    }

    SinrSamples simulate_sinr_samples(const SimScenario &sc, long long count)
    {
        SinrSamples out;
        const std::size_t m = static_cast<std::size_t>(sc.mode);
        out.sinr.assign(m, std::vector<double>(static_cast<std::size_t>(count)));
        out.signal_gain.assign(m, std::vector<double>(static_cast<std::size_t>(count)));
        out.interference.assign(m, std::vector<double>(static_cast<std::size_t>(count)));

        run_engine(sc, count, [&](long long t, const UserSample *row) {
            const std::size_t i = static_cast<std::size_t>(t);
            for (std::size_t u = 0; u < m; ++u)
            {
                out.sinr[u][i] = row[u].sinr;
                out.signal_gain[u][i] = row[u].signal;
                out.interference[u][i] = row[u].interference;
            }
        });
        return out;
    }

} // namespace mmt
