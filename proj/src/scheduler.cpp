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

#include "mmt/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "mmt/channel.hpp"
#include "mmt/precoding.hpp"
#include "mmt/rng.hpp"

namespace mmt
{

    namespace
    {
        // slot loops re-ask for the same handful of (mode, profile) rates; the
        // quadrature behind each one is worth caching
        double cached_user_rate(int mode, int nt, const UserProfile &pr)
        {
            using Key = std::tuple<int, int, double, double, double, int>;
            static std::map<Key, double> cache;
            static std::mutex mu;
            const Key key{mode, nt, pr.p, pr.imp.rho_sq, pr.imp.eps_sq, pr.imp.bits};
            {
                const std::lock_guard<std::mutex> lock(mu);
                auto it = cache.find(key);
                if (it != cache.end())
                    return it->second;
            }
            const double r = mode == 1 ? rate_su_proxy(pr.p, nt, pr.imp)
                                       : rate_qd_user(mode, pr.p, nt, pr.imp);
            const std::lock_guard<std::mutex> lock(mu);
            cache.emplace(key, r);
            return r;
        }

        constexpr double ortho_threshold = 0.5;
    } // namespace

    UserQueue UserQueue::make(int user_count)
    {
        if (user_count < 1)
            throw std::invalid_argument("UserQueue: requires at least one user");
        UserQueue q;
        q.order.resize(static_cast<std::size_t>(user_count));
        for (int i = 0; i < user_count; ++i)
            q.order[static_cast<std::size_t>(i)] = i + 1;
        return q;
    }

    std::pair<ScheduleDecision, UserQueue>
    mmt_round_robin_step(const UserQueue &q, const std::vector<UserProfile> &profiles,
                         int nt, long long slot)
    {
        const int u_count = static_cast<int>(q.order.size());
        if (u_count < 1)
            throw std::invalid_argument("mmt_round_robin_step: empty queue");
        if (profiles.size() != q.order.size())
            throw std::invalid_argument(
                "mmt_round_robin_step: one profile per queued user required");
        if (nt < 1)
            throw std::invalid_argument("mmt_round_robin_step: requires Nt >= 1");

        const int cap = std::min(nt, u_count);
        int best_size = 1;
        double best_rate = 0.0;
        for (int m = 1; m <= cap; ++m)
        {
            double r = 0.0;
            for (int j = 0; j < m; ++j)
            {
                const int uid = q.user_at(static_cast<std::size_t>(j));
                r += cached_user_rate(m, nt, profiles[static_cast<std::size_t>(uid - 1)]);
            }
            // strict improvement keeps the smallest prefix on ties
            if (m == 1 || r > best_rate)
            {
                best_rate = r;
                best_size = m;
            }
        }

        ScheduleDecision d;
        d.slot = slot;
        d.predicted_sum_rate = best_rate;
        for (int j = 0; j < best_size; ++j)
            d.selected.push_back(q.user_at(static_cast<std::size_t>(j)));

        UserQueue next = q;
        next.head = (q.head + static_cast<std::size_t>(best_size)) % q.order.size();
        return {d, next};
    }

    int feedback_budget_split(long long b_total, int mode)
    {
        if (b_total < 0)
            throw std::invalid_argument("feedback_budget_split: requires B_T >= 0");
        if (mode < 1)
            throw std::invalid_argument("feedback_budget_split: requires M >= 1");
        return static_cast<int>(b_total / mode);
    }

    BaselineDecision opportunistic_zf_step(const std::vector<CandidateFeedback> &cands,
                                           double p, int nt)
    {
        if (cands.empty())
            throw std::invalid_argument("opportunistic_zf_step: no candidates");
        if (!(p > 0.0))
            throw std::invalid_argument("opportunistic_zf_step: requires P > 0");
        for (const CandidateFeedback &c : cands)
            if (c.channel.size() != nt || c.direction.size() != nt)
                throw std::invalid_argument(
                    "opportunistic_zf_step: candidate dimension mismatch");

        const int k = static_cast<int>(cands.size());
        auto precoders = [&](const std::vector<int> &set) {
            const int m = static_cast<int>(set.size());
            Eigen::MatrixXcd dirs(nt, m);
            for (int j = 0; j < m; ++j)
                dirs.col(j) = cands[static_cast<std::size_t>(set[static_cast<std::size_t>(j)])].direction;
            if (m == 1)
                return dirs;
            return zf_precoders(dirs).vectors;
        };
        // what the selector can compute: reported power, zero cross interference
        auto estimated_rate = [&](const std::vector<int> &set) {
            Eigen::MatrixXcd f;
            try
            {
                f = precoders(set);
            }
            catch (const conditioning_error &)
            {
                return -1.0;
            }
            const double ps = p / static_cast<double>(set.size());
            double r = 0.0;
            for (std::size_t j = 0; j < set.size(); ++j)
            {
                const CandidateFeedback &c = cands[static_cast<std::size_t>(set[j])];
                r += std::log2(1.0 + ps * c.quality *
                                         std::norm(c.direction.dot(f.col(static_cast<Eigen::Index>(j)))));
            }
            return r;
        };

        std::vector<char> used(static_cast<std::size_t>(k), 0);
        int first = 0;
        for (int i = 1; i < k; ++i)
            if (cands[static_cast<std::size_t>(i)].quality >
                cands[static_cast<std::size_t>(first)].quality)
                first = i;
        std::vector<int> selected{first};
        used[static_cast<std::size_t>(first)] = 1;

        while (static_cast<int>(selected.size()) < std::min(nt, k))
        {
            int best_c = -1;
            double best_r = -1.0;
            for (int i = 0; i < k; ++i)
            {
                if (used[static_cast<std::size_t>(i)])
                    continue;
                bool ortho = true;
                for (int s : selected)
                    if (std::abs(cands[static_cast<std::size_t>(i)].direction.dot(
                            cands[static_cast<std::size_t>(s)].direction)) > ortho_threshold)
                    {
                        ortho = false;
                        break;
                    }
                if (!ortho)
                    continue;
                std::vector<int> trial = selected;
                trial.push_back(i);
                const double r = estimated_rate(trial);
                if (r > best_r)
                {
                    best_r = r;
                    best_c = i;
                }
            }
            if (best_c < 0)
                break;
            selected.push_back(best_c);
            used[static_cast<std::size_t>(best_c)] = 1;
        }

        const Eigen::MatrixXcd f = precoders(selected);
        const double ps = p / static_cast<double>(selected.size());
        BaselineDecision out;
        out.selected = selected;
        for (std::size_t j = 0; j < selected.size(); ++j)
        {
            const Eigen::VectorXcd &h = cands[static_cast<std::size_t>(selected[j])].channel;
            const double sig = std::norm(h.dot(f.col(static_cast<Eigen::Index>(j))));
            double intf = 0.0;
            for (std::size_t v = 0; v < selected.size(); ++v)
                if (v != j)
                    intf += std::norm(h.dot(f.col(static_cast<Eigen::Index>(v))));
            out.sum_rate += std::log2(1.0 + ps * sig / (1.0 + ps * intf));
        }
        return out;
    }

    Estimate opportunistic_zf_baseline(int k_users, int bits, double p, int nt,
                                       long long trials, std::uint64_t seed)
    {
        if (k_users < 1)
            throw std::invalid_argument("opportunistic_zf_baseline: requires K >= 1");
        if (nt < 2)
            throw std::invalid_argument("opportunistic_zf_baseline: requires Nt >= 2");
        if (trials < 1)
            throw std::invalid_argument("opportunistic_zf_baseline: requires trials >= 1");

        std::vector<Codebook> cbs;
        cbs.reserve(static_cast<std::size_t>(k_users));
        const std::uint64_t base = derive_seed(seed, 0x05b5u);
        for (int u = 0; u < k_users; ++u)
            cbs.emplace_back(nt, bits, base ^ static_cast<std::uint64_t>(u));

        double sum = 0.0, sum_sq = 0.0;
        for (long long t = 0; t < trials; ++t)
        {
            int attempt = 0;
            for (;;)
            {
                Rng rng(derive_seed(seed, 0x0b61u, static_cast<std::uint64_t>(t),
                                    static_cast<std::uint64_t>(attempt)));
                std::vector<CandidateFeedback> cands(static_cast<std::size_t>(k_users));
                for (int u = 0; u < k_users; ++u)
                {
                    CandidateFeedback &c = cands[static_cast<std::size_t>(u)];
                    c.channel = draw_channel(nt, rng);
                    const QuantizeResult q =
                        quantize(c.channel, cbs[static_cast<std::size_t>(u)]);
                    c.direction = cbs[static_cast<std::size_t>(u)].vector(q.index);
                    c.quality = c.channel.squaredNorm();
                }
                try
                {
                    const BaselineDecision d = opportunistic_zf_step(cands, p, nt);
                    sum += d.sum_rate;
                    sum_sq += d.sum_rate * d.sum_rate;
                    break;
                }
                catch (const conditioning_error &)
                {
                    if (++attempt >= 64)
                        throw numerical_error(
                            "opportunistic_zf_baseline: trial redraw limit reached");
                }
            }
        }

        Estimate out;
        out.trials = trials;
        out.mean = sum / static_cast<double>(trials);
        const double var =
            std::max(0.0, sum_sq / static_cast<double>(trials) - out.mean * out.mean);
        out.std_error = std::sqrt(var / static_cast<double>(trials));
        return out;
    }

} // namespace mmt
