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

#ifndef mmt_scheduler_H
#define mmt_scheduler_H

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mmt/analytic_rates.hpp"
#include "mmt/common.hpp"

namespace mmt
{

    // Circular service order over user ids 1..U; the head is the next user owed
    // a slot. Serving k users advances the head by k, which is exactly a
    // rotation that parks the served users at the tail in their prior order.
    struct UserQueue
    {
        std::vector<int> order; // permutation of 1..U
        std::size_t head = 0;

        static UserQueue make(int user_count);
        int user_at(std::size_t offset_from_head) const
        {
            return order[(head + offset_from_head) % order.size()];
        }
    };

    struct UserProfile
    {
        double p = 1.0; // per-user average SNR, linear
        ImperfectionParams imp;
    };

    struct ScheduleDecision
    {
        long long slot = 0;
        std::vector<int> selected; // user ids, consecutive from the queue head
        double predicted_sum_rate = 0.0;
    };

    // One round-robin slot: evaluates the analytic sum rate of every prefix of
    // the queue (sizes 1..min(Nt, U), mode = prefix size, each user with its own
    // profile) and serves the smallest prefix attaining the maximum. The queue
    // head then advances past the served users. profiles[i] belongs to user id i+1.
    std::pair<ScheduleDecision, UserQueue>
    mmt_round_robin_step(const UserQueue &q, const std::vector<UserProfile> &profiles,
                         int nt, long long slot = 0);

    // Per-user feedback bits under a total per-slot budget: floor(b_total / mode).
    int feedback_budget_split(long long b_total, int mode);

    // What one candidate reported for opportunistic selection, plus the true
    // channel the simulator scores the decision against.
    struct CandidateFeedback
    {
        Eigen::VectorXcd channel;   // true channel, hidden from the selector
        Eigen::VectorXcd direction; // quantized unit direction fed back
        double quality = 0.0;       // reported channel power ||h||^2
    };

    struct BaselineDecision
    {
        std::vector<int> selected; // indices into the candidate array
        double sum_rate = 0.0;     // achieved with the true channels
    };

    // Greedy semi-orthogonal selection on the quantized directions
    // (orthogonality threshold 0.5, each step adds the eligible candidate that
    // maximizes the estimated zero-forcing sum rate), then zero-forcing on the
    // selected directions scored against the true channels.
    BaselineDecision opportunistic_zf_step(const std::vector<CandidateFeedback> &cands,
                                           double p, int nt);

    // Ergodic sum rate of the opportunistic baseline: k_users candidates per
    // slot, each feeding back a bits-wide quantized direction and its channel
    // power. Deterministic given seed.
    Estimate opportunistic_zf_baseline(int k_users, int bits, double p, int nt,
                                       long long trials, std::uint64_t seed);

} // namespace mmt

#endif
