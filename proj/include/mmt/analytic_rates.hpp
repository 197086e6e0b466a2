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

#ifndef mmt_analytic_rates_H
#define mmt_analytic_rates_H

#include <cstdint>
#include <optional>
#include <vector>

#include "mmt/channel.hpp"
#include "mmt/common.hpp"

namespace mmt
{

    // CSIT impairment profile of one user: temporal correlation of the feedback
    // delay plus the residual error of B-bit direction quantization.
    struct ImperfectionParams
    {
        double rho_sq = 1.0; // squared Gauss-Markov correlation over the delay
        double eps_sq = 0.0; // innovation variance, 1 - rho_sq
        int bits = 0;        // feedback bits per user
        double delta = 1.0;  // modeled mean quantization error 2^(-B/(Nt-1))
        double xi = 0.0;     // exact expected cos^2 of the quantization angle

        static ImperfectionParams make(int nt, int bits, const DopplerParams &dop);
    };

    // Ergodic beamforming rate with diversity order n at average SNR gamma,
    // bits/s/Hz. Closed incomplete-gamma form; switches to direct quadrature of
    // E[log2(1 + gamma t)], t ~ Gamma(n,1), below gamma = 1/30 where the scaled
    // gamma terms lose significance against each other.
    double rate_bf(double gamma, int n);

    // Perfect-CSIT zero-forcing sum rate of mode M: each of the M users sees an
    // interference-free channel of diversity order Nt-M+1 at SNR P/M.
    double rate_csit_sum(int mode, double p, int nt);

    struct LossBound
    {
        double delta_qd = 1.0;   // average noise plus residual interference
        double bound_bits = 0.0; // log2(delta_qd), per-user rate loss cap
    };

    // Upper bound on the per-user rate loss of mode M caused by delay and
    // quantization together.
    LossBound rate_loss_bound(int mode, double p, const ImperfectionParams &imp);

    // Per-user ergodic rate of mode M > 1 zero-forcing with both delay and
    // quantization impairments. xi_in_signal keeps the exact quantization gain
    // xi on the signal term (default); false replaces it with 1 for
    // sensitivity checks against the cruder variant.
    double rate_qd_user(int mode, double p, int nt, const ImperfectionParams &imp,
                        bool xi_in_signal = true);

    // Per-user rate of mode M > 1 with a single impairment of relative signal
    // strength kappa: kappa = rho_sq for pure delay, 1 - delta for pure
    // quantization. Interference per stream is exponential with mean (1-kappa)P/M.
    double rate_single_impairment_user(int mode, double p, int nt, double kappa);

    // Interference-limited per-user ceiling of mode M > 1 as P grows without
    // bound, with both impairments.
    double rate_qd_highsnr_user(int mode, int nt, const ImperfectionParams &imp);

    // Same ceiling with a single impairment; alpha_hat is the ratio of signal
    // coefficient to interference mean (rho_sq/eps_sq for delay,
    // (1-delta)/delta for quantization).
    double rate_highsnr_single_impairment_user(int mode, int nt, double alpha_hat);

    // Monte Carlo single-user rate with a quantized, delayed eigen-beamformer:
    // E[log2(1 + P |h^H f|^2)] where f is the codebook match of the stale
    // channel direction. Deterministic given seed.
    Estimate rate_su_imperfect(double p, int nt, const ImperfectionParams &imp,
                               long long trials, std::uint64_t seed);

    // Cheap closed-form stand-in for the SU Monte Carlo estimator: beamforming
    // rate at the deflated SNR xi * rho_sq * P. Ignores the small aligned part
    // of the innovation, so it sits slightly below the simulated value.
    double rate_su_proxy(double p, int nt, const ImperfectionParams &imp);

    struct ModeRate
    {
        double analytic_sum_rate = 0.0;
        std::optional<double> high_snr_ceiling; // absent for M = 1 or perfect CSIT
        double loss_bound = 0.0;                // M * per-user bound, bits/s/Hz
    };

    // Rates of every mode 1..Nt under one impairment profile; per_mode[M-1]
    // holds mode M.
    struct RateReport
    {
        int nt = 0;
        std::vector<ModeRate> per_mode;
    };

} // namespace mmt

#endif
