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

#ifndef mmt_channel_H
#define mmt_channel_H

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "mmt/rng.hpp"
#include "mmt/simd.hpp"

namespace mmt
{

    // speed of light used for Doppler shifts, m/s
    inline constexpr double speed_of_light = 2.998e8;

    // Gauss-Markov step parameters: h[n] = rho h[n-1] + e[n], e ~ CN(0, eps_sq I)
    struct DopplerParams
    {
        double rho = 1.0;
        double eps_sq = 0.0;
        double fd_ts = 0.0; // normalized Doppler f_d * tau
    };

    // rho = J0(2 pi f_d tau), f_d = (v_kmh / 3.6) * fc / c
    DopplerParams doppler_correlation(double v_kmh, double fc_hz, double tau_s);

    // same parameters directly from a normalized Doppler frequency
    DopplerParams doppler_from_fdts(double fd_ts);

    // iid CN(0,1) entries
    Eigen::VectorXcd draw_channel(int nt, Rng &rng);

    // one Gauss-Markov step; marginal distribution stays CN(0, I)
    Eigen::VectorXcd evolve_channel(const Eigen::VectorXcd &h_prev,
                                    const DopplerParams &params, Rng &rng);

    // Random vector quantization codebook: 2^B isotropic unit-norm vectors in
    // C^Nt, reproducible from (Nt, B, seed). Vectors are stored as float planes
    // for the search kernel; full double-precision codewords are regenerated on
    // demand from per-codeword substream seeds.
    class Codebook
    {
      public:
        Codebook(int nt, int bits, std::uint64_t seed);

        int dim() const { return nt_; }
        int bits() const { return bits_; }
        int size() const { return count_; }
        std::uint64_t seed() const { return seed_; }

        // double-precision codeword l, unit norm
        Eigen::VectorXcd vector(int l) const;

        simd::CodebookPlanes planes() const;

      private:
        int nt_, bits_, count_;
        std::uint64_t seed_;
        std::ptrdiff_t stride_;
        std::vector<float> re_, im_; // dim planes of count floats each, zero padded

        Eigen::VectorXcd raw_vector(int l) const; // before normalization
    };

    struct QuantizeResult
    {
        int index = 0;
        double cos_theta = 1.0; // |htilde^H c_index|
    };

    // nearest codeword by inner product with the channel direction
    QuantizeResult quantize(const Eigen::VectorXcd &h, const Codebook &cb);

    // xi = E[cos^2 theta] = 1 - 2^B Beta(2^B, Nt/(Nt-1)) for RVQ
    double expected_cos2(int nt, int bits);

    // delta = 2^(-B/(Nt-1)), the modeled mean quantization error
    double quantization_error_mean(int nt, int bits);

} // namespace mmt

#endif
