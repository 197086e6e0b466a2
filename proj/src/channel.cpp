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

#include "mmt/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "mmt/numerics.hpp"

namespace mmt
{

    DopplerParams doppler_correlation(double v_kmh, double fc_hz, double tau_s)
    {
        if (v_kmh < 0.0 || !(fc_hz > 0.0) || tau_s < 0.0)
            throw std::invalid_argument("doppler_correlation: requires v >= 0, fc > 0, tau >= 0");
        const double fd = (v_kmh / 3.6) * fc_hz / speed_of_light;
        return doppler_from_fdts(fd * tau_s);
    }

    DopplerParams doppler_from_fdts(double fd_ts)
    {
        if (fd_ts < 0.0)
            throw std::invalid_argument("doppler_from_fdts: requires fd_ts >= 0");
        DopplerParams p;
        p.fd_ts = fd_ts;
        p.rho = bessel_j0(6.283185307179586476925286766559 * fd_ts);
        p.eps_sq = 1.0 - p.rho * p.rho;
        return p;
    }

    Eigen::VectorXcd draw_channel(int nt, Rng &rng)
    {
        if (nt < 1)
            throw std::invalid_argument("draw_channel: requires Nt >= 1");
        Eigen::VectorXcd h(nt);
        for (int i = 0; i < nt; ++i)
            h(i) = rng.cnormal();
        return h;
    }

    Eigen::VectorXcd evolve_channel(const Eigen::VectorXcd &h_prev,
                                    const DopplerParams &params, Rng &rng)
    {
        const double s = std::sqrt(params.eps_sq);
        Eigen::VectorXcd h(h_prev.size());
        for (Eigen::Index i = 0; i < h_prev.size(); ++i)
            h(i) = params.rho * h_prev(i) + s * rng.cnormal();
        return h;
    }

    // ----------------------------------------------------------------------
    // RVQ codebook
    // ----------------------------------------------------------------------

    Codebook::Codebook(int nt, int bits, std::uint64_t seed)
        : nt_(nt), bits_(bits), seed_(seed)
    {
        if (nt < 2)
            throw std::invalid_argument("Codebook: requires Nt >= 2");
        if (bits < 0 || bits > 24)
            throw std::invalid_argument("Codebook: requires 0 <= B <= 24");

        count_ = 1 << bits;
        stride_ = (count_ + 7) & ~7;
        re_.assign(static_cast<std::size_t>(stride_) * nt_, 0.0f);
        im_.assign(static_cast<std::size_t>(stride_) * nt_, 0.0f);

        for (int l = 0; l < count_; ++l)
        {
            Eigen::VectorXcd v = raw_vector(l);
            v /= v.norm();
            for (int d = 0; d < nt_; ++d)
            {
                re_[static_cast<std::size_t>(d) * stride_ + l] = static_cast<float>(v(d).real());
                im_[static_cast<std::size_t>(d) * stride_ + l] = static_cast<float>(v(d).imag());
            }
        }
    }

    Eigen::VectorXcd Codebook::raw_vector(int l) const
    {
        // per-codeword substream so one codeword can be rebuilt without the others
        Rng rng(derive_seed(seed_, 0x7651u, static_cast<std::uint64_t>(l)));
        Eigen::VectorXcd v(nt_);
        for (int d = 0; d < nt_; ++d)
            v(d) = rng.cnormal();
        return v;
    }

    Eigen::VectorXcd Codebook::vector(int l) const
    {
        if (l < 0 || l >= count_)
            throw std::invalid_argument("Codebook::vector: index out of range");
        Eigen::VectorXcd v = raw_vector(l);
        return v / v.norm();
    }

    simd::CodebookPlanes Codebook::planes() const
    {
        simd::CodebookPlanes p;
        p.re = re_.data();
        p.im = im_.data();
        p.dim = nt_;
        p.count = count_;
        p.stride = stride_;
        return p;
    }

    QuantizeResult quantize(const Eigen::VectorXcd &h, const Codebook &cb)
    {
        if (h.size() != cb.dim())
            throw std::invalid_argument("quantize: dimension mismatch");
        const double nrm = h.norm();
        if (!(nrm > 0.0))
            throw std::invalid_argument("quantize: zero channel vector");

        // the kernel forms q^H c itself, so the query is the plain unit direction
        std::vector<float> qre(static_cast<std::size_t>(cb.dim()));
        std::vector<float> qim(static_cast<std::size_t>(cb.dim()));
        Eigen::VectorXcd dir = h / nrm;
        for (int d = 0; d < cb.dim(); ++d)
        {
            qre[static_cast<std::size_t>(d)] = static_cast<float>(dir(d).real());
            qim[static_cast<std::size_t>(d)] = static_cast<float>(dir(d).imag());
        }
        simd::BestMatch bm = simd::best_codeword(cb.planes(), qre.data(), qim.data());

        // refine the attained maximum in double precision at the winning index
        const std::complex<double> ip = cb.vector(bm.index).adjoint() * dir;
        QuantizeResult out;
        out.index = bm.index;
        out.cos_theta = std::min(1.0, std::abs(ip));
        return out;
    }

    double expected_cos2(int nt, int bits)
    {
        if (nt < 2 || bits < 0)
            throw std::invalid_argument("expected_cos2: requires Nt >= 2, B >= 0");
        const double L = std::ldexp(1.0, bits); // 2^B
        return 1.0 - L * beta_fn(L, static_cast<double>(nt) / (nt - 1));
    }

    double quantization_error_mean(int nt, int bits)
    {
        if (nt < 2 || bits < 0)
            throw std::invalid_argument("quantization_error_mean: requires Nt >= 2, B >= 0");
        return std::exp2(-static_cast<double>(bits) / (nt - 1));
    }

} // namespace mmt
