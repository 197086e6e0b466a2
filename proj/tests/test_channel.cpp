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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "mmt/channel.hpp"
#include "mmt/numerics.hpp"
#include "mmt/rng.hpp"

using namespace mmt;

TEST_CASE("doppler correlation from speed, carrier, and delay", "[channel]")
{
    const DopplerParams still = doppler_correlation(0.0, 2.1e9, 5e-3);
    CHECK(still.rho == 1.0);
    CHECK(still.eps_sq == 0.0);
    CHECK(still.fd_ts == 0.0);

    // 5 km/hr, 2.1 GHz, 5 ms
    const DopplerParams slow = doppler_correlation(5.0, 2.1e9, 5e-3);
    CHECK(std::abs(slow.fd_ts - 0.0486435401379) < 1e-9);
    CHECK(std::abs(slow.eps_sq - 0.0458957653409) < 1e-9);
    CHECK(std::abs(slow.eps_sq - 0.0458) < 5e-4);
    CHECK(std::abs(slow.rho - 0.976782593343616) < 1e-9);

    // 10 km/hr doubles the normalized Doppler
    const DopplerParams fast = doppler_correlation(10.0, 2.1e9, 5e-3);
    CHECK(std::abs(fast.fd_ts - 0.0972870802757) < 1e-6);
    CHECK(fast.rho == bessel_j0(2.0 * 3.14159265358979323846 * fast.fd_ts));
    CHECK(std::abs(fast.eps_sq - (1.0 - fast.rho * fast.rho)) < 1e-12);

    // zero delay is legal (rho = 1); negative anything is not
    CHECK(doppler_correlation(5.0, 2.1e9, 0.0).rho == 1.0);
    CHECK_THROWS_AS(doppler_correlation(-1.0, 2.1e9, 5e-3), std::invalid_argument);
    CHECK_THROWS_AS(doppler_correlation(5.0, 0.0, 5e-3), std::invalid_argument);
    CHECK_THROWS_AS(doppler_correlation(5.0, 2.1e9, -1e-3), std::invalid_argument);
}

TEST_CASE("doppler parameters straight from a normalized frequency", "[channel]")
{
    const DopplerParams p = doppler_from_fdts(0.0486435401379);
    CHECK(p.fd_ts == 0.0486435401379);
    CHECK(std::abs(p.rho - 0.976782593343616) < 1e-9);
    CHECK(std::abs(p.rho * p.rho + p.eps_sq - 1.0) < 1e-12);
    CHECK_THROWS_AS(doppler_from_fdts(-0.1), std::invalid_argument);
}

TEST_CASE("channel draws are CN(0, I)", "[channel]")
{
    Rng rng(derive_seed(11u, 0xCAFEu));
    const int nt = 4, n = 50000;
    double var = 0.0;
    std::complex<double> mean = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const Eigen::VectorXcd h = draw_channel(nt, rng);
        REQUIRE(h.size() == nt);
        for (int d = 0; d < nt; ++d)
        {
            var += std::norm(h(d));
            mean += h(d);
        }
    }
    var /= static_cast<double>(n) * nt;
    mean /= static_cast<double>(n) * nt;
    CHECK(std::abs(var - 1.0) < 0.02);
    CHECK(std::abs(mean) < 0.01);
    CHECK_THROWS_AS(draw_channel(0, rng), std::invalid_argument);
}

TEST_CASE("channel evolution keeps the marginal and sets the lag correlation", "[channel]")
{
    Rng rng(derive_seed(12u, 0xCAFEu));

    // rho = 1: frozen channel
    {
        const Eigen::VectorXcd h = draw_channel(4, rng);
        const Eigen::VectorXcd h2 = evolve_channel(h, doppler_correlation(0.0, 2.1e9, 5e-3), rng);
        REQUIRE((h2 - h).norm() == 0.0);
    }

    // rho = 0: full decorrelation
    {
        const DopplerParams p{0.0, 1.0, 0.25};
        std::complex<double> cross = 0.0;
        const int n = 100000;
        for (int i = 0; i < n; ++i)
        {
            const Eigen::VectorXcd h = draw_channel(2, rng);
            const Eigen::VectorXcd g = evolve_channel(h, p, rng);
            cross += g(0) * std::conj(h(0)) + g(1) * std::conj(h(1));
        }
        CHECK(std::abs(cross) / (2.0 * n) < 0.01);
    }

    // the 5 km/hr case: lag-1 correlation ~ 0.9768, marginal variance stays 1
    {
        const DopplerParams p = doppler_correlation(5.0, 2.1e9, 5e-3);
        std::complex<double> cross = 0.0;
        double var = 0.0;
        const int n = 100000;
        for (int i = 0; i < n; ++i)
        {
            const Eigen::VectorXcd h = draw_channel(2, rng);
            const Eigen::VectorXcd g = evolve_channel(h, p, rng);
            cross += g(0) * std::conj(h(0)) + g(1) * std::conj(h(1));
            var += std::norm(g(0)) + std::norm(g(1));
        }
        CHECK(std::abs(cross.real() / (2.0 * n) - 0.9768) < 0.01);
        CHECK(std::abs(var / (2.0 * n) - 1.0) < 0.02);
    }
}

TEST_CASE("codebooks are unit norm, reproducible, and bounded", "[channel]")
{
    const Codebook tiny(4, 0, 123u);
    CHECK(tiny.size() == 1);
    CHECK(std::abs(tiny.vector(0).norm() - 1.0) < 1e-12);

    const Codebook cb(4, 6, 99u);
    CHECK(cb.size() == 64);
    for (int l = 0; l < cb.size(); ++l)
        REQUIRE(std::abs(cb.vector(l).norm() - 1.0) < 1e-12);

    const Codebook cb2(4, 6, 99u);
    for (int l = 0; l < cb.size(); ++l)
        REQUIRE((cb.vector(l) - cb2.vector(l)).norm() == 0.0);

    const Codebook other(4, 6, 100u);
    CHECK((cb.vector(0) - other.vector(0)).norm() > 1e-6);

    CHECK_THROWS_AS(Codebook(4, 25, 1u), std::invalid_argument);
    CHECK_THROWS_AS(Codebook(4, -1, 1u), std::invalid_argument);
    CHECK_THROWS_AS(Codebook(1, 3, 1u), std::invalid_argument);
}

TEST_CASE("codewords are isotropic directions", "[channel]")
{
    const Codebook cb(4, 10, derive_seed(3u, 0xC0DEu));
    Rng rng(derive_seed(3u, 0xD12Au));
    const int n = 20000;
    for (int l = 0; l < 8; ++l)
    {
        const Eigen::VectorXcd c = cb.vector(l);
        double acc = 0.0;
        for (int i = 0; i < n; ++i)
        {
            const Eigen::VectorXcd h = draw_channel(4, rng);
            acc += std::norm(c.dot(h)) / h.squaredNorm();
        }
        CAPTURE(l);
        CHECK(std::abs(acc / n - 0.25) < 0.01);
    }
}

TEST_CASE("quantize finds the planted codeword and ignores scale", "[channel]")
{
    const Codebook cb(4, 5, 2024u);

    for (int l : {0, 7, 31})
    {
        const QuantizeResult q = quantize(cb.vector(l), cb);
        CHECK(q.index == l);
        CHECK(std::abs(q.cos_theta - 1.0) < 1e-12);
    }

    const Codebook empty(4, 0, 5u);
    Rng rng(derive_seed(4u, 0xD12Au));
    for (int i = 0; i < 10; ++i)
        CHECK(quantize(draw_channel(4, rng), empty).index == 0);

    // scale invariance: power-of-two scale is exactly invariant, any other
    // positive scale must keep the index and move cos_theta only at rounding level
    const Eigen::VectorXcd h = draw_channel(4, rng);
    const QuantizeResult base = quantize(h, cb);
    const QuantizeResult x4 = quantize((4.0 * h).eval(), cb);
    CHECK(x4.index == base.index);
    CHECK(x4.cos_theta == base.cos_theta);
    const QuantizeResult x37 = quantize((3.7 * h).eval(), cb);
    CHECK(x37.index == base.index);
    CHECK(std::abs(x37.cos_theta - base.cos_theta) <= 1e-12);

    CHECK_THROWS_AS(quantize(Eigen::VectorXcd::Zero(4), cb), std::invalid_argument);
}

TEST_CASE("sampled quantizer accuracy matches the closed form", "[channel]")
{
    // the closed form averages over codebook realizations too, and with only
    // 16 codewords a single codebook's conditional mean sits ~1e-2 away from
    // it, so the codebook is redrawn throughout
    const int nt = 4, bits = 4;
    const int books = 4000, per_book = 250;
    Rng rng(derive_seed(6u, 0xD12Au));
    double acc = 0.0;
    for (int b = 0; b < books; ++b)
    {
        const Codebook cb(nt, bits, derive_seed(6u, 0xC0DEu, static_cast<std::uint64_t>(b)));
        for (int i = 0; i < per_book; ++i)
        {
            const double c = quantize(draw_channel(nt, rng), cb).cos_theta;
            acc += c * c;
        }
    }
    const double n = static_cast<double>(books) * per_book;
    CHECK(std::abs(acc / n - expected_cos2(nt, bits)) < 1e-3);
}

TEST_CASE("closed-form quantization accuracy", "[channel]")
{
    CHECK(std::abs(expected_cos2(2, 1) - 2.0 / 3.0) < 1e-12);
    CHECK(std::abs(expected_cos2(4, 4) - 0.650425868261361883) < 1e-12);
    // large codebook: the exact value is 1 - 2^24 B(2^24, 4/3) = 0.9965118
    const double xi24 = expected_cos2(4, 24);
    CHECK(xi24 > 0.9960);
    CHECK(xi24 < 0.9970);
    CHECK(std::abs(xi24 - 0.996511798829135507) < 1e-10);

    double prev = expected_cos2(4, 0);
    for (int b = 1; b <= 24; ++b)
    {
        const double cur = expected_cos2(4, b);
        REQUIRE(cur > prev);
        REQUIRE(cur >= 1.0 - quantization_error_mean(4, b) - 1e-12);
        REQUIRE(cur <= 1.0);
        prev = cur;
    }
    CHECK_THROWS_AS(expected_cos2(1, 4), std::invalid_argument);
    CHECK_THROWS_AS(expected_cos2(4, -1), std::invalid_argument);
}

TEST_CASE("modeled mean quantization error", "[channel]")
{
    CHECK(std::abs(quantization_error_mean(4, 4) - 0.39685026299204987) < 1e-12);
    CHECK(std::abs(quantization_error_mean(4, 8) - 0.15749013123685915) < 1e-12);
    CHECK(quantization_error_mean(4, 0) == 1.0);
    // the fading-plus-feedback operating point quoted for a 4-antenna system
    const double rho_sq = 0.954104234659;
    CHECK(std::abs(rho_sq * quantization_error_mean(4, 4) - 0.3787) < 5e-4);
    CHECK(std::abs(rho_sq * quantization_error_mean(4, 8) - 0.1503) < 5e-4);
}
