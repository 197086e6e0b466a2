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

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "mmt/channel.hpp"
#include "mmt/montecarlo.hpp"
#include "mmt/numerics.hpp"
#include "mmt/precoding.hpp"
#include "mmt/rng.hpp"

using namespace mmt;

namespace
{
    Eigen::MatrixXcd random_directions(int nt, int m, Rng &rng)
    {
        Eigen::MatrixXcd d(nt, m);
        for (int c = 0; c < m; ++c)
        {
            Eigen::VectorXcd h = draw_channel(nt, rng);
            d.col(c) = h / h.norm();
        }
        return d;
    }

    double max_cross_term(const Eigen::MatrixXcd &directions, const Eigen::MatrixXcd &f)
    {
        double worst = 0.0;
        for (Eigen::Index u = 0; u < directions.cols(); ++u)
            for (Eigen::Index v = 0; v < f.cols(); ++v)
                if (u != v)
                    worst = std::max(worst, std::abs(directions.col(u).dot(f.col(v))));
        return worst;
    }
} // namespace

TEST_CASE("matched filter beamforming", "[precoding]")
{
    Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(4);
    e1(0) = 1.0;
    const PrecoderSet bf = eigen_bf(e1);
    REQUIRE(bf.vectors.cols() == 1);
    CHECK((bf.vectors.col(0) - e1).norm() < 1e-15);
    CHECK(bf.kind == PrecoderKind::eigen);

    Rng rng(derive_seed(21u, 0xBFBFu));
    for (int i = 0; i < 50; ++i)
    {
        const Eigen::VectorXcd h = draw_channel(4, rng);
        const PrecoderSet s = eigen_bf(h);
        CHECK(std::abs(s.vectors.col(0).norm() - 1.0) < 1e-12);
        const double gain = std::norm(h.dot(s.vectors.col(0)));
        CHECK(std::abs(gain - h.squaredNorm()) <= 1e-12 * h.squaredNorm());
    }
    CHECK_THROWS_AS(eigen_bf(Eigen::VectorXcd::Zero(3)), std::invalid_argument);
}

TEST_CASE("matched filter attains the full array gain on average", "[precoding]")
{
    Rng rng(derive_seed(22u, 0xBFBFu));
    const int nt = 4, n = 100000;
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const Eigen::VectorXcd h = draw_channel(nt, rng);
        acc += std::norm(h.dot(eigen_bf(h).vectors.col(0)));
    }
    CHECK(std::abs(acc / n - nt) < 0.02 * nt);
}

TEST_CASE("zero-forcing nulls every cross direction", "[precoding]")
{
    Rng rng(derive_seed(23u, 0xBFBFu));

    // orthonormal input directions reproduce themselves
    {
        Eigen::MatrixXcd d = Eigen::MatrixXcd::Identity(4, 3);
        const PrecoderSet zf = zf_precoders(d);
        CHECK(zf.kind == PrecoderKind::zero_forcing);
        for (int u = 0; u < 3; ++u)
            CHECK(std::abs(std::abs(d.col(u).dot(zf.vectors.col(u))) - 1.0) < 1e-10);
        CHECK(max_cross_term(d, zf.vectors) < 1e-12);
    }

    for (int m : {2, 3, 4})
        for (int rep = 0; rep < 25; ++rep)
        {
            const Eigen::MatrixXcd d = random_directions(4, m, rng);
            const PrecoderSet zf = zf_precoders(d);
            CAPTURE(m, rep);
            REQUIRE(max_cross_term(d, zf.vectors) < 1e-10);
            for (int c = 0; c < m; ++c)
                REQUIRE(std::abs(zf.vectors.col(c).norm() - 1.0) < 1e-12);
        }
}

TEST_CASE("zero-forcing output spans are phase invariant", "[precoding]")
{
    Rng rng(derive_seed(24u, 0xBFBFu));
    const Eigen::MatrixXcd d = random_directions(4, 3, rng);
    Eigen::MatrixXcd d2 = d;
    d2.col(1) *= std::polar(1.0, 0.7);

    const Eigen::MatrixXcd f1 = zf_precoders(d).vectors;
    const Eigen::MatrixXcd f2 = zf_precoders(d2).vectors;
    for (int c = 0; c < 3; ++c)
    {
        // same ray: |f1_c^H f2_c| = 1
        CHECK(std::abs(std::abs(f1.col(c).dot(f2.col(c))) - 1.0) < 1e-10);
    }
}

TEST_CASE("degenerate direction sets are rejected", "[precoding]")
{
    Rng rng(derive_seed(25u, 0xBFBFu));
    const Eigen::MatrixXcd d = random_directions(4, 2, rng);

    Eigen::MatrixXcd bad = d;
    Eigen::VectorXcd bump = draw_channel(4, rng);
    bump -= d.col(0) * d.col(0).dot(bump);
    bump /= bump.norm();
    bad.col(1) = d.col(0) + 1e-10 * bump;
    bad.col(1) /= bad.col(1).norm();
    CHECK_THROWS_AS(zf_precoders(bad), conditioning_error);

    CHECK_THROWS_AS(zf_precoders(d.leftCols(1).eval()), std::invalid_argument);
    Eigen::MatrixXcd wide(2, 3);
    wide.setZero();
    wide(0, 0) = wide(1, 1) = wide(0, 2) = 1.0;
    CHECK_THROWS_AS(zf_precoders(wide), std::invalid_argument);
}

TEST_CASE("regularized precoding approaches zero forcing at high power", "[precoding]")
{
    Rng rng(derive_seed(26u, 0xBFBFu));
    const Eigen::MatrixXcd d = random_directions(4, 3, rng);
    const Eigen::MatrixXcd zf = zf_precoders(d).vectors;

    const PrecoderSet hi = mmse_precoders(d, 1e9);
    CHECK(hi.kind == PrecoderKind::mmse);
    for (int c = 0; c < 3; ++c)
        CHECK(std::abs(hi.vectors.col(c).norm() - 1.0) < 1e-12);
    CHECK((hi.vectors - zf).cwiseAbs().maxCoeff() < 1e-4);

    double prev = (mmse_precoders(d, 1.0).vectors - zf).norm();
    for (double p : {1e1, 1e2, 1e3, 1e4, 1e5, 1e6, 1e7, 1e8, 1e9})
    {
        const double cur = (mmse_precoders(d, p).vectors - zf).norm();
        CAPTURE(p);
        REQUIRE(cur < prev);
        prev = cur;
    }
    CHECK_THROWS_AS(mmse_precoders(d, 0.0), std::invalid_argument);
}

TEST_CASE("zero-forcing beam gain follows the projected fading law", "[precoding]")
{
    // perfect feedback, 2 of 4 streams: |h_u^H f_u|^2 loses exactly M-1 complex
    // dimensions, so its CDF is the integer-shape gamma with n = Nt-M+1 = 3
    SimScenario sc;
    sc.nt = 4;
    sc.mode = 2;
    sc.p = 10.0;
    sc.perfect_csit = true;
    sc.users = {ImperfectionParams{}};
    sc.seed = derive_seed(27u, 0xBFBFu);
    const long long n = 100000;
    const SinrSamples samples = simulate_sinr_samples(sc, n);
    REQUIRE(samples.signal_gain.size() == 2);
    REQUIRE(samples.signal_gain[0].size() == static_cast<std::size_t>(n));

    std::vector<double> x = samples.signal_gain[0];
    std::sort(x.begin(), x.end());
    double ks = 0.0;
    for (long long i = 0; i < n; ++i)
    {
        const double f = gamma_cdf_int(3, x[static_cast<std::size_t>(i)]);
        ks = std::max(ks, std::abs(f - static_cast<double>(i + 1) / n));
        ks = std::max(ks, std::abs(f - static_cast<double>(i) / n));
    }
    CHECK(ks < 1.628 / std::sqrt(static_cast<double>(n))); // 1% level
}
