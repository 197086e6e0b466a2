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
#include <cstring>
#include <string>
#include <vector>

#include "mmt/channel.hpp"
#include "mmt/rng.hpp"
#include "mmt/simd.hpp"

using namespace mmt;
using simd::BestMatch;
using simd::CodebookPlanes;

namespace
{
    // padded SoA planes built by hand, independent of Codebook's layout code
    struct PlaneStore
    {
        std::vector<float> re, im;
        CodebookPlanes view;
    };

    PlaneStore make_planes(const std::vector<std::vector<std::complex<float>>> &words)
    {
        PlaneStore st;
        const int count = static_cast<int>(words.size());
        const int dim = static_cast<int>(words.front().size());
        const std::ptrdiff_t stride = ((count + 7) / 8) * 8;
        st.re.assign(static_cast<std::size_t>(stride) * dim, 0.0f);
        st.im.assign(static_cast<std::size_t>(stride) * dim, 0.0f);
        for (int l = 0; l < count; ++l)
            for (int d = 0; d < dim; ++d)
            {
                st.re[static_cast<std::size_t>(d) * stride + l] = words[l][d].real();
                st.im[static_cast<std::size_t>(d) * stride + l] = words[l][d].imag();
            }
        st.view = CodebookPlanes{st.re.data(), st.im.data(), dim, count, stride};
        return st;
    }

    void random_query(int dim, Rng &rng, std::vector<float> &qre, std::vector<float> &qim)
    {
        qre.resize(dim);
        qim.resize(dim);
        for (int d = 0; d < dim; ++d)
        {
            // kernels take the plain query and conjugate it internally
            const std::complex<double> z = rng.cnormal();
            qre[d] = static_cast<float>(z.real());
            qim[d] = static_cast<float>(z.imag());
        }
    }

    bool bit_equal(float a, float b)
    {
        std::uint32_t ua, ub;
        std::memcpy(&ua, &a, 4);
        std::memcpy(&ub, &b, 4);
        return ua == ub;
    }
} // namespace

TEST_CASE("dispatched kernel equals the scalar kernel bit for bit", "[simd]")
{
    Rng rng(derive_seed(2026u, 0x51D1u));
    for (int bits : {0, 1, 2, 3, 5, 8})
        for (int nt : {2, 3, 4})
        {
            Codebook cb(nt, bits, derive_seed(55u, 0xC0DEu, bits, nt));
            const CodebookPlanes planes = cb.planes();
            std::vector<float> qre, qim;
            for (int rep = 0; rep < 20; ++rep)
            {
                random_query(nt, rng, qre, qim);
                const BestMatch s = simd::best_codeword_scalar(planes, qre.data(), qim.data());
                const BestMatch d = simd::best_codeword(planes, qre.data(), qim.data());
                CAPTURE(bits, nt, rep);
                REQUIRE(s.index == d.index);
                REQUIRE(bit_equal(s.metric, d.metric));
            }
        }
}

TEST_CASE("kernels agree on a ragged hand-built codebook", "[simd]")
{
    // count 13 with stride 16 exercises the masked tail path
    Rng rng(derive_seed(2026u, 0x51D2u));
    std::vector<std::vector<std::complex<float>>> words(13);
    for (auto &w : words)
    {
        w.resize(4);
        for (auto &z : w)
        {
            const std::complex<double> g = rng.cnormal();
            z = {static_cast<float>(g.real()), static_cast<float>(g.imag())};
        }
    }
    const PlaneStore st = make_planes(words);
    REQUIRE(st.view.stride == 16);

    std::vector<float> qre, qim;
    for (int rep = 0; rep < 50; ++rep)
    {
        random_query(4, rng, qre, qim);
        const BestMatch s = simd::best_codeword_scalar(st.view, qre.data(), qim.data());
        const BestMatch d = simd::best_codeword(st.view, qre.data(), qim.data());
        REQUIRE(s.index == d.index);
        REQUIRE(bit_equal(s.metric, d.metric));
        REQUIRE(s.index < 13); // zero padding must never win
    }
}

TEST_CASE("metric ties resolve to the smallest index", "[simd]")
{
    Rng rng(derive_seed(2026u, 0x51D3u));
    std::vector<std::vector<std::complex<float>>> words(12);
    for (auto &w : words)
    {
        w.resize(3);
        for (auto &z : w)
        {
            const std::complex<double> g = rng.cnormal();
            z = {static_cast<float>(g.real()), static_cast<float>(g.imag())};
        }
    }
    // plant the winner twice; scale it so no query can project it below the
    // rest of the codebook
    for (auto &z : words[3])
        z *= 1000.0f;
    words[9] = words[3];
    const PlaneStore st = make_planes(words);

    std::vector<float> qre, qim;
    for (int rep = 0; rep < 20; ++rep)
    {
        random_query(3, rng, qre, qim);
        const BestMatch s = simd::best_codeword_scalar(st.view, qre.data(), qim.data());
        const BestMatch d = simd::best_codeword(st.view, qre.data(), qim.data());
        CHECK(s.index == 3);
        CHECK(d.index == 3);
        CHECK(bit_equal(s.metric, d.metric));
    }
}

TEST_CASE("kernel metric tracks a double-precision evaluation", "[simd]")
{
    Rng rng(derive_seed(2026u, 0x51D4u));
    Codebook cb(4, 6, derive_seed(77u, 0xC0DEu));
    const CodebookPlanes planes = cb.planes();
    std::vector<float> qre, qim;
    for (int rep = 0; rep < 30; ++rep)
    {
        random_query(4, rng, qre, qim);
        const BestMatch got = simd::best_codeword(planes, qre.data(), qim.data());

        // exact arithmetic over the same float planes the kernel reads
        double best = -1.0, second = -1.0;
        int best_idx = -1;
        std::vector<double> metric(static_cast<std::size_t>(planes.count));
        for (int l = 0; l < planes.count; ++l)
        {
            double ar = 0.0, ai = 0.0;
            for (int d = 0; d < planes.dim; ++d)
            {
                // conj(q)^T c, the quantity the kernel maximizes
                const double cr = planes.re[static_cast<std::size_t>(d) * planes.stride + l];
                const double ci = planes.im[static_cast<std::size_t>(d) * planes.stride + l];
                ar += qre[d] * cr + qim[d] * ci;
                ai += qre[d] * ci - qim[d] * cr;
            }
            const double m = ar * ar + ai * ai;
            metric[static_cast<std::size_t>(l)] = m;
            if (m > best)
            {
                second = best;
                best = m;
                best_idx = l;
            }
            else if (m > second)
                second = m;
        }
        if (best - second > 1e-5 * best) // skip float-level ties
            CHECK(got.index == best_idx);
        const double at_winner = metric[static_cast<std::size_t>(got.index)];
        CHECK(std::abs(static_cast<double>(got.metric) - at_winner) <= 1e-4 * best);
    }
}

TEST_CASE("active kernel reports a name", "[simd]")
{
    const char *name = simd::active_kernel_name();
    REQUIRE(name != nullptr);
    CHECK(std::string(name).size() > 0);
}
