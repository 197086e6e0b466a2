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

#ifndef mmt_rng_H
#define mmt_rng_H

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace mmt
{

    // splitmix64 step: advances the state and returns a well-mixed 64-bit word
    inline std::uint64_t splitmix64(std::uint64_t &state) noexcept
    {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Deterministic substream seed from a root seed and up to three stream ids.
    // Identical inputs give identical seeds on every platform; this is what makes
    // Monte Carlo results independent of worker count and scheduling order.
    // Each stage feeds the fully mixed word forward before the next injection:
    // chaining on the raw +gamma state would make XOR-related roots produce
    // XOR-related substreams, and codebook seeds are composed with XOR.
    inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t tag,
                                     std::uint64_t a = 0, std::uint64_t b = 0) noexcept
    {
        std::uint64_t s = root;
        s = splitmix64(s) ^ tag;
        s = splitmix64(s) ^ a;
        s = splitmix64(s) ^ b;
        return splitmix64(s);
    }

    // Gaussian stream over mt19937_64 with an explicit Box-Muller transform.
    // std::normal_distribution is implementation defined, so it is not used;
    // every draw here is reproducible bit for bit across standard libraries.
    class Rng
    {
      public:
        explicit Rng(std::uint64_t seed) : gen_(seed) {}

        std::uint64_t raw() { return gen_(); }

        // uniform on (0, 1], 53-bit resolution; never 0 so log() below is safe
        double uniform()
        {
            return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
        }

        double normal()
        {
            if (have_spare_)
            {
                have_spare_ = false;
                return spare_;
            }
            double u1 = uniform(), u2 = uniform();
            double r = std::sqrt(-2.0 * std::log(u1));
            double a = 6.283185307179586476925286766559 * u2;
            spare_ = r * std::sin(a);
            have_spare_ = true;
            return r * std::cos(a);
        }

        // CN(0,1): unit total variance, i.e. 1/2 per real dimension
        std::complex<double> cnormal()
        {
            double re = normal(), im = normal();
            return {re * 0.70710678118654752440, im * 0.70710678118654752440};
        }

      private:
        std::mt19937_64 gen_;
        bool have_spare_ = false;
        double spare_ = 0.0;
    };

} // namespace mmt

#endif
