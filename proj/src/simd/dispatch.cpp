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

#include "mmt/simd.hpp"

namespace mmt::simd
{

    namespace
    {
        struct Selected
        {
            BestCodewordFn fn;
            const char *name;
        };

        Selected select()
        {
#if defined(__x86_64__) || defined(_M_X64)
            if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
                return {best_codeword_avx2, "avx2"};
#elif defined(__aarch64__)
            return {best_codeword_neon, "neon"};
#endif
            return {best_codeword_scalar, "scalar"};
        }

        const Selected &active()
        {
            static const Selected s = select();
            return s;
        }
    } // namespace

    BestMatch best_codeword(const CodebookPlanes &cb, const float *qre, const float *qim)
    {
        return active().fn(cb, qre, qim);
    }

    const char *active_kernel_name()
    {
        return active().name;
    }

} // namespace mmt::simd
