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

#include <cmath>

namespace mmt::simd
{

    // Reference kernel. std::fmaf is correctly rounded, which is exactly what the
    // hardware fma in the vector variants computes; keeping the operation order
    // identical is what makes the variants bit-equal.
    BestMatch best_codeword_scalar(const CodebookPlanes &cb, const float *qre, const float *qim)
    {
        int best = 0;
        float best_metric = -1.0f;
        for (int l = 0; l < cb.count; ++l)
        {
            float ar = 0.0f, ai = 0.0f;
            for (int d = 0; d < cb.dim; ++d)
            {
                const float cr = cb.re[static_cast<std::ptrdiff_t>(d) * cb.stride + l];
                const float ci = cb.im[static_cast<std::ptrdiff_t>(d) * cb.stride + l];
                ar = std::fmaf(qre[d], cr, ar);
                ar = std::fmaf(qim[d], ci, ar);
                ai = std::fmaf(qre[d], ci, ai);
                ai = std::fmaf(-qim[d], cr, ai);
            }
            const float m = std::fmaf(ar, ar, ai * ai);
            if (m > best_metric)
            {
                best_metric = m;
                best = l;
            }
        }
        return {best, best_metric};
    }

} // namespace mmt::simd
