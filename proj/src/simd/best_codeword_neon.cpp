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

#if defined(__aarch64__)

#include <arm_neon.h>

#include <cmath>

#include "mmt/simd.hpp"

namespace mmt::simd
{

    BestMatch best_codeword_neon(const CodebookPlanes &cb, const float *qre, const float *qim)
    {
        const int vec_end = cb.count & ~3;
        const int32x4_t lane = {0, 1, 2, 3};
        float32x4_t best_m = vdupq_n_f32(-1.0f);
        int32x4_t best_i = vdupq_n_s32(0);

        for (int l = 0; l < vec_end; l += 4)
        {
            float32x4_t ar = vdupq_n_f32(0.0f);
            float32x4_t ai = vdupq_n_f32(0.0f);
            for (int d = 0; d < cb.dim; ++d)
            {
                const float *pr = cb.re + static_cast<std::ptrdiff_t>(d) * cb.stride + l;
                const float *pi = cb.im + static_cast<std::ptrdiff_t>(d) * cb.stride + l;
                const float32x4_t cr = vld1q_f32(pr);
                const float32x4_t ci = vld1q_f32(pi);
                ar = vfmaq_n_f32(ar, cr, qre[d]);
                ar = vfmaq_n_f32(ar, ci, qim[d]);
                ai = vfmaq_n_f32(ai, ci, qre[d]);
                ai = vfmaq_n_f32(ai, cr, -qim[d]);
            }
            const float32x4_t m = vfmaq_f32(vmulq_f32(ai, ai), ar, ar);
            const uint32x4_t gt = vcgtq_f32(m, best_m);
            best_m = vbslq_f32(gt, m, best_m);
            const int32x4_t li = vaddq_s32(vdupq_n_s32(l), lane);
            best_i = vbslq_s32(gt, li, best_i);
        }

        float ms[4];
        int is[4];
        vst1q_f32(ms, best_m);
        vst1q_s32(is, best_i);
        int best = 0;
        float best_metric = -1.0f;
        if (vec_end > 0)
        {
            for (int j = 0; j < 4; ++j)
                if (ms[j] > best_metric || (ms[j] == best_metric && is[j] < best))
                {
                    best_metric = ms[j];
                    best = is[j];
                }
        }

        for (int l = vec_end; l < cb.count; ++l)
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

#endif // aarch64
