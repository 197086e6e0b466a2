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

// This translation unit alone is built with -mavx2 -mfma; callers must go
// through the runtime dispatcher.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

#include "mmt/simd.hpp"

namespace mmt::simd
{

    BestMatch best_codeword_avx2(const CodebookPlanes &cb, const float *qre, const float *qim)
    {
        const int vec_end = cb.count & ~7;
        const __m256i lane = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);
        __m256 best_m = _mm256_set1_ps(-1.0f);
        __m256i best_i = _mm256_setzero_si256();

        for (int l = 0; l < vec_end; l += 8)
        {
            __m256 ar = _mm256_setzero_ps();
            __m256 ai = _mm256_setzero_ps();
            for (int d = 0; d < cb.dim; ++d)
            {
                const float *pr = cb.re + static_cast<std::ptrdiff_t>(d) * cb.stride + l;
                const float *pi = cb.im + static_cast<std::ptrdiff_t>(d) * cb.stride + l;
                const __m256 cr = _mm256_loadu_ps(pr);
                const __m256 ci = _mm256_loadu_ps(pi);
                const __m256 xr = _mm256_set1_ps(qre[d]);
                const __m256 xi = _mm256_set1_ps(qim[d]);
                const __m256 nxi = _mm256_set1_ps(-qim[d]);
                ar = _mm256_fmadd_ps(xr, cr, ar);
                ar = _mm256_fmadd_ps(xi, ci, ar);
                ai = _mm256_fmadd_ps(xr, ci, ai);
                ai = _mm256_fmadd_ps(nxi, cr, ai);
            }
            const __m256 m = _mm256_fmadd_ps(ar, ar, _mm256_mul_ps(ai, ai));
            const __m256 gt = _mm256_cmp_ps(m, best_m, _CMP_GT_OQ);
            best_m = _mm256_blendv_ps(best_m, m, gt);
            const __m256i li = _mm256_add_epi32(_mm256_set1_epi32(l), lane);
            best_i = _mm256_blendv_epi8(best_i, li, _mm256_castps_si256(gt));
        }

        // cross-lane reduction; ties on the metric resolve to the smallest stored
        // index, which is the first strict improvement a scalar scan would keep
        alignas(32) float ms[8];
        alignas(32) int is[8];
        _mm256_store_ps(ms, best_m);
        _mm256_store_si256(reinterpret_cast<__m256i *>(is), best_i);
        int best = 0;
        float best_metric = -1.0f;
        if (vec_end > 0)
        {
            for (int j = 0; j < 8; ++j)
                if (ms[j] > best_metric || (ms[j] == best_metric && is[j] < best))
                {
                    best_metric = ms[j];
                    best = is[j];
                }
        }

        // remainder codewords, same update rule as the scalar reference
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

#endif // x86_64
