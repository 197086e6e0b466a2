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

#ifndef mmt_simd_H
#define mmt_simd_H

#include <cstddef>

namespace mmt::simd
{

    // Structure-of-arrays view of a codebook: for dimension d, re + d*stride is a
    // plane of `count` codeword real parts (imaginary parts in im). The kernels
    // assume stride is a multiple of 8 and that the pad floats past count are 0.
    struct CodebookPlanes
    {
        const float *re = nullptr;
        const float *im = nullptr;
        int dim = 0;
        int count = 0;
        std::ptrdiff_t stride = 0;
    };

    struct BestMatch
    {
        int index = 0;
        float metric = 0.0f; // |q^H c|^2 at the winning codeword
    };

    using BestCodewordFn = BestMatch (*)(const CodebookPlanes &, const float *, const float *);

    // argmax over codewords of |q^H c|^2 for the plain query planes qre/qim
    // (length dim); the kernel conjugates q itself. All variants perform the
    // identical fused multiply-add sequence per codeword and break metric ties
    // toward the smallest index, so their results are equal bit for bit.
    BestMatch best_codeword_scalar(const CodebookPlanes &cb, const float *qre, const float *qim);

#if defined(__x86_64__) || defined(_M_X64)
    BestMatch best_codeword_avx2(const CodebookPlanes &cb, const float *qre, const float *qim);
#endif
#if defined(__aarch64__)
    BestMatch best_codeword_neon(const CodebookPlanes &cb, const float *qre, const float *qim);
#endif

    // runtime-dispatched entry point and the name of the variant it selected
    BestMatch best_codeword(const CodebookPlanes &cb, const float *qre, const float *qim);
    const char *active_kernel_name();

} // namespace mmt::simd

#endif
