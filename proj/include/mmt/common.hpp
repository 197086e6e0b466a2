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

#ifndef mmt_common_H
#define mmt_common_H

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mmt
{

    // Numerical breakdown that invalidates a result: quadrature that failed to
    // converge, or a Monte Carlo run whose degenerate-precoder redraw rate
    // exceeded the abort threshold. The CLI maps this to exit code 3.
    struct numerical_error : std::runtime_error
    {
        explicit numerical_error(const std::string &msg) : std::runtime_error(msg) {}
    };

    // Direction matrix too close to rank deficient for a trustworthy pseudo-inverse
    // (condition number above 1e8). Monte Carlo callers catch this and redraw.
    struct conditioning_error : numerical_error
    {
        explicit conditioning_error(const std::string &msg) : numerical_error(msg) {}
    };

    // Monte Carlo estimate of a mean, std_error = sample std / sqrt(trials)
    struct Estimate
    {
        double mean = 0.0;
        double std_error = 0.0;
        long long trials = 0;
    };

} // namespace mmt

#endif
