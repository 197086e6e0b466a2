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

#ifndef mmt_precoding_H
#define mmt_precoding_H

#include <Eigen/Dense>

#include "mmt/common.hpp"

namespace mmt
{

    enum class PrecoderKind
    {
        eigen,
        zero_forcing,
        mmse
    };

    // Unit-norm beamforming vectors, one column per served user.
    // zero_forcing guarantees |d_u^H f_v| <= 1e-10 for u != v on the input
    // directions d_u; constructions with direction matrices of condition number
    // above 1e8 throw conditioning_error instead of emitting garbage.
    struct PrecoderSet
    {
        Eigen::MatrixXcd vectors; // Nt x M
        PrecoderKind kind = PrecoderKind::eigen;
    };

    // single-user beamformer along the channel direction
    PrecoderSet eigen_bf(const Eigen::VectorXcd &h);

    // normalized pseudo-inverse columns for the stacked direction rows d_u^H;
    // directions are passed as columns of a Nt x M matrix
    PrecoderSet zf_precoders(const Eigen::MatrixXcd &directions);

    // normalized columns of D (D^H D + (M/P) I)^{-1}; regularization keeps the
    // system invertible for any direction set
    PrecoderSet mmse_precoders(const Eigen::MatrixXcd &directions, double P);

} // namespace mmt

#endif
