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

#include "mmt/precoding.hpp"

#include <stdexcept>
#include <string>

namespace mmt
{

    namespace
    {
        void check_directions(const Eigen::MatrixXcd &directions)
        {
            const Eigen::Index nt = directions.rows(), m = directions.cols();
            if (m < 2 || m > nt)
                throw std::invalid_argument("precoding: requires 1 < M <= Nt");
        }

        void normalize_columns(Eigen::MatrixXcd &f)
        {
            for (Eigen::Index c = 0; c < f.cols(); ++c)
            {
                const double n = f.col(c).norm();
                if (!(n > 0.0))
                    throw conditioning_error("precoding: zero precoder column");
                f.col(c) /= n;
            }
        }
    } // namespace

    PrecoderSet eigen_bf(const Eigen::VectorXcd &h)
    {
        const double n = h.norm();
        if (!(n > 0.0))
            throw std::invalid_argument("eigen_bf: zero channel vector");
        PrecoderSet out;
        out.vectors = h / n;
        out.kind = PrecoderKind::eigen;
        return out;
    }

    PrecoderSet zf_precoders(const Eigen::MatrixXcd &directions)
    {
        check_directions(directions);
        const Eigen::Index m = directions.cols();

        // rows of the stacked matrix are d_u^H, so A F = I nulls d_u^H f_v
        const Eigen::MatrixXcd a = directions.adjoint(); // M x Nt
        const Eigen::MatrixXcd gram = a * a.adjoint();   // M x M Hermitian

        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
        const double smax = svd.singularValues()(0);
        const double smin = svd.singularValues()(m - 1);
        if (!(smin > 0.0) || smax / smin > 1e8)
            throw conditioning_error("zf_precoders: direction matrix condition number above 1e8");

        Eigen::LLT<Eigen::MatrixXcd> llt(gram);
        if (llt.info() != Eigen::Success)
            throw conditioning_error("zf_precoders: gram matrix not positive definite");

        Eigen::MatrixXcd f = a.adjoint() * llt.solve(Eigen::MatrixXcd::Identity(m, m));
        // one refinement pass; keeps cross terms near machine precision even for
        // poorly conditioned (but admissible) direction sets
        f += a.adjoint() * llt.solve(Eigen::MatrixXcd::Identity(m, m) - a * f);

        normalize_columns(f);
        PrecoderSet out;
        out.vectors = std::move(f);
        out.kind = PrecoderKind::zero_forcing;
        return out;
    }

    PrecoderSet mmse_precoders(const Eigen::MatrixXcd &directions, double P)
    {
        check_directions(directions);
        if (!(P > 0.0))
            throw std::invalid_argument("mmse_precoders: requires P > 0");
        const Eigen::Index m = directions.cols();

        const Eigen::MatrixXcd a = directions.adjoint();
        const Eigen::MatrixXcd reg =
            a * a.adjoint() +
            (static_cast<double>(m) / P) * Eigen::MatrixXcd::Identity(m, m);
        Eigen::MatrixXcd f = a.adjoint() * reg.llt().solve(Eigen::MatrixXcd::Identity(m, m));

        normalize_columns(f);
        PrecoderSet out;
        out.vectors = std::move(f);
        out.kind = PrecoderKind::mmse;
        return out;
    }

} // namespace mmt
