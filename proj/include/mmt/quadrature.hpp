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

#ifndef mmt_quadrature_H
#define mmt_quadrature_H

#include <algorithm>
#include <cmath>
#include <vector>

#include "mmt/common.hpp"

namespace mmt
{

    struct QuadResult
    {
        double value = 0.0;
        double error = 0.0; // estimated absolute error
        bool converged = false;
        int segments = 0;
    };

    namespace detail
    {
        // 15-point Kronrod nodes/weights on [-1,1] and the embedded 7-point Gauss weights
        inline constexpr double gk_x[8] = {
            0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
            0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
        inline constexpr double gk_wk[8] = {
            0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
        inline constexpr double gk_wg[4] = {
            0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
            0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

        template <typename F>
        inline void gk15(F &&f, double a, double b, double &value, double &error)
        {
            const double c = 0.5 * (a + b), h = 0.5 * (b - a);
            const double fc = f(c);
            double kron = gk_wk[7] * fc;
            double gauss = gk_wg[3] * fc;
            for (int i = 0; i < 7; ++i)
            {
                const double dx = h * gk_x[i];
                const double fs = f(c - dx) + f(c + dx);
                kron += gk_wk[i] * fs;
                if (i % 2 == 1)
                    gauss += gk_wg[i / 2] * fs;
            }
            value = kron * h;
            error = std::fabs((kron - gauss) * h);
        }
    } // namespace detail

    // Adaptive Gauss-Kronrod on a finite interval. Splits the segment with the
    // largest error estimate until sum(errors) <= max(abs_tol, rel_tol*|value|).
    // Deterministic: segment selection, splitting, and the final left-to-right
    // summation have no dependence on timing or thread count.
    template <typename F>
    QuadResult integrate_adaptive(F &&f, double lo, double hi,
                                  double rel_tol = 1e-11, double abs_tol = 0.0,
                                  int max_segments = 4000)
    {
        struct Seg
        {
            double a, b, value, error;
        };
        std::vector<Seg> segs;
        segs.reserve(64);
        Seg s0{lo, hi, 0.0, 0.0};
        detail::gk15(f, lo, hi, s0.value, s0.error);
        segs.push_back(s0);

        double total_v = s0.value, total_e = s0.error;
        while (total_e > std::max(abs_tol, rel_tol * std::fabs(total_v)) &&
               static_cast<int>(segs.size()) < max_segments)
        {
            std::size_t worst = 0;
            for (std::size_t i = 1; i < segs.size(); ++i)
                if (segs[i].error > segs[worst].error)
                    worst = i;
            Seg cur = segs[worst];
            const double mid = 0.5 * (cur.a + cur.b);
            if (mid <= cur.a || mid >= cur.b)
                break; // interval at floating point resolution
            Seg l{cur.a, mid, 0.0, 0.0}, r{mid, cur.b, 0.0, 0.0};
            detail::gk15(f, l.a, l.b, l.value, l.error);
            detail::gk15(f, r.a, r.b, r.value, r.error);
            segs[worst] = l;
            segs.push_back(r);
            total_v += l.value + r.value - cur.value;
            total_e += l.error + r.error - cur.error;
        }

        std::sort(segs.begin(), segs.end(),
                  [](const Seg &x, const Seg &y) { return x.a < y.a; });
        double v = 0.0, e = 0.0;
        for (const Seg &s : segs)
        {
            v += s.value;
            e += s.error;
        }

        QuadResult out;
        out.value = v;
        out.error = e;
        out.segments = static_cast<int>(segs.size());
        out.converged = e <= std::max(abs_tol, rel_tol * std::fabs(v));
        return out;
    }

    // Runs the adaptive rule at a tighter tolerance than required and throws only
    // if even the required tolerance was not reached.
    template <typename F>
    double integrate_or_throw(F &&f, double lo, double hi,
                              double rel_tol = 1e-11, double abs_tol = 0.0,
                              int max_segments = 4000, double accept_factor = 100.0)
    {
        QuadResult r = integrate_adaptive(f, lo, hi, rel_tol, abs_tol, max_segments);
        if (!r.converged &&
            r.error > std::max(abs_tol * accept_factor,
                               accept_factor * rel_tol * std::fabs(r.value)))
            throw numerical_error("quadrature did not converge on [" +
                                  std::to_string(lo) + ", " + std::to_string(hi) + "]");
        return r.value;
    }

} // namespace mmt

#endif
