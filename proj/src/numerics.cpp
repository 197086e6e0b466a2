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

#include "mmt/numerics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "mmt/quadrature.hpp"

namespace mmt
{

    namespace
    {
        constexpr double euler_gamma = 0.57721566490153286060651209008240243;

        // integer power by repeated multiplication, exact argument handling for
        // the small exponents used here
        double ipow(double x, int n)
        {
            double r = 1.0;
            for (int i = 0; i < n; ++i)
                r *= x;
            return r;
        }

        double factorial_d(int n)
        {
            double r = 1.0;
            for (int i = 2; i <= n; ++i)
                r *= static_cast<double>(i);
            return r;
        }
    } // namespace

    // ----------------------------------------------------------------------
    // Bessel J0
    // ----------------------------------------------------------------------

    double bessel_j0(double x)
    {
        x = std::fabs(x);
        if (!(x < std::numeric_limits<double>::infinity()))
            throw std::invalid_argument("bessel_j0: argument must be finite");
        if (x < 1e-7)
            return 1.0 - 0.25 * x * x; // next term is x^4/64, below 1e-28 here

        // Trapezoidal rule on the full period of J0(x) = (1/2pi) int cos(x sin t) dt.
        // Periodic trapezoid aliasing error is 2*(J_N(x) + J_2N(x) + ...), and
        // |J_160(x)| < 1e-25 for x <= 80.
        constexpr int N = 160;
        constexpr double two_pi = 6.283185307179586476925286766559;
        double acc = 0.0;
        for (int j = 0; j < N; ++j)
            acc += std::cos(x * std::sin(two_pi * static_cast<double>(j) / N));
        return acc / N;
    }

    // ----------------------------------------------------------------------
    // exponential integral and incomplete gamma
    // ----------------------------------------------------------------------

    double exp_integral_e1(double x)
    {
        if (!(x > 0.0))
            throw std::invalid_argument("exp_integral_e1: requires x > 0");

        if (x < 1.0)
        {
            // E1(x) = -gamma - ln x + sum_{k>=1} (-1)^(k+1) x^k / (k k!)
            double sum = 0.0, term = 1.0;
            for (int k = 1; k <= 40; ++k)
            {
                term *= x / k;
                double add = term / k;
                sum += (k % 2 == 1) ? add : -add;
                if (add < 1e-18 * std::fabs(sum))
                    break;
            }
            return -euler_gamma - std::log(x) + sum;
        }

        // modified Lentz continued fraction, E1(x) = e^{-x} / (x+1 - 1/(x+3 - 4/(...)))
        constexpr double tiny = 1e-290;
        double b = x + 1.0;
        double c = 1.0 / tiny;
        double d = 1.0 / b;
        double h = d;
        for (int i = 1; i <= 200; ++i)
        {
            double an = -static_cast<double>(i) * i;
            b += 2.0;
            d = an * d + b;
            if (std::fabs(d) < tiny)
                d = tiny;
            c = b + an / c;
            if (std::fabs(c) < tiny)
                c = tiny;
            d = 1.0 / d;
            double del = d * c;
            h *= del;
            if (std::fabs(del - 1.0) < 1e-16)
                break;
        }
        return h * std::exp(-x);
    }

    double upper_incomplete_gamma_negint_scaled(int k, double x)
    {
        if (k < 0)
            throw std::invalid_argument("upper_incomplete_gamma_negint: k must be >= 0");
        if (!(x > 0.0))
            throw std::invalid_argument("upper_incomplete_gamma_negint: requires x > 0");

        if (x >= 1.0)
        {
            // Lentz continued fraction for Gamma(a,x) with a = -k; the fraction
            // value h equals e^x x^k Gamma(-k,x) directly.
            const double a = -static_cast<double>(k);
            constexpr double tiny = 1e-290;
            double b = x + 1.0 - a;
            double c = 1.0 / tiny;
            double d = 1.0 / b;
            double h = d;
            for (int i = 1; i <= 300; ++i)
            {
                double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
                b += 2.0;
                d = an * d + b;
                if (std::fabs(d) < tiny)
                    d = tiny;
                c = b + an / c;
                if (std::fabs(c) < tiny)
                    c = tiny;
                d = 1.0 / d;
                double del = d * c;
                h *= del;
                if (std::fabs(del - 1.0) < 1e-16)
                    break;
            }
            return h;
        }

        // x < 1: downward recurrence in scaled form,
        // s_j = e^x x^j Gamma(-j,x), s_0 = e^x E1(x), s_j = (1 - x s_{j-1}) / j
        double s = std::exp(x) * exp_integral_e1(x);
        for (int j = 1; j <= k; ++j)
            s = (1.0 - x * s) / j;
        return s;
    }

    double upper_incomplete_gamma_negint(int k, double x)
    {
        double s = upper_incomplete_gamma_negint_scaled(k, x);
        // e^{-x} x^{-k} s, assembled in the log domain to delay underflow
        double lg = -x - static_cast<double>(k) * std::log(x);
        return s * std::exp(lg);
    }

    // ----------------------------------------------------------------------
    // beta function
    // ----------------------------------------------------------------------

    namespace
    {
        // Stirling tail: lgamma(z) = (z-1/2)ln z - z + ln(2pi)/2 + tail(z)
        double stirling_tail(double z)
        {
            const double z2 = z * z;
            return (1.0 / 12.0 - (1.0 / 360.0 - (1.0 / 1260.0) / z2) / z2) / z;
        }
    } // namespace

    double beta_fn(double x, double y)
    {
        if (!(x > 0.0) || !(y > 0.0))
            throw std::invalid_argument("beta_fn: requires positive arguments");
        if (x < y)
            std::swap(x, y);

        if (x >= 1e4)
        {
            // lgamma(x) - lgamma(x+y) evaluated as one expression; subtracting two
            // large lgamma values directly would cost ~6 digits at x = 2^20
            double diff = -(x - 0.5) * std::log1p(y / x) - y * std::log(x + y) + y +
                          stirling_tail(x) - stirling_tail(x + y);
            return std::exp(std::lgamma(y) + diff);
        }
        return std::exp(std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y));
    }

    // ----------------------------------------------------------------------
    // semi-infinite integrals
    // ----------------------------------------------------------------------

    double integral_I1(double a, double b, int m, int n)
    {
        if (!(a > 0.0))
            throw std::invalid_argument("integral_I1: requires a > 0");
        if (!(b > 0.0))
            throw std::invalid_argument("integral_I1: requires b > 0");
        if (m < 0 || n < 1)
            throw std::invalid_argument("integral_I1: requires m >= 0, n >= 1");

        auto f = [=](double x) {
            return ipow(x, m) * std::exp(-a * x) / (ipow(x + b, n) * (x + 1.0));
        };

        // [0, x1] covers the x^m e^{-ax} peak at m/a, then geometric extension
        // until an analytic tail bound is negligible against the accumulated value
        double x1 = std::max(1.0, 2.0 * (m + 1) / a);
        double value = integrate_or_throw(f, 0.0, x1, 1e-12, 0.0, 4000);
        double X = x1;
        for (int step = 0; step < 300; ++step)
        {
            // exponential-decay bound needs a*X >= 2(m+1); polynomial bound needs m < n
            double bound = std::numeric_limits<double>::infinity();
            double ex = std::exp(-a * X);
            if (a * X >= 2.0 * (m + 1))
                bound = 2.0 * ipow(X, m) * ex / (a * ipow(X + b, n) * (X + 1.0));
            if (m < n)
                bound = std::min(bound,
                                 ex / (static_cast<double>(n - m) * ipow(X, n - m)));
            if (bound <= 1e-13 * std::max(value, 1e-300))
                break;
            value += integrate_or_throw(f, X, 2.0 * X, 1e-12,
                                        1e-14 * std::max(value, 1e-300), 4000);
            X *= 2.0;
        }
        return value;
    }

    double integral_I2(double a, int m, int n)
    {
        if (!(a > 0.0))
            throw std::invalid_argument("integral_I2: requires a > 0");
        if (m < 0 || n < 1)
            throw std::invalid_argument("integral_I2: requires m >= 0, n >= 1");
        if (m > n - 1)
            throw std::invalid_argument("integral_I2: requires m <= n - 1 (tail diverges)");

        // substitution x = t/(1-t) maps to the finite, smooth integrand
        // t^m (1-t)^(n-m-1) / (t + a(1-t))^n on [0,1]
        auto g = [=](double t) {
            double u = 1.0 - t;
            return ipow(t, m) * ipow(u, n - m - 1) / ipow(t + a * u, n);
        };
        return integrate_or_throw(g, 0.0, 1.0, 1e-12, 0.0, 4000);
    }

    // ----------------------------------------------------------------------
    // hypoexponential-style density of a weighted sum of two Gamma(L,1) draws
    // ----------------------------------------------------------------------

    double PdfCoefficients::pdf(double y) const
    {
        double s1 = 0.0, s2 = 0.0, yk = 1.0;
        for (int k = 0; k < L; ++k)
        {
            s1 += a1[static_cast<std::size_t>(k)] * yk;
            s2 += a2[static_cast<std::size_t>(k)] * yk;
            yk *= y;
        }
        return s1 * std::exp(-y / delta1) + s2 * std::exp(-y / delta2);
    }

    PdfCoefficients chi2_sum_pdf_coeffs(int L, double delta1, double delta2)
    {
        if (L < 1)
            throw std::invalid_argument("chi2_sum_pdf_coeffs: requires L >= 1");
        if (!(delta1 > 0.0) || !(delta2 > 0.0))
            throw std::invalid_argument("chi2_sum_pdf_coeffs: requires positive deltas");

        PdfCoefficients out;
        out.L = L;
        out.delta1 = delta1;

        // the (delta1 - delta2) denominators blow up at equality; nudge past it
        double gap = std::fabs(delta1 - delta2) / std::max(delta1, delta2);
        if (gap <= 1e-6)
        {
            delta2 = delta2 * (delta2 > delta1 ? 1.0 + 1e-5 : 1.0 - 1e-5);
            out.nudged = true;
        }
        out.delta2 = delta2;

        out.a1.resize(static_cast<std::size_t>(L));
        out.a2.resize(static_cast<std::size_t>(L));
        const double fL1 = factorial_d(L - 1);
        const double r12 = delta1 / (delta1 - delta2); // (d1/(d1-d2))
        const double r21 = delta2 / (delta2 - delta1);
        for (int i = 0; i < L; ++i)
        {
            double c = factorial_d(2 * (L - 1) - i) /
                       (factorial_d(i) * factorial_d(L - 1 - i));
            out.a1[static_cast<std::size_t>(i)] =
                c / (ipow(delta1, i + 1) * fL1) * ipow(r12, L) * ipow(r21, L - 1 - i);
            out.a2[static_cast<std::size_t>(i)] =
                c / (ipow(delta2, i + 1) * fL1) * ipow(r21, L) * ipow(r12, L - 1 - i);
        }
        return out;
    }

    double gamma_cdf_int(int n, double x)
    {
        if (n < 1)
            throw std::invalid_argument("gamma_cdf_int: requires n >= 1");
        if (x <= 0.0)
            return 0.0;
        // P(n,x) = 1 - e^{-x} sum_{k<n} x^k/k!
        double term = 1.0, sum = 1.0;
        for (int k = 1; k < n; ++k)
        {
            term *= x / k;
            sum += term;
        }
        double q = sum * std::exp(-x);
        return q >= 1.0 ? 0.0 : 1.0 - q;
    }

} // namespace mmt
