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

#include "mmt/analytic_rates.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <tuple>

#include "mmt/numerics.hpp"
#include "mmt/quadrature.hpp"

namespace mmt
{

    namespace
    {
        double factorial(int n)
        {
            double f = 1.0;
            for (int i = 2; i <= n; ++i)
                f *= i;
            return f;
        }

        double powi(double x, int e)
        {
            if (e < 0)
                return 1.0 / powi(x, -e);
            double r = 1.0;
            while (e-- > 0)
                r *= x;
            return r;
        }

        // one additive term a * y^k * exp(-y/d) of an interference density
        struct DensityTerm
        {
            double a;
            int k;
            double d;
        };

        // when one impairment is negligible the hypoexponential density
        // collapses to plain Gamma(L, d)
        constexpr double collapse_ratio = 1e-9;

        std::vector<DensityTerm> interference_terms(int L, double d1, double d2)
        {
            std::vector<DensityTerm> terms;
            const double dmax = std::max(d1, d2);
            if (std::min(d1, d2) < collapse_ratio * dmax)
            {
                terms.push_back({1.0 / (powi(dmax, L) * factorial(L - 1)), L - 1, dmax});
                return terms;
            }
            const PdfCoefficients c = chi2_sum_pdf_coeffs(L, d1, d2);
            for (int k = 0; k < L; ++k)
            {
                terms.push_back({c.a1[k], k, c.delta1});
                terms.push_back({c.a2[k], k, c.delta2});
            }
            return terms;
        }

        // E[ln(1+SINR)] for signal coefficient alpha and interference density
        // sum_t a_t y^{k_t} e^{-y/d_t}, expanded into weighted I1 integrals
        double finite_snr_sum(int nt, int L, double alpha,
                              const std::vector<DensityTerm> &terms)
        {
            std::map<std::tuple<double, int, int>, double> memo;
            auto i1 = [&](double b, int m, int n) {
                const auto key = std::make_tuple(b, m, n);
                auto it = memo.find(key);
                if (it != memo.end())
                    return it->second;
                const double v = integral_I1(1.0 / alpha, b, m, n);
                memo.emplace(key, v);
                return v;
            };
            double s = 0.0;
            for (int i = 0; i + L + 1 <= nt; ++i)
                for (const DensityTerm &t : terms)
                    for (int l = 0; l <= i; ++l)
                    {
                        const double c =
                            t.a * factorial(l + t.k) / (factorial(l) * factorial(i - l));
                        s += c * powi(alpha, l + t.k - i + 1) *
                             i1(alpha / t.d, i, l + t.k + 1);
                    }
            return s;
        }

        // interference-limited counterpart: noise drops out, I2 integrals remain
        double ceiling_sum(int nt, int L, double alpha_hat,
                           const std::vector<DensityTerm> &terms)
        {
            std::map<std::tuple<double, int, int>, double> memo;
            auto i2 = [&](double a, int m, int n) {
                const auto key = std::make_tuple(a, m, n);
                auto it = memo.find(key);
                if (it != memo.end())
                    return it->second;
                const double v = integral_I2(a, m, n);
                memo.emplace(key, v);
                return v;
            };
            double s = 0.0;
            for (int i = 0; i + L + 1 <= nt; ++i)
                for (const DensityTerm &t : terms)
                    s += t.a * powi(alpha_hat, t.k + 1) *
                         (factorial(t.k + i) / factorial(i)) *
                         i2(alpha_hat / t.d, i, t.k + i + 1);
            return s;
        }

        void check_mode(int mode, int nt, const char *who)
        {
            if (nt < 2)
                throw std::invalid_argument(std::string(who) + ": requires Nt >= 2");
            if (mode < 2 || mode > nt)
                throw std::invalid_argument(std::string(who) + ": requires 1 < M <= Nt");
        }
    } // namespace

    ImperfectionParams ImperfectionParams::make(int nt, int bits, const DopplerParams &dop)
    {
        if (nt < 2)
            throw std::invalid_argument("ImperfectionParams: requires Nt >= 2");
        if (bits < 0)
            throw std::invalid_argument("ImperfectionParams: requires B >= 0");
        ImperfectionParams out;
        out.rho_sq = dop.rho * dop.rho;
        out.eps_sq = dop.eps_sq;
        out.bits = bits;
        out.delta = quantization_error_mean(nt, bits);
        out.xi = expected_cos2(nt, bits);
        return out;
    }

    double rate_bf(double gamma, int n)
    {
        if (!(gamma > 0.0))
            throw std::invalid_argument("rate_bf: requires gamma > 0");
        if (n < 1)
            throw std::invalid_argument("rate_bf: requires n >= 1");
        const double x = 1.0 / gamma;
        if (x > 30.0)
        {
            // low SNR: the scaled gamma terms all approach gamma and the closed
            // form loses relative accuracy; average log2(1+gamma t) over the
            // Gamma(n,1) gain density directly instead
            const double lg = std::lgamma(static_cast<double>(n));
            auto f = [gamma, n, lg](double t) {
                if (t <= 0.0)
                    return 0.0;
                return std::log1p(gamma * t) *
                       std::exp((n - 1) * std::log(t) - t - lg);
            };
            const double hi = 80.0 + 10.0 * n; // density mass beyond is ~e^-80
            return std::numbers::log2e * integrate_or_throw(f, 0.0, hi, 1e-12);
        }
        double s = 0.0;
        for (int k = 0; k < n; ++k)
            s += upper_incomplete_gamma_negint_scaled(k, x);
        return std::numbers::log2e * s;
    }

    double rate_csit_sum(int mode, double p, int nt)
    {
        if (nt < 1 || mode < 1 || mode > nt)
            throw std::invalid_argument("rate_csit_sum: requires 1 <= M <= Nt");
        if (!(p > 0.0))
            throw std::invalid_argument("rate_csit_sum: requires P > 0");
        return mode * rate_bf(p / mode, nt - mode + 1);
    }

    LossBound rate_loss_bound(int mode, double p, const ImperfectionParams &imp)
    {
        if (mode < 1)
            throw std::invalid_argument("rate_loss_bound: requires M >= 1");
        if (!(p >= 0.0))
            throw std::invalid_argument("rate_loss_bound: requires P >= 0");
        LossBound out;
        out.delta_qd = 1.0 + (1.0 - 1.0 / mode) * p *
                                 (imp.rho_sq * imp.delta + imp.eps_sq);
        out.bound_bits = std::log2(out.delta_qd);
        return out;
    }

    double rate_qd_user(int mode, double p, int nt, const ImperfectionParams &imp,
                        bool xi_in_signal)
    {
        check_mode(mode, nt, "rate_qd_user");
        if (!(p > 0.0))
            throw std::invalid_argument("rate_qd_user: requires P > 0");
        const int L = mode - 1;
        const double alpha = (xi_in_signal ? imp.xi : 1.0) * imp.rho_sq * p / mode;
        if (!(alpha > 0.0))
            return 0.0; // fully stale CSIT, no usable signal component
        const double d1 = imp.rho_sq * p * imp.delta / mode;
        const double d2 = imp.eps_sq * p / mode;
        return std::numbers::log2e *
               finite_snr_sum(nt, L, alpha, interference_terms(L, d1, d2));
    }

    double rate_single_impairment_user(int mode, double p, int nt, double kappa)
    {
        check_mode(mode, nt, "rate_single_impairment_user");
        if (!(p > 0.0))
            throw std::invalid_argument("rate_single_impairment_user: requires P > 0");
        if (!(kappa > 0.0) || !(kappa < 1.0))
            throw std::invalid_argument(
                "rate_single_impairment_user: requires 0 < kappa < 1");
        const int L = mode - 1;
        const double alpha = kappa * p / mode;
        const double beta = (1.0 - kappa) * p / mode;
        const std::vector<DensityTerm> terms = {
            {1.0 / (powi(beta, L) * factorial(L - 1)), L - 1, beta}};
        return std::numbers::log2e * finite_snr_sum(nt, L, alpha, terms);
    }

    double rate_qd_highsnr_user(int mode, int nt, const ImperfectionParams &imp)
    {
        check_mode(mode, nt, "rate_qd_highsnr_user");
        const int L = mode - 1;
        const double alpha_hat = (1.0 - imp.delta) * imp.rho_sq;
        if (!(alpha_hat > 0.0))
            return 0.0;
        const double d1 = imp.rho_sq * imp.delta;
        const double d2 = imp.eps_sq;
        if (std::max(d1, d2) <= 0.0)
            throw std::invalid_argument(
                "rate_qd_highsnr_user: no impairment, rate unbounded");
        return std::numbers::log2e *
               ceiling_sum(nt, L, alpha_hat, interference_terms(L, d1, d2));
    }

    double rate_highsnr_single_impairment_user(int mode, int nt, double alpha_hat)
    {
        check_mode(mode, nt, "rate_highsnr_single_impairment_user");
        if (!(alpha_hat > 0.0))
            throw std::invalid_argument(
                "rate_highsnr_single_impairment_user: requires alpha_hat > 0");
        const int L = mode - 1;
        const std::vector<DensityTerm> terms = {
            {1.0 / factorial(L - 1), L - 1, 1.0}};
        return std::numbers::log2e * ceiling_sum(nt, L, alpha_hat, terms);
    }

    Estimate rate_su_imperfect(double p, int nt, const ImperfectionParams &imp,
                               long long trials, std::uint64_t seed)
    {
        if (!(p > 0.0))
            throw std::invalid_argument("rate_su_imperfect: requires P > 0");
        if (nt < 2)
            throw std::invalid_argument("rate_su_imperfect: requires Nt >= 2");
        if (trials < 10000)
            throw std::invalid_argument("rate_su_imperfect: requires trials >= 10000");

        const Codebook cb(nt, imp.bits, derive_seed(seed, 0xcb5cu));
        DopplerParams dop;
        dop.rho = std::sqrt(imp.rho_sq);
        dop.eps_sq = imp.eps_sq;
        Rng rng(derive_seed(seed, 0x50c7u));

        double sum = 0.0, sum_sq = 0.0;
        for (long long t = 0; t < trials; ++t)
        {
            const Eigen::VectorXcd h_stale = draw_channel(nt, rng);
            const QuantizeResult q = quantize(h_stale, cb);
            const Eigen::VectorXcd f = cb.vector(q.index);
            const Eigen::VectorXcd h = evolve_channel(h_stale, dop, rng);
            const double r = std::log2(1.0 + p * std::norm(h.dot(f)));
            sum += r;
            sum_sq += r * r;
        }
        Estimate out;
        out.trials = trials;
        out.mean = sum / static_cast<double>(trials);
        const double var =
            std::max(0.0, sum_sq / static_cast<double>(trials) - out.mean * out.mean);
        out.std_error = std::sqrt(var / static_cast<double>(trials));
        return out;
    }

    double rate_su_proxy(double p, int nt, const ImperfectionParams &imp)
    {
        const double gamma = imp.xi * imp.rho_sq * p;
        if (!(gamma > 0.0))
            return 0.0;
        return rate_bf(gamma, nt);
    }

} // namespace mmt
