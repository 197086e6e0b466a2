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

#include "mmt/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "mmt/mode_policy.hpp"
#include "mmt/montecarlo.hpp"
#include "mmt/scheduler.hpp"
#include "mmt/simd.hpp"

namespace mmt
{

    namespace
    {
        using nlohmann::json;

        std::string fmt9(double v)
        {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.9g", v);
            return buf;
        }

        struct Table
        {
            std::vector<std::string> columns;
            std::vector<std::vector<json>> rows;
        };

        std::string cell_text(const json &c)
        {
            if (c.is_null())
                return "";
            if (c.is_number_float())
                return fmt9(c.get<double>());
            if (c.is_number_unsigned())
                return std::to_string(c.get<unsigned long long>());
            if (c.is_number_integer())
                return std::to_string(c.get<long long>());
            if (c.is_string())
                return c.get<std::string>();
            return c.dump();
        }

        std::string to_csv(const Table &t)
        {
            std::string s;
            for (std::size_t i = 0; i < t.columns.size(); ++i)
            {
                if (i)
                    s += ',';
                s += t.columns[i];
            }
            s += '\n';
            for (const std::vector<json> &row : t.rows)
            {
                for (std::size_t i = 0; i < row.size(); ++i)
                {
                    if (i)
                        s += ',';
                    s += cell_text(row[i]);
                }
                s += '\n';
            }
            return s;
        }

        json to_json_doc(const Table &t)
        {
            json rows = json::array();
            for (const std::vector<json> &row : t.rows)
                rows.push_back(row);
            return json{{"columns", t.columns}, {"rows", rows}};
        }

        struct RunOutput
        {
            Table table;
            json counters = json::object();
            std::string plot_script;
        };

        PrecoderKind kind_of(const std::string &name)
        {
            return name == "mmse" ? PrecoderKind::mmse : PrecoderKind::zero_forcing;
        }

        double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

        std::string plot_preamble()
        {
            return "set datafile separator ','\n"
                   "set key autotitle columnhead\n"
                   "set grid\n";
        }

        RunOutput run_rate_table(const ExperimentConfig &cfg)
        {
            const int nt = cfg.nt;
            const ImperfectionParams imp =
                ImperfectionParams::make(nt, *cfg.bits, cfg.doppler());

            RunOutput out;
            Table &t = out.table;
            t.columns.push_back("snr_db");
            for (int m = 1; m <= nt; ++m)
                t.columns.push_back("analytic_m" + std::to_string(m));
            for (int m = 1; m <= nt; ++m)
                t.columns.push_back("mc_m" + std::to_string(m));
            for (int m = 1; m <= nt; ++m)
                t.columns.push_back("mc_se_m" + std::to_string(m));
            for (int m = 2; m <= nt; ++m)
                t.columns.push_back("ceiling_m" + std::to_string(m));
            for (int m = 1; m <= nt; ++m)
                t.columns.push_back("loss_bound_m" + std::to_string(m));
            t.columns.push_back("chosen_analytic");
            t.columns.push_back("chosen_mc");

            long long redraw_total = 0;
            for (std::size_t si = 0; si < cfg.snr_db.size(); ++si)
            {
                const double p = db_to_linear(cfg.snr_db[si]);
                std::vector<json> row;
                row.push_back(cfg.snr_db[si]);

                std::vector<double> an(static_cast<std::size_t>(nt) + 1, 0.0);
                an[1] = rate_su_proxy(p, nt, imp);
                for (int m = 2; m <= nt; ++m)
                    an[static_cast<std::size_t>(m)] = m * rate_qd_user(m, p, nt, imp);
                for (int m = 1; m <= nt; ++m)
                    row.push_back(an[static_cast<std::size_t>(m)]);

                std::vector<double> mc(static_cast<std::size_t>(nt) + 1, 0.0);
                std::vector<double> se(static_cast<std::size_t>(nt) + 1, 0.0);
                for (int m = 1; m <= nt; ++m)
                {
                    SimScenario sc;
                    sc.nt = nt;
                    sc.mode = m;
                    sc.p = p;
                    sc.kind = kind_of(cfg.precoder);
                    sc.users = {imp};
                    sc.trials = cfg.trials;
                    sc.seed = derive_seed(cfg.seed, 0x7ab1u,
                                          static_cast<std::uint64_t>(m),
                                          static_cast<std::uint64_t>(si));
                    sc.workers = cfg.workers;
                    long long redraws = 0;
                    const Estimate e = simulate_sum_rate(sc, &redraws);
                    redraw_total += redraws;
                    mc[static_cast<std::size_t>(m)] = e.mean;
                    se[static_cast<std::size_t>(m)] = e.std_error;
                }
                for (int m = 1; m <= nt; ++m)
                    row.push_back(mc[static_cast<std::size_t>(m)]);
                for (int m = 1; m <= nt; ++m)
                    row.push_back(se[static_cast<std::size_t>(m)]);

                for (int m = 2; m <= nt; ++m)
                    row.push_back(m * rate_qd_highsnr_user(m, nt, imp));
                for (int m = 1; m <= nt; ++m)
                    row.push_back(m * rate_loss_bound(m, p, imp).bound_bits);

                int ca = 1, cm = 1;
                for (int m = 2; m <= nt; ++m)
                {
                    if (an[static_cast<std::size_t>(m)] > an[static_cast<std::size_t>(ca)])
                        ca = m;
                    if (mc[static_cast<std::size_t>(m)] > mc[static_cast<std::size_t>(cm)])
                        cm = m;
                }
                row.push_back(ca);
                row.push_back(cm);
                t.rows.push_back(std::move(row));
            }
            out.counters["conditioning_redraws"] = redraw_total;
            out.plot_script =
                plot_preamble() +
                "set xlabel 'SNR (dB)'\nset ylabel 'sum rate (bits/s/Hz)'\n"
                "plot for [i=2:" + std::to_string(1 + nt) + "] 'rate-table.csv' "
                "using 1:i with lines, \\\n     for [i=" + std::to_string(2 + nt) +
                ":" + std::to_string(1 + 2 * nt) + "] 'rate-table.csv' "
                "using 1:i with points\n";
            return out;
        }

        RunOutput run_operating_region(const ExperimentConfig &cfg)
        {
            RegionQuery q;
            q.snr_db = cfg.snr_db;
            if (cfg.bits)
            {
                q.fixed_bits = *cfg.bits;
                q.speeds_kmh = cfg.speeds_kmh;
            }
            else
            {
                q.fixed_speed_kmh = *cfg.v_kmh;
                q.bits_grid = cfg.bits_grid;
            }
            const RegionGrid grid =
                operating_region(cfg.nt, cfg.fc_ghz * 1e9, cfg.delay_s(), q);

            RunOutput out;
            out.table.columns = {"snr_db", grid.axis2.name, "mode"};
            for (std::size_t i1 = 0; i1 < grid.axis1.values.size(); ++i1)
                for (std::size_t i2 = 0; i2 < grid.axis2.values.size(); ++i2)
                    out.table.rows.push_back({grid.axis1.values[i1],
                                              grid.axis2.values[i2],
                                              grid.at(i1, i2)});
            out.plot_script =
                plot_preamble() +
                "set xlabel 'SNR (dB)'\nset ylabel '" + grid.axis2.name + "'\n"
                "plot 'operating-region.csv' using 1:2:3 with points palette pt 7 notitle\n";
            return out;
        }

        RunOutput run_simulate(const ExperimentConfig &cfg)
        {
            const int nt = cfg.nt;
            std::vector<int> modes;
            if (cfg.mode)
                modes.push_back(*cfg.mode);
            else
                for (int m = 1; m <= nt; ++m)
                    modes.push_back(m);

            ImperfectionParams imp;
            if (!cfg.perfect_csit)
                imp = ImperfectionParams::make(nt, *cfg.bits, cfg.doppler());

            RunOutput out;
            out.table.columns = {"snr_db", "mode",    "mc",    "mc_se",
                                 "analytic", "trials", "redraws"};
            long long redraw_total = 0;
            for (std::size_t si = 0; si < cfg.snr_db.size(); ++si)
            {
                const double p = db_to_linear(cfg.snr_db[si]);
                for (int m : modes)
                {
                    SimScenario sc;
                    sc.nt = nt;
                    sc.mode = m;
                    sc.p = p;
                    sc.kind = kind_of(cfg.precoder);
                    sc.perfect_csit = cfg.perfect_csit;
                    if (!cfg.perfect_csit)
                        sc.users = {imp};
                    sc.trials = cfg.trials;
                    sc.seed = derive_seed(cfg.seed, 0x51d0u,
                                          static_cast<std::uint64_t>(m),
                                          static_cast<std::uint64_t>(si));
                    sc.workers = cfg.workers;
                    long long redraws = 0;
                    const Estimate e = simulate_sum_rate(sc, &redraws);
                    redraw_total += redraws;
                    double analytic;
                    if (cfg.perfect_csit)
                        analytic = rate_csit_sum(m, p, nt);
                    else if (m == 1)
                        analytic = rate_su_proxy(p, nt, imp);
                    else
                        analytic = m * rate_qd_user(m, p, nt, imp);
                    out.table.rows.push_back({cfg.snr_db[si], m, e.mean, e.std_error,
                                              analytic, e.trials, redraws});
                }
            }
            out.counters["conditioning_redraws"] = redraw_total;
            out.plot_script =
                plot_preamble() +
                "set xlabel 'SNR (dB)'\nset ylabel 'sum rate (bits/s/Hz)'\n"
                "plot 'simulate.csv' using 1:3 with points\n";
            return out;
        }

        RunOutput run_schedule(const ExperimentConfig &cfg)
        {
            const int nt = cfg.nt;
            const double p = db_to_linear(cfg.snr_db.front());
            const ImperfectionParams imp =
                ImperfectionParams::make(nt, *cfg.bits, cfg.doppler());
            const std::vector<UserProfile> profiles(
                static_cast<std::size_t>(cfg.users), UserProfile{p, imp});

            RunOutput out;
            out.table.columns = {"slot", "size", "users", "predicted_rate"};
            UserQueue q = UserQueue::make(cfg.users);
            std::vector<long long> served(static_cast<std::size_t>(cfg.users), 0);
            long long fed_back_bits = 0;
            for (long long s = 0; s < cfg.slots; ++s)
            {
                auto [d, nq] = mmt_round_robin_step(q, profiles, nt, s);
                q = nq;
                std::string ids;
                for (std::size_t i = 0; i < d.selected.size(); ++i)
                {
                    if (i)
                        ids += ' ';
                    ids += std::to_string(d.selected[i]);
                    ++served[static_cast<std::size_t>(d.selected[i] - 1)];
                }
                fed_back_bits += static_cast<long long>(d.selected.size()) * *cfg.bits;
                out.table.rows.push_back({s, static_cast<long long>(d.selected.size()),
                                          ids, d.predicted_sum_rate});
            }
            out.counters["service_counts"] = served;
            out.counters["instantaneous_feedback_bits"] = fed_back_bits;
            out.counters["full_feedback_bits"] =
                static_cast<long long>(cfg.users) * *cfg.bits * cfg.slots;
            out.counters["selected_mode"] =
                select_mode(nt, p, imp, RateBasis::imperfect_analytic).chosen_mode;
            out.plot_script =
                plot_preamble() +
                "set xlabel 'slot'\nset ylabel 'scheduled users'\n"
                "plot 'schedule.csv' using 1:2 with steps notitle\n";
            return out;
        }

        RunOutput run_feedback_budget(const ExperimentConfig &cfg)
        {
            const int nt = cfg.nt;
            const long long bt = *cfg.total_bits;
            // codebooks this wide cannot be materialized for simulation
            const int mc_bits_cap = 16;

            RunOutput out;
            out.table.columns = {"snr_db", "scheme", "mode_or_k", "bits",
                                 "analytic", "mc",    "mc_se",    "chosen"};
            long long redraw_total = 0;
            for (std::size_t si = 0; si < cfg.snr_db.size(); ++si)
            {
                const double p = db_to_linear(cfg.snr_db[si]);
                std::vector<double> an(static_cast<std::size_t>(nt) + 1, 0.0);
                std::vector<int> split(static_cast<std::size_t>(nt) + 1, 0);
                for (int m = 1; m <= nt; ++m)
                {
                    const int b = feedback_budget_split(bt, m);
                    split[static_cast<std::size_t>(m)] = b;
                    const ImperfectionParams imp =
                        ImperfectionParams::make(nt, b, cfg.doppler());
                    an[static_cast<std::size_t>(m)] =
                        m == 1 ? rate_su_proxy(p, nt, imp)
                               : m * rate_qd_user(m, p, nt, imp);
                }
                int chosen = 1;
                for (int m = 2; m <= nt; ++m)
                    if (an[static_cast<std::size_t>(m)] > an[static_cast<std::size_t>(chosen)])
                        chosen = m;

                for (int m = 1; m <= nt; ++m)
                {
                    const int b = split[static_cast<std::size_t>(m)];
                    json mc = nullptr, mc_se = nullptr;
                    if (b <= mc_bits_cap)
                    {
                        SimScenario sc;
                        sc.nt = nt;
                        sc.mode = m;
                        sc.p = p;
                        sc.kind = kind_of(cfg.precoder);
                        sc.users = {ImperfectionParams::make(nt, b, cfg.doppler())};
                        sc.trials = cfg.trials;
                        sc.seed = derive_seed(cfg.seed, 0xfbb1u,
                                              static_cast<std::uint64_t>(m),
                                              static_cast<std::uint64_t>(si));
                        sc.workers = cfg.workers;
                        long long redraws = 0;
                        const Estimate e = simulate_sum_rate(sc, &redraws);
                        redraw_total += redraws;
                        mc = e.mean;
                        mc_se = e.std_error;
                    }
                    out.table.rows.push_back({cfg.snr_db[si], "mmt", m, b,
                                              an[static_cast<std::size_t>(m)], mc,
                                              mc_se, m == chosen ? 1 : 0});
                }

                for (int b : cfg.per_user_bits)
                {
                    const int k = static_cast<int>(bt / b);
                    if (k < 1)
                        continue;
                    const Estimate e = opportunistic_zf_baseline(
                        k, b, p, nt, cfg.trials,
                        derive_seed(cfg.seed, 0x05f0u, static_cast<std::uint64_t>(b),
                                    static_cast<std::uint64_t>(si)));
                    out.table.rows.push_back({cfg.snr_db[si], "us-zf", k, b, nullptr,
                                              e.mean, e.std_error, nullptr});
                }
            }
            out.counters["conditioning_redraws"] = redraw_total;
            out.plot_script =
                plot_preamble() +
                "set xlabel 'feedback bits per user'\nset ylabel 'sum rate (bits/s/Hz)'\n"
                "plot 'feedback-budget.csv' using 4:6 with points\n";
            return out;
        }

        RunOutput run_high_snr_mode(const ExperimentConfig &cfg)
        {
            const int nt = cfg.nt;
            RunOutput out;
            out.table.columns = {"bits", "fd_ts"};
            for (int m = 2; m <= nt; ++m)
                out.table.columns.push_back("ceiling_m" + std::to_string(m));
            out.table.columns.push_back("dominant_mode");
            for (int b : cfg.bits_grid)
                for (double f : cfg.fd_ts_grid)
                {
                    const ImperfectionParams imp =
                        ImperfectionParams::make(nt, b, doppler_from_fdts(f));
                    std::vector<json> row{b, f};
                    for (int m = 2; m <= nt; ++m)
                        row.push_back(m * rate_qd_highsnr_user(m, nt, imp));
                    row.push_back(dominant_high_snr_mode(nt, f, b));
                    out.table.rows.push_back(std::move(row));
                }
            out.plot_script =
                plot_preamble() +
                "set logscale x\nset xlabel 'f_d T_s'\nset ylabel 'ceiling (bits/s/Hz)'\n"
                "plot for [i=3:" + std::to_string(1 + nt) + "] 'high-snr-mode.csv' "
                "using 2:i with linespoints\n";
            return out;
        }

        void write_file(const std::filesystem::path &path, const std::string &content)
        {
            std::ofstream f(path, std::ios::binary);
            if (!f)
                throw std::invalid_argument("cannot write " + path.string());
            f << content;
            if (!f)
                throw std::invalid_argument("write failed for " + path.string());
        }
    } // namespace

    void run_experiment(const ExperimentConfig &cfg)
    {
        const auto t0 = std::chrono::steady_clock::now();

        RunOutput out;
        if (cfg.kind == "rate-table")
            out = run_rate_table(cfg);
        else if (cfg.kind == "operating-region")
            out = run_operating_region(cfg);
        else if (cfg.kind == "simulate")
            out = run_simulate(cfg);
        else if (cfg.kind == "schedule")
            out = run_schedule(cfg);
        else if (cfg.kind == "feedback-budget")
            out = run_feedback_budget(cfg);
        else if (cfg.kind == "high-snr-mode")
            out = run_high_snr_mode(cfg);
        else
            throw std::invalid_argument("unknown experiment kind: " + cfg.kind);

        const double wall_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                      t0)
                .count();

        namespace fs = std::filesystem;
        fs::create_directories(cfg.out_dir);
        const fs::path stem = fs::path(cfg.out_dir) / cfg.kind;

        std::vector<std::string> outputs;
        if (cfg.format == "csv")
        {
            write_file(stem.string() + ".csv", to_csv(out.table));
            outputs.push_back(cfg.kind + ".csv");
        }
        else
        {
            write_file(stem.string() + ".json", to_json_doc(out.table).dump(2) + "\n");
            outputs.push_back(cfg.kind + ".json");
        }
        if (cfg.plot)
        {
            write_file(stem.string() + ".gp", out.plot_script);
            outputs.push_back(cfg.kind + ".gp");
        }

        const json manifest{{"config", config_echo(cfg)},
                            {"seed", cfg.seed},
                            {"version", mmt_version},
                            {"kernel", simd::active_kernel_name()},
                            {"wall_ms", wall_ms},
                            {"counters", out.counters},
                            {"outputs", outputs}};
        write_file(stem.string() + "_manifest.json", manifest.dump(2) + "\n");
    }

} // namespace mmt
