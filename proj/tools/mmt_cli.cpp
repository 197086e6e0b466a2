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

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "mmt/common.hpp"
#include "mmt/config.hpp"
#include "mmt/experiment.hpp"

namespace
{
    struct CliArgs
    {
        std::string config_path;
        std::vector<std::string> overrides;
        std::string seed, trials, out_dir, format;
        bool plot = false;
    };

    void add_common(CLI::App *cmd, CliArgs &a)
    {
        cmd->add_option("--config", a.config_path, "JSON config file");
        cmd->add_option("--set", a.overrides,
                        "dotted-path override, e.g. system.nt=6 (repeatable)");
        cmd->add_option("--seed", a.seed, "root RNG seed");
        cmd->add_option("--trials", a.trials, "Monte Carlo trials per point");
        cmd->add_option("--out", a.out_dir, "output directory");
        cmd->add_option("--format", a.format, "output format: csv or json");
        cmd->add_flag("--plot", a.plot, "also write a gnuplot script");
    }

    // dedicated flags beat --set; applied last as run.* overrides
    std::vector<std::string> effective_overrides(const CliArgs &a)
    {
        std::vector<std::string> ov = a.overrides;
        if (!a.seed.empty())
            ov.push_back("run.seed=" + a.seed);
        if (!a.trials.empty())
            ov.push_back("run.trials=" + a.trials);
        if (!a.out_dir.empty())
            ov.push_back("run.out=" + a.out_dir);
        if (!a.format.empty())
            ov.push_back("run.format=" + a.format);
        if (a.plot)
            ov.push_back("run.plot=true");
        return ov;
    }

    int run_kind(const std::string &kind, const CliArgs &a)
    {
        mmt::ExperimentConfig cfg;
        const std::vector<mmt::Diagnostic> diags =
            mmt::load_config(a.config_path, kind, effective_overrides(a), cfg);
        if (!diags.empty())
        {
            for (const mmt::Diagnostic &d : diags)
                std::fprintf(stderr, "%s\n", mmt::to_string(d).c_str());
            return 2;
        }
        try
        {
            mmt::run_experiment(cfg);
        }
        catch (const std::invalid_argument &e)
        {
            std::fprintf(stderr, "error: %s\n", e.what());
            return 2;
        }
        catch (const mmt::numerical_error &e)
        {
            std::fprintf(stderr, "numerical failure: %s\n", e.what());
            return 3;
        }
        catch (const std::exception &e)
        {
            std::fprintf(stderr, "failure: %s\n", e.what());
            return 3;
        }
        return 0;
    }

    int run_validate(const CliArgs &a, const std::string &kind_arg)
    {
        mmt::ExperimentConfig cfg;
        const std::vector<mmt::Diagnostic> diags =
            mmt::load_config(a.config_path, kind_arg, effective_overrides(a), cfg);
        if (diags.empty())
        {
            std::printf("ok: %s\n", cfg.kind.c_str());
            return 0;
        }
        for (const mmt::Diagnostic &d : diags)
            std::printf("%s\n", mmt::to_string(d).c_str());
        return 2;
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"mmt: multi-mode transmission rates, regions, and simulations "
                 "for the quantized delayed-feedback broadcast channel"};
    app.require_subcommand(1);

    static const char *kinds[] = {"rate-table",      "operating-region", "simulate",
                                  "schedule",        "feedback-budget",  "high-snr-mode"};
    static const char *briefs[] = {
        "analytic and simulated sum rates per mode over an SNR sweep",
        "best mode over an (SNR, speed) or (SNR, bits) grid",
        "Monte Carlo sum rate for chosen modes",
        "round-robin multi-mode scheduling over a user queue",
        "total feedback budget split across modes vs a user-selection baseline",
        "rate ceilings and dominant mode over (bits, normalized Doppler)"};

    std::vector<CliArgs> args(7);
    std::vector<CLI::App *> cmds;
    for (int i = 0; i < 6; ++i)
    {
        CLI::App *c = app.add_subcommand(kinds[i], briefs[i]);
        add_common(c, args[static_cast<std::size_t>(i)]);
        cmds.push_back(c);
    }
    CLI::App *val = app.add_subcommand("validate", "check a config and print diagnostics");
    std::string val_kind;
    val->add_option("--experiment", val_kind, "experiment kind to validate against");
    add_common(val, args[6]);

    CLI11_PARSE(app, argc, argv);

    for (int i = 0; i < 6; ++i)
        if (cmds[static_cast<std::size_t>(i)]->parsed())
            return run_kind(kinds[i], args[static_cast<std::size_t>(i)]);
    if (val->parsed())
        return run_validate(args[6], val_kind);
    return 2;
}
