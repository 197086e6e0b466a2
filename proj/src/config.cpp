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

#include "mmt/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

namespace mmt
{

    namespace
    {
        using nlohmann::json;

        const std::set<std::string> experiment_kinds = {
            "rate-table", "operating-region", "simulate",
            "schedule",   "feedback-budget",  "high-snr-mode"};

        void diag(std::vector<Diagnostic> &diags, const std::string &path,
                  const std::string &reason)
        {
            diags.push_back({path, reason});
        }

        bool read_int(const json &v, const std::string &path, int &out,
                      std::vector<Diagnostic> &diags)
        {
            if (!v.is_number_integer())
            {
                diag(diags, path, "expected an integer");
                return false;
            }
            out = v.get<int>();
            return true;
        }

        bool read_ll(const json &v, const std::string &path, long long &out,
                     std::vector<Diagnostic> &diags)
        {
            if (!v.is_number_integer())
            {
                diag(diags, path, "expected an integer");
                return false;
            }
            out = v.get<long long>();
            return true;
        }

        bool read_u64(const json &v, const std::string &path, std::uint64_t &out,
                      std::vector<Diagnostic> &diags)
        {
            if (v.is_number_unsigned())
            {
                out = v.get<std::uint64_t>();
                return true;
            }
            if (v.is_number_integer() && v.get<long long>() >= 0)
            {
                out = static_cast<std::uint64_t>(v.get<long long>());
                return true;
            }
            diag(diags, path, "expected a nonnegative integer");
            return false;
        }

        bool read_double(const json &v, const std::string &path, double &out,
                         std::vector<Diagnostic> &diags)
        {
            if (!v.is_number())
            {
                diag(diags, path, "expected a number");
                return false;
            }
            out = v.get<double>();
            return true;
        }

        bool read_bool(const json &v, const std::string &path, bool &out,
                       std::vector<Diagnostic> &diags)
        {
            if (!v.is_boolean())
            {
                diag(diags, path, "expected true or false");
                return false;
            }
            out = v.get<bool>();
            return true;
        }

        bool read_string(const json &v, const std::string &path, std::string &out,
                         std::vector<Diagnostic> &diags)
        {
            if (!v.is_string())
            {
                diag(diags, path, "expected a string");
                return false;
            }
            out = v.get<std::string>();
            return true;
        }

        // either an explicit list of numbers or {start, step, stop} inclusive
        std::vector<double> parse_grid(const json &v, const std::string &path,
                                       std::vector<Diagnostic> &diags)
        {
            std::vector<double> out;
            if (v.is_array())
            {
                for (const json &e : v)
                {
                    if (!e.is_number())
                    {
                        diag(diags, path, "expected an array of numbers");
                        return {};
                    }
                    out.push_back(e.get<double>());
                }
                if (out.empty())
                    diag(diags, path, "grid must be nonempty");
                return out;
            }
            if (v.is_object())
            {
                double start = 0.0, step = 0.0, stop = 0.0;
                bool ok = v.contains("start") && v.contains("step") && v.contains("stop");
                ok = ok && read_double(v["start"], path + ".start", start, diags);
                ok = ok && read_double(v["step"], path + ".step", step, diags);
                ok = ok && read_double(v["stop"], path + ".stop", stop, diags);
                if (!ok)
                {
                    diag(diags, path, "grid object needs numeric start, step, stop");
                    return {};
                }
                if (!(step > 0.0) || stop < start)
                {
                    diag(diags, path, "requires step > 0 and stop >= start");
                    return {};
                }
                for (double x = start; x <= stop + 1e-9 * step; x += step)
                    out.push_back(x);
                return out;
            }
            diag(diags, path, "expected an array or {start, step, stop}");
            return {};
        }

        std::vector<int> parse_int_list(const json &v, const std::string &path,
                                        std::vector<Diagnostic> &diags)
        {
            std::vector<int> out;
            if (!v.is_array())
            {
                diag(diags, path, "expected an array of integers");
                return {};
            }
            for (const json &e : v)
            {
                if (!e.is_number_integer())
                {
                    diag(diags, path, "expected an array of integers");
                    return {};
                }
                out.push_back(e.get<int>());
            }
            if (out.empty())
                diag(diags, path, "list must be nonempty");
            return out;
        }

        void apply_override(json &doc, const std::string &kv,
                            std::vector<Diagnostic> &diags)
        {
            const std::size_t eq = kv.find('=');
            if (eq == std::string::npos || eq == 0)
            {
                diag(diags, "--set " + kv, "expected key=value");
                return;
            }
            const std::string key = kv.substr(0, eq);
            const std::string val = kv.substr(eq + 1);
            json parsed;
            try
            {
                parsed = json::parse(val);
            }
            catch (const json::parse_error &)
            {
                parsed = val; // bare words are strings
            }
            try
            {
                json *cur = &doc;
                std::size_t pos = 0;
                for (;;)
                {
                    const std::size_t dot = key.find('.', pos);
                    const std::string part =
                        key.substr(pos, dot == std::string::npos ? std::string::npos
                                                                 : dot - pos);
                    if (part.empty())
                    {
                        diag(diags, "--set " + kv, "empty path segment");
                        return;
                    }
                    if (dot == std::string::npos)
                    {
                        (*cur)[part] = parsed;
                        return;
                    }
                    cur = &(*cur)[part];
                    pos = dot + 1;
                }
            }
            catch (const json::exception &e)
            {
                diag(diags, "--set " + kv, e.what());
            }
        }

        void apply_json(const json &doc, ExperimentConfig &cfg,
                        std::vector<Diagnostic> &diags)
        {
            static const std::set<std::string> top = {"experiment", "system", "run"};
            for (const auto &el : doc.items())
                if (!top.count(el.key()))
                    diag(diags, el.key(), "unknown section");

            auto section = [&](const char *name) -> const json * {
                if (!doc.contains(name))
                    return nullptr;
                if (!doc[name].is_object())
                {
                    diag(diags, name, "expected an object");
                    return nullptr;
                }
                return &doc[name];
            };

            if (const json *sys = section("system"))
                for (const auto &el : sys->items())
                {
                    const std::string path = "system." + el.key();
                    const json &v = el.value();
                    if (v.is_null())
                        continue;
                    const std::string &k = el.key();
                    if (k == "nt")
                        read_int(v, path, cfg.nt, diags);
                    else if (k == "users")
                        read_int(v, path, cfg.users, diags);
                    else if (k == "fc_ghz")
                        read_double(v, path, cfg.fc_ghz, diags);
                    else if (k == "tau_ms")
                    {
                        double d;
                        if (read_double(v, path, d, diags))
                            cfg.tau_ms = d;
                    }
                    else if (k == "ts_ms")
                    {
                        double d;
                        if (read_double(v, path, d, diags))
                            cfg.ts_ms = d;
                    }
                    else if (k == "v_kmh")
                    {
                        double d;
                        if (read_double(v, path, d, diags))
                            cfg.v_kmh = d;
                    }
                    else if (k == "fd_ts")
                    {
                        double d;
                        if (read_double(v, path, d, diags))
                            cfg.fd_ts = d;
                    }
                    else if (k == "bits")
                    {
                        int b;
                        if (read_int(v, path, b, diags))
                            cfg.bits = b;
                    }
                    else if (k == "total_bits")
                    {
                        long long b;
                        if (read_ll(v, path, b, diags))
                            cfg.total_bits = b;
                    }
                    else if (k == "snr_db")
                        cfg.snr_db = parse_grid(v, path, diags);
                    else if (k == "precoder")
                        read_string(v, path, cfg.precoder, diags);
                    else if (k == "mode")
                    {
                        int m;
                        if (read_int(v, path, m, diags))
                            cfg.mode = m;
                    }
                    else if (k == "perfect_csit")
                        read_bool(v, path, cfg.perfect_csit, diags);
                    else if (k == "speeds_kmh")
                        cfg.speeds_kmh = parse_grid(v, path, diags);
                    else if (k == "bits_grid")
                        cfg.bits_grid = parse_int_list(v, path, diags);
                    else if (k == "fd_ts_grid")
                        cfg.fd_ts_grid = parse_grid(v, path, diags);
                    else if (k == "per_user_bits")
                        cfg.per_user_bits = parse_int_list(v, path, diags);
                    else if (k == "slots")
                        read_ll(v, path, cfg.slots, diags);
                    else
                        diag(diags, path, "unknown field");
                }

            if (const json *run = section("run"))
                for (const auto &el : run->items())
                {
                    const std::string path = "run." + el.key();
                    const json &v = el.value();
                    if (v.is_null())
                        continue;
                    const std::string &k = el.key();
                    if (k == "trials")
                        read_ll(v, path, cfg.trials, diags);
                    else if (k == "seed")
                        read_u64(v, path, cfg.seed, diags);
                    else if (k == "out")
                        read_string(v, path, cfg.out_dir, diags);
                    else if (k == "format")
                        read_string(v, path, cfg.format, diags);
                    else if (k == "plot")
                        read_bool(v, path, cfg.plot, diags);
                    else if (k == "workers")
                        read_int(v, path, cfg.workers, diags);
                    else
                        diag(diags, path, "unknown field");
                }
        }

        void validate_semantics(const ExperimentConfig &cfg,
                                std::vector<Diagnostic> &diags)
        {
            const std::string &kind = cfg.kind;
            if (cfg.nt < 2 || cfg.nt > 16)
                diag(diags, "system.nt", "requires 2 <= Nt <= 16");
            if (cfg.users < 1)
                diag(diags, "system.users", "requires at least one user");
            if (!(cfg.fc_ghz > 0.0))
                diag(diags, "system.fc_ghz", "must be positive");
            if (cfg.tau_ms && !(*cfg.tau_ms > 0.0))
                diag(diags, "system.tau_ms", "must be positive");
            if (cfg.ts_ms && !(*cfg.ts_ms > 0.0))
                diag(diags, "system.ts_ms", "must be positive");
            if (cfg.v_kmh && !(*cfg.v_kmh >= 0.0))
                diag(diags, "system.v_kmh", "must be nonnegative");
            if (cfg.fd_ts && !(*cfg.fd_ts > 0.0 && *cfg.fd_ts < 0.5))
                diag(diags, "system.fd_ts", "requires 0 < fd_ts < 0.5");
            if (cfg.v_kmh && cfg.fd_ts)
                diag(diags, "system.v_kmh", "mutually exclusive with system.fd_ts");
            if (cfg.bits && (*cfg.bits < 0 || *cfg.bits > 60))
                diag(diags, "system.bits", "requires 0 <= B <= 60");
            if (cfg.total_bits && *cfg.total_bits < 0)
                diag(diags, "system.total_bits", "must be nonnegative");
            if (cfg.mode && (*cfg.mode < 1 || *cfg.mode > cfg.nt))
                diag(diags, "system.mode", "requires 1 <= M <= Nt");
            if (cfg.precoder != "zf" && cfg.precoder != "mmse")
                diag(diags, "system.precoder", "must be 'zf' or 'mmse'");
            if (cfg.slots < 1)
                diag(diags, "system.slots", "requires at least one slot");
            if (cfg.trials < 1)
                diag(diags, "run.trials", "requires at least one trial");
            if (cfg.format != "csv" && cfg.format != "json")
                diag(diags, "run.format", "must be 'csv' or 'json'");
            if (cfg.workers < 0 || cfg.workers > 64)
                diag(diags, "run.workers", "requires 0 <= workers <= 64");

            const bool imperfect = !(kind == "simulate" && cfg.perfect_csit);
            const bool needs_doppler =
                imperfect && (kind == "rate-table" || kind == "simulate" ||
                              kind == "schedule" || kind == "feedback-budget");
            if (needs_doppler)
            {
                if (!cfg.v_kmh && !cfg.fd_ts)
                    diag(diags, "system.v_kmh",
                         "required (or give system.fd_ts instead)");
                if (cfg.v_kmh && !cfg.tau_ms && !cfg.ts_ms)
                    diag(diags, "system.tau_ms",
                         "required alongside v_kmh (or give system.ts_ms)");
            }

            if (kind != "high-snr-mode" && cfg.snr_db.empty())
                diag(diags, "system.snr_db", "required");

            if ((kind == "rate-table" || kind == "schedule" ||
                 (kind == "simulate" && !cfg.perfect_csit)) &&
                !cfg.bits)
                diag(diags, "system.bits", "required");
            // these kinds materialize codebooks in memory
            if ((kind == "rate-table" || kind == "simulate") && cfg.bits &&
                *cfg.bits > 20)
                diag(diags, "system.bits",
                     "codebook search above 20 bits is impractical");

            if (kind == "operating-region")
            {
                const bool by_speed = cfg.bits.has_value();
                const bool by_bits = cfg.v_kmh.has_value();
                if (by_speed == by_bits)
                    diag(diags, "system.bits",
                         "set exactly one of bits (sweep speeds_kmh) or v_kmh "
                         "(sweep bits_grid)");
                else if (by_speed && cfg.speeds_kmh.empty())
                    diag(diags, "system.speeds_kmh", "required when bits is fixed");
                else if (by_bits && cfg.bits_grid.empty())
                    diag(diags, "system.bits_grid", "required when v_kmh is fixed");
                if (cfg.fd_ts)
                    diag(diags, "system.fd_ts",
                         "not used here; give fc_ghz, tau_ms and a speed axis");
                if (!cfg.tau_ms && !cfg.ts_ms)
                    diag(diags, "system.tau_ms", "required (or give system.ts_ms)");
            }

            if (kind == "feedback-budget")
            {
                if (!cfg.total_bits)
                    diag(diags, "system.total_bits", "required");
                for (int b : cfg.per_user_bits)
                    if (b < 1 || b > 16)
                        diag(diags, "system.per_user_bits",
                             "baseline sweep bits must be in 1..16");
            }

            if (kind == "high-snr-mode")
            {
                if (cfg.bits_grid.empty())
                    diag(diags, "system.bits_grid", "required");
                for (int b : cfg.bits_grid)
                    if (b < 1 || b > 60)
                        diag(diags, "system.bits_grid", "bits must be in 1..60");
                if (cfg.fd_ts_grid.empty())
                    diag(diags, "system.fd_ts_grid", "required");
                for (double f : cfg.fd_ts_grid)
                    if (!(f > 0.0 && f < 0.5))
                        diag(diags, "system.fd_ts_grid",
                             "requires 0 < fd_ts < 0.5");
            }
        }
    } // namespace

    bool known_experiment_kind(const std::string &kind)
    {
        return experiment_kinds.count(kind) > 0;
    }

    double ExperimentConfig::delay_s() const
    {
        if (tau_ms)
            return *tau_ms * 1e-3;
        if (ts_ms)
            return *ts_ms * 1e-3;
        throw std::invalid_argument("config: no feedback delay (tau_ms or ts_ms)");
    }

    DopplerParams ExperimentConfig::doppler() const
    {
        if (fd_ts)
            return doppler_from_fdts(*fd_ts);
        if (!v_kmh)
            throw std::invalid_argument("config: no Doppler source (v_kmh or fd_ts)");
        return doppler_correlation(*v_kmh, fc_ghz * 1e9, delay_s());
    }

    ExperimentConfig default_config(const std::string &kind)
    {
        ExperimentConfig c;
        c.kind = kind;
        auto arange = [](double lo, double step, double hi) {
            std::vector<double> v;
            for (double x = lo; x <= hi + 1e-9 * step; x += step)
                v.push_back(x);
            return v;
        };
        c.snr_db = arange(-10.0, 2.0, 40.0);
        if (kind == "rate-table" || kind == "simulate")
        {
            c.bits = 18;
            c.v_kmh = 10.0;
            c.ts_ms = 1.0;
        }
        else if (kind == "operating-region")
        {
            c.bits = 15;
            c.tau_ms = 5.0;
            c.speeds_kmh = arange(2.0, 2.0, 30.0);
        }
        else if (kind == "schedule")
        {
            c.bits = 18;
            c.v_kmh = 10.0;
            c.ts_ms = 1.0;
            c.snr_db = {10.0};
        }
        else if (kind == "feedback-budget")
        {
            c.total_bits = 100;
            c.v_kmh = 10.0;
            c.ts_ms = 1.0;
            c.snr_db = {15.0};
            c.per_user_bits = {5, 10, 15};
            c.trials = 2000;
        }
        else if (kind == "high-snr-mode")
        {
            c.bits_grid = {10, 20, 30};
            c.snr_db.clear();
            for (int i = 0; i < 13; ++i)
                c.fd_ts_grid.push_back(std::pow(10.0, -3.0 + i / 6.0));
        }
        return c;
    }

    std::vector<Diagnostic> load_config(const std::string &config_path,
                                        const std::string &cli_kind,
                                        const std::vector<std::string> &overrides,
                                        ExperimentConfig &out)
    {
        std::vector<Diagnostic> diags;
        json doc = json::object();
        if (!config_path.empty())
        {
            std::ifstream in(config_path);
            if (!in)
            {
                diag(diags, config_path, "unreadable file");
                return diags;
            }
            try
            {
                in >> doc;
            }
            catch (const json::parse_error &e)
            {
                diag(diags, config_path, e.what());
                return diags;
            }
            if (!doc.is_object())
            {
                diag(diags, config_path, "top level must be an object");
                return diags;
            }
        }
        for (const std::string &kv : overrides)
            apply_override(doc, kv, diags);
        if (!diags.empty())
            return diags;

        std::string kind = cli_kind;
        if (doc.contains("experiment"))
        {
            std::string fk;
            if (read_string(doc["experiment"], "experiment", fk, diags))
            {
                if (kind.empty())
                    kind = fk;
                else if (fk != kind)
                    diag(diags, "experiment",
                         "'" + fk + "' conflicts with the '" + kind + "' command");
            }
        }
        if (kind.empty())
        {
            diag(diags, "experiment", "required");
            return diags;
        }
        if (!known_experiment_kind(kind))
        {
            diag(diags, "experiment", "unknown kind '" + kind + "'");
            return diags;
        }

        out = default_config(kind);
        out.kind = kind;

        // picking the other parameterization in the file displaces the default
        // one instead of colliding with it
        auto sys_has = [&doc](const char *k) {
            return doc.contains("system") && doc["system"].is_object() &&
                   doc["system"].contains(k) && !doc["system"][k].is_null();
        };
        if (sys_has("fd_ts") && !sys_has("v_kmh"))
            out.v_kmh.reset();
        if (kind == "operating-region" &&
            (sys_has("v_kmh") || sys_has("bits_grid")))
        {
            out.bits.reset();
            out.speeds_kmh.clear();
        }

        if (!config_path.empty() &&
            !(doc.contains("system") && doc["system"].is_object() &&
              doc["system"].contains("nt")))
            diag(diags, "system.nt", "required");

        apply_json(doc, out, diags);
        validate_semantics(out, diags);
        return diags;
    }

    nlohmann::json config_echo(const ExperimentConfig &cfg)
    {
        json sys;
        sys["nt"] = cfg.nt;
        sys["users"] = cfg.users;
        sys["fc_ghz"] = cfg.fc_ghz;
        if (cfg.tau_ms)
            sys["tau_ms"] = *cfg.tau_ms;
        if (cfg.ts_ms)
            sys["ts_ms"] = *cfg.ts_ms;
        if (cfg.v_kmh)
            sys["v_kmh"] = *cfg.v_kmh;
        if (cfg.fd_ts)
            sys["fd_ts"] = *cfg.fd_ts;
        if (cfg.bits)
            sys["bits"] = *cfg.bits;
        if (cfg.total_bits)
            sys["total_bits"] = *cfg.total_bits;
        if (!cfg.snr_db.empty())
            sys["snr_db"] = cfg.snr_db;
        sys["precoder"] = cfg.precoder;
        if (cfg.mode)
            sys["mode"] = *cfg.mode;
        sys["perfect_csit"] = cfg.perfect_csit;
        if (!cfg.speeds_kmh.empty())
            sys["speeds_kmh"] = cfg.speeds_kmh;
        if (!cfg.bits_grid.empty())
            sys["bits_grid"] = cfg.bits_grid;
        if (!cfg.fd_ts_grid.empty())
            sys["fd_ts_grid"] = cfg.fd_ts_grid;
        if (!cfg.per_user_bits.empty())
            sys["per_user_bits"] = cfg.per_user_bits;
        sys["slots"] = cfg.slots;

        json run;
        run["trials"] = cfg.trials;
        run["seed"] = cfg.seed;
        run["out"] = cfg.out_dir;
        run["format"] = cfg.format;
        run["plot"] = cfg.plot;
        run["workers"] = cfg.workers;

        return json{{"experiment", cfg.kind}, {"system", sys}, {"run", run}};
    }

} // namespace mmt
