// Copyright 2026 The hbac Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// hbac: command-line front end for the cooling, error-analysis and tape
// modules. Machine output is JSON (default) or CSV; `--format text` is for
// people.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hbac/bias.h"
#include "hbac/circuit.h"
#include "hbac/cooling.h"
#include "hbac/enumeration.h"
#include "hbac/error_analysis.h"
#include "hbac/json_io.h"
#include "hbac/majority.h"
#include "hbac/tape.h"

namespace {

using hbac::format_double;
using nlohmann::json;
using Row = std::vector<std::pair<std::string, std::string>>;

struct Output {
    json record;
    std::vector<Row> rows;
    std::string text;
};

struct RateFlags {
    std::optional<double> eps, eps0, eps1, s, d;

    void add(CLI::App *cmd) {
        cmd->add_option("--eps", eps, "symmetric flip probability");
        cmd->add_option("--eps0", eps0, "0->1 flip probability");
        cmd->add_option("--eps1", eps1, "1->0 flip probability");
        cmd->add_option("--s", s, "eps0 + eps1");
        cmd->add_option("--d", d, "eps1 - eps0");
    }

    hbac::ErrorRates resolve() const {
        if (eps) {
            return hbac::ErrorRates::symmetric(*eps);
        }
        if (s || d) {
            return hbac::ErrorRates::from_sum_difference(s.value_or(0.0), d.value_or(0.0));
        }
        return hbac::ErrorRates(eps0.value_or(0.0), eps1.value_or(0.0));
    }
};

std::string rate_text(const hbac::ErrorRates &r) {
    return "eps0=" + format_double(r.eps0()) + " eps1=" + format_double(r.eps1());
}

void emit(const Output &out, const std::string &format) {
    if (format == "json") {
        std::cout << hbac::dump_json(out.record) << '\n';
    } else if (format == "csv") {
        if (out.rows.empty()) {
            return;
        }
        std::string header;
        for (const auto &[k, v] : out.rows.front()) {
            header += (header.empty() ? "" : ",") + k;
        }
        std::cout << header << '\n';
        for (const auto &row : out.rows) {
            std::string line;
            for (std::size_t i = 0; i < row.size(); i++) {
                line += (i ? "," : "") + row[i].second;
            }
            std::cout << line << '\n';
        }
    } else {
        std::cout << out.text;
    }
}

Output limits_output(const hbac::LimitReport &r) {
    Output out;
    out.record = hbac::to_json(r);
    std::string threshold = r.threshold ? format_double(*r.threshold) : "N/A";
    out.rows.push_back({
        {"model", std::string(hbac::model_name(r.model))},
        {"eps0", format_double(r.rates.eps0())},
        {"eps1", format_double(r.rates.eps1())},
        {"threshold", threshold},
        {"b_lim", format_double(r.b_lim.value())},
        {"second_order", format_double(r.b_lim_second_order)},
        {"gap", format_double(r.gap)},
        {"b_lim_update_map", format_double(r.b_lim_update_map)},
    });
    std::ostringstream t;
    t << hbac::model_name(r.model) << " " << rate_text(r.rates) << "\n"
      << "  threshold      " << threshold << (r.above_threshold ? " (exceeded)" : "") << "\n"
      << "  b_lim          " << format_double(r.b_lim.value()) << "\n"
      << "  second order   " << format_double(r.b_lim_second_order) << "\n"
      << "  gap            " << format_double(r.gap) << "\n"
      << "  update-map lim " << format_double(r.b_lim_update_map) << "\n";
    for (const auto &w : r.warnings) {
        t << "  warning: " << w << "\n";
    }
    out.text = t.str();
    return out;
}

Output cooling_output(const hbac::CoolingResult &r, const std::string &algorithm) {
    Output out;
    out.record = hbac::to_json(r);
    out.record["algorithm"] = algorithm;
    for (std::size_t i = 0; i < r.sequence.size(); i++) {
        out.rows.push_back({{"index", std::to_string(i)}, {"bias", format_double(r.sequence[i])}});
    }
    std::ostringstream t;
    t << algorithm << "\n"
      << "  final bias       " << format_double(r.final_bias.value()) << (r.reached_target ? "" : " (stalled)")
      << "\n"
      << "  levels           " << format_double(r.levels) << "\n"
      << "  bits             " << format_double(r.bits) << " (" << r.bits_ceil << ")\n"
      << "  working register " << r.working_register << "\n"
      << "  3bc steps        " << r.ledger.three_bc_ops << (r.ledger.saturated ? " (saturated)" : "") << "\n"
      << "  bath contacts    " << r.ledger.heat_bath_contacts << "\n";
    out.text = t.str();
    return out;
}

hbac::Circuit load_circuit(const std::string &name) {
    if (name == "cswap-majority") {
        return hbac::majority_circuit_cswap();
    }
    if (name == "toffoli-majority") {
        return hbac::majority_circuit_cnot_toffoli();
    }
    if (name == "cnot-cswap") {
        return hbac::cnot_cswap_circuit();
    }
    std::ifstream in(name);
    if (!in) {
        throw hbac::DomainError("cannot open circuit file " + name);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return hbac::Circuit::parse(buf.str());
}

std::vector<bool> random_values(std::size_t n, std::mt19937_64 &rng) {
    std::vector<bool> v(n);
    for (std::size_t i = 0; i < n; i++) {
        v[i] = (rng() >> 63) != 0;
    }
    return v;
}

// Fisher-Yates with plain modular reduction, so the output only depends on
// the (fully specified) mt19937_64 stream.
std::vector<std::size_t> random_permutation(std::size_t n, std::mt19937_64 &rng) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; i++) {
        p[i] = i;
    }
    for (std::size_t i = n; i > 1; i--) {
        std::swap(p[i - 1], p[rng() % i]);
    }
    return p;
}

void print_error(const std::string &kind, const std::string &message) {
    std::cout << hbac::dump_json(json{{"error", kind}, {"message", message}}) << '\n';
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Heat-bath algorithmic cooling: bias updates, error limits, schedules and tape emulation"};
    app.require_subcommand(1);
    std::string format = "json";
    app.add_option("--format", format, "json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    app.fallthrough();

    Output out;

    // update
    auto *update = app.add_subcommand("update", "one noisy majority step on equal biases");
    std::string update_model = "sym-after";
    double update_bias = 0.0;
    bool update_second = false;
    RateFlags update_rates;
    update->add_option("--model", update_model, "sym-after, sym-during, asym-after, asym-during")->capture_default_str();
    update->add_option("--bias", update_bias, "input bias")->required();
    update->add_flag("--second-order", update_second, "use the second-order polynomial where one exists");
    update_rates.add(update);
    update->callback([&] {
        hbac::BiasUpdateModel m(hbac::parse_model(update_model), update_rates.resolve(),
                                update_second ? hbac::Approximation::SECOND_ORDER : hbac::Approximation::EXACT);
        double nb = m.update(update_bias);
        out.record = {{"model", update_model}, {"rates", hbac::to_json(m.rates)}, {"bias", update_bias},
                      {"second_order", update_second}, {"new_bias", nb}};
        out.rows.push_back({{"model", update_model}, {"eps0", format_double(m.rates.eps0())},
                            {"eps1", format_double(m.rates.eps1())}, {"bias", format_double(update_bias)},
                            {"new_bias", format_double(nb)}});
        out.text = update_model + " " + rate_text(m.rates) + ": " + format_double(update_bias) + " -> " +
                   format_double(nb) + "\n";
    });

    // limits
    auto *limits = app.add_subcommand("limits", "threshold and maximum achievable bias for one model");
    std::string limits_model;
    RateFlags limits_rates;
    limits->add_option("--model", limits_model, "sym-after, sym-during, asym-after, asym-during")->required();
    limits_rates.add(limits);
    limits->callback([&] {
        hbac::BiasUpdateModel m(hbac::parse_model(limits_model), limits_rates.resolve());
        out = limits_output(hbac::limit_report(m));
    });

    // thresholds
    auto *thresholds = app.add_subcommand("thresholds", "error thresholds of the four models");
    thresholds->callback([&] {
        std::vector<std::pair<std::string, std::optional<double>>> rows = {
            {"sym-after", hbac::threshold_sym_after()},
            {"sym-during", hbac::threshold_sym_during()},
            {"asym-after", std::nullopt},
            {"asym-during", std::nullopt},
        };
        out.record = json::array();
        for (const auto &[name, value] : rows) {
            std::string shown = !value ? "N/A" : name == "sym-after" ? "1/6" : "0.048592";
            json j = {{"model", name}, {"threshold", nullptr}, {"display", shown}};
            if (value) {
                j["threshold"] = *value;
            }
            out.record.push_back(j);
            out.rows.push_back({{"model", name}, {"threshold", value ? format_double(*value) : "N/A"}});
            out.text += name + " " + shown + "\n";
        }
    });

    // efficiency
    auto *efficiency = app.add_subcommand("efficiency", "bits and steps a schedule needs to reach a target bias");
    std::string eff_algorithm;
    double eff_bi = 0.0;
    double eff_target = 0.0;
    std::string eff_mode = "approx";
    std::optional<std::string> eff_model;
    std::optional<std::string> eff_trace;
    RateFlags eff_rates;
    efficiency->add_option("--algorithm", eff_algorithm, "simple, heatbath, fibonacci")
        ->required()
        ->check(CLI::IsMember({"simple", "heatbath", "fibonacci"}));
    efficiency->add_option("--bi", eff_bi, "bath bias")->required();
    efficiency->add_option("--target", eff_target, "target bias")->required();
    efficiency->add_option("--mode", eff_mode, "approx or exact")
        ->check(CLI::IsMember({"approx", "exact"}))
        ->capture_default_str();
    efficiency->add_option("--model", eff_model, "run with a noisy update instead (exact schedule)");
    efficiency->add_option("--trace", eff_trace, "write the step trace as JSON lines to this file");
    eff_rates.add(efficiency);
    efficiency->callback([&] {
        hbac::Bias bi(eff_bi);
        hbac::Bias bt(eff_target);
        hbac::CountMode mode = eff_mode == "exact" ? hbac::CountMode::EXACT : hbac::CountMode::APPROX;
        hbac::CoolingResult r;
        if (eff_model) {
            hbac::BiasUpdateModel m(hbac::parse_model(*eff_model), eff_rates.resolve());
            r = hbac::run_with_noise(hbac::parse_schedule(eff_algorithm), bi, bt, m);
        } else if (eff_algorithm == "simple") {
            r = hbac::simple_recursive(bi, bt, mode);
        } else if (eff_algorithm == "heatbath") {
            r = hbac::heatbath_recursive(bi, bt);
        } else {
            r = hbac::fibonacci_bits_for_target(bi, bt, mode);
        }
        out = cooling_output(r, eff_algorithm);
        if (eff_trace) {
            std::ofstream f(*eff_trace);
            if (!f) {
                throw hbac::DomainError("cannot write trace file " + *eff_trace);
            }
            f << hbac::trace_jsonl(r.trace);
        }
    });

    // simulate
    auto *simulate = app.add_subcommand("simulate", "exact output bias of a circuit with noisy sites");
    std::string sim_circuit = "toffoli-majority";
    std::vector<double> sim_biases;
    std::size_t sim_output = 0;
    bool sim_dump = false;
    RateFlags sim_rates;
    simulate->add_option("--circuit", sim_circuit, "cswap-majority, toffoli-majority, cnot-cswap or a circuit file")->capture_default_str();
    simulate->add_option("--bias", sim_biases, "input bias (one value for all wires, or one per wire)")->required();
    simulate->add_option("--output-bit", sim_output, "wire whose bias is reported")->capture_default_str();
    simulate->add_flag("--dump", sim_dump, "include the circuit text");
    sim_rates.add(simulate);
    simulate->callback([&] {
        hbac::Circuit c = load_circuit(sim_circuit);
        hbac::ErrorRates rates = sim_rates.resolve();
        std::vector<hbac::Bias> biases;
        if (sim_biases.size() == 1) {
            biases.assign(c.width, hbac::Bias(sim_biases[0]));
        } else {
            for (double b : sim_biases) {
                biases.emplace_back(b);
            }
        }
        double result = hbac::enumerate_noisy_output_bias(c, biases, rates, sim_output).value();
        out.record = {{"circuit", sim_circuit}, {"width", c.width}, {"noise_sites", c.noise_sites.size()},
                      {"rates", hbac::to_json(rates)}, {"input_biases", sim_biases}, {"output_bit", sim_output},
                      {"output_bias", result}};
        if (sim_dump) {
            out.record["text"] = c.str();
        }
        out.rows.push_back({{"circuit", sim_circuit}, {"output_bit", std::to_string(sim_output)},
                            {"output_bias", format_double(result)}});
        out.text = "output bias of wire " + std::to_string(sim_output) + ": " + format_double(result) + "\n" +
                   (sim_dump ? c.str() : "");
    });

    // tape
    auto *tape = app.add_subcommand("tape", "compile and run pulse programs on the loop emulator");
    std::string tape_task = "permutation";
    std::size_t tape_triples = 3;
    std::size_t tape_head = 0;
    std::uint64_t tape_seed = 0;
    std::vector<std::size_t> tape_positions;
    std::optional<std::string> tape_replay;
    bool tape_dump = false;
    tape->add_option("--task", tape_task, "permutation, cooling or replay")
        ->check(CLI::IsMember({"permutation", "cooling", "replay"}))
        ->capture_default_str();
    tape->add_option("--triples", tape_triples, "number of ABC triples (odd)")->capture_default_str();
    tape->add_option("--head", tape_head, "head triple")->capture_default_str();
    tape->add_option("--seed", tape_seed, "seed for random bit values and permutations")->capture_default_str();
    tape->add_option("--positions", tape_positions, "three cells for --task cooling")->expected(3);
    tape->add_option("--program", tape_replay, "pulse program file for --task replay");
    tape->add_flag("--dump", tape_dump, "include the pulse program");
    tape->callback([&] {
        std::mt19937_64 rng(tape_seed);
        hbac::ChainLoop loop(tape_triples, tape_head, random_values(3 * tape_triples, rng));
        hbac::PulseProgram program;
        bool verified = true;
        if (tape_task == "permutation") {
            auto perm = random_permutation(loop.size(), rng);
            hbac::TapeRun run = hbac::apply_permutation(loop, perm);
            for (std::size_t i = 0; i < perm.size(); i++) {
                verified = verified && run.loop.cells()[perm[i]] == loop.cells()[i];
            }
            program = std::move(run.program);
        } else if (tape_task == "cooling") {
            if (tape_positions.size() != 3) {
                throw hbac::DomainError("--task cooling needs --positions a b c");
            }
            std::array<std::size_t, 3> pos{tape_positions[0], tape_positions[1], tape_positions[2]};
            program = hbac::compile_cooling_step(loop, pos);
            hbac::ChainLoop after = loop;
            after.run(program);
            bool a = loop.cells()[pos[0]].value;
            bool b = loop.cells()[pos[1]].value;
            bool c = loop.cells()[pos[2]].value;
            verified = after.cells()[pos[0]].value == hbac::majority3(a, b, c);
        } else {
            if (!tape_replay) {
                throw hbac::DomainError("--task replay needs --program");
            }
            std::ifstream in(*tape_replay);
            if (!in) {
                throw hbac::DomainError("cannot open pulse program " + *tape_replay);
            }
            std::stringstream buf;
            buf << in.rdbuf();
            program = hbac::parse_program(buf.str());
        }
        hbac::ChainLoop final_loop = loop;
        final_loop.run(program);
        std::vector<int> values;
        for (bool v : final_loop.values()) {
            values.push_back(v ? 1 : 0);
        }
        out.record = {{"task", tape_task}, {"triples", tape_triples}, {"head", tape_head}, {"seed", tape_seed},
                      {"pulses", program.size()}, {"verified", verified}, {"final_ids", final_loop.ids()},
                      {"final_values", values}};
        if (tape_dump) {
            out.record["program"] = hbac::dump_program(program);
        }
        out.rows.push_back({{"task", tape_task}, {"triples", std::to_string(tape_triples)},
                            {"seed", std::to_string(tape_seed)}, {"pulses", std::to_string(program.size())},
                            {"verified", verified ? "true" : "false"}});
        out.text = "# " + tape_task + ": " + std::to_string(program.size()) + " pulses, " +
                   (verified ? "verified" : "MISMATCH") + "\n" + (tape_dump ? hbac::dump_program(program) : "");
    });

    // table
    auto *table = app.add_subcommand("table", "summary of limits for all four models");
    double table_eps = 0.01;
    double table_s = 0.02;
    double table_d = 0.01;
    table->add_option("--eps", table_eps, "symmetric rate")->capture_default_str();
    table->add_option("--s", table_s, "asymmetric s = eps0 + eps1")->capture_default_str();
    table->add_option("--d", table_d, "asymmetric d = eps1 - eps0")->capture_default_str();
    table->callback([&] {
        out.record = json::array();
        std::ostringstream t;
        for (const auto &row : hbac::summary_table(table_eps, table_s, table_d)) {
            out.record.push_back(hbac::to_json(row));
            out.rows.push_back({{"model", std::string(hbac::model_name(row.model))}, {"threshold", row.threshold},
                                {"second_order_form", row.second_order_form}, {"b_lim", format_double(row.b_lim)},
                                {"second_order", format_double(row.b_lim_second_order)}});
            t << hbac::model_name(row.model) << "  threshold " << row.threshold << "  b_lim "
              << format_double(row.b_lim) << "  " << row.second_order_form << " = "
              << format_double(row.b_lim_second_order) << "\n";
        }
        out.text = t.str();
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        print_error("parse", e.what());
        return 2;
    } catch (const hbac::ParseError &e) {
        print_error("input", e.what());
        return 1;
    } catch (const hbac::DomainError &e) {
        print_error("domain", e.what());
        return 1;
    }
    emit(out, format);
    return 0;
}
