// Copyright 2026 The nsbox Authors
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

// nsbox: command-line front end over box, marginal and model files.
//
// Exit codes: 0 success (or a decided locality verdict), 1 I/O or parse error,
// 2 validation or constraint failure, 3 locality undecided at the requested tolerance.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "nsbox/box.hpp"
#include "nsbox/classical.hpp"
#include "nsbox/gallery.hpp"
#include "nsbox/io.hpp"
#include "nsbox/locality.hpp"
#include "nsbox/quantum.hpp"

namespace {

using namespace nsbox;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitUndecided = 3;

class IoError : public Error {
   public:
    using Error::Error;
};

struct Options {
    std::string format = "text";
    std::string input = "-";
    std::string output = "-";
    std::string kind = "neg-meas";
    bool compressed = false;
    bool nonnegative = false;
    double tol = kDefaultTolerance;
    double cap = kDefaultVertexCap;
    std::string functional;
    std::string sample_input;
    std::int64_t shots = 100000;
    std::uint64_t seed = 0;
    std::string gallery_name;
    std::string scenario = "2,2/2,2";
    std::string strategy;
};

std::string read_input(const std::string &path) {
    std::ostringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string &path, const std::string &text) {
    if (path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
        throw IoError("cannot write '" + path + "'");
    }
}

/// Collects report lines for either human-readable or key=value output.
class Report {
   public:
    explicit Report(bool machine) : machine_(machine) {
    }
    void add(const std::string &key, const std::string &value) {
        if (machine_) {
            out_ << key << "=" << value << "\n";
        } else {
            out_ << key << ": " << value << "\n";
        }
    }
    void text(const std::string &line) {
        if (!machine_) {
            out_ << line << "\n";
        }
    }
    std::string str() const {
        return out_.str();
    }

   private:
    bool machine_;
    std::ostringstream out_;
};

std::string yes_no(bool v) {
    return v ? "true" : "false";
}

QuasiBox load_box(const Options &o) {
    return read_box(read_input(o.input));
}

int cmd_validate(const Options &o) {
    const QuasiBox box = load_box(o);
    const ValidationReport report = validate(box, o.nonnegative);
    Report r(o.format == "machine");
    r.add("scenario", box.scenario().to_string());
    r.add("normalized", yes_no(report.normalized()));
    for (const auto &f : report.normalization_failures) {
        r.add("normalization_failure", "x=" + join_one_based(f.inputs) + " sum=" + to_string(f.sum));
    }
    r.add("nonnegative", o.nonnegative ? yes_no(report.negative_entries.empty()) : std::string("unchecked"));
    for (const auto &e : report.negative_entries) {
        r.add("negative_entry", "a=" + join_one_based(e.outcomes) + " x=" + join_one_based(e.inputs) +
                                    " value=" + to_string(e.value));
    }
    const auto ns = is_nonsignalling(box);
    r.add("nonsignalling", yes_no(ns.nonsignalling));
    if (ns.witness) {
        r.add("signalling_witness", ns.witness->describe());
    }
    r.add("valid", yes_no(report.ok()));
    write_output(o.output, r.str());
    return report.ok() ? kExitOk : kExitInvalid;
}

int cmd_marginals(const Options &o) {
    write_output(o.output, write_marginals(canonical_marginals(load_box(o))));
    return kExitOk;
}

int cmd_from_marginals(const Options &o) {
    write_output(o.output, write_box(from_marginals(read_marginals(read_input(o.input)))));
    return kExitOk;
}

ClassicalModel build_model(const Options &o) {
    const QuasiBox box = load_box(o);
    ClassicalModel m = parse_model_kind(o.kind) == ModelKind::NegativeMeasurements ? build_negative_measurements(box)
                                                                                   : build_negative_state(box);
    return o.compressed ? compress(m) : m;
}

int cmd_model(const Options &o) {
    write_output(o.output, write_model(build_model(o)));
    return kExitOk;
}

int cmd_eval(const Options &o) {
    const std::string text = read_input(o.input);
    switch (detect_document(text)) {
        case DocumentKind::ClassicalModel:
            write_output(o.output, write_box(evaluate(read_model(text))));
            return kExitOk;
        case DocumentKind::QuantumModel:
            write_output(o.output, write_box(evaluate_trace(read_quantum(text))));
            return kExitOk;
        default:
            throw StructuralError("eval expects a classical or quantum model file");
    }
}

int cmd_compress(const Options &o) {
    write_output(o.output, write_model(compress(read_model(read_input(o.input)))));
    return kExitOk;
}

int cmd_quantum(const Options &o) {
    write_output(o.output, write_quantum(lift(build_model(o))));
    return kExitOk;
}

int cmd_quantum_verify(const Options &o) {
    const QuantumModel qm = read_quantum(read_input(o.input));
    const QuantumReport q = verify(qm);
    Report r(o.format == "machine");
    r.add("kind", to_string(q.kind));
    if (!q.shape_error.empty()) {
        r.add("shape_error", q.shape_error);
    }
    r.add("dimension", std::to_string(q.dimension));
    r.add("complete", yes_no(q.complete()));
    for (const auto &f : q.completeness_failures) {
        r.add("completeness_failure", "party=" + std::to_string(f.party + 1) + " x=" + std::to_string(f.input + 1) +
                                          " basis=" + std::to_string(f.label + 1) + " sum=" + to_string(f.sum));
    }
    r.add("trace", to_string(q.trace));
    r.add("trace_one", yes_no(q.trace_one()));
    r.add("state_positive", yes_no(q.state_positive));
    r.add("state_min", to_string(q.state_min));
    r.add("state_negative_entries", std::to_string(q.state_negative_count));
    r.add("measurements_positive", yes_no(q.measurements_positive));
    r.add("measurements_projective", yes_no(q.measurements_projective));
    r.add("measurement_min", to_string(q.measurement_min));
    r.add("measurement_negative_entries", std::to_string(q.measurement_negative_count));
    r.add("commuting", yes_no(q.commuting));
    r.add("well_formed", yes_no(q.well_formed()));
    write_output(o.output, r.str());
    return q.well_formed() ? kExitOk : kExitInvalid;
}

int cmd_local(const Options &o) {
    const QuasiBox box = load_box(o);
    LocalityOptions opts;
    opts.tolerance = o.tol;
    opts.vertex_cap = o.cap;
    if (o.functional == "chsh") {
        opts.candidates.push_back(chsh_functional());
    } else if (!o.functional.empty()) {
        throw ArgumentError("unknown functional '" + o.functional + "' (known: chsh)");
    }
    const LocalityCertificate cert = is_local(box, opts);
    const bool machine = o.format == "machine";
    Report r(machine);
    if (const auto *local = std::get_if<LocalCertificate>(&cert)) {
        r.add("verdict", "LOCAL");
        r.add("support", std::to_string(local->weights.size()));
        for (const auto &[strategy, weight] : local->weights) {
            r.add("weight[" + strategy.to_string() + "]", to_string(weight));
        }
    } else {
        const auto &nl = std::get<NonLocalCertificate>(cert);
        r.add("verdict", "NONLOCAL");
        r.add("box_value", to_string(nl.box_value));
        r.add("local_bound", to_string(nl.local_bound));
        std::ostringstream approx;
        approx << std::setprecision(12) << nl.box_value.get_d() << " > " << nl.local_bound.get_d();
        r.text("approximately " + approx.str());
        const Scenario &s = box.scenario();
        for (std::size_t xi = 0; xi < s.input_tuples().size(); ++xi) {
            for (std::size_t ai = 0; ai < s.output_tuples().size(); ++ai) {
                const Rational &c = nl.functional.at(ai, xi);
                if (sgn(c) != 0) {
                    r.add("functional[" + join_one_based(s.output_tuples().unflatten(ai)) + "|" +
                              join_one_based(s.input_tuples().unflatten(xi)) + "]",
                          to_string(c));
                }
            }
        }
    }
    write_output(o.output, r.str());
    return kExitOk;
}

int cmd_negativity(const Options &o) {
    const ClassicalModel m = read_model(read_input(o.input));
    const Negativity neg = negativity(m);
    Report r(o.format == "machine");
    r.add("kind", to_string(m.kind));
    r.add("state_negativity", to_string(neg.state));
    r.add("response_negativity", to_string(neg.response));
    write_output(o.output, r.str());
    return kExitOk;
}

int cmd_sample(const Options &o) {
    const ClassicalModel m = read_model(read_input(o.input));
    const auto inputs = split_one_based(o.sample_input, m.scenario.inputs());
    const SampleEstimate est = sample_signed(m, inputs, o.shots, o.seed);
    Report r(o.format == "machine");
    r.add("input", join_one_based(inputs));
    r.add("shots", std::to_string(est.shots));
    r.add("seed", std::to_string(o.seed));
    for (std::size_t ai = 0; ai < est.mean.size(); ++ai) {
        std::ostringstream v;
        v << std::setprecision(10) << est.mean[ai] << " +- " << est.standard_error[ai];
        if (o.format == "machine") {
            r.add("estimate[" + join_one_based(m.scenario.output_tuples().unflatten(ai)) + "]", v.str());
        } else {
            r.add("p(" + join_one_based(m.scenario.output_tuples().unflatten(ai)) + "|" + join_one_based(inputs) + ")",
                  v.str());
        }
    }
    write_output(o.output, r.str());
    return kExitOk;
}

DeterministicStrategy parse_strategy(const Scenario &s, const std::string &text) {
    DeterministicStrategy strategy;
    if (text.empty()) {
        for (int k = 0; k < s.parties(); ++k) {
            strategy.outcomes.emplace_back(static_cast<std::size_t>(s.inputs(k)), 0);
        }
        return strategy;
    }
    std::size_t pos = 0;
    for (int k = 0; k < s.parties(); ++k) {
        auto semi = text.find(';', pos);
        if ((semi == std::string::npos) != (k == s.parties() - 1)) {
            throw ArgumentError("strategy needs one ';'-separated outcome list per party");
        }
        const std::string part = text.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
        std::vector<int> radices(static_cast<std::size_t>(s.inputs(k)), s.outputs(k));
        strategy.outcomes.push_back(split_one_based(part, radices));
        pos = semi + 1;
    }
    return strategy;
}

int cmd_gallery(const Options &o) {
    const std::string &name = o.gallery_name;
    QuasiBox box;
    if (name == "pr") {
        box = pr_box();
    } else if (name == "tsirelson") {
        box = tsirelson_box();
    } else {
        const Scenario s = Scenario::parse(o.scenario);
        if (name == "uniform") {
            box = uniform_box(s);
        } else if (name == "deterministic") {
            box = deterministic_box(s, parse_strategy(s, o.strategy));
        } else if (name == "random-ns") {
            box = random_nonsignalling_box(s, o.seed);
        } else if (name == "random-local") {
            box = random_local_box(s, o.seed);
        } else {
            throw ArgumentError("unknown gallery box '" + name + "'");
        }
    }
    write_output(o.output, write_box(box));
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"nsbox: exact non-signalling boxes, quasi-classical and diagonal quantum models, locality"};
    app.set_version_flag("--version", std::string("nsbox 0.1.0"));
    app.require_subcommand(1);
    Options o;
    app.add_option("--format", o.format, "Report style")->check(CLI::IsMember({"text", "machine"}))->capture_default_str();

    auto add_io = [&](CLI::App *sub) {
        sub->add_option("file", o.input, "Input file ('-' or omitted: stdin)");
        sub->add_option("-o,--output", o.output, "Output file (default: stdout)");
        sub->add_option("--format", o.format, "Report style")->check(CLI::IsMember({"text", "machine"}));
    };
    auto add_kind = [&](CLI::App *sub) {
        sub->add_option("--kind", o.kind, "neg-meas (quasi responses) or neg-state (quasi state)")
            ->check(CLI::IsMember({"neg-meas", "neg-state"}))
            ->required();
        sub->add_flag("--compressed", o.compressed, "Merge last-outcome labels into eta");
    };

    std::map<std::string, int (*)(const Options &)> handlers;
    auto sub = [&](const char *name, const char *help, int (*fn)(const Options &)) {
        CLI::App *s = app.add_subcommand(name, help);
        handlers[name] = fn;
        return s;
    };

    auto *validate_cmd = sub("validate", "Check normalization (and optionally non-negativity) of a box", cmd_validate);
    add_io(validate_cmd);
    validate_cmd->add_flag("--nonnegative", o.nonnegative, "Also require every entry to be >= 0");

    add_io(sub("marginals", "Write the canonical marginal table of a non-signalling box", cmd_marginals));
    add_io(sub("from-marginals", "Rebuild a box from its canonical marginal table", cmd_from_marginals));

    auto *model_cmd = sub("model", "Build a quasi-classical hidden-variable model of a box", cmd_model);
    add_io(model_cmd);
    add_kind(model_cmd);

    add_io(sub("eval", "Evaluate a classical or quantum model back to a box", cmd_eval));
    add_io(sub("compress", "Merge last-outcome hidden labels of a model", cmd_compress));

    auto *quantum_cmd = sub("quantum", "Build the commuting diagonal quantum model of a box", cmd_quantum);
    add_io(quantum_cmd);
    add_kind(quantum_cmd);

    add_io(sub("quantum-verify", "Check completeness, trace and positivity of a quantum model", cmd_quantum_verify));

    auto *local_cmd = sub("local", "Decide locality with an exactly verified certificate", cmd_local);
    add_io(local_cmd);
    local_cmd->add_option("--tol", o.tol, "LP tolerance")->capture_default_str();
    local_cmd->add_option("--cap", o.cap, "Maximum number of deterministic strategies")->capture_default_str();
    local_cmd->add_option("--functional", o.functional, "Candidate Bell functional tried first (chsh)");

    add_io(sub("negativity", "Report state and response negativity of a model", cmd_negativity));

    auto *sample_cmd = sub("sample", "Signed Monte Carlo estimate of a model's box at one input", cmd_sample);
    add_io(sample_cmd);
    sample_cmd->add_option("--input", o.sample_input, "Input tuple, e.g. 1,1")->required();
    sample_cmd->add_option("--shots", o.shots, "Number of draws")->capture_default_str();
    sample_cmd->add_option("--seed", o.seed, "RNG seed")->capture_default_str();

    auto *gallery_cmd = sub("gallery", "Write a named box", cmd_gallery);
    gallery_cmd->add_option("name", o.gallery_name, "pr|tsirelson|uniform|deterministic|random-ns|random-local")
        ->required()
        ->check(CLI::IsMember({"pr", "tsirelson", "uniform", "deterministic", "random-ns", "random-local"}));
    gallery_cmd->add_option("--scenario", o.scenario, "Outputs/inputs per party, e.g. 2,2/2,2")->capture_default_str();
    gallery_cmd->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
    gallery_cmd->add_option("--strategy", o.strategy, "Deterministic outcomes per party, e.g. 1,2;2,2");
    gallery_cmd->add_option("-o,--output", o.output, "Output file (default: stdout)");
    gallery_cmd->add_option("--format", o.format, "Report style")->check(CLI::IsMember({"text", "machine"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitIo;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    try {
        return handlers.at(name)(o);
    } catch (const UndecidedError &e) {
        std::cerr << "nsbox " << name << ": undecided: " << e.what() << "\n";
        return kExitUndecided;
    } catch (const IoError &e) {
        std::cerr << "nsbox " << name << ": " << e.what() << "\n";
        return kExitIo;
    } catch (const ParseError &e) {
        std::cerr << "nsbox " << name << ": parse error: " << e.what() << "\n";
        return kExitIo;
    } catch (const SignallingError &e) {
        std::cerr << "nsbox " << name << ": invalid box: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const Error &e) {
        std::cerr << "nsbox " << name << ": invalid input: " << e.what() << "\n";
        return kExitInvalid;
    }
}
