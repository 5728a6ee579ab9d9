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

// Prints one PASS/FAIL line per acceptance criterion; exit status is the number of failures.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "corpus.hpp"
#include "nsbox/classical.hpp"
#include "nsbox/gallery.hpp"
#include "nsbox/locality.hpp"
#include "nsbox/quantum.hpp"

#ifndef NSBOX_CLI
#define NSBOX_CLI "nsbox"
#endif

using namespace nsbox;
using fixtures::corpus;

namespace {

// Collects the first few failure messages for a criterion.
struct Check {
    int failures = 0;
    std::ostringstream notes;

    void expect(bool ok, const std::string &what) {
        if (!ok) {
            if (failures < 3) {
                notes << (failures ? "; " : "") << what;
            }
            ++failures;
        }
    }
};

int label_index(const LabelSpace &space, const HiddenLabel &label) {
    for (std::size_t i = 0; i < space.size(); ++i) {
        if (space[i] == label) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

bool has_entry(const ClassicalModel &m, const Rational &value) {
    for (const auto &r : m.responses) {
        for (const auto &e : r.entries()) {
            if (e == value) {
                return true;
            }
        }
    }
    return false;
}

std::size_t compressed_size(const Scenario &s, int k) {
    return static_cast<std::size_t>((s.outputs(k) - 1) * s.inputs(k) + 1);
}

void criterion1(Check &c) {
    for (const auto &[name, b] : corpus()) {
        c.expect(evaluate(build_negative_measurements(b)) == b, name);
    }
}

void criterion2(Check &c) {
    for (const auto &[name, b] : corpus()) {
        ClassicalModel m = build_negative_state(b);
        c.expect(evaluate(m) == b, name + " reconstruction");
        for (const auto &r : m.responses) {
            for (const auto &e : r.entries()) {
                c.expect(e == 0 || e == 1, name + " response not 0/1");
            }
        }
        Rational total = 0;
        for (const auto &w : m.state.weights()) {
            total += w;
        }
        c.expect(total == 1, name + " state sum");
    }
}

void criterion3(Check &c) {
    for (const auto &[name, b] : corpus()) {
        const Scenario &s = b.scenario();
        for (auto build : {build_negative_measurements, build_negative_state}) {
            ClassicalModel m = build(b);
            ClassicalModel cm = compress(m);
            c.expect(evaluate(cm) == b, name + " compressed reconstruction");
            std::size_t full = 1, joint = 1;
            for (int k = 0; k < s.parties(); ++k) {
                const auto size = cm.state.spaces()[static_cast<std::size_t>(k)].size();
                c.expect(size == compressed_size(s, k), name + " space size");
                joint *= compressed_size(s, k);
                full *= m.state.spaces()[static_cast<std::size_t>(k)].size();
            }
            c.expect(cm.state.tuples().size() == joint, name + " joint size");
            if (s.parties() == 2) {
                c.expect(joint == 9, name + " joint 9");
                const std::size_t expected_full = m.kind == ModelKind::NegativeMeasurements ? 16 : 25;
                c.expect(full == expected_full, name + " uncompressed size");
            }
        }
    }
}

void criterion4(Check &c) {
    for (const auto &[name, b] : corpus()) {
        if (b.scenario().parties() != 2) {
            continue;
        }
        ClassicalModel m = build_negative_measurements(b);
        c.expect(has_entry(m, Rational(-1)), name + " no -1 response");
        c.expect(negativity(m).state == 0, name + " negative state");
    }
    ClassicalModel pr = build_negative_state(pr_box());
    const auto &sp = pr.state.spaces()[0];
    const auto &sp2 = pr.state.spaces()[1];
    std::vector<int> xx{label_index(sp, HiddenLabel::xi()), label_index(sp2, HiddenLabel::xi())};
    std::vector<int> x11{label_index(sp, HiddenLabel::xi()), label_index(sp2, HiddenLabel::pair(0, 0))};
    c.expect(pr.state(xx) == 1, "weight (xi,xi) != 1");
    c.expect(pr.state(x11) == ratio(-1, 2), "weight (xi,[1,1]) != -1/2");
}

void criterion5(Check &c) {
    for (const auto &[name, b] : corpus()) {
        for (auto build : {build_negative_measurements, build_negative_state}) {
            QuantumModel q = lift(build(b));
            c.expect(evaluate_trace(q) == b, name + " trace reconstruction");
            QuantumReport r = verify(q);
            c.expect(r.shape_error.empty() && r.complete(), name + " completeness");
            c.expect(r.trace_one(), name + " trace");
            c.expect(r.commuting, name + " commuting");
            if (q.kind == ModelKind::NegativeMeasurements) {
                c.expect(r.state_positive, name + " state diagonal negative");
            } else {
                c.expect(r.measurements_projective, name + " measurement not 0/1");
            }
            // one basis per party; every operator is a diagonal in it
            for (std::size_t k = 0; k < q.measurements.size(); ++k) {
                for (const auto &per_input : q.measurements[k]) {
                    for (const auto &op : per_input) {
                        c.expect(op.diag.size() == q.bases[k].size(), name + " operator size");
                    }
                }
            }
        }
    }
}

void criterion6(Check &c) {
    const std::vector<Scenario> scenarios{Scenario({2, 2}, {2, 2}), Scenario({3, 2}, {2, 3}),
                                          Scenario({2, 2, 2}, {2, 2, 2})};
    int negative = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Scenario &s = scenarios[seed % scenarios.size()];
        QuasiBox q = fixtures::random_quasi_box(s, 500 + seed);
        negative += validate(q, true).negative_entries.empty() ? 0 : 1;
        MarginalTable t = canonical_marginals(q);
        c.expect(from_marginals(t) == q, "seed " + std::to_string(seed));
        std::size_t expected = 1;
        for (int k = 0; k < s.parties(); ++k) {
            expected *= compressed_size(s, k);
        }
        c.expect(t.size() == expected && param_count(s) == expected, "coordinate count");
    }
    c.expect(negative > 0, "no negative entries injected");
    c.expect(param_count(Scenario({2, 2}, {2, 2})) == 9, "param count 9");
}

void criterion7(Check &c) {
    const Scenario s({2, 2}, {2, 2});
    const auto vertices = enumerate_vertices(s);
    c.expect(vertices.size() == 16, "vertex count");
    for (const auto &v : vertices) {
        Box b = deterministic_box(s, v);
        auto cert = is_local(b);
        c.expect(is_local_verdict(cert) && verify_certificate(b, cert), "vertex " + v.to_string());
    }
    const std::vector<Scenario> scenarios{s, Scenario({3, 2}, {2, 3}), Scenario({2, 2, 2}, {2, 2, 2})};
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Box b = random_local_box(scenarios[seed % scenarios.size()], seed);
        auto cert = is_local(b);
        c.expect(is_local_verdict(cert) && verify_certificate(b, cert), "random local seed " + std::to_string(seed));
    }

    LocalityOptions chsh;
    chsh.candidates.push_back(chsh_functional());
    Box pr = pr_box();
    auto lp = is_local(pr);
    c.expect(!is_local_verdict(lp) && verify_certificate(pr, lp), "PR LP certificate");
    auto pr_cert = is_local(pr, chsh);
    c.expect(!is_local_verdict(pr_cert), "PR local");
    if (!is_local_verdict(pr_cert)) {
        const auto &nl = std::get<NonLocalCertificate>(pr_cert);
        c.expect(nl.box_value == 4 && nl.local_bound == 2, "PR CHSH 4 vs 2");
    }

    Box t = tsirelson_box();
    auto t_lp = is_local(t);
    c.expect(!is_local_verdict(t_lp) && verify_certificate(t, t_lp), "Tsirelson LP certificate");
    auto t_cert = is_local(t, chsh);
    c.expect(!is_local_verdict(t_cert), "Tsirelson local");
    if (!is_local_verdict(t_cert)) {
        const auto &nl = std::get<NonLocalCertificate>(t_cert);
        c.expect(std::abs(to_double(nl.box_value) - 2 * std::sqrt(2.0)) < 1e-9, "Tsirelson value");
        c.expect(nl.box_value > 2 && nl.local_bound == 2, "Tsirelson exact");
    }
}

void criterion8(Check &c) {
    const Box pr = pr_box();
    const Scenario &s = pr.scenario();
    for (auto build : {build_negative_measurements, build_negative_state}) {
        const ClassicalModel m = build(pr);
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            for (std::size_t xi = 0; xi < s.input_tuples().size(); ++xi) {
                const auto x = s.input_tuples().unflatten(xi);
                const SampleEstimate est = sample_signed(m, x, 100000, seed);
                for (std::size_t ai = 0; ai < s.output_tuples().size(); ++ai) {
                    const double exact = to_double(pr.at(ai, xi));
                    const double err = std::abs(est.mean[ai] - exact);
                    c.expect(err <= 4 * est.standard_error[ai] + 1e-12,
                             to_string(m.kind) + " seed " + std::to_string(seed) + " x " + join_one_based(x));
                }
            }
        }
    }
}

int run(const std::string &command) {
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

void criterion9(Check &c) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / ("nsbox-acceptance-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const std::string cli = std::string("'") + NSBOX_CLI + "'";
    auto file = [&](const std::string &name) { return "'" + (dir / name).string() + "'"; };

    c.expect(run(cli + " gallery pr > " + file("pr.json")) == 0, "gallery pr");
    const std::string reference = slurp(dir / "pr.json");
    c.expect(!reference.empty(), "empty gallery output");
    for (const std::string kind : {"neg-meas", "neg-state"}) {
        c.expect(run(cli + " gallery pr | " + cli + " model --kind " + kind + " > " + file("m.json")) == 0,
                 "model " + kind);
        c.expect(run(cli + " eval " + file("m.json") + " > " + file("e.json")) == 0, "eval " + kind);
        c.expect(slurp(dir / "e.json") == reference, "eval output differs for " + kind);

        c.expect(run(cli + " gallery pr | " + cli + " quantum --kind " + kind + " > " + file("q.json")) == 0,
                 "quantum " + kind);
        c.expect(run(cli + " quantum-verify " + file("q.json") + " > /dev/null") == 0, "quantum-verify " + kind);
        c.expect(run(cli + " eval " + file("q.json") + " > " + file("qe.json")) == 0, "quantum eval " + kind);
        c.expect(slurp(dir / "qe.json") == reference, "quantum eval output differs for " + kind);
    }
    fs::remove_all(dir);
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Check &)>>> criteria{
        {"negative-measurement reconstruction", criterion1},
        {"negative-state reconstruction", criterion2},
        {"eta compression", criterion3},
        {"negativity signatures", criterion4},
        {"diagonal quantum lifts", criterion5},
        {"canonical marginal codec", criterion6},
        {"locality certificates", criterion7},
        {"signed sampling", criterion8},
        {"end-to-end CLI", criterion9},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(c);
        } catch (const std::exception &e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s criterion %zu (%s) [%.2fs]%s%s\n", c.failures ? "FAIL" : "PASS", i + 1,
                    criteria[i].first.c_str(), secs, c.failures ? ": " : "", c.notes.str().c_str());
        failed += c.failures ? 1 : 0;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed;
}
