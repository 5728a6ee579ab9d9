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

#include "nsbox/io.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "json.hpp"

namespace nsbox {

using json = nlohmann::json;

namespace {

json parse_json(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        throw ParseError(e.what());
    }
}

const json &field(const json &obj, const char *key) {
    if (!obj.is_object()) {
        throw StructuralError(std::string("expected an object holding '") + key + "'");
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw StructuralError(std::string("missing field '") + key + "'");
    }
    return *it;
}

Rational rational_from_json(const json &j, const std::string &where) {
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const ParseError &e) {
            throw ParseError(where + ": " + e.what());
        }
    }
    if (j.is_number_integer()) {
        return Rational(mpz_class(j.dump(), 10));
    }
    throw StructuralError(where + ": expected a rational string");
}

json rational_to_json(const Rational &r) {
    return to_string(r);
}

std::vector<int> int_list(const json &j, const char *what) {
    if (!j.is_array()) {
        throw StructuralError(std::string(what) + " must be an array of integers");
    }
    std::vector<int> out;
    for (const auto &v : j) {
        if (!v.is_number_integer()) {
            throw StructuralError(std::string(what) + " must be an array of integers");
        }
        out.push_back(v.get<int>());
    }
    return out;
}

json scenario_to_json(const Scenario &s) {
    return json{{"outputs", s.outputs()}, {"inputs", s.inputs()}};
}

Scenario scenario_from_json(const json &doc) {
    const json &s = field(doc, "scenario");
    try {
        return Scenario(int_list(field(s, "outputs"), "scenario.outputs"), int_list(field(s, "inputs"), "scenario.inputs"));
    } catch (const ArgumentError &e) {
        throw StructuralError(std::string("bad scenario: ") + e.what());
    }
}

std::string dump(const json &j) {
    return j.dump(2) + "\n";
}

[[noreturn]] void throw_issues(const std::string &what, const std::vector<std::string> &issues) {
    std::string msg = what + ":";
    const std::size_t shown = std::min<std::size_t>(issues.size(), 20);
    for (std::size_t i = 0; i < shown; ++i) {
        msg += " " + issues[i] + (i + 1 < shown ? ";" : "");
    }
    if (issues.size() > shown) {
        msg += " ... (" + std::to_string(issues.size() - shown) + " more)";
    }
    throw StructuralError(msg);
}

// Splits at commas that are not inside [...].
std::vector<std::string> split_labels(const std::string &text) {
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (char c : text) {
        if (c == '[') {
            ++depth;
        } else if (c == ']') {
            --depth;
        }
        if (c == ',' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

std::vector<std::string> split_bar(const std::string &text) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
        auto bar = text.find('|', pos);
        parts.push_back(text.substr(pos, bar == std::string::npos ? std::string::npos : bar - pos));
        if (bar == std::string::npos) {
            break;
        }
        pos = bar + 1;
    }
    return parts;
}

std::vector<LabelSpace> spaces_from_json(const json &j, const Scenario &s, const char *what) {
    if (!j.is_array() || static_cast<int>(j.size()) != s.parties()) {
        throw StructuralError(std::string(what) + " must list one label array per party");
    }
    std::vector<LabelSpace> spaces;
    for (int k = 0; k < s.parties(); ++k) {
        const json &arr = j[static_cast<std::size_t>(k)];
        if (!arr.is_array() || arr.empty()) {
            throw StructuralError(std::string(what) + " of party " + std::to_string(k + 1) + " must be a non-empty array");
        }
        LabelSpace space;
        std::set<std::string> seen;
        for (const auto &l : arr) {
            if (!l.is_string()) {
                throw StructuralError("labels must be strings");
            }
            const auto text = l.get<std::string>();
            if (!seen.insert(text).second) {
                throw StructuralError("duplicate label '" + text + "' for party " + std::to_string(k + 1));
            }
            HiddenLabel label = HiddenLabel::parse(text);
            if (label.kind == HiddenLabel::Kind::Pair && (label.outcome >= s.outputs(k) || label.input >= s.inputs(k))) {
                throw StructuralError("label '" + text + "' out of range for party " + std::to_string(k + 1));
            }
            space.push_back(label);
        }
        spaces.push_back(std::move(space));
    }
    return spaces;
}

json spaces_to_json(const std::vector<LabelSpace> &spaces) {
    json out = json::array();
    for (const auto &space : spaces) {
        json arr = json::array();
        for (const auto &l : space) {
            arr.push_back(l.to_string());
        }
        out.push_back(std::move(arr));
    }
    return out;
}

int label_index(const LabelSpace &space, const std::string &text) {
    for (std::size_t i = 0; i < space.size(); ++i) {
        if (space[i].to_string() == text) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

bool parse_bool(const json &j, const char *what) {
    if (!j.is_boolean()) {
        throw StructuralError(std::string(what) + " must be true or false");
    }
    return j.get<bool>();
}

ModelKind kind_from_json(const json &doc) {
    const json &k = field(doc, "kind");
    if (!k.is_string()) {
        throw StructuralError("kind must be a string");
    }
    try {
        return parse_model_kind(k.get<std::string>());
    } catch (const ParseError &e) {
        throw StructuralError(e.what());
    }
}

// "a|x" (1-based) -> 0-based (a, x) for party k.
std::pair<int, int> outcome_input_key(const std::string &key, const Scenario &s, int k) {
    auto parts = split_bar(key);
    if (parts.size() != 2) {
        throw StructuralError("bad measurement key '" + key + "'");
    }
    try {
        int a = std::stoi(parts[0]);
        int x = std::stoi(parts[1]);
        if (std::to_string(a) != parts[0] || std::to_string(x) != parts[1] || a < 1 || a > s.outputs(k) || x < 1 ||
            x > s.inputs(k)) {
            throw StructuralError("");
        }
        return {a - 1, x - 1};
    } catch (const std::exception &) {
        throw StructuralError("bad or out-of-range key '" + key + "' for party " + std::to_string(k + 1));
    }
}

}  // namespace

DocumentKind detect_document(std::string_view text) {
    json doc = parse_json(text);
    if (!doc.is_object()) {
        throw StructuralError("top-level value must be an object");
    }
    if (doc.contains("probabilities")) {
        return DocumentKind::Box;
    }
    if (doc.contains("marginals")) {
        return DocumentKind::Marginals;
    }
    if (doc.contains("spaces")) {
        return DocumentKind::ClassicalModel;
    }
    if (doc.contains("bases")) {
        return DocumentKind::QuantumModel;
    }
    throw StructuralError("unrecognized document: expected 'probabilities', 'marginals', 'spaces' or 'bases'");
}

std::string write_box(const QuasiBox &box) {
    const Scenario &s = box.scenario();
    json probs = json::object();
    std::vector<int> x(static_cast<std::size_t>(s.parties()), 0);
    std::size_t xi = 0;
    do {
        json col = json::array();
        for (const auto &v : box.column(xi)) {
            col.push_back(rational_to_json(v));
        }
        probs[join_one_based(x)] = std::move(col);
        ++xi;
    } while (s.input_tuples().next(x));
    return dump(json{{"scenario", scenario_to_json(s)}, {"probabilities", std::move(probs)}});
}

QuasiBox read_box(std::string_view text) {
    const json doc = parse_json(text);
    const Scenario s = scenario_from_json(doc);
    const json &probs = field(doc, "probabilities");
    if (!probs.is_object()) {
        throw StructuralError("'probabilities' must be an object keyed by input tuple");
    }
    const std::size_t na = s.output_tuples().size();
    std::vector<Rational> values(na * s.input_tuples().size());
    std::vector<bool> seen(s.input_tuples().size(), false);
    std::vector<std::string> issues;
    for (const auto &[key, col] : probs.items()) {
        std::vector<int> x;
        try {
            x = split_one_based(key, s.inputs());
        } catch (const Error &) {
            issues.push_back("unexpected input tuple '" + key + "'");
            continue;
        }
        const std::size_t xi = s.input_tuples().index(x);
        seen[xi] = true;
        if (!col.is_array() || col.size() != na) {
            issues.push_back("input tuple '" + key + "' needs " + std::to_string(na) + " entries, got " +
                             (col.is_array() ? std::to_string(col.size()) : std::string("a non-array")));
            continue;
        }
        for (std::size_t ai = 0; ai < na; ++ai) {
            values[xi * na + ai] = rational_from_json(
                col[ai], "entry a=(" + join_one_based(s.output_tuples().unflatten(ai)) + ") x=(" + key + ")");
        }
    }
    for (std::size_t xi = 0; xi < seen.size(); ++xi) {
        if (!seen[xi]) {
            issues.push_back("missing input tuple '" + join_one_based(s.input_tuples().unflatten(xi)) + "'");
        }
    }
    if (!issues.empty()) {
        throw_issues("box has structural errors", issues);
    }
    return QuasiBox(s, std::move(values));
}

std::string write_marginals(const MarginalTable &table) {
    json entries = json::object();
    for (std::size_t i = 0; i < table.size(); ++i) {
        const MarginalKey key = table.key(i);
        std::vector<int> parties(key.subset);
        entries[join_one_based(parties) + "|" + join_one_based(key.outcomes) + "|" + join_one_based(key.inputs)] =
            rational_to_json(table.entries()[i]);
    }
    return dump(json{{"scenario", scenario_to_json(table.scenario())}, {"marginals", std::move(entries)}});
}

MarginalTable read_marginals(std::string_view text) {
    const json doc = parse_json(text);
    const Scenario s = scenario_from_json(doc);
    const json &marginals = field(doc, "marginals");
    if (!marginals.is_object()) {
        throw StructuralError("'marginals' must be an object");
    }
    MarginalTable layout(s);
    std::vector<Rational> entries(layout.size());
    std::vector<bool> seen(layout.size(), false);
    std::vector<std::string> issues;
    for (const auto &[key, value] : marginals.items()) {
        auto parts = split_bar(key);
        try {
            if (parts.size() != 3) {
                throw StructuralError("");
            }
            MarginalKey mk;
            if (!parts[0].empty()) {
                std::vector<int> radix(static_cast<std::size_t>(std::count(parts[0].begin(), parts[0].end(), ',')) + 1,
                                       s.parties());
                mk.subset = split_one_based(parts[0], radix);
            }
            std::vector<int> a_radix, x_radix;
            for (int k : mk.subset) {
                a_radix.push_back(s.outputs(k) - 1);
                x_radix.push_back(s.inputs(k));
            }
            mk.outcomes = split_one_based(parts[1], a_radix);
            mk.inputs = split_one_based(parts[2], x_radix);
            const std::size_t idx = layout.index(mk);
            seen[idx] = true;
            entries[idx] = rational_from_json(value, "marginal '" + key + "'");
        } catch (const StructuralError &) {
            issues.push_back("unexpected marginal key '" + key + "'");
        }
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (!seen[i]) {
            const MarginalKey mk = layout.key(i);
            issues.push_back("missing marginal '" + join_one_based(mk.subset) + "|" + join_one_based(mk.outcomes) + "|" +
                             join_one_based(mk.inputs) + "'");
        }
    }
    if (!issues.empty()) {
        throw_issues("marginal table has structural errors", issues);
    }
    return MarginalTable(s, std::move(entries));
}

std::string write_model(const ClassicalModel &model) {
    model.check_shape();
    const auto &spaces = model.state.spaces();
    json state = json::object();
    std::vector<int> digits(spaces.size(), 0);
    std::size_t i = 0;
    do {
        std::string key;
        for (std::size_t k = 0; k < spaces.size(); ++k) {
            key += (k ? "," : "") + spaces[k][static_cast<std::size_t>(digits[k])].to_string();
        }
        state[key] = rational_to_json(model.state.weights()[i++]);
    } while (model.state.tuples().next(digits));

    json responses = json::array();
    for (std::size_t k = 0; k < spaces.size(); ++k) {
        const auto &r = model.responses[k];
        json table = json::object();
        for (int x = 0; x < r.inputs(); ++x) {
            for (int l = 0; l < r.labels(); ++l) {
                for (int a = 0; a < r.outputs(); ++a) {
                    table[std::to_string(a + 1) + "|" + std::to_string(x + 1) + "," +
                          spaces[k][static_cast<std::size_t>(l)].to_string()] = rational_to_json(r(a, x, l));
                }
            }
        }
        responses.push_back(std::move(table));
    }
    return dump(json{{"scenario", scenario_to_json(model.scenario)},
                     {"kind", to_string(model.kind)},
                     {"compressed", model.compressed},
                     {"spaces", spaces_to_json(spaces)},
                     {"state", std::move(state)},
                     {"responses", std::move(responses)}});
}

ClassicalModel read_model(std::string_view text) {
    const json doc = parse_json(text);
    const Scenario s = scenario_from_json(doc);
    const ModelKind kind = kind_from_json(doc);
    const bool compressed = parse_bool(field(doc, "compressed"), "compressed");
    std::vector<LabelSpace> spaces = spaces_from_json(field(doc, "spaces"), s, "spaces");
    const int n = s.parties();

    std::vector<int> sizes;
    for (const auto &sp : spaces) {
        sizes.push_back(static_cast<int>(sp.size()));
    }
    MixedRadix tuples(sizes);
    std::vector<Rational> weights(tuples.size());
    std::vector<bool> seen(tuples.size(), false);
    std::vector<std::string> issues;

    const json &state = field(doc, "state");
    if (!state.is_object()) {
        throw StructuralError("'state' must be an object keyed by label tuple");
    }
    for (const auto &[key, value] : state.items()) {
        auto parts = split_labels(key);
        if (static_cast<int>(parts.size()) != n) {
            issues.push_back("bad state key '" + key + "'");
            continue;
        }
        std::vector<int> digits;
        for (int k = 0; k < n; ++k) {
            digits.push_back(label_index(spaces[static_cast<std::size_t>(k)], parts[static_cast<std::size_t>(k)]));
        }
        if (std::find(digits.begin(), digits.end(), -1) != digits.end()) {
            issues.push_back("unknown label in state key '" + key + "'");
            continue;
        }
        const std::size_t idx = tuples.index(digits);
        seen[idx] = true;
        weights[idx] = rational_from_json(value, "state '" + key + "'");
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (!seen[i]) {
            auto digits = tuples.unflatten(i);
            std::string key;
            for (int k = 0; k < n; ++k) {
                key += (k ? "," : "") +
                       spaces[static_cast<std::size_t>(k)][static_cast<std::size_t>(digits[static_cast<std::size_t>(k)])]
                           .to_string();
            }
            issues.push_back("missing state weight '" + key + "'");
        }
    }

    const json &resp = field(doc, "responses");
    if (!resp.is_array() || static_cast<int>(resp.size()) != n) {
        throw StructuralError("'responses' must hold one table per party");
    }
    std::vector<std::vector<Rational>> entries(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const auto &space = spaces[static_cast<std::size_t>(k)];
        const int labels = static_cast<int>(space.size());
        auto &e = entries[static_cast<std::size_t>(k)];
        e.assign(static_cast<std::size_t>(s.outputs(k) * s.inputs(k) * labels), Rational(0));
        std::vector<bool> got(e.size(), false);
        const json &table = resp[static_cast<std::size_t>(k)];
        if (!table.is_object()) {
            throw StructuralError("response table of party " + std::to_string(k + 1) + " must be an object");
        }
        for (const auto &[key, value] : table.items()) {
            auto bar = key.find('|');
            auto comma = key.find(',', bar == std::string::npos ? 0 : bar);
            if (bar == std::string::npos || comma == std::string::npos) {
                issues.push_back("bad response key '" + key + "'");
                continue;
            }
            int a = 0, x = 0;
            try {
                std::tie(a, x) = outcome_input_key(key.substr(0, comma), s, k);
            } catch (const StructuralError &) {
                issues.push_back("bad response key '" + key + "' for party " + std::to_string(k + 1));
                continue;
            }
            const int l = label_index(space, key.substr(comma + 1));
            if (l < 0) {
                issues.push_back("unknown label in response key '" + key + "'");
                continue;
            }
            const std::size_t idx = (static_cast<std::size_t>(x) * static_cast<std::size_t>(labels) +
                                     static_cast<std::size_t>(l)) *
                                        static_cast<std::size_t>(s.outputs(k)) +
                                    static_cast<std::size_t>(a);
            got[idx] = true;
            e[idx] = rational_from_json(value, "response '" + key + "'");
        }
        const auto missing = static_cast<std::size_t>(std::count(got.begin(), got.end(), false));
        if (missing) {
            issues.push_back("party " + std::to_string(k + 1) + " response table is missing " + std::to_string(missing) +
                             " entries");
        }
    }
    if (!issues.empty()) {
        throw_issues("model has structural errors", issues);
    }

    ClassicalModel model;
    model.scenario = s;
    model.kind = kind;
    model.compressed = compressed;
    for (int k = 0; k < n; ++k) {
        model.responses.emplace_back(s.outputs(k), s.inputs(k), static_cast<int>(spaces[static_cast<std::size_t>(k)].size()),
                                     std::move(entries[static_cast<std::size_t>(k)]));
    }
    model.state = QuasiState(std::move(spaces), std::move(weights));
    model.check_shape();
    return model;
}

std::string write_quantum(const QuantumModel &model) {
    model.check_shape();
    json state = json::array();
    for (const auto &d : model.state.diag) {
        state.push_back(rational_to_json(d));
    }
    json measurements = json::array();
    for (std::size_t k = 0; k < model.measurements.size(); ++k) {
        json table = json::object();
        for (std::size_t x = 0; x < model.measurements[k].size(); ++x) {
            for (std::size_t a = 0; a < model.measurements[k][x].size(); ++a) {
                json diag = json::array();
                for (const auto &d : model.measurements[k][x][a].diag) {
                    diag.push_back(rational_to_json(d));
                }
                table[std::to_string(a + 1) + "|" + std::to_string(x + 1)] = std::move(diag);
            }
        }
        measurements.push_back(std::move(table));
    }
    return dump(json{{"scenario", scenario_to_json(model.scenario)},
                     {"kind", to_string(model.kind)},
                     {"compressed", model.compressed},
                     {"bases", spaces_to_json(model.bases)},
                     {"state", std::move(state)},
                     {"measurements", std::move(measurements)}});
}

QuantumModel read_quantum(std::string_view text) {
    const json doc = parse_json(text);
    QuantumModel qm;
    qm.scenario = scenario_from_json(doc);
    qm.kind = kind_from_json(doc);
    qm.compressed = parse_bool(field(doc, "compressed"), "compressed");
    qm.bases = spaces_from_json(field(doc, "bases"), qm.scenario, "bases");
    const Scenario &s = qm.scenario;

    const json &state = field(doc, "state");
    if (!state.is_array() || state.size() != qm.dimension()) {
        throw StructuralError("'state' must be an array of " + std::to_string(qm.dimension()) + " diagonal entries");
    }
    for (std::size_t i = 0; i < state.size(); ++i) {
        qm.state.diag.push_back(rational_from_json(state[i], "state entry " + std::to_string(i + 1)));
    }

    const json &meas = field(doc, "measurements");
    if (!meas.is_array() || static_cast<int>(meas.size()) != s.parties()) {
        throw StructuralError("'measurements' must hold one table per party");
    }
    std::vector<std::string> issues;
    for (int k = 0; k < s.parties(); ++k) {
        const std::size_t dim = qm.bases[static_cast<std::size_t>(k)].size();
        std::vector<std::vector<DiagonalOperator>> per_input(
            static_cast<std::size_t>(s.inputs(k)), std::vector<DiagonalOperator>(static_cast<std::size_t>(s.outputs(k))));
        std::vector<bool> got(static_cast<std::size_t>(s.inputs(k) * s.outputs(k)), false);
        const json &table = meas[static_cast<std::size_t>(k)];
        if (!table.is_object()) {
            throw StructuralError("measurement table of party " + std::to_string(k + 1) + " must be an object");
        }
        for (const auto &[key, diag] : table.items()) {
            int a = 0, x = 0;
            try {
                std::tie(a, x) = outcome_input_key(key, s, k);
            } catch (const StructuralError &e) {
                issues.push_back(e.what());
                continue;
            }
            if (!diag.is_array() || diag.size() != dim) {
                issues.push_back("operator '" + key + "' of party " + std::to_string(k + 1) + " needs " +
                                 std::to_string(dim) + " diagonal entries");
                continue;
            }
            auto &op = per_input[static_cast<std::size_t>(x)][static_cast<std::size_t>(a)];
            for (const auto &d : diag) {
                op.diag.push_back(rational_from_json(d, "operator '" + key + "'"));
            }
            got[static_cast<std::size_t>(x * s.outputs(k) + a)] = true;
        }
        const auto missing = static_cast<std::size_t>(std::count(got.begin(), got.end(), false));
        if (missing) {
            issues.push_back("party " + std::to_string(k + 1) + " is missing " + std::to_string(missing) + " operators");
        }
        qm.measurements.push_back(std::move(per_input));
    }
    if (!issues.empty()) {
        throw_issues("quantum model has structural errors", issues);
    }
    qm.check_shape();
    return qm;
}

}  // namespace nsbox
