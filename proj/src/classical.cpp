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

#include "nsbox/classical.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cmath>
#include <random>

#include "nsbox/errors.hpp"

namespace nsbox {

std::string HiddenLabel::to_string() const {
    switch (kind) {
        case Kind::Pair:
            return "[" + std::to_string(outcome + 1) + "," + std::to_string(input + 1) + "]";
        case Kind::Xi:
            return "xi";
        case Kind::Eta:
            return "eta";
    }
    return {};
}

HiddenLabel HiddenLabel::parse(const std::string &text) {
    if (text == "xi") {
        return xi();
    }
    if (text == "eta") {
        return eta();
    }
    if (text.size() >= 5 && text.front() == '[' && text.back() == ']') {
        const std::string body = text.substr(1, text.size() - 2);
        const auto comma = body.find(',');
        int a = 0, x = 0;
        if (comma != std::string::npos) {
            auto ra = std::from_chars(body.data(), body.data() + comma, a);
            auto rx = std::from_chars(body.data() + comma + 1, body.data() + body.size(), x);
            if (ra.ec == std::errc() && ra.ptr == body.data() + comma && rx.ec == std::errc() &&
                rx.ptr == body.data() + body.size() && a >= 1 && x >= 1) {
                return pair(a - 1, x - 1);
            }
        }
    }
    throw ParseError("bad hidden label '" + text + "'");
}

std::string to_string(ModelKind kind) {
    return kind == ModelKind::NegativeMeasurements ? "neg-meas" : "neg-state";
}

ModelKind parse_model_kind(const std::string &text) {
    if (text == "neg-meas") {
        return ModelKind::NegativeMeasurements;
    }
    if (text == "neg-state") {
        return ModelKind::NegativeState;
    }
    throw ParseError("model kind must be 'neg-meas' or 'neg-state', got '" + text + "'");
}

namespace {

std::vector<int> space_sizes(const std::vector<LabelSpace> &spaces) {
    std::vector<int> sizes;
    for (const auto &space : spaces) {
        sizes.push_back(static_cast<int>(space.size()));
    }
    return sizes;
}

}  // namespace

QuasiState::QuasiState(std::vector<LabelSpace> spaces, std::vector<Rational> weights)
    : spaces_(std::move(spaces)), weights_(std::move(weights)) {
    for (std::size_t k = 0; k < spaces_.size(); ++k) {
        if (spaces_[k].empty()) {
            throw StructuralError("label space of party " + std::to_string(k + 1) + " is empty");
        }
    }
    tuples_ = MixedRadix(space_sizes(spaces_));
    if (weights_.size() != tuples_.size()) {
        throw StructuralError("state needs " + std::to_string(tuples_.size()) + " weights, got " +
                              std::to_string(weights_.size()));
    }
    Rational total = 0;
    for (const auto &w : weights_) {
        total += w;
    }
    if (total != 1) {
        throw StructuralError("state weights sum to " + nsbox::to_string(total) + ", not 1");
    }
}

ResponseTable::ResponseTable(int outputs, int inputs, int labels, std::vector<Rational> entries)
    : outputs_(outputs), inputs_(inputs), labels_(labels), entries_(std::move(entries)) {
    if (outputs < 1 || inputs < 1 || labels < 1) {
        throw StructuralError("response table dimensions must be positive");
    }
    const auto expected = static_cast<std::size_t>(outputs) * static_cast<std::size_t>(inputs) *
                          static_cast<std::size_t>(labels);
    if (entries_.size() != expected) {
        throw StructuralError("response table needs " + std::to_string(expected) + " entries, got " +
                              std::to_string(entries_.size()));
    }
    for (int x = 0; x < inputs; ++x) {
        for (int l = 0; l < labels; ++l) {
            Rational sum = 0;
            for (int a = 0; a < outputs; ++a) {
                sum += (*this)(a, x, l);
            }
            if (sum != 1) {
                throw StructuralError("response column x=" + std::to_string(x + 1) + ", label " + std::to_string(l + 1) +
                                      " sums to " + nsbox::to_string(sum));
            }
        }
    }
}

void ClassicalModel::check_shape() const {
    const int n = scenario.parties();
    if (static_cast<int>(state.spaces().size()) != n || static_cast<int>(responses.size()) != n) {
        throw StructuralError("model must have one label space and one response table per party");
    }
    for (int k = 0; k < n; ++k) {
        const auto &r = responses[static_cast<std::size_t>(k)];
        if (r.outputs() != scenario.outputs(k) || r.inputs() != scenario.inputs(k) ||
            r.labels() != static_cast<int>(state.spaces()[static_cast<std::size_t>(k)].size())) {
            throw StructuralError("response table of party " + std::to_string(k + 1) + " does not match the scenario");
        }
    }
}

namespace {

LabelSpace pair_space(int outputs, int inputs) {
    LabelSpace space;
    for (int a = 0; a < outputs; ++a) {
        for (int x = 0; x < inputs; ++x) {
            space.push_back(HiddenLabel::pair(a, x));
        }
    }
    return space;
}

// Response columns shared by both constructions; `scale` is X_k for the quasi responses and 1 for
// the deterministic ones. A label's column is given by its (outcome, input) pair; xi and eta
// always answer the last outcome.
ResponseTable pair_responses(const LabelSpace &space, int outputs, int inputs, const Rational &scale) {
    const int labels = static_cast<int>(space.size());
    std::vector<Rational> entries(static_cast<std::size_t>(outputs * inputs * labels), Rational(0));
    const int last = outputs - 1;
    for (int x = 0; x < inputs; ++x) {
        for (int l = 0; l < labels; ++l) {
            const HiddenLabel &label = space[static_cast<std::size_t>(l)];
            const std::size_t base = (static_cast<std::size_t>(x) * static_cast<std::size_t>(labels) +
                                      static_cast<std::size_t>(l)) *
                                     static_cast<std::size_t>(outputs);
            const bool hit = label.kind == HiddenLabel::Kind::Pair && label.input == x && label.outcome < last;
            for (int a = 0; a < last; ++a) {
                entries[base + static_cast<std::size_t>(a)] = (hit && label.outcome == a) ? scale : Rational(0);
            }
            entries[base + static_cast<std::size_t>(last)] = hit ? Rational(1 - scale) : Rational(1);
        }
    }
    return ResponseTable(outputs, inputs, labels, std::move(entries));
}

}  // namespace

ClassicalModel build_negative_measurements(const QuasiBox &box) {
    require_nonsignalling(box);
    const Scenario &s = box.scenario();
    for (const auto &v : box.values()) {
        if (sgn(v) < 0) {
            throw ArgumentError("negative-measurement model needs a box with non-negative entries");
        }
    }
    const int n = s.parties();
    std::vector<LabelSpace> spaces;
    std::vector<ResponseTable> responses;
    Rational input_product = 1;
    for (int k = 0; k < n; ++k) {
        spaces.push_back(pair_space(s.outputs(k), s.inputs(k)));
        responses.push_back(pair_responses(spaces.back(), s.outputs(k), s.inputs(k), Rational(s.inputs(k))));
        input_product *= s.inputs(k);
    }

    MixedRadix tuples(space_sizes(spaces));
    std::vector<Rational> weights(tuples.size());
    std::vector<int> digits(static_cast<std::size_t>(n), 0);
    std::vector<int> a(static_cast<std::size_t>(n)), x(static_cast<std::size_t>(n));
    std::size_t i = 0;
    do {
        for (int k = 0; k < n; ++k) {
            const auto &label = spaces[static_cast<std::size_t>(k)][static_cast<std::size_t>(digits[static_cast<std::size_t>(k)])];
            a[static_cast<std::size_t>(k)] = label.outcome;
            x[static_cast<std::size_t>(k)] = label.input;
        }
        weights[i++] = box(a, x) / input_product;
    } while (tuples.next(digits));

    ClassicalModel model{s, QuasiState(std::move(spaces), std::move(weights)), std::move(responses),
                         ModelKind::NegativeMeasurements, false};
    return model;
}

ClassicalModel build_negative_state(const QuasiBox &box) {
    require_nonsignalling(box);
    const Scenario &s = box.scenario();
    const int n = s.parties();
    std::vector<LabelSpace> spaces;
    std::vector<ResponseTable> responses;
    for (int k = 0; k < n; ++k) {
        LabelSpace space = pair_space(s.outputs(k), s.inputs(k));
        space.push_back(HiddenLabel::xi());
        responses.push_back(pair_responses(space, s.outputs(k), s.inputs(k), Rational(1)));
        spaces.push_back(std::move(space));
    }

    MixedRadix tuples(space_sizes(spaces));
    std::vector<Rational> weights(tuples.size());
    std::vector<int> digits(static_cast<std::size_t>(n), 0);
    std::size_t i = 0;
    do {
        std::vector<int> subset, a, x;
        Rational factor = 1;
        for (int k = 0; k < n; ++k) {
            const auto &label = spaces[static_cast<std::size_t>(k)][static_cast<std::size_t>(digits[static_cast<std::size_t>(k)])];
            if (label.kind == HiddenLabel::Kind::Xi) {
                factor *= 1 - s.inputs(k);
            } else {
                subset.push_back(k);
                a.push_back(label.outcome);
                x.push_back(label.input);
            }
        }
        weights[i++] = sgn(factor) == 0 ? Rational(0) : Rational(factor * marginal_unchecked(box, subset, a, x));
    } while (tuples.next(digits));

    return ClassicalModel{s, QuasiState(std::move(spaces), std::move(weights)), std::move(responses),
                          ModelKind::NegativeState, false};
}

namespace {

bool answers_last_outcome(const ResponseTable &r, int label) {
    const int last = r.outputs() - 1;
    for (int x = 0; x < r.inputs(); ++x) {
        for (int a = 0; a < r.outputs(); ++a) {
            if (r(a, x, label) != (a == last ? 1 : 0)) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

ClassicalModel compress(const ClassicalModel &model) {
    if (model.compressed) {
        return model;
    }
    model.check_shape();
    const int n = model.scenario.parties();
    std::vector<LabelSpace> spaces;
    std::vector<ResponseTable> responses;
    std::vector<std::vector<int>> remap(static_cast<std::size_t>(n));

    for (int k = 0; k < n; ++k) {
        const auto &old_space = model.state.spaces()[static_cast<std::size_t>(k)];
        const auto &r = model.responses[static_cast<std::size_t>(k)];
        LabelSpace space;
        std::vector<int> kept;
        auto &map = remap[static_cast<std::size_t>(k)];
        map.assign(old_space.size(), -1);
        for (int l = 0; l < static_cast<int>(old_space.size()); ++l) {
            if (!answers_last_outcome(r, l)) {
                map[static_cast<std::size_t>(l)] = static_cast<int>(space.size());
                space.push_back(old_space[static_cast<std::size_t>(l)]);
                kept.push_back(l);
            }
        }
        const bool has_eta = kept.size() < old_space.size();
        if (has_eta) {
            for (auto &target : map) {
                if (target < 0) {
                    target = static_cast<int>(space.size());
                }
            }
            space.push_back(HiddenLabel::eta());
        }

        const int labels = static_cast<int>(space.size());
        std::vector<Rational> entries(static_cast<std::size_t>(r.outputs() * r.inputs() * labels));
        for (int x = 0; x < r.inputs(); ++x) {
            for (int l = 0; l < labels; ++l) {
                for (int a = 0; a < r.outputs(); ++a) {
                    const std::size_t idx = (static_cast<std::size_t>(x) * static_cast<std::size_t>(labels) +
                                             static_cast<std::size_t>(l)) *
                                                static_cast<std::size_t>(r.outputs()) +
                                            static_cast<std::size_t>(a);
                    if (l < static_cast<int>(kept.size())) {
                        entries[idx] = r(a, x, kept[static_cast<std::size_t>(l)]);
                    } else {
                        entries[idx] = a == r.outputs() - 1 ? 1 : 0;
                    }
                }
            }
        }
        responses.emplace_back(r.outputs(), r.inputs(), labels, std::move(entries));
        spaces.push_back(std::move(space));
    }

    MixedRadix tuples(space_sizes(spaces));
    std::vector<Rational> weights(tuples.size(), Rational(0));
    std::vector<int> digits(static_cast<std::size_t>(n), 0);
    std::vector<int> target(static_cast<std::size_t>(n));
    std::size_t i = 0;
    do {
        for (int k = 0; k < n; ++k) {
            target[static_cast<std::size_t>(k)] =
                remap[static_cast<std::size_t>(k)][static_cast<std::size_t>(digits[static_cast<std::size_t>(k)])];
        }
        weights[tuples.index(target)] += model.state.weights()[i++];
    } while (model.state.tuples().next(digits));

    return ClassicalModel{model.scenario, QuasiState(std::move(spaces), std::move(weights)), std::move(responses),
                          model.kind, true};
}

QuasiBox evaluate(const ClassicalModel &model) {
    model.check_shape();
    const Scenario &s = model.scenario;
    const int n = s.parties();
    const std::size_t na = s.output_tuples().size();
    std::vector<Rational> values(na * s.input_tuples().size());

    std::vector<std::size_t> dims;
    for (const auto &space : model.state.spaces()) {
        dims.push_back(space.size());
    }

    std::vector<int> x(static_cast<std::size_t>(n), 0);
    std::size_t xi = 0;
    do {
        // Contract one party axis at a time: label axis k becomes outcome axis k.
        std::vector<Rational> tensor(model.state.weights().begin(), model.state.weights().end());
        std::vector<std::size_t> shape = dims;
        for (int k = 0; k < n; ++k) {
            const auto &r = model.responses[static_cast<std::size_t>(k)];
            const auto ku = static_cast<std::size_t>(k);
            std::size_t outer = 1, inner = 1;
            for (std::size_t j = 0; j < ku; ++j) {
                outer *= shape[j];
            }
            for (std::size_t j = ku + 1; j < shape.size(); ++j) {
                inner *= shape[j];
            }
            const std::size_t labels = shape[ku];
            const auto outputs = static_cast<std::size_t>(r.outputs());
            std::vector<Rational> next(outer * outputs * inner, Rational(0));
            for (std::size_t o = 0; o < outer; ++o) {
                for (std::size_t l = 0; l < labels; ++l) {
                    for (std::size_t a = 0; a < outputs; ++a) {
                        const Rational &coef = r(static_cast<int>(a), x[ku], static_cast<int>(l));
                        if (sgn(coef) == 0) {
                            continue;
                        }
                        const std::size_t src = (o * labels + l) * inner;
                        const std::size_t dst = (o * outputs + a) * inner;
                        for (std::size_t i = 0; i < inner; ++i) {
                            if (sgn(tensor[src + i]) != 0) {
                                next[dst + i] += coef * tensor[src + i];
                            }
                        }
                    }
                }
            }
            tensor = std::move(next);
            shape[ku] = outputs;
        }
        for (std::size_t ai = 0; ai < na; ++ai) {
            values[xi * na + ai] = std::move(tensor[ai]);
        }
        ++xi;
    } while (s.input_tuples().next(x));

    QuasiBox result(s, std::move(values));
    assert(validate(result, false).normalized());
    assert(is_nonsignalling(result).nonsignalling);
    return result;
}

Negativity negativity(const ClassicalModel &model) {
    Negativity out{0, 0};
    for (const auto &w : model.state.weights()) {
        if (sgn(w) < 0) {
            out.state -= w;
        }
    }
    for (const auto &r : model.responses) {
        for (int x = 0; x < r.inputs(); ++x) {
            for (int l = 0; l < r.labels(); ++l) {
                Rational mass = 0;
                for (int a = 0; a < r.outputs(); ++a) {
                    if (sgn(r(a, x, l)) < 0) {
                        mass -= r(a, x, l);
                    }
                }
                if (mass > out.response) {
                    out.response = mass;
                }
            }
        }
    }
    return out;
}

SampleEstimate sample_signed(const ClassicalModel &model, std::span<const int> inputs, std::int64_t shots,
                             std::uint64_t seed) {
    if (shots < 1) {
        throw ArgumentError("shots must be at least 1");
    }
    model.check_shape();
    const Scenario &s = model.scenario;
    const int n = s.parties();
    if (static_cast<int>(inputs.size()) != n) {
        throw ArgumentError("input tuple must have one entry per party");
    }
    for (int k = 0; k < n; ++k) {
        if (inputs[static_cast<std::size_t>(k)] < 0 || inputs[static_cast<std::size_t>(k)] >= s.inputs(k)) {
            throw ArgumentError("input of party " + std::to_string(k + 1) + " out of range");
        }
    }

    Rational l1_exact = 0;
    std::vector<double> magnitudes;
    magnitudes.reserve(model.state.weights().size());
    for (const auto &w : model.state.weights()) {
        l1_exact += abs(w);
        magnitudes.push_back(std::fabs(w.get_d()));
    }
    const double l1 = l1_exact.get_d();

    // Response vectors as doubles, per party and label, for the fixed inputs.
    std::vector<std::vector<std::vector<double>>> response(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const auto &r = model.responses[static_cast<std::size_t>(k)];
        auto &per_label = response[static_cast<std::size_t>(k)];
        per_label.resize(static_cast<std::size_t>(r.labels()));
        for (int l = 0; l < r.labels(); ++l) {
            for (int a = 0; a < r.outputs(); ++a) {
                per_label[static_cast<std::size_t>(l)].push_back(r(a, inputs[static_cast<std::size_t>(k)], l).get_d());
            }
        }
    }

    std::mt19937_64 rng(seed);
    std::discrete_distribution<std::size_t> pick(magnitudes.begin(), magnitudes.end());
    const std::size_t na = s.output_tuples().size();
    std::vector<double> sum(na, 0.0), sum_sq(na, 0.0);
    std::vector<int> a(static_cast<std::size_t>(n));

    for (std::int64_t shot = 0; shot < shots; ++shot) {
        const std::size_t idx = pick(rng);
        const auto labels = model.state.tuples().unflatten(idx);
        const double base = sgn(model.state.weights()[idx]) < 0 ? -l1 : l1;
        std::fill(a.begin(), a.end(), 0);
        std::size_t ai = 0;
        do {
            double v = base;
            for (int k = 0; k < n && v != 0.0; ++k) {
                v *= response[static_cast<std::size_t>(k)][static_cast<std::size_t>(labels[static_cast<std::size_t>(k)])]
                             [static_cast<std::size_t>(a[static_cast<std::size_t>(k)])];
            }
            sum[ai] += v;
            sum_sq[ai] += v * v;
            ++ai;
        } while (s.output_tuples().next(a));
    }

    SampleEstimate est;
    est.shots = static_cast<std::uint64_t>(shots);
    const double count = static_cast<double>(shots);
    for (std::size_t ai = 0; ai < na; ++ai) {
        const double mean = sum[ai] / count;
        double var = 0.0;
        if (shots > 1) {
            var = std::max(0.0, (sum_sq[ai] - count * mean * mean) / (count - 1.0));
        }
        est.mean.push_back(mean);
        est.standard_error.push_back(std::sqrt(var / count));
    }
    return est;
}

}  // namespace nsbox
