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

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nsbox/box.hpp"
#include "nsbox/rational.hpp"
#include "nsbox/scenario.hpp"

namespace nsbox {

/// A local hidden-variable value: an (outcome, input) pair, the extra label xi of the
/// negative-state construction, or eta, the label that absorbs every "always last outcome" state.
struct HiddenLabel {
    enum class Kind { Pair, Xi, Eta };

    Kind kind = Kind::Pair;
    int outcome = 0;  // 0-based, Pair only
    int input = 0;    // 0-based, Pair only

    static HiddenLabel pair(int outcome, int input) {
        return {Kind::Pair, outcome, input};
    }
    static HiddenLabel xi() {
        return {Kind::Xi, 0, 0};
    }
    static HiddenLabel eta() {
        return {Kind::Eta, 0, 0};
    }

    /// "[a,x]" (1-based), "xi" or "eta".
    std::string to_string() const;
    static HiddenLabel parse(const std::string &text);

    bool operator==(const HiddenLabel &) const = default;
};

using LabelSpace = std::vector<HiddenLabel>;

/// Quasiprobability over the joint label space, stored in MixedRadix order over the per-party spaces.
class QuasiState {
   public:
    QuasiState() = default;
    /// Throws StructuralError on a size mismatch or if the weights do not sum to exactly 1.
    QuasiState(std::vector<LabelSpace> spaces, std::vector<Rational> weights);

    const std::vector<LabelSpace> &spaces() const {
        return spaces_;
    }
    std::span<const Rational> weights() const {
        return weights_;
    }
    const MixedRadix &tuples() const {
        return tuples_;
    }
    const Rational &operator()(std::span<const int> labels) const {
        return weights_[tuples_.index(labels)];
    }

   private:
    std::vector<LabelSpace> spaces_;
    std::vector<Rational> weights_;
    MixedRadix tuples_;
};

/// Conditional quasiprobability p_k(a | x, lambda) for one party.
class ResponseTable {
   public:
    ResponseTable() = default;
    /// `entries` is indexed ((x * labels) + lambda) * outputs + a. Throws StructuralError on a size
    /// mismatch or if some (x, lambda) column does not sum to exactly 1.
    ResponseTable(int outputs, int inputs, int labels, std::vector<Rational> entries);

    int outputs() const {
        return outputs_;
    }
    int inputs() const {
        return inputs_;
    }
    int labels() const {
        return labels_;
    }
    const Rational &operator()(int outcome, int input, int label) const {
        return entries_[(static_cast<std::size_t>(input) * static_cast<std::size_t>(labels_) +
                         static_cast<std::size_t>(label)) *
                            static_cast<std::size_t>(outputs_) +
                        static_cast<std::size_t>(outcome)];
    }
    std::span<const Rational> entries() const {
        return entries_;
    }

   private:
    int outputs_ = 0;
    int inputs_ = 0;
    int labels_ = 0;
    std::vector<Rational> entries_;
};

enum class ModelKind { NegativeMeasurements, NegativeState };

std::string to_string(ModelKind kind);
ModelKind parse_model_kind(const std::string &text);

/// Local hidden-variable model with (quasi)state and per-party (quasi)responses.
struct ClassicalModel {
    Scenario scenario;
    QuasiState state;
    std::vector<ResponseTable> responses;
    ModelKind kind = ModelKind::NegativeMeasurements;
    bool compressed = false;

    /// Throws StructuralError if the state spaces and response tables disagree with the scenario.
    void check_shape() const;
};

/// Probability state over [a,x] pairs with weight box(a|x) / prod X_k; quasi responses
/// X_k delta(lambda, [a,x]) for non-last a, and the complement for the last outcome.
/// Throws SignallingError if the box is signalling, ArgumentError if it has negative entries.
ClassicalModel build_negative_measurements(const QuasiBox &box);

/// Labels [a,x] plus xi per party. The weight of a tuple whose non-xi parties form S is
/// prod_{i not in S} (1 - X_i) times the marginal box(a_S | x_S); responses are deterministic.
/// Throws SignallingError if the box is signalling.
ClassicalModel build_negative_state(const QuasiBox &box);

/// Merges, per party, every label whose response is the last outcome for every input into a
/// single eta label; merged weights are summed. No-op on an already compressed model.
ClassicalModel compress(const ClassicalModel &model);

/// p(a|x) = sum over label tuples of prod_k p_k(a_k | x_k, lambda_k) times the state weight.
QuasiBox evaluate(const ClassicalModel &model);

struct Negativity {
    Rational state;     // total |weight| over negative state weights
    Rational response;  // max over (k, x, lambda) of the negative mass of that response column
};

Negativity negativity(const ClassicalModel &model);

struct SampleEstimate {
    std::vector<double> mean;            // one per outcome tuple, MixedRadix order
    std::vector<double> standard_error;  // sample standard deviation / sqrt(shots)
    std::uint64_t shots = 0;
};

/// Signed Monte Carlo estimate of evaluate(model)(. | inputs): label tuples are drawn from
/// |state| / ||state||_1 and every draw contributes sign * ||state||_1 * prod_k p_k(a_k|x_k,lambda_k).
/// Deterministic for a given seed. Throws ArgumentError if shots < 1.
SampleEstimate sample_signed(const ClassicalModel &model, std::span<const int> inputs, std::int64_t shots,
                             std::uint64_t seed);

}  // namespace nsbox
