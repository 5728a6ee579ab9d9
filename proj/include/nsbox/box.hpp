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

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "nsbox/errors.hpp"
#include "nsbox/rational.hpp"
#include "nsbox/scenario.hpp"

namespace nsbox {

/// Conditional quasiprobability table q(a_1..a_N | x_1..x_N) over a scenario.
///
/// Storage is input-tuple major, output-tuple minor, both in MixedRadix order, so the block
/// for a fixed input tuple is contiguous. Entries may be negative; a QuasiBox with all entries
/// non-negative is an ordinary box. Immutable once built.
class QuasiBox {
   public:
    QuasiBox() = default;
    /// Throws StructuralError unless values.size() == |outputs| * |inputs|.
    QuasiBox(Scenario scenario, std::vector<Rational> values);

    const Scenario &scenario() const {
        return scenario_;
    }
    std::span<const Rational> values() const {
        return values_;
    }
    const Rational &at(std::size_t output_index, std::size_t input_index) const {
        return values_[input_index * scenario_.output_tuples().size() + output_index];
    }
    const Rational &operator()(std::span<const int> outcomes, std::span<const int> inputs) const {
        return at(scenario_.output_tuples().index(outcomes), scenario_.input_tuples().index(inputs));
    }
    /// All outcome entries for one input tuple.
    std::span<const Rational> column(std::size_t input_index) const {
        const std::size_t n = scenario_.output_tuples().size();
        return std::span<const Rational>(values_).subspan(input_index * n, n);
    }

    bool operator==(const QuasiBox &other) const = default;

   private:
    Scenario scenario_;
    std::vector<Rational> values_;
};

/// A QuasiBox whose entries are all non-negative. Kept as an alias; `validate` checks the extra condition.
using Box = QuasiBox;

struct NormalizationFailure {
    std::vector<int> inputs;
    Rational sum;
};

struct NegativeEntry {
    std::vector<int> outcomes;
    std::vector<int> inputs;
    Rational value;
};

struct ValidationReport {
    bool checked_nonnegative = false;
    std::vector<NormalizationFailure> normalization_failures;
    std::vector<NegativeEntry> negative_entries;

    bool normalized() const {
        return normalization_failures.empty();
    }
    bool ok() const {
        return normalization_failures.empty() && negative_entries.empty();
    }
};

ValidationReport validate(const QuasiBox &box, bool require_nonnegative);

/// Two input tuples differing only at `party` whose partial sums over that party's outcome differ.
/// `outcomes` holds the other parties' outcomes; the entry at `party` is -1.
struct SignallingWitness {
    int party = 0;
    std::vector<int> outcomes;
    std::vector<int> inputs_first;
    std::vector<int> inputs_second;
    Rational sum_first;
    Rational sum_second;

    std::string describe() const;
};

struct NonSignallingResult {
    bool nonsignalling = true;
    std::optional<SignallingWitness> witness;

    explicit operator bool() const {
        return nonsignalling;
    }
};

NonSignallingResult is_nonsignalling(const QuasiBox &box);

class SignallingError : public Error {
   public:
    explicit SignallingError(SignallingWitness witness)
        : Error("box is signalling: " + witness.describe()), witness_(std::move(witness)) {
    }
    const SignallingWitness &witness() const {
        return witness_;
    }

   private:
    SignallingWitness witness_;
};

/// Throws SignallingError carrying the witness if `box` is signalling.
void require_nonsignalling(const QuasiBox &box);

/// Marginal q(a_S | x_S) for the sorted 0-based party list `subset`, summing the other parties'
/// outcomes under an arbitrary completion of their inputs. Throws SignallingError on signalling boxes.
Rational marginal(const QuasiBox &box, std::span<const int> subset, std::span<const int> outcomes,
                  std::span<const int> inputs);

/// Same as `marginal` without the signalling check; the completion of absent inputs is all zeros.
Rational marginal_unchecked(const QuasiBox &box, std::span<const int> subset, std::span<const int> outcomes,
                            std::span<const int> inputs);

/// Coordinates of one canonical marginal: subset S (sorted, 0-based), outcomes a_S with every
/// a_i < A_i - 1 (0-based, i.e. never the last outcome), inputs x_S.
struct MarginalKey {
    std::vector<int> subset;
    std::vector<int> outcomes;
    std::vector<int> inputs;

    bool operator==(const MarginalKey &) const = default;
};

/// The complete set of canonical marginals of a non-signalling quasibox.
///
/// Blocks are ordered by subset bitmask (bit k set when party k is in S), so the empty subset
/// comes first and holds the constant 1. Inside a block, entries follow MixedRadix order over
/// (x_S, a_S) with radices (X_i ..., A_i - 1 ...).
class MarginalTable {
   public:
    MarginalTable() = default;
    /// Constant entry 1, everything else 0.
    explicit MarginalTable(Scenario scenario);
    /// Throws StructuralError on a size mismatch or if the constant entry is not 1.
    MarginalTable(Scenario scenario, std::vector<Rational> entries);

    const Scenario &scenario() const {
        return scenario_;
    }
    std::size_t size() const {
        return entries_.size();
    }
    std::span<const Rational> entries() const {
        return entries_;
    }

    std::size_t index(const MarginalKey &key) const;
    MarginalKey key(std::size_t index) const;
    const Rational &at(const MarginalKey &key) const {
        return entries_[index(key)];
    }
    /// Lookup by subset bitmask and block-local digits (x_S then a_S).
    const Rational &at(unsigned long mask, std::span<const int> inputs, std::span<const int> outcomes) const;

    bool operator==(const MarginalTable &other) const {
        return scenario_ == other.scenario_ && entries_ == other.entries_;
    }

   private:
    friend MarginalTable canonical_marginals(const QuasiBox &box);

    std::size_t block_index(unsigned long mask, std::span<const int> inputs, std::span<const int> outcomes) const;
    void layout();

    Scenario scenario_;
    std::vector<Rational> entries_;
    std::vector<std::size_t> offsets_;
    std::vector<MixedRadix> blocks_;
};

/// Number of canonical coordinates, prod_k ((A_k - 1) X_k + 1), counting the constant entry.
std::size_t param_count(const Scenario &scenario);

MarginalTable canonical_marginals(const QuasiBox &box);

/// The unique non-signalling quasibox with the given canonical marginals. Every entry with some
/// a_i at its last outcome is expanded as q(a_S|x_S) = q(a_{S\i}|x_{S\i}) - sum_{a < last} q(.., a, ..|x_S).
QuasiBox from_marginals(const MarginalTable &table);

std::vector<int> subset_from_mask(unsigned long mask, int parties);

}  // namespace nsbox
