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

#include "nsbox/box.hpp"

#include <cassert>
#include <optional>

namespace nsbox {

QuasiBox::QuasiBox(Scenario scenario, std::vector<Rational> values)
    : scenario_(std::move(scenario)), values_(std::move(values)) {
    const std::size_t expected = scenario_.output_tuples().size() * scenario_.input_tuples().size();
    if (values_.size() != expected) {
        throw StructuralError("box for scenario " + scenario_.to_string() + " needs " + std::to_string(expected) +
                              " entries, got " + std::to_string(values_.size()));
    }
}

ValidationReport validate(const QuasiBox &box, bool require_nonnegative) {
    const Scenario &s = box.scenario();
    ValidationReport report;
    report.checked_nonnegative = require_nonnegative;
    for (std::size_t xi = 0; xi < s.input_tuples().size(); ++xi) {
        Rational sum = 0;
        auto col = box.column(xi);
        for (std::size_t ai = 0; ai < col.size(); ++ai) {
            sum += col[ai];
            if (require_nonnegative && sgn(col[ai]) < 0) {
                report.negative_entries.push_back(
                    {s.output_tuples().unflatten(ai), s.input_tuples().unflatten(xi), col[ai]});
            }
        }
        if (sum != 1) {
            report.normalization_failures.push_back({s.input_tuples().unflatten(xi), sum});
        }
    }
    return report;
}

std::string SignallingWitness::describe() const {
    std::string others;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        others += (i ? "," : "") + (outcomes[i] < 0 ? std::string("*") : std::to_string(outcomes[i] + 1));
    }
    return "party " + std::to_string(party + 1) + " outcome sum at a=(" + others + ") is " + to_string(sum_first) +
           " for x=(" + join_one_based(inputs_first) + ") but " + to_string(sum_second) + " for x=(" +
           join_one_based(inputs_second) + ")";
}

namespace {

// Sum over party k's outcome, other outcomes fixed by `a` (entry k ignored).
Rational partial_sum(const QuasiBox &box, int party, std::vector<int> a, std::span<const int> x) {
    Rational sum = 0;
    for (int v = 0; v < box.scenario().outputs(party); ++v) {
        a[static_cast<std::size_t>(party)] = v;
        sum += box(a, x);
    }
    return sum;
}

}  // namespace

NonSignallingResult is_nonsignalling(const QuasiBox &box) {
    const Scenario &s = box.scenario();
    const int n = s.parties();
    for (int k = 0; k < n; ++k) {
        if (s.inputs(k) == 1) {
            continue;
        }
        std::vector<int> x(static_cast<std::size_t>(n), 0);
        do {
            if (x[static_cast<std::size_t>(k)] != 0) {
                continue;
            }
            std::vector<int> a(static_cast<std::size_t>(n), 0);
            do {
                if (a[static_cast<std::size_t>(k)] != 0) {
                    continue;
                }
                Rational reference = partial_sum(box, k, a, x);
                for (int alt = 1; alt < s.inputs(k); ++alt) {
                    std::vector<int> x2 = x;
                    x2[static_cast<std::size_t>(k)] = alt;
                    Rational other = partial_sum(box, k, a, x2);
                    if (other != reference) {
                        SignallingWitness w;
                        w.party = k;
                        w.outcomes = a;
                        w.outcomes[static_cast<std::size_t>(k)] = -1;
                        w.inputs_first = x;
                        w.inputs_second = x2;
                        w.sum_first = reference;
                        w.sum_second = other;
                        return {false, std::move(w)};
                    }
                }
            } while (s.output_tuples().next(a));
        } while (s.input_tuples().next(x));
    }
    return {true, std::nullopt};
}

void require_nonsignalling(const QuasiBox &box) {
    auto result = is_nonsignalling(box);
    if (!result) {
        throw SignallingError(*result.witness);
    }
}

namespace {

Rational marginal_with_completion(const QuasiBox &box, std::span<const int> subset, std::span<const int> outcomes,
                                  std::span<const int> inputs, bool last_completion) {
    const Scenario &s = box.scenario();
    const auto n = static_cast<std::size_t>(s.parties());
    if (outcomes.size() != subset.size() || inputs.size() != subset.size()) {
        throw StructuralError("marginal: subset, outcomes and inputs must have equal length");
    }
    std::vector<bool> in_subset(n, false);
    std::vector<int> a(n, 0), x(n, 0);
    for (std::size_t j = 0; j < subset.size(); ++j) {
        const int k = subset[j];
        if (k < 0 || k >= s.parties() || in_subset[static_cast<std::size_t>(k)] || (j && subset[j - 1] >= k)) {
            throw StructuralError("marginal: subset must be a sorted list of distinct parties");
        }
        if (outcomes[j] < 0 || outcomes[j] >= s.outputs(k) || inputs[j] < 0 || inputs[j] >= s.inputs(k)) {
            throw StructuralError("marginal: index out of range for party " + std::to_string(k + 1));
        }
        in_subset[static_cast<std::size_t>(k)] = true;
        a[static_cast<std::size_t>(k)] = outcomes[j];
        x[static_cast<std::size_t>(k)] = inputs[j];
    }
    std::vector<int> free_parties, free_radices;
    for (std::size_t k = 0; k < n; ++k) {
        if (!in_subset[k]) {
            free_parties.push_back(static_cast<int>(k));
            free_radices.push_back(s.outputs(static_cast<int>(k)));
            x[k] = last_completion ? s.inputs(static_cast<int>(k)) - 1 : 0;
        }
    }
    MixedRadix rest(free_radices);
    std::vector<int> digits(free_parties.size(), 0);
    Rational sum = 0;
    do {
        for (std::size_t j = 0; j < free_parties.size(); ++j) {
            a[static_cast<std::size_t>(free_parties[j])] = digits[j];
        }
        sum += box(a, x);
    } while (rest.next(digits));
    return sum;
}

}  // namespace

Rational marginal_unchecked(const QuasiBox &box, std::span<const int> subset, std::span<const int> outcomes,
                            std::span<const int> inputs) {
    return marginal_with_completion(box, subset, outcomes, inputs, false);
}

Rational marginal(const QuasiBox &box, std::span<const int> subset, std::span<const int> outcomes,
                  std::span<const int> inputs) {
    require_nonsignalling(box);
    Rational value = marginal_with_completion(box, subset, outcomes, inputs, false);
    assert(value == marginal_with_completion(box, subset, outcomes, inputs, true));
    return value;
}

std::vector<int> subset_from_mask(unsigned long mask, int parties) {
    std::vector<int> subset;
    for (int k = 0; k < parties; ++k) {
        if (mask & (1UL << k)) {
            subset.push_back(k);
        }
    }
    return subset;
}

std::size_t param_count(const Scenario &scenario) {
    std::size_t count = 1;
    for (int k = 0; k < scenario.parties(); ++k) {
        count *= static_cast<std::size_t>((scenario.outputs(k) - 1) * scenario.inputs(k) + 1);
    }
    return count;
}

MarginalTable::MarginalTable(Scenario scenario) : scenario_(std::move(scenario)) {
    layout();
    entries_.assign(offsets_.back(), Rational(0));
    entries_[0] = 1;
}

MarginalTable::MarginalTable(Scenario scenario, std::vector<Rational> entries)
    : scenario_(std::move(scenario)), entries_(std::move(entries)) {
    layout();
    if (entries_.size() != offsets_.back()) {
        throw StructuralError("marginal table for scenario " + scenario_.to_string() + " needs " +
                              std::to_string(offsets_.back()) + " entries, got " + std::to_string(entries_.size()));
    }
    if (entries_[0] != 1) {
        throw StructuralError("marginal table: empty-subset entry must be 1");
    }
}

void MarginalTable::layout() {
    const int n = scenario_.parties();
    if (n >= static_cast<int>(sizeof(unsigned long) * 8 - 1)) {
        throw SizeError("too many parties for subset enumeration", n);
    }
    const unsigned long masks = 1UL << n;
    offsets_.assign(masks + 1, 0);
    blocks_.clear();
    blocks_.reserve(masks);
    for (unsigned long mask = 0; mask < masks; ++mask) {
        std::vector<int> radices;
        auto subset = subset_from_mask(mask, n);
        for (int k : subset) {
            radices.push_back(scenario_.inputs(k));
        }
        for (int k : subset) {
            radices.push_back(scenario_.outputs(k) - 1);
        }
        // A block with some A_k = 1 party is empty: MixedRadix treats radix 0 as invalid.
        bool empty = false;
        for (int r : radices) {
            empty = empty || r == 0;
        }
        if (empty) {
            blocks_.emplace_back();
            offsets_[mask + 1] = offsets_[mask];
        } else {
            blocks_.emplace_back(radices);
            offsets_[mask + 1] = offsets_[mask] + blocks_.back().size();
        }
    }
}

std::size_t MarginalTable::block_index(unsigned long mask, std::span<const int> inputs,
                                       std::span<const int> outcomes) const {
    const auto subset = subset_from_mask(mask, scenario_.parties());
    if (inputs.size() != subset.size() || outcomes.size() != subset.size()) {
        throw StructuralError("marginal key length does not match its subset");
    }
    if (offsets_[mask + 1] == offsets_[mask]) {
        throw StructuralError("marginal key refers to an empty block");
    }
    std::vector<int> digits(inputs.begin(), inputs.end());
    digits.insert(digits.end(), outcomes.begin(), outcomes.end());
    for (std::size_t j = 0; j < subset.size(); ++j) {
        if (inputs[j] < 0 || inputs[j] >= scenario_.inputs(subset[j]) || outcomes[j] < 0 ||
            outcomes[j] >= scenario_.outputs(subset[j]) - 1) {
            throw StructuralError("marginal key index out of range for party " + std::to_string(subset[j] + 1));
        }
    }
    return offsets_[mask] + blocks_[mask].index(digits);
}

std::size_t MarginalTable::index(const MarginalKey &key) const {
    unsigned long mask = 0;
    for (std::size_t j = 0; j < key.subset.size(); ++j) {
        const int k = key.subset[j];
        if (k < 0 || k >= scenario_.parties() || (j && key.subset[j - 1] >= k)) {
            throw StructuralError("marginal key subset must be sorted and in range");
        }
        mask |= 1UL << k;
    }
    return block_index(mask, key.inputs, key.outcomes);
}

MarginalKey MarginalTable::key(std::size_t index) const {
    if (index >= entries_.size()) {
        throw StructuralError("marginal index out of range");
    }
    unsigned long mask = 0;
    while (offsets_[mask + 1] <= index) {
        ++mask;
    }
    MarginalKey key;
    key.subset = subset_from_mask(mask, scenario_.parties());
    auto digits = blocks_[mask].unflatten(index - offsets_[mask]);
    const std::size_t m = key.subset.size();
    key.inputs.assign(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(m));
    key.outcomes.assign(digits.begin() + static_cast<std::ptrdiff_t>(m), digits.end());
    return key;
}

const Rational &MarginalTable::at(unsigned long mask, std::span<const int> inputs,
                                  std::span<const int> outcomes) const {
    return entries_[block_index(mask, inputs, outcomes)];
}

MarginalTable canonical_marginals(const QuasiBox &box) {
    require_nonsignalling(box);
    MarginalTable table(box.scenario());
    for (std::size_t i = 1; i < table.entries_.size(); ++i) {
        const MarginalKey key = table.key(i);
        table.entries_[i] = marginal_unchecked(box, key.subset, key.outcomes, key.inputs);
        assert(table.entries_[i] == marginal_with_completion(box, key.subset, key.outcomes, key.inputs, true));
    }
    return table;
}

namespace {

// Reconstruction of every marginal for one fixed full input tuple. Memo slots are indexed in
// radix (A_k + 1) per party, where digit A_k marks "party not in the subset".
class Reconstructor {
   public:
    Reconstructor(const MarginalTable &table, std::vector<int> inputs)
        : table_(table), scenario_(table.scenario()), inputs_(std::move(inputs)) {
        std::vector<int> radices;
        for (int k = 0; k < scenario_.parties(); ++k) {
            radices.push_back(scenario_.outputs(k) + 1);
        }
        slots_ = MixedRadix(radices);
        memo_.assign(slots_.size(), std::nullopt);
    }

    // `digits[k] == outputs(k)` means party k is marginalized out.
    const Rational &value(std::vector<int> &digits) {
        auto &slot = memo_[slots_.index(digits)];
        if (slot) {
            return *slot;
        }
        const int n = scenario_.parties();
        int pivot = -1;
        for (int k = 0; k < n; ++k) {
            if (digits[static_cast<std::size_t>(k)] == scenario_.outputs(k) - 1) {
                pivot = k;
                break;
            }
        }
        Rational result;
        if (pivot < 0) {
            unsigned long mask = 0;
            std::vector<int> xs, as;
            for (int k = 0; k < n; ++k) {
                if (digits[static_cast<std::size_t>(k)] < scenario_.outputs(k)) {
                    mask |= 1UL << k;
                    xs.push_back(inputs_[static_cast<std::size_t>(k)]);
                    as.push_back(digits[static_cast<std::size_t>(k)]);
                }
            }
            result = mask == 0 ? Rational(1) : table_.at(mask, xs, as);
        } else {
            const auto p = static_cast<std::size_t>(pivot);
            const int last = digits[p];
            digits[p] = scenario_.outputs(pivot);
            result = value(digits);
            for (int v = 0; v < last; ++v) {
                digits[p] = v;
                result -= value(digits);
            }
            digits[p] = last;
        }
        slot = std::move(result);
        return *slot;
    }

   private:
    const MarginalTable &table_;
    const Scenario &scenario_;
    std::vector<int> inputs_;
    MixedRadix slots_;
    std::vector<std::optional<Rational>> memo_;
};

}  // namespace

QuasiBox from_marginals(const MarginalTable &table) {
    const Scenario &s = table.scenario();
    const std::size_t na = s.output_tuples().size();
    std::vector<Rational> values(na * s.input_tuples().size());
    std::vector<int> x(static_cast<std::size_t>(s.parties()), 0);
    std::size_t xi = 0;
    do {
        Reconstructor rec(table, x);
        std::vector<int> a(static_cast<std::size_t>(s.parties()), 0);
        std::size_t ai = 0;
        do {
            values[xi * na + ai] = rec.value(a);
            ++ai;
        } while (s.output_tuples().next(a));
        ++xi;
    } while (s.input_tuples().next(x));
    return QuasiBox(s, std::move(values));
}

}  // namespace nsbox
