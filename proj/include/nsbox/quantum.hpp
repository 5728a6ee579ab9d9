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

#include <string>
#include <vector>

#include "nsbox/box.hpp"
#include "nsbox/classical.hpp"

namespace nsbox {

/// Hermitian operator that is diagonal in a labelled orthonormal basis. Only the diagonal is
/// stored; any two DiagonalOperators over the same basis commute.
struct DiagonalOperator {
    std::vector<Rational> diag;

    Rational trace() const;
    bool positive() const;  // every eigenvalue (= diagonal entry) >= 0
    Rational min_entry() const;
    std::size_t negative_count() const;
    bool projector_valued() const;  // every entry is 0 or 1

    bool operator==(const DiagonalOperator &) const = default;
};

/// Born-rule model over a product basis: joint state operator plus, for every
/// (party, input, outcome), a measurement operator on that party's factor.
struct QuantumModel {
    Scenario scenario;
    std::vector<LabelSpace> bases;
    DiagonalOperator state;  // MixedRadix order over the product basis
    /// measurements[k][x][a], each diagonal over bases[k].
    std::vector<std::vector<std::vector<DiagonalOperator>>> measurements;
    ModelKind kind = ModelKind::NegativeMeasurements;
    bool compressed = false;

    /// Joint Hilbert-space dimension, prod_k |bases[k]|.
    std::size_t dimension() const;
    /// Throws StructuralError if operator sizes disagree with the bases and scenario.
    void check_shape() const;
};

/// rho = sum p(lambda) |lambda><lambda| and M^{(k)}_{a|x} = sum_lambda p_k(a|x,lambda) |lambda><lambda|.
QuantumModel lift(const ClassicalModel &model);

/// p(a|x) = tr((M_{a_1|x_1} (x) ... (x) M_{a_N|x_N}) rho), summed directly over the joint basis.
QuasiBox evaluate_trace(const QuantumModel &model);

struct CompletenessFailure {
    int party = 0;
    int input = 0;
    int label = 0;  // basis index where sum_a M_{a|x} differs from 1
    Rational sum;
};

struct QuantumReport {
    ModelKind kind = ModelKind::NegativeMeasurements;
    std::size_t dimension = 0;
    std::string shape_error;  // empty when operator sizes match the bases
    std::vector<CompletenessFailure> completeness_failures;
    Rational trace;
    bool state_positive = true;
    Rational state_min;
    std::size_t state_negative_count = 0;
    bool measurements_positive = true;
    bool measurements_projective = true;
    Rational measurement_min;
    std::size_t measurement_negative_count = 0;
    /// Every operator is stored diagonally in the shared product basis.
    bool commuting = true;

    bool complete() const {
        return completeness_failures.empty();
    }
    bool trace_one() const {
        return trace == 1;
    }
    /// The positivity the model's kind promises: rho >= 0 for negative-measurement models,
    /// every M >= 0 for negative-state models.
    bool kind_positivity() const {
        return kind == ModelKind::NegativeMeasurements ? state_positive : measurements_positive;
    }
    bool well_formed() const {
        return shape_error.empty() && complete() && trace_one() && kind_positivity() && commuting;
    }
    /// Both sides positive: an ordinary density operator with ordinary POVMs.
    bool fully_positive() const {
        return state_positive && measurements_positive;
    }
};

/// Never throws on constraint violations; they are reported.
QuantumReport verify(const QuantumModel &model);

}  // namespace nsbox
