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

#include "nsbox/quantum.hpp"

#include "nsbox/errors.hpp"

namespace nsbox {

Rational DiagonalOperator::trace() const {
    Rational t = 0;
    for (const auto &d : diag) {
        t += d;
    }
    return t;
}

bool DiagonalOperator::positive() const {
    for (const auto &d : diag) {
        if (sgn(d) < 0) {
            return false;
        }
    }
    return true;
}

Rational DiagonalOperator::min_entry() const {
    if (diag.empty()) {
        return 0;
    }
    Rational m = diag.front();
    for (const auto &d : diag) {
        if (d < m) {
            m = d;
        }
    }
    return m;
}

std::size_t DiagonalOperator::negative_count() const {
    std::size_t count = 0;
    for (const auto &d : diag) {
        count += sgn(d) < 0 ? 1 : 0;
    }
    return count;
}

bool DiagonalOperator::projector_valued() const {
    for (const auto &d : diag) {
        if (d != 0 && d != 1) {
            return false;
        }
    }
    return true;
}

std::size_t QuantumModel::dimension() const {
    std::size_t dim = 1;
    for (const auto &b : bases) {
        dim *= b.size();
    }
    return dim;
}

void QuantumModel::check_shape() const {
    const int n = scenario.parties();
    if (static_cast<int>(bases.size()) != n || static_cast<int>(measurements.size()) != n) {
        throw StructuralError("quantum model needs one basis and one measurement set per party");
    }
    for (const auto &b : bases) {
        if (b.empty()) {
            throw StructuralError("quantum model basis is empty");
        }
    }
    if (state.diag.size() != dimension()) {
        throw StructuralError("state diagonal has " + std::to_string(state.diag.size()) + " entries, expected " +
                              std::to_string(dimension()));
    }
    for (int k = 0; k < n; ++k) {
        const auto &per_input = measurements[static_cast<std::size_t>(k)];
        if (static_cast<int>(per_input.size()) != scenario.inputs(k)) {
            throw StructuralError("party " + std::to_string(k + 1) + " needs one measurement per input");
        }
        for (const auto &per_outcome : per_input) {
            if (static_cast<int>(per_outcome.size()) != scenario.outputs(k)) {
                throw StructuralError("party " + std::to_string(k + 1) + " needs one operator per outcome");
            }
            for (const auto &op : per_outcome) {
                if (op.diag.size() != bases[static_cast<std::size_t>(k)].size()) {
                    throw StructuralError("measurement operator of party " + std::to_string(k + 1) +
                                          " does not match its basis");
                }
            }
        }
    }
}

QuantumModel lift(const ClassicalModel &model) {
    model.check_shape();
    QuantumModel qm;
    qm.scenario = model.scenario;
    qm.bases = model.state.spaces();
    qm.state.diag.assign(model.state.weights().begin(), model.state.weights().end());
    qm.kind = model.kind;
    qm.compressed = model.compressed;
    for (int k = 0; k < model.scenario.parties(); ++k) {
        const auto &r = model.responses[static_cast<std::size_t>(k)];
        std::vector<std::vector<DiagonalOperator>> per_input(static_cast<std::size_t>(r.inputs()));
        for (int x = 0; x < r.inputs(); ++x) {
            for (int a = 0; a < r.outputs(); ++a) {
                DiagonalOperator op;
                for (int l = 0; l < r.labels(); ++l) {
                    op.diag.push_back(r(a, x, l));
                }
                per_input[static_cast<std::size_t>(x)].push_back(std::move(op));
            }
        }
        qm.measurements.push_back(std::move(per_input));
    }
    return qm;
}

QuasiBox evaluate_trace(const QuantumModel &model) {
    model.check_shape();
    const Scenario &s = model.scenario;
    const int n = s.parties();
    std::vector<int> sizes;
    for (const auto &b : model.bases) {
        sizes.push_back(static_cast<int>(b.size()));
    }
    const MixedRadix joint(sizes);
    const std::size_t na = s.output_tuples().size();
    std::vector<Rational> values(na * s.input_tuples().size());

    std::vector<int> x(static_cast<std::size_t>(n), 0);
    std::size_t xi = 0;
    do {
        std::vector<int> a(static_cast<std::size_t>(n), 0);
        std::size_t ai = 0;
        do {
            // tr((M_1 (x) ... (x) M_N) rho) for diagonal operators is the sum over basis tuples of
            // the product of the diagonal entries.
            Rational total = 0;
            std::vector<int> basis(static_cast<std::size_t>(n), 0);
            std::size_t bi = 0;
            do {
                const Rational &rho = model.state.diag[bi++];
                if (sgn(rho) == 0) {
                    continue;
                }
                Rational term = rho;
                for (int k = 0; k < n && sgn(term) != 0; ++k) {
                    const auto ku = static_cast<std::size_t>(k);
                    term *= model.measurements[ku][static_cast<std::size_t>(x[ku])][static_cast<std::size_t>(a[ku])]
                                .diag[static_cast<std::size_t>(basis[ku])];
                }
                total += term;
            } while (joint.next(basis));
            values[xi * na + ai] = std::move(total);
            ++ai;
        } while (s.output_tuples().next(a));
        ++xi;
    } while (s.input_tuples().next(x));
    return QuasiBox(s, std::move(values));
}

QuantumReport verify(const QuantumModel &model) {
    QuantumReport report;
    report.kind = model.kind;
    try {
        model.check_shape();
    } catch (const StructuralError &e) {
        report.shape_error = e.what();
        return report;
    }
    report.dimension = model.dimension();
    report.trace = model.state.trace();
    report.state_positive = model.state.positive();
    report.state_min = model.state.min_entry();
    report.state_negative_count = model.state.negative_count();

    bool first = true;
    for (int k = 0; k < model.scenario.parties(); ++k) {
        const auto &per_input = model.measurements[static_cast<std::size_t>(k)];
        const std::size_t dim = model.bases[static_cast<std::size_t>(k)].size();
        for (int x = 0; x < static_cast<int>(per_input.size()); ++x) {
            std::vector<Rational> sum(dim, Rational(0));
            for (const auto &op : per_input[static_cast<std::size_t>(x)]) {
                for (std::size_t l = 0; l < dim; ++l) {
                    sum[l] += op.diag[l];
                }
                report.measurements_positive = report.measurements_positive && op.positive();
                report.measurements_projective = report.measurements_projective && op.projector_valued();
                report.measurement_negative_count += op.negative_count();
                Rational m = op.min_entry();
                if (first || m < report.measurement_min) {
                    report.measurement_min = m;
                    first = false;
                }
            }
            for (std::size_t l = 0; l < dim; ++l) {
                if (sum[l] != 1) {
                    report.completeness_failures.push_back({k, x, static_cast<int>(l), sum[l]});
                }
            }
        }
    }
    // Diagonal storage in one shared product basis: every pair of operators commutes.
    report.commuting = true;
    return report;
}

}  // namespace nsbox
