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

#include "nsbox/locality.hpp"

#include <cmath>
#include <optional>

#include "nsbox/gallery.hpp"
#include "simplex.hpp"

namespace nsbox {

std::string DeterministicStrategy::to_string() const {
    std::string s;
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
        if (k) {
            s += ';';
        }
        s += join_one_based(outcomes[k]);
    }
    return s;
}

double vertex_count(const Scenario &scenario) {
    double count = 1.0;
    for (int k = 0; k < scenario.parties(); ++k) {
        count *= std::pow(static_cast<double>(scenario.outputs(k)), scenario.inputs(k));
    }
    return count;
}

std::vector<DeterministicStrategy> enumerate_vertices(const Scenario &scenario, double cap) {
    const double count = vertex_count(scenario);
    if (count > cap) {
        throw SizeError("scenario " + scenario.to_string() + " has " + std::to_string(count) +
                            " deterministic strategies, above the cap of " + std::to_string(cap),
                        count);
    }
    std::vector<int> radices;
    for (int k = 0; k < scenario.parties(); ++k) {
        for (int x = 0; x < scenario.inputs(k); ++x) {
            radices.push_back(scenario.outputs(k));
        }
    }
    MixedRadix digits_radix(radices);
    std::vector<DeterministicStrategy> out;
    out.reserve(digits_radix.size());
    std::vector<int> digits(radices.size(), 0);
    do {
        DeterministicStrategy strategy;
        std::size_t pos = 0;
        for (int k = 0; k < scenario.parties(); ++k) {
            auto first = digits.begin() + static_cast<std::ptrdiff_t>(pos);
            strategy.outcomes.emplace_back(first, first + scenario.inputs(k));
            pos += static_cast<std::size_t>(scenario.inputs(k));
        }
        out.push_back(std::move(strategy));
    } while (digits_radix.next(digits));
    return out;
}

Rational bell_value(const QuasiBox &box, const BellFunctional &functional) {
    if (!(box.scenario() == functional.scenario) || functional.coefficients.size() != box.values().size()) {
        throw StructuralError("functional and box have different scenarios");
    }
    Rational value = 0;
    for (std::size_t i = 0; i < box.values().size(); ++i) {
        if (sgn(functional.coefficients[i]) != 0) {
            value += functional.coefficients[i] * box.values()[i];
        }
    }
    return value;
}

Rational bell_value(const DeterministicStrategy &strategy, const BellFunctional &functional) {
    const Scenario &s = functional.scenario;
    if (static_cast<int>(strategy.outcomes.size()) != s.parties()) {
        throw StructuralError("strategy and functional have different party counts");
    }
    Rational value = 0;
    std::vector<int> x(static_cast<std::size_t>(s.parties()), 0);
    std::vector<int> a(x.size());
    std::size_t xi = 0;
    do {
        for (int k = 0; k < s.parties(); ++k) {
            a[static_cast<std::size_t>(k)] = strategy.outcome(k, x[static_cast<std::size_t>(k)]);
        }
        value += functional.at(s.output_tuples().index(a), xi++);
    } while (s.input_tuples().next(x));
    return value;
}

Rational local_bound(const BellFunctional &functional, double cap) {
    std::optional<Rational> best;
    for (const auto &v : enumerate_vertices(functional.scenario, cap)) {
        Rational value = bell_value(v, functional);
        if (!best || value > *best) {
            best = std::move(value);
        }
    }
    return *best;
}

BellFunctional chsh_functional() {
    Scenario s({2, 2}, {2, 2});
    std::vector<Rational> c(16);
    for (int x1 = 0; x1 < 2; ++x1) {
        for (int x2 = 0; x2 < 2; ++x2) {
            const int sign = (x1 == 1 && x2 == 1) ? -1 : 1;
            for (int a1 = 0; a1 < 2; ++a1) {
                for (int a2 = 0; a2 < 2; ++a2) {
                    const std::size_t xi = static_cast<std::size_t>(x1 * 2 + x2);
                    const std::size_t ai = static_cast<std::size_t>(a1 * 2 + a2);
                    c[xi * 4 + ai] = sign * (a1 == a2 ? 1 : -1);
                }
            }
        }
    }
    return {s, std::move(c)};
}

NonLocalCertificate certify_with(const QuasiBox &box, const BellFunctional &functional, double cap) {
    NonLocalCertificate cert;
    cert.functional = functional;
    cert.box_value = bell_value(box, functional);
    cert.local_bound = local_bound(functional, cap);
    return cert;
}

bool verify_certificate(const QuasiBox &box, const LocalityCertificate &certificate, double cap) {
    if (const auto *local = std::get_if<LocalCertificate>(&certificate)) {
        const Scenario &s = box.scenario();
        std::vector<Rational> mix(box.values().size(), Rational(0));
        Rational total = 0;
        for (const auto &[strategy, weight] : local->weights) {
            if (sgn(weight) < 0) {
                return false;
            }
            total += weight;
            Box vertex = deterministic_box(s, strategy);
            for (std::size_t i = 0; i < mix.size(); ++i) {
                if (sgn(vertex.values()[i]) != 0) {
                    mix[i] += weight * vertex.values()[i];
                }
            }
        }
        if (total != 1) {
            return false;
        }
        for (std::size_t i = 0; i < mix.size(); ++i) {
            if (mix[i] != box.values()[i]) {
                return false;
            }
        }
        return true;
    }
    const auto &nonlocal = std::get<NonLocalCertificate>(certificate);
    const Rational value = bell_value(box, nonlocal.functional);
    const Rational bound = local_bound(nonlocal.functional, cap);
    return value == nonlocal.box_value && bound == nonlocal.local_bound && value > bound;
}

namespace {

// Canonical-coordinate vector of a deterministic strategy: each marginal is a product of indicators.
std::vector<double> vertex_coordinates(const DeterministicStrategy &v, const std::vector<MarginalKey> &keys) {
    std::vector<double> coords(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) {
        const auto &key = keys[i];
        bool hit = true;
        for (std::size_t j = 0; j < key.subset.size() && hit; ++j) {
            hit = v.outcome(key.subset[j], key.inputs[j]) == key.outcomes[j];
        }
        coords[i] = hit ? 1.0 : 0.0;
    }
    return coords;
}

// Functional in (a, x) coordinates reproducing sum_i y_i m_i(q) on non-signalling q: marginal m_i
// is read with absent inputs completed to the first input.
BellFunctional functional_from_marginal_weights(const Scenario &s, const std::vector<MarginalKey> &keys,
                                                const std::vector<Rational> &y) {
    BellFunctional f{s, std::vector<Rational>(s.output_tuples().size() * s.input_tuples().size(), Rational(0))};
    const auto n = static_cast<std::size_t>(s.parties());
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (sgn(y[i]) == 0) {
            continue;
        }
        const auto &key = keys[i];
        std::vector<int> x(n, 0);
        std::vector<bool> fixed(n, false);
        std::vector<int> a_fixed(n, 0);
        for (std::size_t j = 0; j < key.subset.size(); ++j) {
            const auto k = static_cast<std::size_t>(key.subset[j]);
            x[k] = key.inputs[j];
            fixed[k] = true;
            a_fixed[k] = key.outcomes[j];
        }
        const std::size_t xi = s.input_tuples().index(x);
        std::vector<int> a(n, 0);
        do {
            bool match = true;
            for (std::size_t k = 0; k < n && match; ++k) {
                match = !fixed[k] || a[k] == a_fixed[k];
            }
            if (match) {
                f.coefficients[xi * s.output_tuples().size() + s.output_tuples().index(a)] += y[i];
            }
        } while (s.output_tuples().next(a));
    }
    return f;
}

// Solves sum_j w_j v_j = target exactly over the given columns by Gaussian elimination.
// Free variables are set to zero. Returns nullopt if the system is inconsistent.
std::optional<std::vector<Rational>> solve_exact(const std::vector<std::vector<Rational>> &cols,
                                                 const std::vector<Rational> &target) {
    const std::size_t m = target.size();
    const std::size_t n = cols.size();
    std::vector<std::vector<Rational>> mat(m, std::vector<Rational>(n + 1));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            mat[i][j] = cols[j][i];
        }
        mat[i][n] = target[i];
    }
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t p = row;
        while (p < m && sgn(mat[p][col]) == 0) {
            ++p;
        }
        if (p == m) {
            continue;
        }
        std::swap(mat[p], mat[row]);
        const Rational inv = 1 / mat[row][col];
        for (std::size_t j = col; j <= n; ++j) {
            mat[row][j] *= inv;
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (i != row && sgn(mat[i][col]) != 0) {
                const Rational f = mat[i][col];
                for (std::size_t j = col; j <= n; ++j) {
                    mat[i][j] -= f * mat[row][j];
                }
            }
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (std::size_t i = row; i < m; ++i) {
        if (sgn(mat[i][n]) != 0) {
            return std::nullopt;
        }
    }
    std::vector<Rational> w(n, Rational(0));
    for (std::size_t i = 0; i < pivot_col.size(); ++i) {
        w[pivot_col[i]] = mat[i][n];
    }
    return w;
}

LocalCertificate local_from_weights(const std::vector<DeterministicStrategy> &vertices, const std::vector<int> &ids,
                                    const std::vector<Rational> &weights) {
    LocalCertificate cert;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (sgn(weights[i]) != 0) {
            cert.weights.emplace_back(vertices[static_cast<std::size_t>(ids[i])], weights[i]);
        }
    }
    return cert;
}

std::optional<LocalCertificate> exact_local(const QuasiBox &box, const std::vector<DeterministicStrategy> &vertices,
                                            const std::vector<MarginalKey> &keys, const MarginalTable &target,
                                            const detail::L1FitResult &lp, const LocalityOptions &options) {
    // Continued-fraction rounding of the float weights first.
    std::vector<int> ids;
    std::vector<Rational> rounded;
    for (std::size_t j = 0; j < lp.weights.size(); ++j) {
        if (lp.weights[j] > 0.0) {
            Rational r = rationalize(lp.weights[j], options.max_denominator);
            if (sgn(r) > 0) {
                ids.push_back(static_cast<int>(j));
                rounded.push_back(std::move(r));
            }
        }
    }
    LocalityCertificate candidate = local_from_weights(vertices, ids, rounded);
    if (verify_certificate(box, candidate, options.vertex_cap)) {
        return std::get<LocalCertificate>(std::move(candidate));
    }

    // Exact solve restricted to the LP's basic columns.
    std::vector<std::vector<Rational>> cols;
    for (int id : lp.support) {
        const auto coords = vertex_coordinates(vertices[static_cast<std::size_t>(id)], keys);
        cols.emplace_back(coords.begin(), coords.end());
    }
    std::vector<Rational> rhs(target.entries().begin(), target.entries().end());
    auto solved = solve_exact(cols, rhs);
    if (!solved) {
        return std::nullopt;
    }
    for (const auto &w : *solved) {
        if (sgn(w) < 0) {
            return std::nullopt;
        }
    }
    candidate = local_from_weights(vertices, lp.support, *solved);
    if (verify_certificate(box, candidate, options.vertex_cap)) {
        return std::get<LocalCertificate>(std::move(candidate));
    }
    return std::nullopt;
}

std::optional<NonLocalCertificate> exact_nonlocal(const QuasiBox &box, const std::vector<DeterministicStrategy> &vertices,
                                                  const std::vector<MarginalKey> &keys, const detail::L1FitResult &lp,
                                                  const LocalityOptions &options) {
    // Smallest denominators first: the first functional that separates exactly wins.
    for (std::int64_t cap : {std::int64_t{1000}, std::int64_t{1000000}, options.max_denominator}) {
        if (cap > options.max_denominator) {
            continue;
        }
        std::vector<Rational> y;
        for (double v : lp.dual) {
            y.push_back(rationalize(v, cap));
        }
        BellFunctional f = functional_from_marginal_weights(box.scenario(), keys, y);
        NonLocalCertificate cert;
        cert.functional = std::move(f);
        cert.box_value = bell_value(box, cert.functional);
        std::optional<Rational> bound;
        for (const auto &v : vertices) {
            Rational value = bell_value(v, cert.functional);
            if (!bound || value > *bound) {
                bound = std::move(value);
            }
        }
        cert.local_bound = *bound;
        cert.lp_margin = lp.objective;
        if (cert.box_value > cert.local_bound) {
            return cert;
        }
    }
    return std::nullopt;
}

}  // namespace

LocalityCertificate is_local(const QuasiBox &box, const LocalityOptions &options) {
    require_nonsignalling(box);
    const Scenario &s = box.scenario();
    const auto vertices = enumerate_vertices(s, options.vertex_cap);

    for (const auto &f : options.candidates) {
        if (!(f.scenario == s)) {
            continue;
        }
        NonLocalCertificate cert = certify_with(box, f, options.vertex_cap);
        if (cert.box_value > cert.local_bound) {
            return cert;
        }
    }

    const MarginalTable target = canonical_marginals(box);
    std::vector<MarginalKey> keys;
    for (std::size_t i = 0; i < target.size(); ++i) {
        keys.push_back(target.key(i));
    }
    std::vector<std::vector<double>> columns;
    columns.reserve(vertices.size());
    for (const auto &v : vertices) {
        columns.push_back(vertex_coordinates(v, keys));
    }
    std::vector<double> p;
    for (const auto &e : target.entries()) {
        p.push_back(e.get_d());
    }

    const detail::L1FitResult lp = detail::solve_l1_fit(columns, p);
    if (!lp.converged) {
        throw UndecidedError("locality LP did not converge");
    }

    if (lp.objective <= options.tolerance) {
        if (auto local = exact_local(box, vertices, keys, target, lp, options)) {
            return *local;
        }
        if (auto nonlocal = exact_nonlocal(box, vertices, keys, lp, options)) {
            return *nonlocal;
        }
    } else {
        if (auto nonlocal = exact_nonlocal(box, vertices, keys, lp, options)) {
            return *nonlocal;
        }
        if (auto local = exact_local(box, vertices, keys, target, lp, options)) {
            return *local;
        }
    }
    throw UndecidedError("LP residual " + std::to_string(lp.objective) +
                         " could not be confirmed in exact arithmetic at tolerance " +
                         std::to_string(options.tolerance));
}

}  // namespace nsbox
