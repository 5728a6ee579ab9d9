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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nsbox/box.hpp"
#include "nsbox/classical.hpp"
#include "nsbox/errors.hpp"
#include "nsbox/gallery.hpp"
#include "nsbox/io.hpp"
#include "nsbox/locality.hpp"
#include "nsbox/quantum.hpp"

namespace py = pybind11;
using namespace nsbox;

namespace {

// Rationals cross the boundary as fractions.Fraction.
py::object to_fraction(const Rational &r) {
    static py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(r.get_str());
}

Rational from_python(const py::handle &value) {
    if (py::isinstance<py::float_>(value)) {
        throw ArgumentError("floats are not exact; pass a Fraction, int or string");
    }
    return parse_rational(py::str(value).cast<std::string>());
}

py::list fractions(std::span<const Rational> values) {
    py::list out;
    for (const auto &v : values) {
        out.append(to_fraction(v));
    }
    return out;
}

std::vector<Rational> rationals(const py::iterable &values) {
    std::vector<Rational> out;
    for (auto v : values) {
        out.push_back(from_python(v));
    }
    return out;
}

ClassicalModel build_model(const QuasiBox &box, const std::string &kind, bool compressed) {
    ClassicalModel m = parse_model_kind(kind) == ModelKind::NegativeMeasurements ? build_negative_measurements(box)
                                                                                   : build_negative_state(box);
    return compressed ? compress(m) : m;
}

py::dict certificate_dict(const LocalityCertificate &cert) {
    py::dict d;
    if (const auto *local = std::get_if<LocalCertificate>(&cert)) {
        d["verdict"] = "local";
        py::list weights;
        for (const auto &[strategy, w] : local->weights) {
            weights.append(py::make_tuple(strategy.to_string(), to_fraction(w)));
        }
        d["weights"] = weights;
    } else {
        const auto &nl = std::get<NonLocalCertificate>(cert);
        d["verdict"] = "nonlocal";
        d["box_value"] = to_fraction(nl.box_value);
        d["local_bound"] = to_fraction(nl.local_bound);
        d["functional"] = fractions(nl.functional.coefficients);
    }
    return d;
}

}  // namespace

PYBIND11_MODULE(_nsbox, m) {
    m.doc() = "Exact non-signalling boxes, quasi-classical models and locality certificates.";

    auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<StructuralError>(m, "StructuralError", base.ptr());
    py::register_exception<ArgumentError>(m, "ArgumentError", base.ptr());
    py::register_exception<SignallingError>(m, "SignallingError", base.ptr());
    py::register_exception<UndecidedError>(m, "UndecidedError", base.ptr());
    py::register_exception<SizeError>(m, "SizeError", base.ptr());

    py::class_<Scenario>(m, "Scenario")
        .def(py::init<std::vector<int>, std::vector<int>>(), py::arg("outputs"), py::arg("inputs"))
        .def_static("parse", &Scenario::parse)
        .def_property_readonly("outputs", py::overload_cast<>(&Scenario::outputs, py::const_))
        .def_property_readonly("inputs", py::overload_cast<>(&Scenario::inputs, py::const_))
        .def_property_readonly("parties", &Scenario::parties)
        .def("__eq__", &Scenario::operator==)
        .def("__repr__", [](const Scenario &s) { return "Scenario('" + s.to_string() + "')"; });

    py::class_<QuasiBox>(m, "Box")
        .def(py::init([](const Scenario &s, const py::iterable &values) { return QuasiBox(s, rationals(values)); }),
             py::arg("scenario"), py::arg("values"))
        .def_property_readonly("scenario", &QuasiBox::scenario)
        .def_property_readonly("values", [](const QuasiBox &b) { return fractions(b.values()); })
        .def(
            "__call__",
            [](const QuasiBox &b, const std::vector<int> &a, const std::vector<int> &x) {
                // 1-based like the file formats
                std::vector<int> a0, x0;
                for (int v : a) a0.push_back(v - 1);
                for (int v : x) x0.push_back(v - 1);
                return to_fraction(b(a0, x0));
            },
            py::arg("outcomes"), py::arg("inputs"))
        .def("to_json", &write_box)
        .def_static("from_json", [](const std::string &text) { return read_box(text); })
        .def("__eq__", &QuasiBox::operator==);

    py::class_<ClassicalModel>(m, "ClassicalModel")
        .def_property_readonly("kind", [](const ClassicalModel &c) { return to_string(c.kind); })
        .def_property_readonly("compressed", [](const ClassicalModel &c) { return c.compressed; })
        .def_property_readonly("space_sizes",
                               [](const ClassicalModel &c) {
                                   std::vector<std::size_t> sizes;
                                   for (const auto &s : c.state.spaces()) sizes.push_back(s.size());
                                   return sizes;
                               })
        .def_property_readonly("state", [](const ClassicalModel &c) { return fractions(c.state.weights()); })
        .def("to_json", &write_model)
        .def_static("from_json", [](const std::string &text) { return read_model(text); });

    py::class_<QuantumModel>(m, "QuantumModel")
        .def_property_readonly("kind", [](const QuantumModel &q) { return to_string(q.kind); })
        .def_property_readonly("dimension", &QuantumModel::dimension)
        .def_property_readonly("state", [](const QuantumModel &q) { return fractions(q.state.diag); })
        .def("to_json", &write_quantum)
        .def_static("from_json", [](const std::string &text) { return read_quantum(text); });

    m.def("pr_box", &pr_box);
    m.def("tsirelson_box", &tsirelson_box);
    m.def("uniform_box", &uniform_box, py::arg("scenario"));
    m.def("random_local_box", &random_local_box, py::arg("scenario"), py::arg("seed"));
    m.def("random_nonsignalling_box", &random_nonsignalling_box, py::arg("scenario"), py::arg("seed"));

    m.def(
        "validate",
        [](const QuasiBox &b, bool nonnegative) {
            auto r = validate(b, nonnegative);
            py::dict d;
            d["ok"] = r.ok();
            d["normalized"] = r.normalized();
            d["negative_entries"] = r.negative_entries.size();
            return d;
        },
        py::arg("box"), py::arg("require_nonnegative") = false);
    m.def("is_nonsignalling", [](const QuasiBox &b) { return is_nonsignalling(b).nonsignalling; });
    m.def("param_count", &param_count);
    m.def("canonical_marginals", [](const QuasiBox &b) { return fractions(canonical_marginals(b).entries()); });
    m.def(
        "from_marginals",
        [](const Scenario &s, const py::iterable &entries) { return from_marginals(MarginalTable(s, rationals(entries))); },
        py::arg("scenario"), py::arg("entries"));

    m.def("build_model", &build_model, py::arg("box"), py::arg("kind"), py::arg("compressed") = false);
    m.def("compress", &compress);
    m.def("evaluate", &evaluate);
    m.def("negativity", [](const ClassicalModel &c) {
        auto n = negativity(c);
        return py::make_tuple(to_fraction(n.state), to_fraction(n.response));
    });
    m.def(
        "sample",
        [](const ClassicalModel &c, const std::vector<int> &inputs, std::int64_t shots, std::uint64_t seed) {
            std::vector<int> x0;
            for (int v : inputs) x0.push_back(v - 1);
            auto est = sample_signed(c, x0, shots, seed);
            return py::make_tuple(est.mean, est.standard_error);
        },
        py::arg("model"), py::arg("inputs"), py::arg("shots"), py::arg("seed"));

    m.def("lift", &lift);
    m.def("evaluate_trace", &evaluate_trace);
    m.def("verify", [](const QuantumModel &q) {
        auto r = verify(q);
        py::dict d;
        d["well_formed"] = r.well_formed();
        d["complete"] = r.complete();
        d["trace_one"] = r.trace_one();
        d["state_positive"] = r.state_positive;
        d["measurements_positive"] = r.measurements_positive;
        d["measurements_projective"] = r.measurements_projective;
        d["state_min"] = to_fraction(r.state_min);
        d["measurement_min"] = to_fraction(r.measurement_min);
        return d;
    });

    m.def("vertex_count", &vertex_count);
    m.def(
        "is_local",
        [](const QuasiBox &b, double tol, bool chsh) {
            LocalityOptions opts;
            opts.tolerance = tol;
            if (chsh) {
                opts.candidates.push_back(chsh_functional());
            }
            return certificate_dict(is_local(b, opts));
        },
        py::arg("box"), py::arg("tol") = kDefaultTolerance, py::arg("chsh") = false);
    m.def("chsh_value", [](const QuasiBox &b) { return to_fraction(bell_value(b, chsh_functional())); });
}
