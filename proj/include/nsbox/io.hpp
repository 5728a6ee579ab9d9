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
#include <string_view>

#include "nsbox/box.hpp"
#include "nsbox/classical.hpp"
#include "nsbox/quantum.hpp"

// Text formats. Every writer emits JSON with sorted object keys, tuples in canonical order,
// 1-based indices and "num/den" rationals, terminated by a newline, so a read/write round trip
// is byte-identical. Readers throw ParseError for malformed JSON (the message carries the byte
// position) and StructuralError for well-formed JSON with missing, extra or out-of-range entries.
//
// Box:       {"scenario": {"outputs": [...], "inputs": [...]},
//             "probabilities": {"x1,x2": ["p(1,1|x)", "p(1,2|x)", ...], ...}}
// Marginals: {"scenario": ..., "marginals": {"S|a_S|x_S": "q", ...}}, e.g. "1,2|1,1|2,1"; the
//            constant entry is "||".
// Model:     {"scenario", "kind": "neg-meas"|"neg-state", "compressed", "spaces": [["[1,1]", "xi", ...]],
//             "state": {"label1,label2": "w"}, "responses": [{"a|x,label": "p"}, ...]}
// Quantum:   {"scenario", "kind", "compressed", "bases": [[labels]], "state": ["diag", ...],
//             "measurements": [{"a|x": ["diag", ...]}, ...]}
namespace nsbox {

enum class DocumentKind { Box, Marginals, ClassicalModel, QuantumModel };

/// Identifies the document type from its top-level keys.
DocumentKind detect_document(std::string_view text);

std::string write_box(const QuasiBox &box);
QuasiBox read_box(std::string_view text);

std::string write_marginals(const MarginalTable &table);
MarginalTable read_marginals(std::string_view text);

std::string write_model(const ClassicalModel &model);
ClassicalModel read_model(std::string_view text);

std::string write_quantum(const QuantumModel &model);
QuantumModel read_quantum(std::string_view text);

}  // namespace nsbox
