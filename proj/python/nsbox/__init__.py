# Copyright 2026 The nsbox Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Exact non-signalling boxes, quasi-classical models and locality certificates.

Rationals are exchanged as ``fractions.Fraction``; outcome and input tuples are 1-based.
"""

from ._nsbox import (
    ArgumentError,
    Box,
    ClassicalModel,
    Error,
    ParseError,
    QuantumModel,
    Scenario,
    SignallingError,
    SizeError,
    StructuralError,
    UndecidedError,
    build_model,
    canonical_marginals,
    chsh_value,
    compress,
    evaluate,
    evaluate_trace,
    from_marginals,
    is_local,
    is_nonsignalling,
    lift,
    negativity,
    param_count,
    pr_box,
    random_local_box,
    random_nonsignalling_box,
    sample,
    tsirelson_box,
    uniform_box,
    validate,
    verify,
    vertex_count,
)

__version__ = "0.1.0"
