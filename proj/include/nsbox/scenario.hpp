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
#include <span>
#include <string>
#include <vector>

namespace nsbox {

/// Row-major mixed-radix indexing: the last digit varies fastest.
/// Every tuple enumeration in the library (outcomes, inputs, hidden labels) goes through this.
class MixedRadix {
   public:
    MixedRadix() = default;
    explicit MixedRadix(std::vector<int> radices);

    std::size_t size() const {
        return size_;
    }
    std::size_t digits() const {
        return radices_.size();
    }
    std::span<const int> radices() const {
        return radices_;
    }

    std::size_t index(std::span<const int> digits) const;
    std::vector<int> unflatten(std::size_t index) const;

    /// Advances `digits` to the next tuple; returns false after the last one (digits reset to zero).
    bool next(std::vector<int> &digits) const;

   private:
    std::vector<int> radices_;
    std::vector<std::size_t> strides_;
    std::size_t size_ = 1;
};

/// N parties, party k choosing one of inputs(k) measurements and observing one of outputs(k) outcomes.
/// Indices are 0-based inside the library; files and the CLI use 1-based indices.
class Scenario {
   public:
    Scenario() = default;
    Scenario(std::vector<int> outputs, std::vector<int> inputs);

    int parties() const {
        return static_cast<int>(outputs_.size());
    }
    int outputs(int party) const {
        return outputs_[static_cast<std::size_t>(party)];
    }
    int inputs(int party) const {
        return inputs_[static_cast<std::size_t>(party)];
    }
    const std::vector<int> &outputs() const {
        return outputs_;
    }
    const std::vector<int> &inputs() const {
        return inputs_;
    }

    const MixedRadix &output_tuples() const {
        return output_radix_;
    }
    const MixedRadix &input_tuples() const {
        return input_radix_;
    }

    bool operator==(const Scenario &other) const {
        return outputs_ == other.outputs_ && inputs_ == other.inputs_;
    }

    /// "A1,A2/X1,X2", the form accepted by the CLI's --scenario flag.
    std::string to_string() const;
    static Scenario parse(const std::string &text);

   private:
    std::vector<int> outputs_;
    std::vector<int> inputs_;
    MixedRadix output_radix_;
    MixedRadix input_radix_;
};

/// "1,2,3" from 0-based digits {0,1,2}.
std::string join_one_based(std::span<const int> digits);
/// Inverse of join_one_based; validates each digit against `radices`.
std::vector<int> split_one_based(const std::string &text, std::span<const int> radices);

}  // namespace nsbox
