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

#include "nsbox/scenario.hpp"

#include <charconv>
#include <limits>

#include "nsbox/errors.hpp"

namespace nsbox {

MixedRadix::MixedRadix(std::vector<int> radices) : radices_(std::move(radices)), strides_(radices_.size()) {
    size_ = 1;
    for (std::size_t i = radices_.size(); i-- > 0;) {
        if (radices_[i] < 1) {
            throw ArgumentError("mixed radix digits must have radix >= 1");
        }
        strides_[i] = size_;
        if (size_ > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(radices_[i])) {
            throw SizeError("tuple space too large", static_cast<double>(size_) * radices_[i]);
        }
        size_ *= static_cast<std::size_t>(radices_[i]);
    }
}

std::size_t MixedRadix::index(std::span<const int> digits) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < radices_.size(); ++i) {
        idx += strides_[i] * static_cast<std::size_t>(digits[i]);
    }
    return idx;
}

std::vector<int> MixedRadix::unflatten(std::size_t index) const {
    std::vector<int> digits(radices_.size());
    for (std::size_t i = 0; i < radices_.size(); ++i) {
        digits[i] = static_cast<int>(index / strides_[i]);
        index %= strides_[i];
    }
    return digits;
}

bool MixedRadix::next(std::vector<int> &digits) const {
    for (std::size_t i = radices_.size(); i-- > 0;) {
        if (++digits[i] < radices_[i]) {
            return true;
        }
        digits[i] = 0;
    }
    return false;
}

Scenario::Scenario(std::vector<int> outputs, std::vector<int> inputs)
    : outputs_(std::move(outputs)), inputs_(std::move(inputs)) {
    if (outputs_.empty()) {
        throw ArgumentError("scenario needs at least one party");
    }
    if (outputs_.size() != inputs_.size()) {
        throw ArgumentError("scenario outputs and inputs must have one entry per party");
    }
    for (std::size_t k = 0; k < outputs_.size(); ++k) {
        if (outputs_[k] < 1 || inputs_[k] < 1) {
            throw ArgumentError("party " + std::to_string(k + 1) + " needs at least one outcome and one input");
        }
    }
    output_radix_ = MixedRadix(outputs_);
    input_radix_ = MixedRadix(inputs_);
}

namespace {

std::vector<int> parse_int_list(const std::string &text) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) {
            comma = text.size();
        }
        int v = 0;
        const char *first = text.data() + pos;
        const char *last = text.data() + comma;
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last || first == last) {
            throw ParseError("bad integer list '" + text + "'");
        }
        out.push_back(v);
        pos = comma + 1;
    }
    return out;
}

}  // namespace

std::string Scenario::to_string() const {
    std::string s;
    for (std::size_t k = 0; k < outputs_.size(); ++k) {
        s += (k ? "," : "") + std::to_string(outputs_[k]);
    }
    s += "/";
    for (std::size_t k = 0; k < inputs_.size(); ++k) {
        s += (k ? "," : "") + std::to_string(inputs_[k]);
    }
    return s;
}

Scenario Scenario::parse(const std::string &text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) {
        throw ParseError("scenario must look like 'A1,A2/X1,X2', got '" + text + "'");
    }
    return Scenario(parse_int_list(text.substr(0, slash)), parse_int_list(text.substr(slash + 1)));
}

std::string join_one_based(std::span<const int> digits) {
    std::string s;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i) {
            s += ',';
        }
        s += std::to_string(digits[i] + 1);
    }
    return s;
}

std::vector<int> split_one_based(const std::string &text, std::span<const int> radices) {
    std::vector<int> values = text.empty() && radices.empty() ? std::vector<int>{} : parse_int_list(text);
    if (values.size() != radices.size()) {
        throw StructuralError("tuple '" + text + "' should have " + std::to_string(radices.size()) + " entries");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < 1 || values[i] > radices[i]) {
            throw StructuralError("tuple '" + text + "' entry " + std::to_string(i + 1) + " out of range 1.." +
                                  std::to_string(radices[i]));
        }
        values[i] -= 1;
    }
    return values;
}

}  // namespace nsbox
