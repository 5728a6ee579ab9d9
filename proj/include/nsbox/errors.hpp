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

#include <stdexcept>
#include <string>

namespace nsbox {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Malformed text input (bad JSON, bad rational literal, bad label).
class ParseError : public Error {
   public:
    using Error::Error;
};

/// Shape mismatch: missing or extra entries, out-of-range indices.
class StructuralError : public Error {
   public:
    using Error::Error;
};

/// An argument outside its documented domain.
class ArgumentError : public Error {
   public:
    using Error::Error;
};

/// Enumeration would exceed the configured vertex cap.
class SizeError : public Error {
   public:
    SizeError(const std::string &what, double count) : Error(what), count_(count) {
    }
    double count() const {
        return count_;
    }

   private:
    double count_;
};

/// The floating-point LP could not be turned into an exactly verified certificate.
class UndecidedError : public Error {
   public:
    using Error::Error;
};

}  // namespace nsbox
