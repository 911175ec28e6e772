// Copyright 2026 The gdm Authors
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

#ifndef GDM_ERRORS_HPP
#define GDM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gdm {

/// Base class for all library errors. CLI maps these to exit code 2.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class BadParam : public Error {
 public:
  explicit BadParam(const std::string& msg) : Error("bad parameter: " + msg) {}
};

class UnknownModel : public Error {
 public:
  explicit UnknownModel(const std::string& name)
      : Error("unknown model: " + name) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& msg) : Error("domain error: " + msg) {}
};

class VolVanishes : public Error {
 public:
  explicit VolVanishes(double x)
      : Error("volatility vanishes near x = " + std::to_string(x)), x_(x) {}
  double where() const { return x_; }

 private:
  double x_;
};

class QuadratureDiverged : public Error {
 public:
  explicit QuadratureDiverged(const std::string& msg)
      : Error("quadrature diverged: " + msg) {}
};

class NotConverged : public Error {
 public:
  explicit NotConverged(const std::string& msg)
      : Error("did not converge: " + msg) {}
};

class NotDcError : public Error {
 public:
  explicit NotDcError(const std::string& msg)
      : Error("function is not dc on the requested span: " + msg) {}
};

class AtomAtBlowUp : public Error {
 public:
  explicit AtomAtBlowUp(double x)
      : Error("speed atom sits at a blow-up point of the scale derivative, x = " +
              std::to_string(x)) {}
};

class NeedsDeclaration : public Error {
 public:
  explicit NeedsDeclaration(const std::string& msg)
      : Error("boundary behavior undetermined: " + msg) {}
};

class BadStart : public Error {
 public:
  explicit BadStart(double x0)
      : Error("start point outside the interval interior: x0 = " +
              std::to_string(x0)) {}
};

class EmptyTruncation : public Error {
 public:
  explicit EmptyTruncation(const std::string& msg)
      : Error("empty truncation: " + msg) {}
};

class NoExits : public Error {
 public:
  explicit NoExits(const std::string& msg)
      : Error("no path exited before the horizon: " + msg) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg) : Error("parse error: " + msg) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& msg)
      : Error("validation error: " + msg) {}
};

}  // namespace gdm

#endif  // GDM_ERRORS_HPP
