// SPDX-License-Identifier: Apache-2.0
//
// rayprod: outage analysis for products of complex Gaussian MIMO channels
// Copyright (C) 2026 The rayprod authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef RAYPROD_ERRORS_HPP
#define RAYPROD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rayprod
{

// Error categories map one-to-one onto CLI exit codes.
enum class ErrorKind
{
    domain = 2,    // argument outside a function's mathematical domain
    parameter = 3, // invalid configuration or argument
    resource = 4,  // work guard exceeded (composition count, matrix size)
    numeric = 5,   // iteration failed to converge or bracket
    fit = 6,       // degenerate moment set
    io = 7
};

class Error : public std::runtime_error
{
  public:
    Error(ErrorKind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

struct DomainError : Error
{
    explicit DomainError(const std::string &what) : Error(ErrorKind::domain, what) {}
};

struct ParameterError : Error
{
    explicit ParameterError(const std::string &what) : Error(ErrorKind::parameter, what) {}
};

struct ResourceError : Error
{
    explicit ResourceError(const std::string &what) : Error(ErrorKind::resource, what) {}
};

struct NumericError : Error
{
    explicit NumericError(const std::string &what) : Error(ErrorKind::numeric, what) {}
};

struct FitError : Error
{
    explicit FitError(const std::string &what) : Error(ErrorKind::fit, what) {}
};

struct IoError : Error
{
    explicit IoError(const std::string &what) : Error(ErrorKind::io, what) {}
};

} // namespace rayprod

#endif
