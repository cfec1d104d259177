// SPDX-License-Identifier: Apache-2.0
//
// ris-fas: outage analysis for RIS-aided fluid antenna receivers
// Copyright (C) 2026 The ris-fas authors
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

#ifndef RISFAS_ERROR_HPP
#define RISFAS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace risfas
{

// Raised when a correlation matrix cannot be factorized (not positive definite
// after regularization).
class factorization_error : public std::runtime_error
{
public:
    explicit factorization_error(const std::string &what) : std::runtime_error(what) {}
};

// Invalid user configuration. Line is 0 when the error is not tied to a file line.
class config_error : public std::invalid_argument
{
public:
    config_error(const std::string &what, std::size_t line = 0)
        : std::invalid_argument(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace risfas

#endif
