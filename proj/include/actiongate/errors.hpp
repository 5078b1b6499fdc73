// Copyright 2026 The actiongate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <stdexcept>
#include <string>

namespace actiongate {

/// Coarse classification used by the command-line front end to choose an
/// exit status. Every exception thrown by the library derives from Error.
enum class ErrorClass { config, domain, convergence };

class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what, ErrorClass cls)
      : std::runtime_error(what), kind_(std::move(kind)), class_(cls) {}

  const std::string& kind() const noexcept { return kind_; }
  ErrorClass error_class() const noexcept { return class_; }

 private:
  std::string kind_;
  ErrorClass class_;
};

#define ACTIONGATE_DEFINE_ERROR(Name, Class)                      \
  class Name : public Error {                                     \
   public:                                                        \
    explicit Name(const std::string& what)                        \
        : Error(#Name, what, ErrorClass::Class) {}                \
  };

ACTIONGATE_DEFINE_ERROR(DomainError, domain)
ACTIONGATE_DEFINE_ERROR(SizeError, domain)
ACTIONGATE_DEFINE_ERROR(NoBoundOrbit, domain)
ACTIONGATE_DEFINE_ERROR(PairError, domain)
ACTIONGATE_DEFINE_ERROR(ResonanceCollision, domain)
ACTIONGATE_DEFINE_ERROR(ZeroCoupling, domain)
ACTIONGATE_DEFINE_ERROR(DimensionMismatch, domain)
ACTIONGATE_DEFINE_ERROR(CutoffError, domain)
ACTIONGATE_DEFINE_ERROR(NoStrategy, domain)
ACTIONGATE_DEFINE_ERROR(QuadratureError, convergence)
ACTIONGATE_DEFINE_ERROR(ConvergenceError, convergence)

#undef ACTIONGATE_DEFINE_ERROR

/// Schema violation in an experiment configuration. `path` is the dotted
/// location of the offending field, e.g. "model.m".
class ConfigError : public Error {
 public:
  ConfigError(std::string path, const std::string& what)
      : Error("ConfigError", what, ErrorClass::config), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace actiongate
