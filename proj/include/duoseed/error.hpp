// Copyright (C) 2026 The duoseed Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace duoseed {

/// Base of every error the engine raises. `where()` is a JSON path,
/// a parameter name or empty, depending on the origin.
class Error : public std::runtime_error {
public:
    Error(const std::string& message, std::string where = {})
        : std::runtime_error(message), where_(std::move(where)) {}

    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

class InvalidSeed : public Error {
public:
    using Error::Error;
};

/// Equation text rejected. Carries the offending token and its byte offset.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::string token, std::size_t offset)
        : Error(message + " at offset " + std::to_string(offset) + " ('" + token + "')"),
          token_(std::move(token)), offset_(offset) {}

    const std::string& token() const noexcept { return token_; }
    std::size_t offset() const noexcept { return offset_; }

private:
    std::string token_;
    std::size_t offset_;
};

/// A parameter or plot value violates its invariant; `where()` names the field.
class InvalidParams : public Error {
public:
    using Error::Error;
};

class RenderError : public Error {
public:
    using Error::Error;
};

/// Malformed or incomplete document; `where()` is the JSON path ("$.generate.step").
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace duoseed
