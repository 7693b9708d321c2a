/*
 * (C) Copyright 2026 The geoderelict authors.
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include "geoderelict/scenario.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace geoderelict {

enum class DeckErrorKind { syntax, unknown_key, missing_key, unit_mismatch, duplicate, invariant, io };

std::string_view to_string(DeckErrorKind kind);

/// Parse or validation failure with a 1-based location. Line 0 means the
/// problem is not tied to a particular line.
class DeckError : public std::runtime_error {
public:
    DeckError(DeckErrorKind kind, int line, int column, const std::string& message);

    DeckErrorKind kind() const { return kind_; }
    int line() const { return line_; }
    int column() const { return column_; }
    const std::string& message() const { return message_; }

private:
    DeckErrorKind kind_;
    int line_;
    int column_;
    std::string message_;
};

/// Parses a deck into a validated config in base units. Throws DeckError.
ScenarioConfig parse_deck(std::string_view text);
ScenarioConfig load_deck(const std::filesystem::path& path);

/// Canonical deck text: base units, explicit [well.*] sections and the
/// shortest decimal form that reads back to the same double.
std::string render_deck(const ScenarioConfig& config);

} // namespace geoderelict
