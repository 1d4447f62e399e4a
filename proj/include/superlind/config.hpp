// Copyright 2026 The superlind Authors
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

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace superlind {

// Flat `key = value` files with `[section]` headers and `#` comments. Keys are
// addressed as "section.key" (or "key" before the first header). See
// docs/config.md for the grammar.
class ConfigFile {
public:
    static ConfigFile parse(std::istream& in, const std::string& source = "<input>");
    static ConfigFile parse_string(const std::string& text);
    static ConfigFile load(const std::string& path);

    // Adds or replaces "section.key".
    void set(const std::string& key, const std::string& value);
    // Parses "section.key=value".
    void apply_override(const std::string& assignment);

    bool has(const std::string& key) const { return entries_.count(key) != 0; }
    std::optional<std::string> get(const std::string& key) const;
    const std::map<std::string, std::string>& entries() const noexcept { return entries_; }

    // Throws Validation listing every key outside `allowed`.
    void require_known(const std::set<std::string>& allowed) const;

private:
    std::map<std::string, std::string> entries_;
};

// Collects value errors so a validation failure can list every offender.
class ConfigReader {
public:
    explicit ConfigReader(const ConfigFile& file) : file_(file) {}

    double number(const std::string& key, double fallback);
    long integer(const std::string& key, long fallback);
    bool boolean(const std::string& key, bool fallback);
    std::string text(const std::string& key, const std::string& fallback);
    // Comma-separated numbers, or a range "start:stop:step" (inclusive).
    std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback);
    std::vector<std::string> words(const std::string& key, const std::vector<std::string>& fallback);

    void fail(const std::string& key, const std::string& message);
    // Throws Validation when any error was recorded.
    void finish() const;

private:
    const ConfigFile& file_;
    std::vector<std::string> errors_;
};

} // namespace superlind
