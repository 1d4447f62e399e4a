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

#include "superlind/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "superlind/error.hpp"

namespace superlind {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool valid_name(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_' || c == '-';
    });
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(trim(cur));
    return out;
}

bool to_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    std::size_t pos = 0;
    try {
        out = std::stod(s, &pos);
    } catch (const std::exception&) {
        return false;
    }
    return pos == s.size() && std::isfinite(out);
}

} // namespace

ConfigFile ConfigFile::parse(std::istream& in, const std::string& source) {
    ConfigFile cfg;
    std::vector<std::string> errors;
    std::string section;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        std::ostringstream where;
        where << source << ":" << lineno;
        if (line.front() == '[') {
            if (line.back() != ']' || !valid_name(trim(line.substr(1, line.size() - 2)))) {
                errors.push_back(where.str() + ": malformed section header '" + line + "'");
                continue;
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            errors.push_back(where.str() + ": expected 'key = value', got '" + line + "'");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!valid_name(key)) {
            errors.push_back(where.str() + ": invalid key '" + key + "'");
            continue;
        }
        const std::string full = section.empty() ? key : section + "." + key;
        if (cfg.entries_.count(full)) {
            errors.push_back(where.str() + ": duplicate key '" + full + "'");
            continue;
        }
        cfg.entries_[full] = value;
    }
    if (!errors.empty()) {
        std::string msg = "invalid config:";
        for (const auto& e : errors) msg += "\n  " + e;
        throw Error(ErrorKind::Validation, msg);
    }
    return cfg;
}

ConfigFile ConfigFile::parse_string(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
}

ConfigFile ConfigFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::Usage, "cannot read config file '" + path + "'");
    }
    return parse(in, path);
}

void ConfigFile::set(const std::string& key, const std::string& value) {
    entries_[key] = value;
}

void ConfigFile::apply_override(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || trim(assignment.substr(0, eq)).empty()) {
        throw Error(ErrorKind::Usage, "override '" + assignment + "' is not of the form section.key=value");
    }
    set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

std::optional<std::string> ConfigFile::get(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void ConfigFile::require_known(const std::set<std::string>& allowed) const {
    std::vector<std::string> unknown;
    for (const auto& [k, v] : entries_) {
        if (!allowed.count(k)) unknown.push_back(k);
    }
    if (!unknown.empty()) {
        std::string msg = "unknown config keys:";
        for (const auto& k : unknown) msg += " " + k;
        throw Error(ErrorKind::Validation, msg);
    }
}

void ConfigReader::fail(const std::string& key, const std::string& message) {
    errors_.push_back(key + ": " + message);
}

double ConfigReader::number(const std::string& key, double fallback) {
    const auto v = file_.get(key);
    if (!v) return fallback;
    double x = 0.0;
    if (!to_double(*v, x)) {
        fail(key, "expected a number, got '" + *v + "'");
        return fallback;
    }
    return x;
}

long ConfigReader::integer(const std::string& key, long fallback) {
    const auto v = file_.get(key);
    if (!v) return fallback;
    std::size_t pos = 0;
    long x = 0;
    try {
        x = std::stol(*v, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != v->size()) {
        fail(key, "expected an integer, got '" + *v + "'");
        return fallback;
    }
    return x;
}

bool ConfigReader::boolean(const std::string& key, bool fallback) {
    const auto v = file_.get(key);
    if (!v) return fallback;
    if (*v == "true" || *v == "yes" || *v == "1" || *v == "on") return true;
    if (*v == "false" || *v == "no" || *v == "0" || *v == "off") return false;
    fail(key, "expected true/false, got '" + *v + "'");
    return fallback;
}

std::string ConfigReader::text(const std::string& key, const std::string& fallback) {
    const auto v = file_.get(key);
    return v ? *v : fallback;
}

std::vector<double> ConfigReader::numbers(const std::string& key, const std::vector<double>& fallback) {
    const auto v = file_.get(key);
    if (!v) return fallback;
    std::vector<double> out;
    if (v->find(':') != std::string::npos) {
        const auto parts = split(*v, ':');
        double a = 0, b = 0, s = 0;
        if (parts.size() != 3 || !to_double(parts[0], a) || !to_double(parts[1], b) || !to_double(parts[2], s) ||
            !(s > 0.0) || b < a) {
            fail(key, "expected a range start:stop:step with step > 0, got '" + *v + "'");
            return fallback;
        }
        const auto n = static_cast<long>(std::floor((b - a) / s + 1e-9));
        for (long i = 0; i <= n; ++i) out.push_back(a + static_cast<double>(i) * s);
        return out;
    }
    for (const auto& p : split(*v, ',')) {
        double x = 0.0;
        if (!to_double(p, x)) {
            fail(key, "expected a comma-separated list of numbers, got '" + *v + "'");
            return fallback;
        }
        out.push_back(x);
    }
    if (out.empty()) fail(key, "empty list");
    return out;
}

std::vector<std::string> ConfigReader::words(const std::string& key, const std::vector<std::string>& fallback) {
    const auto v = file_.get(key);
    if (!v) return fallback;
    std::vector<std::string> out;
    for (const auto& p : split(*v, ',')) {
        if (!p.empty()) out.push_back(p);
    }
    if (out.empty()) fail(key, "empty list");
    return out;
}

void ConfigReader::finish() const {
    if (errors_.empty()) return;
    std::string msg = "invalid configuration:";
    for (const auto& e : errors_) msg += "\n  " + e;
    throw Error(ErrorKind::Validation, msg);
}

} // namespace superlind
