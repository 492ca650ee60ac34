#pragma once

#include "dirichlet/errors.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dirichlet::cli {

/// Malformed or inconsistent configuration. line() is 0 when the problem is
/// not tied to one line (a missing section, say).
class ConfigError : public Error {
public:
    ConfigError(int line, const std::string& message);
    int line() const noexcept { return line_; }

private:
    int line_;
};

struct IniEntry {
    std::string value;
    int line = 0;
};

struct IniSection {
    std::string name;
    int line = 0;
    std::map<std::string, IniEntry> entries;
};

/// Sectioned key = value text. '#' and ';' start comments, keys are case
/// sensitive, duplicate sections or keys are errors.
class IniDocument {
public:
    static IniDocument parse(std::string_view text);
    static IniDocument load(const std::filesystem::path& path);

    const IniSection* section(const std::string& name) const;
    const std::vector<IniSection>& sections() const noexcept { return sections_; }

private:
    std::vector<IniSection> sections_;
};

} // namespace dirichlet::cli
