#include "dirichlet/cli/ini.hpp"

#include <fstream>
#include <sstream>

namespace dirichlet::cli {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

} // namespace

ConfigError::ConfigError(int line, const std::string& message)
    : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line)
{
}

IniDocument IniDocument::parse(std::string_view text)
{
    IniDocument doc;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = text.find('\n', pos);
        std::string_view line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
        pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
        ++line_no;

        if (const auto c = line.find_first_of("#;"); c != std::string_view::npos)
            line = line.substr(0, c);
        line = trim(line);
        if (line.empty())
            continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(line_no, "unterminated section header");
            const std::string name(trim(line.substr(1, line.size() - 2)));
            if (name.empty())
                throw ConfigError(line_no, "empty section name");
            if (doc.section(name))
                throw ConfigError(line_no, "duplicate section [" + name + "]");
            doc.sections_.push_back({name, line_no, {}});
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(line_no, "expected 'key = value'");
        if (doc.sections_.empty())
            throw ConfigError(line_no, "key outside of any section");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty())
            throw ConfigError(line_no, "empty key");
        auto& entries = doc.sections_.back().entries;
        if (entries.count(key))
            throw ConfigError(line_no, "duplicate key '" + key + "'");
        entries[key] = {value, line_no};
    }
    return doc;
}

IniDocument IniDocument::load(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError(0, "cannot read config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

const IniSection* IniDocument::section(const std::string& name) const
{
    for (const IniSection& s : sections_)
        if (s.name == name)
            return &s;
    return nullptr;
}

} // namespace dirichlet::cli
