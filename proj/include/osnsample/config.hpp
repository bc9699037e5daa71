#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace osnsample {

/**
 * INI-style key-value document.
 *
 *     # comment
 *     [section]
 *     key = value
 *
 * Keys before the first header belong to the unnamed section "". Section
 * names may repeat; each occurrence is kept as its own block.
 */
class ConfigDocument {
public:
    struct Entry {
        std::string key;
        std::string value;
        std::size_t line = 0;
    };
    struct Section {
        std::string name;
        std::vector<Entry> entries;

        const std::string *find(std::string_view key) const;
    };

    static ConfigDocument parse(std::istream &in);
    static ConfigDocument load(const std::filesystem::path &path);

    const std::vector<Section> &sections() const noexcept { return sections_; }

    /// Last value of `key` across all blocks named `section`.
    const std::string *find(std::string_view section, std::string_view key) const;

    /// Applies "section.key=value" (or "key=value" for the unnamed section),
    /// replacing the value in the last matching block or appending to it.
    void apply_override(std::string_view assignment);

private:
    Section &section_block(std::string_view name);

    std::vector<Section> sections_;
};

double parse_double(std::string_view text, std::string_view what);
std::uint64_t parse_uint(std::string_view text, std::string_view what);
bool parse_bool(std::string_view text, std::string_view what);
std::vector<std::string> split_list(std::string_view text);

} // namespace osnsample
