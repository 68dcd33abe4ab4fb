#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "borderfloer/structure.hpp"

namespace borderfloer {

// Schema problems; the message names the offending field path.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

BorderedStructure structure_from_json(const nlohmann::json& doc);
nlohmann::json structure_to_json(const BorderedStructure& s);

nlohmann::json read_json_file(const std::filesystem::path& path);
BorderedStructure load_structure(const std::filesystem::path& path);
void save_structure(const BorderedStructure& s, const std::filesystem::path& path);

// Line-oriented canonical listing (generators in order, then sorted terms)
// and its FNV-1a-64 digest, used to pin fixture data.
std::string canonical_text(const BorderedStructure& s);
std::uint64_t fnv1a64(const std::string& bytes);
std::string checksum(const BorderedStructure& s);

}  // namespace borderfloer
