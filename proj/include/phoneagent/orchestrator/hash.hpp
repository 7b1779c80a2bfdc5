#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace phoneagent {

/// Lower-case hex SHA-256.
std::string sha256_hex(std::string_view bytes);

/// SHA-256 of a file's bytes. Throws NotFoundError when it does not exist.
std::string sha256_file(const std::filesystem::path& path);

}  // namespace phoneagent
