#pragma once

#include <filesystem>
#include <string>

namespace ilmsa {

/// Writes via a sibling temp file and renames into place so readers never see
/// a torn file. Throws IoError.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_text(const std::filesystem::path& path);

}  // namespace ilmsa
