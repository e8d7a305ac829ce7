#pragma once

#include <string>
#include <string_view>

namespace nsbox {

// Whole-file read; throws std::runtime_error on failure.
std::string read_file(const std::string& path);

// Write-to-temp then rename, so readers never observe a partial file.
void atomic_write_file(const std::string& path, std::string_view bytes);

}  // namespace nsbox
