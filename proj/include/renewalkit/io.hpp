#pragma once

#include <string>
#include <vector>

namespace renewalkit::io {

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::string& path);

void write_file(const std::string& path, const std::string& bytes);
void write_file(const std::string& path, const std::vector<unsigned char>& bytes);
std::string read_file(const std::string& path);

// fixed-format double for reproducible text artifacts
std::string fmt(double v);

}  // namespace renewalkit::io
