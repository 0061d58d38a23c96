#ifndef OMNI_SHA256_HPP
#define OMNI_SHA256_HPP

#include <cstddef>
#include <string>

namespace omni {

// Hex digest of a byte buffer / file.
std::string sha256_hex(const void* data, std::size_t size);
std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::string& path);

}  // namespace omni

#endif
