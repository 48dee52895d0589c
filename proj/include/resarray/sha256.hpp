#ifndef RESARRAY_SHA256_HPP
#define RESARRAY_SHA256_HPP

#include <string>

namespace resarray {

// Hex digest of the SHA-256 of a byte string.
std::string sha256_hex(const std::string& data);

} // namespace resarray

#endif
