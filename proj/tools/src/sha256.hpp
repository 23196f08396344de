/*
 * sha256.hpp - digests for run manifests.
 */
#ifndef DISCDIST_TOOLS_SHA256_HPP
#define DISCDIST_TOOLS_SHA256_HPP

#include <string>

namespace discdist::tools {

// Lowercase hex SHA-256 of the bytes.
std::string sha256_hex(const std::string& bytes);

// Digest of a file's exact on-disk bytes.  Throws discdist::Error when
// the file cannot be read.
std::string sha256_file(const std::string& path);

} // namespace discdist::tools

#endif // DISCDIST_TOOLS_SHA256_HPP
