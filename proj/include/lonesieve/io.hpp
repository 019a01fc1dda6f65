#ifndef LONESIEVE_IO_HPP
#define LONESIEVE_IO_HPP

// File helpers, content digests and the on-disk report cache.

#include <openssl/evp.h>

#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "lonesieve/error.hpp"

namespace lonesieve {

inline std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    fail(ErrorKind::InvalidInput, "SHA-256 computation failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::InvalidInput, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes to a temporary sibling and renames it into place.
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::random_device rd;
  fs::path tmp = path;
  tmp += ".tmp" + std::to_string(rd());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::InvalidInput, "cannot write " + tmp.string());
    out << content;
    if (!out.flush()) fail(ErrorKind::InvalidInput, "short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

/// One report file per (curve digest, prime).
class ReportCache {
 public:
  explicit ReportCache(std::filesystem::path root) : root_(std::move(root)) {}

  std::filesystem::path path_for(const std::string& digest, std::uint32_t p) const {
    return root_ / digest / ("p" + std::to_string(p) + ".json");
  }
  std::optional<std::string> load(const std::string& digest, std::uint32_t p) const {
    auto path = path_for(digest, p);
    if (!std::filesystem::exists(path)) return std::nullopt;
    return read_file(path);
  }
  void store(const std::string& digest, std::uint32_t p, const std::string& content) const {
    atomic_write(path_for(digest, p), content);
  }

 private:
  std::filesystem::path root_;
};

}  // namespace lonesieve

#endif  // LONESIEVE_IO_HPP
