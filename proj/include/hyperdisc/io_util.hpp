#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>

namespace hyperdisc::io {

// Writes to "<path>.tmp" and renames into place on commit(). A failed run
// never leaves a partial output at the target path.
class AtomicFile {
  public:
    explicit AtomicFile(const std::filesystem::path& target);
    ~AtomicFile();

    AtomicFile(const AtomicFile&) = delete;
    AtomicFile& operator=(const AtomicFile&) = delete;

    std::ofstream& stream() { return out_; }
    void commit();

  private:
    std::filesystem::path target_;
    std::filesystem::path tmp_;
    std::ofstream out_;
    bool committed_ = false;
};

// Shortest decimal round-trip formatting for doubles; keeps text outputs
// byte-identical across runs while staying readable.
std::string format_double(double x);

// FNV-1a 64-bit digest of a file's bytes, as 16 hex chars. Used for run
// manifests, not for security.
std::string file_digest(const std::filesystem::path& path);

std::ifstream open_input(const std::filesystem::path& path);

}  // namespace hyperdisc::io
