#pragma once

#include <string>
#include <vector>

#include "rmt/types.hpp"

namespace rmt::io {

// CSV with a header row and %.17g formatting (shortest round-trip floats).
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& columns);
  ~CsvWriter();
  void row(const std::vector<double>& values);
  void row_raw(const std::string& line);

 private:
  struct Impl;
  Impl* impl_;
};

std::string format_g17(double v);
std::string format_complex(Complex v);

// Parses `a`, `a+bi`, `a-bi` (no spaces).  Throws GuardError on bad syntax.
Complex parse_complex(const std::string& text);

struct Manifest {
  std::vector<std::string> command;  // argv as invoked
  std::uint64_t seed = 0;
  std::string version;
  double wall_time_s = 0.0;
  std::vector<std::string> outputs;
};

void write_manifest(const Manifest& m, const std::string& path);
Manifest read_manifest(const std::string& path);

}  // namespace rmt::io
