#include "rmt/io.hpp"

#include <cstdio>
#include <fstream>

#include "json.hpp"

namespace rmt::io {

struct CsvWriter::Impl {
  std::ofstream out;
  std::size_t n_cols;
};

CsvWriter::CsvWriter(const std::string& path,
                     const std::vector<std::string>& columns)
    : impl_(new Impl) {
  impl_->out.open(path);
  if (!impl_->out) throw GuardError("CsvWriter: cannot open " + path);
  impl_->n_cols = columns.size();
  for (std::size_t i = 0; i < columns.size(); ++i) {
    impl_->out << columns[i] << (i + 1 < columns.size() ? "," : "\n");
  }
}

CsvWriter::~CsvWriter() { delete impl_; }

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != impl_->n_cols) {
    throw GuardError("CsvWriter: column count mismatch");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    impl_->out << format_g17(values[i]) << (i + 1 < values.size() ? "," : "\n");
  }
}

void CsvWriter::row_raw(const std::string& line) { impl_->out << line << "\n"; }

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_complex(Complex v) {
  return format_g17(v.real()) + (v.imag() < 0 ? "" : "+") +
         format_g17(v.imag()) + "i";
}

Complex parse_complex(const std::string& text) {
  if (text.empty()) throw GuardError("parse_complex: empty literal");
  // find the sign splitting real and imaginary parts (skip a leading sign
  // and signs inside exponents)
  std::size_t split = std::string::npos;
  for (std::size_t i = 1; i < text.size(); ++i) {
    if ((text[i] == '+' || text[i] == '-') &&
        text[i - 1] != 'e' && text[i - 1] != 'E') {
      split = i;  // keep the last candidate: handles 1e-2+3i
    }
  }
  try {
    std::size_t used = 0;
    if (text.back() == 'i') {
      std::string re_part, im_part;
      if (split == std::string::npos) {
        re_part = "0";
        im_part = text.substr(0, text.size() - 1);
        if (im_part.empty() || im_part == "+" || im_part == "-") {
          im_part += "1";
        }
      } else {
        re_part = text.substr(0, split);
        im_part = text.substr(split, text.size() - split - 1);
        if (im_part == "+" || im_part == "-") im_part += "1";
      }
      const double re = std::stod(re_part, &used);
      if (used != re_part.size()) throw GuardError("parse_complex: " + text);
      const double im = std::stod(im_part, &used);
      if (used != im_part.size()) throw GuardError("parse_complex: " + text);
      return Complex(re, im);
    }
    const double re = std::stod(text, &used);
    if (used != text.size()) throw GuardError("parse_complex: " + text);
    return Complex(re, 0.0);
  } catch (const std::exception&) {
    throw GuardError("parse_complex: bad literal `" + text + "`");
  }
}

void write_manifest(const Manifest& m, const std::string& path) {
  nlohmann::json j;
  j["command"] = m.command;
  j["seed"] = m.seed;
  j["version"] = m.version;
  j["wall_time_s"] = m.wall_time_s;
  j["outputs"] = m.outputs;
  std::ofstream out(path);
  if (!out) throw GuardError("write_manifest: cannot open " + path);
  out << j.dump(2) << "\n";
}

Manifest read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GuardError("read_manifest: cannot open " + path);
  nlohmann::json j;
  in >> j;
  Manifest m;
  m.command = j.at("command").get<std::vector<std::string>>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.version = j.at("version").get<std::string>();
  m.wall_time_s = j.value("wall_time_s", 0.0);
  m.outputs = j.value("outputs", std::vector<std::string>{});
  return m;
}

}  // namespace rmt::io
