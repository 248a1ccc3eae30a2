#pragma once
// CSV assembly and atomic file output. Files are written to a temp path in
// the destination directory and renamed into place so readers never observe
// partial output. All numeric formatting funnels through fmt_g so repeated
// runs produce byte-identical files.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "speclab/common.hpp"

namespace speclab {

inline std::string fmt_g(double v, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

class CsvWriter {
public:
  void comment(const std::string& text) { out_ << "# " << text << "\n"; }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ",";
      out_ << cells[i];
    }
    out_ << "\n";
  }
  std::string str() const { return out_.str(); }

private:
  std::ostringstream out_;
};

inline void atomic_write_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw config_error("cannot open for writing: " + tmp.string());
    f << content;
    if (!f.good()) throw config_error("short write: " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace speclab
