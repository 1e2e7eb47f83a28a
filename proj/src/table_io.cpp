#include "fracgreedy/table_io.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace fracgreedy {

namespace {

constexpr const char* kColumns[] = {"N",  "loss", "loss_order", "l2",   "l2_order",
                                    "h1", "h1_order", "linf", "linf_order"};

std::vector<std::string> row_values(const IterationRecord& rec, std::string (*fmt)(double)) {
  return {std::to_string(rec.n), fmt(rec.loss), fmt(rec.loss_order), fmt(rec.l2),
          fmt(rec.l2_order),     fmt(rec.h1),   fmt(rec.h1_order),   fmt(rec.linf),
          fmt(rec.linf_order)};
}

std::string render_csv(const std::vector<IterationRecord>& records, std::string (*fmt)(double)) {
  std::string out;
  for (std::size_t i = 0; i < std::size(kColumns); ++i) {
    if (i > 0) {
      out += ',';
    }
    out += kColumns[i];
  }
  out += '\n';
  for (const IterationRecord& rec : records) {
    const std::vector<std::string> values = row_values(rec, fmt);
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i > 0) {
        out += ',';
      }
      out += values[i];
    }
    out += '\n';
  }
  return out;
}

std::string render_markdown(const std::vector<IterationRecord>& records,
                            std::string (*fmt)(double)) {
  std::string out = "|";
  for (const char* column : kColumns) {
    out += ' ';
    out += column;
    out += " |";
  }
  out += "\n|";
  for (std::size_t i = 0; i < std::size(kColumns); ++i) {
    out += " ---: |";
  }
  out += '\n';
  for (const IterationRecord& rec : records) {
    out += '|';
    for (const std::string& value : row_values(rec, fmt)) {
      out += ' ';
      out += value;
      out += " |";
    }
    out += '\n';
  }
  return out;
}

}  // namespace

std::string format_sci3(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.2e", v);
  return std::string(buf);
}

std::string format_full(double v) {
  char buf[40];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  }
  return std::string(buf, ptr);
}

std::string render_table(const std::vector<IterationRecord>& records, OutputFormat format) {
  return format == OutputFormat::csv ? render_csv(records, format_sci3)
                                     : render_markdown(records, format_sci3);
}

std::string render_table_full(const std::vector<IterationRecord>& records) {
  return render_csv(records, format_full);
}

void atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) {
    fs::create_directories(target.parent_path());
  }
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
      throw std::runtime_error("failed writing '" + tmp.string() + "'");
    }
  }
  fs::rename(tmp, target);
}

std::string sidecar_path(const std::string& table_path) {
  std::filesystem::path p(table_path);
  p.replace_extension();
  p += ".full.csv";
  return p.string();
}

}  // namespace fracgreedy
