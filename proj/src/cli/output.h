#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "subplanck/states.h"
#include "subplanck/wigner.h"

namespace subplanck::cli {

/// Locale-independent, 17 significant digits.
std::string format_real(double value);
/// "a+bi" / "a-bi".
std::string format_complex(complex value);

/// Accepts "a", "bi", "a+bi", "a-bi" (also "i", "-i", exponents like 1e-3).
/// Throws std::invalid_argument on anything else.
complex parse_complex(std::string_view text);
double parse_real(std::string_view text);

using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

/// "# subplanck <command> key=value ..." on one line.
std::string config_comment(std::string_view command, const ConfigEntries &entries);
/// Inverse of config_comment: {"command": ..., key: value, ...}.
std::map<std::string, std::string> parse_config_comment(std::string_view line);

class CsvTable {
   public:
    CsvTable(std::string comment_line, std::vector<std::string> header);

    void add_row(const std::vector<std::string> &cells);
    void add_row(std::initializer_list<double> values);
    void add_comment(std::string_view text);

    const std::string &str() const { return text_; }

   private:
    std::size_t columns_;
    std::string text_;
};

/// Binary 8-bit graymap (P5), width nx, height ny, first row at im_max.
/// W = 0 is mid-gray; +max|W| white, -max|W| black.
std::string encode_pgm(const WignerField &field);

/// Writes to a sibling temporary file and renames it over `path`, so a
/// failed run never leaves a partial file behind.
void write_file_atomic(const std::filesystem::path &path, std::string_view contents);

}  // namespace subplanck::cli
