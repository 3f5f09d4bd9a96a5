#include "cli/output.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include <unistd.h>

namespace subplanck::cli {

std::string format_real(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    if (ec != std::errc{}) {
        throw std::runtime_error("number formatting failed");
    }
    return std::string(buf, end);
}

std::string format_complex(complex value) {
    std::string im = format_real(value.imag());
    if (im.front() != '-') {
        im.insert(im.begin(), '+');
    }
    return format_real(value.real()) + im + "i";
}

double parse_real(std::string_view text) {
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    double value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw std::invalid_argument("not a real number: '" + std::string(text) + "'");
    }
    return value;
}

complex parse_complex(std::string_view text) {
    const std::string original(text);
    auto fail = [&] { return std::invalid_argument("not a complex number (expected a+bi): '" + original + "'"); };
    if (text.empty()) {
        throw fail();
    }
    if (text.back() != 'i') {
        try {
            return {parse_real(text), 0};
        } catch (const std::invalid_argument &) {
            throw fail();
        }
    }
    text.remove_suffix(1);
    // Split at the last sign that is not a leading sign or an exponent sign.
    std::size_t split = std::string_view::npos;
    for (std::size_t k = text.size(); k-- > 1;) {
        if ((text[k] == '+' || text[k] == '-') && text[k - 1] != 'e' && text[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto imag_part = [&](std::string_view s) {
        if (s.empty() || s == "+") {
            return 1.0;
        }
        if (s == "-") {
            return -1.0;
        }
        return parse_real(s);
    };
    try {
        if (split == std::string_view::npos) {
            return {0, imag_part(text)};
        }
        return {parse_real(text.substr(0, split)), imag_part(text.substr(split))};
    } catch (const std::invalid_argument &) {
        throw fail();
    }
}

std::string config_comment(std::string_view command, const ConfigEntries &entries) {
    std::string line = "# subplanck ";
    line += command;
    for (const auto &[key, value] : entries) {
        line += ' ';
        line += key;
        line += '=';
        line += value;
    }
    return line;
}

std::map<std::string, std::string> parse_config_comment(std::string_view line) {
    constexpr std::string_view prefix = "# subplanck ";
    if (line.substr(0, prefix.size()) != prefix) {
        throw std::invalid_argument("not a configuration comment");
    }
    line.remove_prefix(prefix.size());
    std::map<std::string, std::string> out;
    bool first = true;
    while (!line.empty()) {
        auto space = line.find(' ');
        auto token = line.substr(0, space);
        line = space == std::string_view::npos ? std::string_view{} : line.substr(space + 1);
        if (token.empty()) {
            continue;
        }
        if (first) {
            out["command"] = std::string(token);
            first = false;
            continue;
        }
        auto eq = token.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument("malformed configuration entry: " + std::string(token));
        }
        out[std::string(token.substr(0, eq))] = std::string(token.substr(eq + 1));
    }
    return out;
}

CsvTable::CsvTable(std::string comment_line, std::vector<std::string> header) : columns_(header.size()) {
    text_ = std::move(comment_line);
    text_ += '\n';
    add_row(header);
}

void CsvTable::add_row(const std::vector<std::string> &cells) {
    if (cells.size() != columns_) {
        throw std::logic_error("CSV row width does not match the header");
    }
    for (std::size_t k = 0; k < cells.size(); ++k) {
        if (k) {
            text_ += ',';
        }
        text_ += cells[k];
    }
    text_ += '\n';
}

void CsvTable::add_row(std::initializer_list<double> values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) {
        cells.push_back(format_real(v));
    }
    add_row(cells);
}

void CsvTable::add_comment(std::string_view text) {
    text_ += "# ";
    text_ += text;
    text_ += '\n';
}

std::string encode_pgm(const WignerField &field) {
    const std::size_t nx = field.grid.nx(), ny = field.grid.ny();
    std::string out = "P5\n" + std::to_string(nx) + " " + std::to_string(ny) + "\n255\n";
    const double scale = field.max_abs();
    out.reserve(out.size() + nx * ny);
    for (std::size_t row = 0; row < ny; ++row) {
        const std::size_t iy = ny - 1 - row;
        for (std::size_t ix = 0; ix < nx; ++ix) {
            double u = scale > 0 ? std::clamp(field.at(ix, iy) / scale, -1.0, 1.0) : 0.0;
            out += static_cast<char>(static_cast<unsigned char>(std::lround(127.5 + 127.5 * u)));
        }
    }
    return out;
}

void write_file_atomic(const std::filesystem::path &path, std::string_view contents) {
    std::filesystem::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) {
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        }
        os.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        os.flush();
        if (!os) {
            os.close();
            std::filesystem::remove(tmp);
            throw std::runtime_error("write to " + tmp.string() + " failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("cannot rename onto " + path.string() + ": " + ec.message());
    }
}

}  // namespace subplanck::cli
