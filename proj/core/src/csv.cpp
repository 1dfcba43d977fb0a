#include "cavdress/csv.hpp"

#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <system_error>
#include <unistd.h>

#include "cavdress/errors.hpp"

namespace cavdress {

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (value == 0.0) return "0"; // collapses -0
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                   std::chars_format::general, 17);
    if (ec != std::errc{}) throw IoError("number formatting failed");
    return std::string(buf.data(), end);
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) line += ',';
        line += fields[i];
    }
    return line;
}

std::string csv_row(std::initializer_list<std::string_view> fields) {
    std::string line;
    bool first = true;
    for (auto f : fields) {
        if (!first) line += ',';
        line += f;
        first = false;
    }
    return line;
}

namespace {

std::filesystem::path temp_sibling(const std::filesystem::path& target) {
    static std::atomic<unsigned> counter{0};
    auto name = target.filename().string();
    name = "." + name + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
    return target.parent_path() / name;
}

} // namespace

AtomicFileWriter::AtomicFileWriter(std::filesystem::path target)
    : target_(std::move(target)), temp_(temp_sibling(target_)) {
    out_.open(temp_, std::ios::out | std::ios::trunc | std::ios::binary);
    if (!out_) throw IoError("cannot open temporary output next to " + target_.string());
}

AtomicFileWriter::~AtomicFileWriter() {
    if (!committed_) {
        out_.close();
        std::error_code ec;
        std::filesystem::remove(temp_, ec);
    }
}

void AtomicFileWriter::commit() {
    out_.flush();
    if (!out_) throw IoError("write failed for " + target_.string());
    out_.close();
    std::error_code ec;
    std::filesystem::rename(temp_, target_, ec);
    if (ec) {
        std::filesystem::remove(temp_, ec);
        throw IoError("cannot move output into place at " + target_.string());
    }
    committed_ = true;
}

} // namespace cavdress
