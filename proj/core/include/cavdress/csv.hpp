// csv.hpp: deterministic number formatting and atomic CSV output

#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace cavdress {

/// Shortest-safe round-trip text for a double: 17 significant digits, general
/// notation. NaN is written as "nan", infinities as "inf" / "-inf".
std::string format_double(double value);

/// Joins already-formatted fields with commas.
std::string csv_row(const std::vector<std::string>& fields);
std::string csv_row(std::initializer_list<std::string_view> fields);

/// Writes to a sibling temporary file and renames it over the target on
/// commit(). If the writer is destroyed without commit() the temporary is
/// removed, so the target path never holds a partial file.
class AtomicFileWriter {
public:
    explicit AtomicFileWriter(std::filesystem::path target);
    ~AtomicFileWriter();

    AtomicFileWriter(const AtomicFileWriter&) = delete;
    AtomicFileWriter& operator=(const AtomicFileWriter&) = delete;

    std::ostream& stream() { return out_; }
    const std::filesystem::path& target() const { return target_; }

    /// Flushes, closes and renames. Throws IoError on failure.
    void commit();

private:
    std::filesystem::path target_;
    std::filesystem::path temp_;
    std::ofstream out_;
    bool committed_ = false;
};

} // namespace cavdress
