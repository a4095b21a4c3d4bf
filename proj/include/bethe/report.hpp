#pragma once

// Machine-readable reports: JSON (schema "bethe-lab/1") and a CSV solution
// table. Reals are rounded to 12 significant digits; complex numbers are
// written as {"re": ..., "im": ...}.

#include <filesystem>
#include <stdexcept>
#include <string>

#include "bethe/pipeline.hpp"

namespace bethe::report {

inline constexpr const char* kSchema = "bethe-lab/1";

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Round to 12 significant digits (the precision every report field carries).
double round12(double v);

std::string to_json(const pipeline::RunReport& r, int indent = 2);
/// Throws ArgumentError on malformed input or a schema mismatch.
pipeline::RunReport from_json(const std::string& text);

/// One row per solution, header included.
std::string to_csv(const pipeline::RunReport& r);

/// Write via a temporary file in the same directory followed by a rename.
void write_atomic(const std::filesystem::path& path, const std::string& contents);
std::string read_file(const std::filesystem::path& path);

}  // namespace bethe::report
