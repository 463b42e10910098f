#pragma once

// Kernel records (binary and JSON) and JSON/CSV views of the algebra types.
//
// Binary kernel record, all fields little-endian:
//   bytes 0..3   magic "WGKR"
//   u32          format version (1)
//   f64          total_length
//   u64          cells
//   u32          order
//   u64          entry count (cells^order)
//   f64 x 2count interleaved re, im in row-major order
// Decoding reproduces every double bit for bit.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <json.hpp>

#include "wigner/bichaos.hpp"
#include "wigner/chaos.hpp"
#include "wigner/gradient.hpp"
#include "wigner/grid_kernel.hpp"

namespace wigner {

inline constexpr std::uint32_t kKernelFormatVersion = 1;

std::string encode_kernel(const Kernel& f);
/// Throws Error on a bad magic, version, size or truncated record.
Kernel decode_kernel(std::string_view bytes);

void write_kernel(std::ostream& out, const Kernel& f);
Kernel read_kernel(std::istream& in);

/// {"total_length", "cells", "order", "re": [...], "im": [...]}.
nlohmann::json kernel_to_json(const Kernel& f);
Kernel kernel_from_json(const nlohmann::json& j);

/// {"total_length", "cells", "terms": {"<order>": kernel record}}.
nlohmann::json chaos_to_json(const ChaosElement& x);
ChaosElement chaos_from_json(const nlohmann::json& j);

/// {"total_length", "cells", "terms": {"<a>,<b>": kernel record}}.
nlohmann::json bichaos_to_json(const BiChaosElement& x);
BiChaosElement bichaos_from_json(const nlohmann::json& j);

nlohmann::json bound_report_to_json(const BoundReport& r);
std::string bound_report_csv_header();
/// One CSV line (no newline); an absent closed form is written as "nan".
std::string bound_report_csv_row(const BoundReport& r);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

}  // namespace wigner
