#include "wigner/serialization.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <istream>
#include <iterator>
#include <ostream>
#include <vector>

#include "wigner/errors.hpp"

namespace wigner {

namespace {

constexpr char kMagic[4] = {'W', 'G', 'K', 'R'};

template <typename U>
void put_le(std::string& out, U value) {
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    out.push_back(static_cast<char>((value >> (8 * i)) & 0xFF));
  }
}

void put_f64(std::string& out, double x) { put_le(out, std::bit_cast<std::uint64_t>(x)); }

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  template <typename U>
  U le() {
    if (bytes_.size() - pos_ < sizeof(U)) throw Error("decode_kernel: truncated record");
    U value = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) {
      value |= static_cast<U>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    }
    pos_ += sizeof(U);
    return value;
  }

  double f64() { return std::bit_cast<double>(le<std::uint64_t>()); }
  std::string_view take(std::size_t n) {
    if (bytes_.size() - pos_ < n) throw Error("decode_kernel: truncated record");
    const auto s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

GridSpec grid_from_json(const nlohmann::json& j) {
  return GridSpec(j.at("total_length").get<double>(), j.at("cells").get<std::size_t>());
}

}  // namespace

std::string encode_kernel(const Kernel& f) {
  std::string out(kMagic, 4);
  put_le(out, kKernelFormatVersion);
  put_f64(out, f.grid().total_length());
  put_le(out, static_cast<std::uint64_t>(f.grid().cells()));
  put_le(out, static_cast<std::uint32_t>(f.order()));
  put_le(out, static_cast<std::uint64_t>(f.size()));
  for (const Scalar& z : f.data()) {
    put_f64(out, z.real());
    put_f64(out, z.imag());
  }
  return out;
}

Kernel decode_kernel(std::string_view bytes) {
  Reader in(bytes);
  if (in.take(4) != std::string_view(kMagic, 4)) throw Error("decode_kernel: bad magic");
  if (const auto v = in.le<std::uint32_t>(); v != kKernelFormatVersion) {
    throw Error("decode_kernel: unsupported version " + std::to_string(v));
  }
  const double total_length = in.f64();
  const auto cells = in.le<std::uint64_t>();
  const auto order = in.le<std::uint32_t>();
  const auto count = in.le<std::uint64_t>();
  const GridSpec grid(total_length, cells);
  if (count != dense_size(cells, static_cast<int>(order))) {
    throw Error("decode_kernel: entry count does not match cells^order");
  }
  std::vector<Scalar> data(count);
  for (auto& z : data) {
    const double re = in.f64();
    z = Scalar(re, in.f64());
  }
  if (!in.done()) throw Error("decode_kernel: trailing bytes");
  return Kernel(grid, static_cast<int>(order), std::move(data));
}

void write_kernel(std::ostream& out, const Kernel& f) {
  const std::string bytes = encode_kernel(f);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

Kernel read_kernel(std::istream& in) {
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_kernel(bytes);
}

nlohmann::json kernel_to_json(const Kernel& f) {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (const Scalar& z : f.data()) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  return {{"total_length", f.grid().total_length()},
          {"cells", f.grid().cells()},
          {"order", f.order()},
          {"re", std::move(re)},
          {"im", std::move(im)}};
}

Kernel kernel_from_json(const nlohmann::json& j) {
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (!re.is_array() || !im.is_array() || re.size() != im.size()) {
    throw Error("kernel_from_json: re/im arrays missing or of different length");
  }
  std::vector<Scalar> data(re.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    data[i] = Scalar(re[i].get<double>(), im[i].get<double>());
  }
  return Kernel(grid_from_json(j), j.at("order").get<int>(), std::move(data));
}

nlohmann::json chaos_to_json(const ChaosElement& x) {
  nlohmann::json terms = nlohmann::json::object();
  for (const auto& [n, f] : x.terms()) terms[std::to_string(n)] = kernel_to_json(f);
  return {{"total_length", x.grid().total_length()},
          {"cells", x.grid().cells()},
          {"terms", std::move(terms)}};
}

ChaosElement chaos_from_json(const nlohmann::json& j) {
  ChaosElement x(grid_from_json(j));
  for (const auto& [key, record] : j.at("terms").items()) {
    Kernel f = kernel_from_json(record);
    if (std::to_string(f.order()) != key) throw ShapeError("chaos_from_json: key/order mismatch");
    x.add(f);
  }
  return x;
}

nlohmann::json bichaos_to_json(const BiChaosElement& x) {
  nlohmann::json terms = nlohmann::json::object();
  for (const auto& [split, f] : x.terms()) {
    terms[std::to_string(split.first) + "," + std::to_string(split.second)] = kernel_to_json(f);
  }
  return {{"total_length", x.grid().total_length()},
          {"cells", x.grid().cells()},
          {"terms", std::move(terms)}};
}

BiChaosElement bichaos_from_json(const nlohmann::json& j) {
  BiChaosElement x(grid_from_json(j));
  for (const auto& [key, record] : j.at("terms").items()) {
    const auto comma = key.find(',');
    if (comma == std::string::npos) throw Error("bichaos_from_json: key must read \"a,b\"");
    const int a = std::stoi(key.substr(0, comma));
    const int b = std::stoi(key.substr(comma + 1));
    x.add(SplitKernel(kernel_from_json(record), a, b));
  }
  return x;
}

nlohmann::json bound_report_to_json(const BoundReport& r) {
  nlohmann::json j = {{"n", r.n},
                      {"gap", r.gap},
                      {"lhs", r.lhs},
                      {"lhs_closed_form", nullptr},
                      {"c_n", r.c_n},
                      {"dc2_from_gap", r.dc2_from_gap},
                      {"dc2_from_lhs", r.dc2_from_lhs},
                      {"bound_satisfied", r.bound_satisfied}};
  if (r.lhs_closed_form) j["lhs_closed_form"] = *r.lhs_closed_form;
  return j;
}

std::string bound_report_csv_header() {
  return "n,gap,lhs,lhs_closed_form,c_n,dc2_from_gap,dc2_from_lhs,bound_satisfied";
}

std::string bound_report_csv_row(const BoundReport& r) {
  return std::to_string(r.n) + "," + format_double(r.gap) + "," + format_double(r.lhs) + "," +
         (r.lhs_closed_form ? format_double(*r.lhs_closed_form) : std::string("nan")) + "," +
         format_double(r.c_n) + "," + format_double(r.dc2_from_gap) + "," +
         format_double(r.dc2_from_lhs) + "," + (r.bound_satisfied ? "1" : "0");
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, end);
}

}  // namespace wigner
