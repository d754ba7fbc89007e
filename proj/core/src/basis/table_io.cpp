#include "wigner/basis/table_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>

#include "wigner/error.hpp"

namespace wigner {

namespace {

constexpr std::array<char, 8> kMagic{'W', 'V', 'B', 'A', 'S', 'I', 'S', '1'};

template <typename U>
void put_le(std::ostream& out, U bits) {
  std::array<char, sizeof(U)> bytes{};
  for (std::size_t i = 0; i < sizeof(U); ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
  out.write(bytes.data(), bytes.size());
}

template <typename U>
U get_le(std::istream& in) {
  std::array<unsigned char, sizeof(U)> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) throw ConfigError("basis table file is truncated");
  U bits = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) bits |= static_cast<U>(bytes[i]) << (8 * i);
  return bits;
}

void put_i32(std::ostream& out, int v) { put_le(out, static_cast<std::uint32_t>(v)); }
void put_f64(std::ostream& out, double v) { put_le(out, std::bit_cast<std::uint64_t>(v)); }
int get_i32(std::istream& in) { return static_cast<std::int32_t>(get_le<std::uint32_t>(in)); }
double get_f64(std::istream& in) { return std::bit_cast<double>(get_le<std::uint64_t>(in)); }

int get_count(std::istream& in, int limit, const char* what) {
  const int v = get_i32(in);
  if (v < 0 || v > limit) throw ConfigError(std::string("basis table file has an invalid ") + what);
  return v;
}

}  // namespace

void write_tables(std::ostream& out, const WaveletBasis& basis, int max_derivative) {
  const BasisTables& t = basis.tables();
  const int dmax = max_derivative < 0 ? t.max_derivative() : max_derivative;
  if (dmax > t.max_derivative()) {
    throw ConfigError("derivative order " + std::to_string(dmax) + " is not available for filter order " +
                      std::to_string(t.filter.order) + " (maximum " + std::to_string(t.max_derivative()) + ")");
  }
  out.write(kMagic.data(), kMagic.size());
  put_i32(out, t.filter.order);
  put_i32(out, basis.j_coarse());
  put_i32(out, basis.j_fine());
  put_f64(out, basis.domain().lo);
  put_f64(out, basis.domain().hi);
  put_i32(out, static_cast<int>(t.filter.taps.size()));
  for (double h : t.filter.taps) put_f64(out, h);
  put_i32(out, dmax + 1);
  for (int d = 0; d <= dmax; ++d) {
    const ConnectionTable& c = t.derivatives[static_cast<std::size_t>(d)];
    put_i32(out, d);
    put_i32(out, c.max_offset);
    for (double v : c.values) put_f64(out, v);
  }
  put_i32(out, t.moments.power());
  put_i32(out, t.moments.max_offset());
  for (int i = 0; i <= t.moments.power(); ++i) {
    for (int delta = -t.moments.max_offset(); delta <= t.moments.max_offset(); ++delta) {
      put_f64(out, t.moments.base(i, delta));
    }
  }
  if (!out) throw Error("failed to write basis tables");
}

TableDump read_tables(std::istream& in) {
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw ConfigError("not a WVBASIS1 basis table file");
  TableDump dump;
  dump.order = get_count(in, 1 << 10, "filter order");
  dump.j_coarse = get_i32(in);
  dump.j_fine = get_i32(in);
  dump.domain.lo = get_f64(in);
  dump.domain.hi = get_f64(in);
  const int taps = get_count(in, 1 << 10, "tap count");
  for (int i = 0; i < taps; ++i) dump.taps.push_back(get_f64(in));
  const int tables = get_count(in, 1 << 10, "derivative table count");
  for (int i = 0; i < tables; ++i) {
    ConnectionTable c;
    c.d1 = 0;
    c.d2 = get_count(in, 1 << 10, "derivative order");
    c.max_offset = get_count(in, 1 << 12, "offset range");
    for (int k = 0; k < 2 * c.max_offset + 1; ++k) c.values.push_back(get_f64(in));
    dump.derivatives.push_back(std::move(c));
  }
  const int power = get_count(in, 1 << 10, "moment power");
  const int offset = get_count(in, 1 << 12, "moment offset range");
  std::vector<std::vector<double>> base(static_cast<std::size_t>(power) + 1);
  for (auto& row : base) {
    for (int k = 0; k < 2 * offset + 1; ++k) row.push_back(get_f64(in));
  }
  dump.moments = MomentTable(power, offset, std::move(base));
  return dump;
}

}  // namespace wigner
