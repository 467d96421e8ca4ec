#include "poro/io.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace poro {

namespace {

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream out(path, mode);
  if (!out) throw IoError("cannot write '" + path + "'");
  return out;
}

std::ifstream open_in(const std::string& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream in(path, mode);
  if (!in) throw IoError("cannot read '" + path + "'");
  return in;
}

double parse_double(std::string_view s, const std::string& path, int line) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw IoError(path + ":" + std::to_string(line) + ": bad number '" + std::string(s) + "'");
  }
  return v;
}

std::vector<double> split_numbers(const std::string& row, char sep, const std::string& path,
                                  int line) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= row.size()) {
    std::size_t end = row.find(sep, start);
    if (end == std::string::npos) end = row.size();
    out.push_back(parse_double(std::string_view(row).substr(start, end - start), path, line));
    start = end + 1;
  }
  return out;
}

void write_row(std::ostream& os, const StateVector& q, char sep) {
  for (int k = 0; k < kNumState; ++k) {
    if (k) os << sep;
    os << format_double(q(k));
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_gauge_csv(const std::string& path, const GaugeRecord& rec) {
  auto out = open_out(path);
  out << kGaugeHeader << '\n';
  for (std::size_t n = 0; n < rec.times.size(); ++n) {
    out << format_double(rec.times[n]) << ',';
    write_row(out, rec.samples[n], ',');
    out << '\n';
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

GaugeSeries read_gauge_csv(const std::string& path) {
  auto in = open_in(path);
  std::string row;
  if (!std::getline(in, row) || row != kGaugeHeader) throw IoError(path + ": unexpected gauge header");
  GaugeSeries g;
  int line = 1;
  while (std::getline(in, row)) {
    ++line;
    if (row.empty()) continue;
    const auto v = split_numbers(row, ',', path, line);
    if (v.size() != kNumState + 1) throw IoError(path + ":" + std::to_string(line) + ": expected 9 columns");
    g.times.push_back(v[0]);
    g.samples.push_back(Eigen::Map<const StateVector>(v.data() + 1));
  }
  return g;
}

void write_snapshot(const std::string& path, const Snapshot& snap) {
  const Grid2D& g = snap.grid;
  auto out = open_out(path);
  out << "nx=" << g.nx() << '\n'
      << "nz=" << g.nz() << '\n'
      << "x0=" << format_double(g.x0()) << '\n'
      << "z0=" << format_double(g.z0()) << '\n'
      << "dx=" << format_double(g.dx()) << '\n'
      << "dz=" << format_double(g.dz()) << '\n'
      << "t=" << format_double(snap.t) << '\n'
      << "ncomp=" << kNumState << '\n';
  for (int j = 0; j < g.nz(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      write_row(out, g.q(i, j), ' ');
      out << '\n';
    }
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

void write_snapshot_binary(const std::string& path, const Snapshot& snap) {
  const Grid2D& g = snap.grid;
  auto out = open_out(path, std::ios::out | std::ios::binary);
  for (int j = 0; j < g.nz(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      for (int k = 0; k < kNumState; ++k) {
        std::uint64_t bits = std::bit_cast<std::uint64_t>(g.q(i, j)(k));
        unsigned char bytes[8];
        for (int b = 0; b < 8; ++b) bytes[b] = static_cast<unsigned char>(bits >> (8 * b));
        out.write(reinterpret_cast<const char*>(bytes), 8);
      }
    }
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

SnapshotData read_snapshot(const std::string& path) {
  auto in = open_in(path);
  SnapshotData s;
  const char* keys[] = {"nx", "nz", "x0", "z0", "dx", "dz", "t", "ncomp"};
  double header[8];
  std::string row;
  for (int h = 0; h < 8; ++h) {
    if (!std::getline(in, row)) throw IoError(path + ": truncated header");
    const std::string prefix = std::string(keys[h]) + "=";
    if (row.rfind(prefix, 0) != 0) throw IoError(path + ": expected '" + prefix + "' on line " + std::to_string(h + 1));
    header[h] = parse_double(std::string_view(row).substr(prefix.size()), path, h + 1);
  }
  if (header[7] != kNumState) throw IoError(path + ": ncomp must be 8");
  s.nx = static_cast<int>(header[0]);
  s.nz = static_cast<int>(header[1]);
  s.x0 = header[2];
  s.z0 = header[3];
  s.dx = header[4];
  s.dz = header[5];
  s.t = header[6];
  int line = 8;
  while (std::getline(in, row)) {
    ++line;
    if (row.empty()) continue;
    const auto v = split_numbers(row, ' ', path, line);
    if (v.size() != kNumState) throw IoError(path + ":" + std::to_string(line) + ": expected 8 values");
    s.cells.push_back(Eigen::Map<const StateVector>(v.data()));
  }
  if (s.cells.size() != static_cast<std::size_t>(s.nx) * s.nz) throw IoError(path + ": cell count mismatch");
  return s;
}

std::vector<StateVector> read_snapshot_binary(const std::string& path, int nx, int nz) {
  auto in = open_in(path, std::ios::in | std::ios::binary);
  std::vector<StateVector> cells(static_cast<std::size_t>(nx) * nz);
  for (auto& q : cells) {
    for (int k = 0; k < kNumState; ++k) {
      unsigned char bytes[8];
      if (!in.read(reinterpret_cast<char*>(bytes), 8)) throw IoError(path + ": truncated binary snapshot");
      std::uint64_t bits = 0;
      for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(bytes[b]) << (8 * b);
      q(k) = std::bit_cast<double>(bits);
    }
  }
  if (in.peek() != std::char_traits<char>::eof()) throw IoError(path + ": trailing bytes in binary snapshot");
  return cells;
}

void write_kv(const std::string& path, const KeyValues& kv) {
  auto out = open_out(path);
  for (const auto& [k, v] : kv) out << k << '=' << v << '\n';
  if (!out) throw IoError("write failed for '" + path + "'");
}

KeyValues read_kv(const std::string& path) {
  auto in = open_in(path);
  KeyValues kv;
  std::string row;
  int line = 0;
  while (std::getline(in, row)) {
    ++line;
    if (row.empty()) continue;
    const auto eq = row.find('=');
    if (eq == std::string::npos) throw IoError(path + ":" + std::to_string(line) + ": expected key=value");
    kv[row.substr(0, eq)] = row.substr(eq + 1);
  }
  return kv;
}

void write_text(const std::string& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace poro
