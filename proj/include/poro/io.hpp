#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "poro/solver.hpp"

namespace poro {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest round-trip decimal text (17 significant digits).
std::string format_double(double v);

inline constexpr const char* kGaugeHeader = "t,tau_xx,tau_zz,tau_xz,v_x,v_z,p,q_x,q_z";

void write_gauge_csv(const std::string& path, const GaugeRecord& rec);

struct GaugeSeries {
  std::vector<double> times;
  std::vector<StateVector> samples;
};

GaugeSeries read_gauge_csv(const std::string& path);

/// Text snapshot: eight header lines (nx, nz, x0, z0, dx, dz, t, ncomp=8), then
/// one line of eight values per interior cell, rows of constant z in order.
void write_snapshot(const std::string& path, const Snapshot& snap);

/// Raw little-endian float64 values in the same cell and component order.
void write_snapshot_binary(const std::string& path, const Snapshot& snap);

struct SnapshotData {
  int nx = 0;
  int nz = 0;
  double x0 = 0.0;
  double z0 = 0.0;
  double dx = 0.0;
  double dz = 0.0;
  double t = 0.0;
  std::vector<StateVector> cells;

  const StateVector& at(int i, int j) const { return cells.at(static_cast<std::size_t>(j) * nx + i); }
};

SnapshotData read_snapshot(const std::string& path);
std::vector<StateVector> read_snapshot_binary(const std::string& path, int nx, int nz);

using KeyValues = std::map<std::string, std::string>;

void write_kv(const std::string& path, const KeyValues& kv);
KeyValues read_kv(const std::string& path);

void write_text(const std::string& path, const std::string& text);

}  // namespace poro
