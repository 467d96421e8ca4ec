#include "poro/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <numbers>
#include <sstream>
#include <thread>

namespace poro {

namespace {

// Runs f(lo, hi) over contiguous chunks of [begin, end) on up to `workers`
// threads. Chunks own disjoint lines, so results do not depend on scheduling.
template <class F>
void parallel_chunks(int begin, int end, int workers, F&& f) {
  const int n = end - begin;
  if (n <= 0) return;
  if (workers <= 1 || n < 2) {
    f(begin, end);
    return;
  }
  workers = std::min(workers, n);
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  threads.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    const int lo = begin + static_cast<int>(static_cast<long long>(n) * w / workers);
    const int hi = begin + static_cast<int>(static_cast<long long>(n) * (w + 1) / workers);
    threads.emplace_back([&f, &errors, w, lo, hi] {
      try {
        f(lo, hi);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

std::optional<Limiter> parse_limiter(std::string_view s) {
  if (s == "none") return Limiter::none;
  if (s == "minmod") return Limiter::minmod;
  if (s == "superbee") return Limiter::superbee;
  if (s == "mc") return Limiter::mc;
  return std::nullopt;
}

std::optional<Splitting> parse_splitting(std::string_view s) {
  if (s == "godunov") return Splitting::godunov;
  if (s == "strang") return Splitting::strang;
  return std::nullopt;
}

std::optional<BoundaryKind> parse_boundary(std::string_view s) {
  if (s == "extrapolate") return BoundaryKind::extrapolate;
  if (s == "analytic_dirichlet") return BoundaryKind::analytic_dirichlet;
  return std::nullopt;
}

const char* to_string(Limiter l) {
  switch (l) {
    case Limiter::none: return "none";
    case Limiter::minmod: return "minmod";
    case Limiter::superbee: return "superbee";
    case Limiter::mc: return "mc";
  }
  return "?";
}

const char* to_string(Splitting s) {
  return s == Splitting::godunov ? "godunov" : "strang";
}

const char* to_string(BoundaryKind b) {
  return b == BoundaryKind::extrapolate ? "extrapolate" : "analytic_dirichlet";
}

double limiter_phi(Limiter l, double theta) {
  switch (l) {
    case Limiter::none:
      return 1.0;
    case Limiter::minmod:
      return std::max(0.0, std::min(1.0, theta));
    case Limiter::superbee:
      return std::max({0.0, std::min(1.0, 2.0 * theta), std::min(2.0, theta)});
    case Limiter::mc:
      return std::max(0.0, std::min({0.5 * (1.0 + theta), 2.0, 2.0 * theta}));
  }
  return 1.0;
}

double ricker(double t, double f_peak, double t0) {
  const double a = std::numbers::pi * std::numbers::pi * f_peak * f_peak * (t - t0) * (t - t0);
  return (1.0 - 2.0 * a) * std::exp(-a);
}

void SimConfig::validate() const {
  const double cap = transverse ? 1.0 : 0.45;
  if (!(cfl_target > 0.0) || cfl_target > cap) {
    std::ostringstream os;
    os << "cfl_target " << cfl_target << " outside (0, " << cap << "]"
       << (transverse ? "" : " (transverse corrections disabled)");
    throw SolverError(os.str());
  }
  if (!(t_final >= 0.0)) throw SolverError("t_final must be non-negative");
  if (workers < 1) throw SolverError("workers must be at least 1");
}

MaterialTable::MaterialTable(std::vector<Material> materials)
    : materials_(std::move(materials)) {
  if (materials_.empty()) throw SolverError("material table is empty");
  for (const auto& m : materials_) {
    basis_x_.push_back(build_wave_basis(m.matrices, Axis::x));
    basis_z_.push_back(build_wave_basis(m.matrices, Axis::z));
  }
  const std::size_t n = materials_.size();
  ops_x_.resize(n * n);
  ops_z_.resize(n * n);
}

const WaveBasis& MaterialTable::basis(int id, Axis a) const {
  return a == Axis::x ? basis_x_.at(id) : basis_z_.at(id);
}

void MaterialTable::prepare_interfaces(const Grid2D& grid) {
  const int n = size();
  auto ensure = [&](int l, int r, Axis a) {
    if (l < 0 || l >= n || r < 0 || r >= n) {
      throw SolverError("grid references an undefined material id");
    }
    auto& slot = (a == Axis::x ? ops_x_ : ops_z_)[l * n + r];
    if (!slot) slot = build_interface_operator(basis(l, a), basis(r, a), l, r);
  };
  const int g = Grid2D::ghost;
  for (int j = -g; j < grid.nz() + g; ++j) {
    for (int i = -g; i < grid.nx() + g; ++i) {
      const int m = grid.material(i, j);
      if (i + 1 < grid.nx() + g) ensure(m, grid.material(i + 1, j), Axis::x);
      if (j + 1 < grid.nz() + g) ensure(m, grid.material(i, j + 1), Axis::z);
    }
  }
}

bool MaterialTable::has_interface(int left, int right, Axis a) const {
  const int n = size();
  if (left < 0 || left >= n || right < 0 || right >= n) return false;
  return (a == Axis::x ? ops_x_ : ops_z_)[left * n + right].has_value();
}

const InterfaceOperator& MaterialTable::interface(int left, int right, Axis a) const {
  if (!has_interface(left, right, a)) {
    throw SolverError("interface operator was not prepared for this material pair");
  }
  return *(a == Axis::x ? ops_x_ : ops_z_)[left * size() + right];
}

double max_inverse_transit(const Grid2D& grid, const MaterialTable& table) {
  std::vector<char> present(table.size(), 0);
  for (int j = 0; j < grid.nz(); ++j) {
    for (int i = 0; i < grid.nx(); ++i) present.at(grid.material(i, j)) = 1;
  }
  double rate = 0.0;
  for (int id = 0; id < table.size(); ++id) {
    if (!present[id]) continue;
    rate = std::max({rate, table.max_speed(id, Axis::x) / grid.dx(),
                     table.max_speed(id, Axis::z) / grid.dz()});
  }
  return rate;
}

double compute_dt(const Grid2D& grid, const MaterialTable& table, double cfl_target) {
  if (grid.nx() <= 0 || grid.nz() <= 0) throw SolverError("empty grid");
  const double rate = max_inverse_transit(grid, table);
  if (!(rate > 0)) throw SolverError("no wave speeds available on the grid");
  return cfl_target / rate;
}

Mat8 relaxation_operator(const Material& m, double h) {
  Mat8 S = Mat8::Identity();
  if (!m.coeffs.dissipative()) return S;
  const double e1 = std::exp(-h / *m.coeffs.tau_d1);
  const double e3 = std::exp(-h / *m.coeffs.tau_d3);
  const double ratio = m.spec.rho_f / m.coeffs.rho;
  S(kQx, kQx) = e1;
  S(kVx, kQx) = ratio * (1.0 - e1);
  S(kQz, kQz) = e3;
  S(kVz, kQz) = ratio * (1.0 - e3);
  if (m.spec.theta_mat == 0.0) return S;
  return state_rotation(-m.spec.theta_mat) * S * state_rotation(m.spec.theta_mat);
}

double grid_energy(const Grid2D& grid, const MaterialTable& table) {
  double e = 0.0;
  for (int j = 0; j < grid.nz(); ++j) {
    for (int i = 0; i < grid.nx(); ++i) {
      const StateVector& q = grid.q(i, j);
      e += 0.5 * q.dot(table.material(grid.material(i, j)).matrices.E * q);
    }
  }
  return e * grid.dx() * grid.dz();
}

Solver::Solver(Grid2D grid, MaterialTable table, SimConfig config)
    : grid_(std::move(grid)), table_(std::move(table)), config_(std::move(config)) {
  config_.validate();
  grid_.sync_ghost_materials();
  table_.prepare_interfaces(grid_);
  for (const auto& m : table_.materials()) dissipative_ = dissipative_ || m.coeffs.dissipative();

  for (const auto& src : config_.sources) {
    SourceStencil st;
    st.source = src;
    auto axis_weights = [](double frac_index, int& base) {
      base = static_cast<int>(std::floor(frac_index));
      double a = frac_index - base;
      if (a < 1e-9) a = 0.0;
      if (a > 1.0 - 1e-9) {
        a = 0.0;
        base += 1;
      }
      return a;
    };
    int i0 = 0, j0 = 0;
    const double a = axis_weights((src.x - grid_.x0()) / grid_.dx() - 0.5, i0);
    const double b = axis_weights((src.z - grid_.z0()) / grid_.dz() - 0.5, j0);
    const double wx[2] = {1.0 - a, a};
    const double wz[2] = {1.0 - b, b};
    for (int dj = 0; dj < 2; ++dj) {
      for (int di = 0; di < 2; ++di) {
        const double w = wx[di] * wz[dj];
        if (w == 0.0) continue;
        if (!grid_.in_interior(i0 + di, j0 + dj)) {
          std::ostringstream os;
          os << "point source at (" << src.x << ", " << src.z << ") is outside the interior";
          throw SolverError(os.str());
        }
        st.cells.emplace_back(grid_.index(i0 + di, j0 + dj), w);
      }
    }
    stencils_.push_back(std::move(st));
  }

  const int n = grid_.padded_size();
  dx_acc_.assign(n, StateVector::Zero());
  dz_acc_.assign(n, StateVector::Zero());
  g_up_.assign(n, StateVector::Zero());
  g_down_.assign(n, StateVector::Zero());
  f_right_.assign(n, StateVector::Zero());
  f_left_.assign(n, StateVector::Zero());
}

void Solver::fill_ghost(double t) {
  const int g = Grid2D::ghost;
  const int nx = grid_.nx(), nz = grid_.nz();
  for (int j = -g; j < nz + g; ++j) {
    for (int i = -g; i < nx + g; ++i) {
      if (grid_.in_interior(i, j)) continue;
      const Edge edge = j < 0 ? kBottom : j >= nz ? kTop : i < 0 ? kLeft : kRight;
      if (config_.bc[edge] == BoundaryKind::extrapolate) {
        grid_.q(i, j) = grid_.q(std::clamp(i, 0, nx - 1), std::clamp(j, 0, nz - 1));
      } else {
        if (!analytic_) {
          throw SolverError("analytic_dirichlet boundary requires a registered analytic solution");
        }
        grid_.q(i, j) = analytic_(grid_.xc(i), grid_.zc(j), t);
      }
    }
  }
}

void Solver::sweep_line(Axis a, int line, double dt, std::vector<RiemannSolution>& rs,
                        std::vector<StateVector>& cq) {
  const bool along_x = a == Axis::x;
  const int n = along_x ? grid_.nx() : grid_.nz();
  const int n_lines = along_x ? grid_.nz() : grid_.nx();
  const double h = along_x ? grid_.dx() : grid_.dz();
  const double nu = dt / h;
  const Axis trans = along_x ? Axis::z : Axis::x;
  auto cell = [&](int p) { return along_x ? grid_.index(p, line) : grid_.index(line, p); };
  const auto& state = grid_.raw_state();
  auto mat = [&](int p) {
    return along_x ? grid_.material(p, line) : grid_.material(line, p);
  };

  // Edge e sits between positions e-1 and e; slot k = e + 1.
  rs.resize(n + 3);
  cq.assign(n + 3, StateVector::Zero());
  for (int e = -1; e <= n + 1; ++e) {
    const int ml = mat(e - 1), mr = mat(e);
    solve_normal(state[cell(e - 1)], state[cell(e)], table_.interface(ml, mr, a), rs[e + 1]);
  }

  for (int e = 0; e <= n; ++e) {
    const RiemannSolution& r = rs[e + 1];
    StateVector& c = cq[e + 1];
    for (int p = 0; p < kNumWaves; ++p) {
      const double s = r.speeds[p];
      const double as = std::abs(s);
      const StateVector& w = r.waves[p];
      double phi = 1.0;
      if (config_.limiter != Limiter::none) {
        const bool right_going = p >= 3;
        const Mat8& E = table_.basis(mat(right_going ? e : e - 1), a).energy;
        const StateVector Ew = E * w;
        const double ww = w.dot(Ew);
        if (!(ww > 0.0)) continue;
        const StateVector& wu = rs[right_going ? e : e + 2].waves[p];
        phi = limiter_phi(config_.limiter, wu.dot(Ew) / ww);
      }
      c += (as * (1.0 - as * nu) * phi) * w;
    }
  }

  auto& acc = along_x ? dx_acc_ : dz_acc_;
  if (line >= 0 && line < n_lines) {
    for (int p = 0; p < n; ++p) {
      acc[cell(p)] = nu * (rs[p + 1].apdq + rs[p + 2].amdq + 0.5 * (cq[p + 2] - cq[p + 1]));
    }
  }

  if (!config_.transverse) return;
  auto& plus = along_x ? g_up_ : f_right_;
  auto& minus = along_x ? g_down_ : f_left_;
  const double half_nu = 0.5 * nu;
  for (int e = 0; e <= n; ++e) {
    const RiemannSolution& r = rs[e + 1];
    if (e - 1 >= 0) {
      const TransverseSplit t =
          solve_transverse(r.amdq + cq[e + 1], table_.basis(mat(e - 1), trans));
      plus[cell(e - 1)] -= half_nu * t.bpasdq;
      minus[cell(e - 1)] -= half_nu * t.bmasdq;
    }
    if (e <= n - 1) {
      const TransverseSplit t =
          solve_transverse(r.apdq - cq[e + 1], table_.basis(mat(e), trans));
      plus[cell(e)] -= half_nu * t.bpasdq;
      minus[cell(e)] -= half_nu * t.bmasdq;
    }
  }
}

void Solver::hyperbolic_step(double dt) {
  const double nu = dt * max_inverse_transit(grid_, table_);
  if (nu > 1.0 + 1e-12) {
    std::ostringstream os;
    os << "CFL number " << nu << " exceeds 1";
    throw SolverError(os.str());
  }
  const int nx = grid_.nx(), nz = grid_.nz();
  if (config_.transverse) {
    for (auto* buf : {&g_up_, &g_down_, &f_right_, &f_left_}) {
      std::fill(buf->begin(), buf->end(), StateVector::Zero());
    }
  }

  auto run_sweep = [&](Axis a, int n_lines) {
    parallel_chunks(-1, n_lines + 1, config_.workers, [&](int lo, int hi) {
      std::vector<RiemannSolution> rs;
      std::vector<StateVector> cq;
      for (int line = lo; line < hi; ++line) sweep_line(a, line, dt, rs, cq);
    });
  };
  run_sweep(Axis::x, nz);
  run_sweep(Axis::z, nx);

  const double rx = dt / grid_.dx();
  const double rz = dt / grid_.dz();
  const bool trans = config_.transverse;
  parallel_chunks(0, nz, config_.workers, [&](int lo, int hi) {
    for (int j = lo; j < hi; ++j) {
      for (int i = 0; i < nx; ++i) {
        const int c = grid_.index(i, j);
        StateVector du = dx_acc_[c] + dz_acc_[c];
        if (trans) {
          const StateVector g_top = g_up_[c] + g_down_[grid_.index(i, j + 1)];
          const StateVector g_bot = g_up_[grid_.index(i, j - 1)] + g_down_[c];
          const StateVector f_rgt = f_right_[c] + f_left_[grid_.index(i + 1, j)];
          const StateVector f_lft = f_right_[grid_.index(i - 1, j)] + f_left_[c];
          du += rz * (g_top - g_bot) + rx * (f_rgt - f_lft);
        }
        grid_.raw_state()[c] -= du;
      }
    }
  });
}

void Solver::relax(double h, bool include_ghosts) {
  if (!dissipative_ || h == 0.0) return;
  std::vector<Mat8> ops;
  ops.reserve(table_.size());
  for (const auto& m : table_.materials()) ops.push_back(relaxation_operator(m, h));
  const int g = include_ghosts ? Grid2D::ghost : 0;
  parallel_chunks(-g, grid_.nz() + g, config_.workers, [&](int lo, int hi) {
    for (int j = lo; j < hi; ++j) {
      for (int i = -g; i < grid_.nx() + g; ++i) {
        StateVector& q = grid_.q(i, j);
        q = ops[grid_.material(i, j)] * q;
      }
    }
  });
}

void Solver::apply_point_sources(double t, double h) {
  const double inv_area = 1.0 / (grid_.dx() * grid_.dz());
  for (const auto& st : stencils_) {
    const double amp = ricker(t + 0.5 * h, st.source.f_peak, st.source.t_peak) * h * inv_area;
    for (const auto& [c, w] : st.cells) {
      StateVector& q = grid_.raw_state()[c];
      q(kTauZZ) += w * st.source.amp_tau_zz * amp;
      q(kP) += w * st.source.amp_p * amp;
    }
  }
}

void Solver::source_stage(double t, double h, bool include_ghosts) {
  relax(h, include_ghosts);
  apply_point_sources(t, h);
}

void Solver::step(double t, double dt) {
  fill_ghost(t);
  if (config_.splitting == Splitting::godunov) {
    source_stage(t, dt, true);
    hyperbolic_step(dt);
  } else {
    source_stage(t, 0.5 * dt, true);
    hyperbolic_step(dt);
    source_stage(t + 0.5 * dt, 0.5 * dt, false);
  }
}

RunResult Solver::run(const Observer& observer) {
  const auto wall0 = std::chrono::steady_clock::now();
  RunResult out;
  for (const auto& g : config_.gauges) {
    GaugeRecord rec;
    rec.gauge = g;
    std::tie(rec.i, rec.j) = grid_.locate(g.x, g.z);
    out.gauges.push_back(std::move(rec));
  }
  std::vector<double> snaps;
  for (double ts : config_.snapshot_times) {
    if (ts >= 0.0 && ts <= config_.t_final) snaps.push_back(ts);
  }
  std::sort(snaps.begin(), snaps.end());
  snaps.erase(std::unique(snaps.begin(), snaps.end()), snaps.end());
  std::size_t next_snap = 0;

  auto sample = [&](double t) {
    for (auto& rec : out.gauges) {
      rec.times.push_back(t);
      rec.samples.push_back(grid_.q(rec.i, rec.j));
    }
    while (next_snap < snaps.size() && snaps[next_snap] <= t) {
      out.snapshots.push_back(Snapshot{t, grid_});
      ++next_snap;
    }
  };

  double t = 0.0;
  sample(t);
  if (observer) observer(grid_, t, 0);
  const double rate = max_inverse_transit(grid_, table_);
  while (t < config_.t_final) {
    double stop = config_.t_final;
    if (next_snap < snaps.size()) stop = std::min(stop, snaps[next_snap]);
    double dt = compute_dt();
    bool land = false;
    if (t + dt >= stop - 1e-12 * std::max(1.0, std::abs(stop))) {
      dt = stop - t;
      land = true;
    }
    try {
      step(t, dt);
    } catch (const std::exception& e) {
      std::ostringstream os;
      os << "step " << out.steps + 1 << " at t = " << t << ": " << e.what();
      throw SolverError(os.str());
    }
    t = land ? stop : t + dt;
    ++out.steps;
    out.dt_history.push_back(dt);
    out.max_cfl = std::max(out.max_cfl, dt * rate);
    sample(t);
    if (observer) observer(grid_, t, out.steps);
  }
  out.t_end = t;
  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
  return out;
}

}  // namespace poro
