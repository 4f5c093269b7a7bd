#include "gtherm/scan.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "gtherm/gauge.hpp"

namespace gtherm {

const std::array<const char*, 17>& csv_columns() {
  static const std::array<const char*, 17> cols = {
      "g0",      "delta_g", "W_inv", "Q_c", "Q_inv",   "W_u",  "Q_u",
      "W_tpm",   "delta_U", "S_u",   "S_d", "S_GT",    "S_Gamma",
      "C",       "E0",      "ground_gap",  "ground_degeneracy"};
  return cols;
}

double scan_row_field(const ScanRow& r, const std::string& column) {
  if (column == "g0") return r.g0;
  if (column == "delta_g") return r.delta_g;
  if (column == "W_inv") return r.w_inv;
  if (column == "Q_c") return r.q_c;
  if (column == "Q_inv") return r.q_inv;
  if (column == "W_u") return r.w_u;
  if (column == "Q_u") return r.q_u;
  if (column == "W_tpm") return r.w_tpm;
  if (column == "delta_U") return r.delta_u;
  if (column == "S_u") return r.s_u;
  if (column == "S_d") return r.s_d;
  if (column == "S_GT") return r.s_gt;
  if (column == "S_Gamma") return r.s_gamma;
  if (column == "C") return r.coherence;
  if (column == "E0") return r.e0;
  if (column == "ground_gap") return r.ground_gap;
  if (column == "ground_degeneracy") return static_cast<double>(r.ground_degeneracy);
  throw Error(ErrorKind::UnknownColumn, column);
}

namespace {

struct ModelPoint {
  HermitianOperator h0;
  HermitianOperator h1;
};

ModelPoint model_at(const ScanRequest& req, double g0) {
  switch (req.model) {
    case ScanModel::Lz: {
      LZParams p = req.lz;
      p.g = g0;
      Eigen::MatrixXcd h1(2, 2);
      h1 << p.a, 0.0, 0.0, -p.a;
      return {lz_hamiltonian(p), HermitianOperator{std::move(h1)}};
    }
    case ScanModel::Lmg: {
      LMGParams p = req.lmg;
      p.g = g0;
      const SpinOperators ops = collective_spin_ops(p.j);
      return {lmg_hamiltonian(p), HermitianOperator{-ops.jx.mat}};
    }
    case ScanModel::Custom:
      return {HermitianOperator{req.custom_h0.mat + g0 * req.custom_h1.mat}, req.custom_h1};
  }
  throw Error(ErrorKind::InvalidParams, "unknown scan model");
}

ScanRow row_from_report(const ThermoReport& r, double g0, double delta_g) {
  ScanRow row;
  row.g0 = g0;
  row.delta_g = delta_g;
  row.w_inv = r.w_inv;
  row.q_c = r.q_c;
  row.q_inv = r.q_inv;
  row.w_u = r.w_u;
  row.q_u = r.q_u;
  row.w_tpm = r.tpm_avg_work;
  row.delta_u = r.delta_u;
  row.s_u = r.s_u;
  row.s_d = r.s_d;
  row.s_gt = r.s_gt;
  row.s_gamma = r.s_gamma;
  row.coherence = r.coherence;
  row.e0 = r.ground_energy;
  row.ground_gap = r.ground_gap;
  row.ground_degeneracy = r.ground_degeneracy;
  return row;
}

ScanRow scan_point(const ScanRequest& req, double g0, const Eigen::VectorXcd* hint,
                   Eigen::VectorXcd* vector_out) {
  const ModelPoint m = model_at(req, g0);
  const SpectralData pre =
      req.deg_tol > 0.0 ? decompose(m.h0, req.deg_tol) : decompose(m.h0);
  const GroundState gs = ground_state(pre, hint);
  if (vector_out != nullptr) *vector_out = gs.vector;
  const ThermoReport r =
      quench_report(gs.state, m.h0, m.h1, req.delta_g, req.deg_tol, req.qu, &pre);
  return row_from_report(r, g0, req.delta_g);
}

[[noreturn]] void rethrow_with_point(const Error& e, double g0) {
  throw Error(e.kind(), "scan aborted at g0 = " + std::to_string(g0) + ": " + e.what());
}

}  // namespace

std::vector<ScanRow> scan(const ScanRequest& req) {
  if (req.steps < 2) throw Error(ErrorKind::InvalidParams, "steps must be >= 2");
  if (!(req.g0_min < req.g0_max)) {
    throw Error(ErrorKind::InvalidParams, "g0 grid requires min < max");
  }
  if (!std::isfinite(req.delta_g)) {
    throw Error(ErrorKind::NonFiniteParameter, "delta_g is not finite");
  }

  const int n = req.steps;
  std::vector<double> grid(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    grid[static_cast<std::size_t>(i)] =
        req.g0_min + (req.g0_max - req.g0_min) * static_cast<double>(i) /
                         static_cast<double>(n - 1);
  }

  std::vector<ScanRow> rows(static_cast<std::size_t>(n));

  const bool sequential =
      req.continuity && (req.model == ScanModel::Lmg || req.model == ScanModel::Custom);
  if (sequential) {
    Eigen::VectorXcd hint;
    for (int i = 0; i < n; ++i) {
      const double g0 = grid[static_cast<std::size_t>(i)];
      try {
        Eigen::VectorXcd vec;
        rows[static_cast<std::size_t>(i)] =
            scan_point(req, g0, i > 0 ? &hint : nullptr, &vec);
        hint = std::move(vec);
      } catch (const Error& e) {
        rethrow_with_point(e, g0);
      }
    }
    return rows;
  }

  unsigned int workers = req.threads > 0 ? static_cast<unsigned int>(req.threads)
                                         : std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  workers = std::min<unsigned int>(workers, static_cast<unsigned int>(n));

  std::atomic<int> next{0};
  std::mutex err_mutex;
  int err_index = n;
  std::exception_ptr err;

  auto work = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      const double g0 = grid[static_cast<std::size_t>(i)];
      try {
        rows[static_cast<std::size_t>(i)] = scan_point(req, g0, nullptr, nullptr);
      } catch (const Error& e) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (i < err_index) {
          err_index = i;
          try {
            rethrow_with_point(e, g0);
          } catch (...) {
            err = std::current_exception();
          }
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (i < err_index) {
          err_index = i;
          err = std::current_exception();
        }
      }
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (err) std::rethrow_exception(err);
  return rows;
}

std::vector<std::pair<double, double>> differentiate(const std::vector<ScanRow>& rows,
                                                     const std::string& column, int order) {
  if (order != 1 && order != 2) {
    throw Error(ErrorKind::InvalidParams, "order must be 1 or 2");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  if (n < 3) throw Error(ErrorKind::InvalidParams, "need at least 3 rows");

  const double h = (rows.back().g0 - rows.front().g0) / static_cast<double>(n - 1);
  if (!(h > 0.0)) throw Error(ErrorKind::NonUniformGrid, "grid is not increasing");
  for (Eigen::Index i = 1; i < n; ++i) {
    const double step = rows[static_cast<std::size_t>(i)].g0 -
                        rows[static_cast<std::size_t>(i - 1)].g0;
    if (std::abs(step - h) > 1e-9 * std::max(1.0, std::abs(h))) {
      throw Error(ErrorKind::NonUniformGrid,
                  "step " + std::to_string(step) + " at index " + std::to_string(i) +
                      " differs from " + std::to_string(h));
    }
  }

  Eigen::VectorXd f(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    f(i) = scan_row_field(rows[static_cast<std::size_t>(i)], column);
  }

  std::vector<std::pair<double, double>> out(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    double d = 0.0;
    if (order == 1) {
      if (i == 0) d = (-3.0 * f(0) + 4.0 * f(1) - f(2)) / (2.0 * h);
      else if (i == n - 1) d = (3.0 * f(n - 1) - 4.0 * f(n - 2) + f(n - 3)) / (2.0 * h);
      else d = (f(i + 1) - f(i - 1)) / (2.0 * h);
    } else {
      const double h2 = h * h;
      if (i == 0) {
        d = n >= 4 ? (2.0 * f(0) - 5.0 * f(1) + 4.0 * f(2) - f(3)) / h2
                   : (f(0) - 2.0 * f(1) + f(2)) / h2;
      } else if (i == n - 1) {
        d = n >= 4 ? (2.0 * f(n - 1) - 5.0 * f(n - 2) + 4.0 * f(n - 3) - f(n - 4)) / h2
                   : (f(n - 3) - 2.0 * f(n - 2) + f(n - 1)) / h2;
      } else {
        d = (f(i + 1) - 2.0 * f(i) + f(i - 1)) / h2;
      }
    }
    out[static_cast<std::size_t>(i)] = {rows[static_cast<std::size_t>(i)].g0, d};
  }
  return out;
}

TwirlCheckReport twirl_check(int dim, const std::vector<int>& pattern, int n_samples,
                             std::uint64_t seed) {
  if (dim < 1) throw Error(ErrorKind::InvalidParams, "dim must be >= 1");
  long long total = 0;
  for (int nk : pattern) {
    if (nk < 1) throw Error(ErrorKind::InvalidPattern, "multiplicities must be >= 1");
    total += nk;
  }
  if (pattern.empty() || total != dim) {
    throw Error(ErrorKind::InvalidPattern,
                "pattern sums to " + std::to_string(total) + ", expected " + std::to_string(dim));
  }

  std::mt19937_64 rng(seed);

  // Hermitian with the forced cluster pattern: Haar basis, integer-spaced levels
  Eigen::VectorXd evals(dim);
  Eigen::Index at = 0;
  for (std::size_t k = 0; k < pattern.size(); ++k) {
    for (int r = 0; r < pattern[k]; ++r) evals(at++) = static_cast<double>(k);
  }
  const Eigen::MatrixXcd u = haar_unitary(dim, rng);
  const HermitianOperator h =
      validate_hermitian(u * evals.asDiagonal() * u.adjoint(), 1e-10);
  const SpectralData s = decompose(h);
  if (s.structure.count() != static_cast<Eigen::Index>(pattern.size())) {
    throw Error(ErrorKind::InternalInconsistency, "cluster pattern not recovered");
  }
  for (std::size_t k = 0; k < pattern.size(); ++k) {
    if (s.structure.clusters[k].count != pattern[k]) {
      throw Error(ErrorKind::InternalInconsistency, "cluster pattern not recovered");
    }
  }

  // random density matrix (Ginibre)
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd g(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < dim; ++i) g(i, j) = Complex(normal(rng), normal(rng));
  Eigen::MatrixXcd rho = g * g.adjoint();
  rho /= rho.trace().real();

  const DensityMatrix rho_e = to_energy_basis(DensityMatrix{std::move(rho)}, s);
  const DensityMatrix exact = twirl(rho_e, s.structure);
  const McTwirlResult mc =
      mc_twirl(rho_e, s.structure, n_samples, seed ^ 0x517cc1b727220a95ull);

  TwirlCheckReport rep;
  rep.frobenius_error = (mc.estimate.mat - exact.mat).norm();
  rep.std_error = mc.std_error;
  rep.pass = rep.frobenius_error <= 5.0 * rep.std_error;
  return rep;
}

namespace {

void append_double(std::string& out, double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  out.append(buf, res.ptr);
}

}  // namespace

std::string csv_to_string(const std::vector<ScanRow>& rows) {
  std::string out;
  out.reserve(rows.size() * 400 + 256);
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i > 0) out.push_back(',');
    out += cols[i];
  }
  out.push_back('\n');
  for (const ScanRow& r : rows) {
    append_double(out, r.g0); out.push_back(',');
    append_double(out, r.delta_g); out.push_back(',');
    append_double(out, r.w_inv); out.push_back(',');
    append_double(out, r.q_c); out.push_back(',');
    append_double(out, r.q_inv); out.push_back(',');
    append_double(out, r.w_u); out.push_back(',');
    append_double(out, r.q_u); out.push_back(',');
    append_double(out, r.w_tpm); out.push_back(',');
    append_double(out, r.delta_u); out.push_back(',');
    append_double(out, r.s_u); out.push_back(',');
    append_double(out, r.s_d); out.push_back(',');
    append_double(out, r.s_gt); out.push_back(',');
    append_double(out, r.s_gamma); out.push_back(',');
    append_double(out, r.coherence); out.push_back(',');
    append_double(out, r.e0); out.push_back(',');
    append_double(out, r.ground_gap); out.push_back(',');
    out += std::to_string(r.ground_degeneracy);
    out.push_back('\n');
  }
  return out;
}

void emit_csv(const std::vector<ScanRow>& rows, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::IoError, "cannot open " + path + " for writing");
  const std::string data = csv_to_string(rows);
  f.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!f) throw Error(ErrorKind::IoError, "write failed on " + path);
}

namespace {

double parse_double(const std::string& tok, std::size_t line) {
  double v = 0.0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
    throw Error(ErrorKind::IoError, "bad numeric field '" + tok + "' on line " +
                                        std::to_string(line));
  }
  return v;
}

}  // namespace

std::vector<ScanRow> parse_csv(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::IoError, "cannot open " + path);
  std::string line;
  if (!std::getline(f, line)) throw Error(ErrorKind::IoError, "empty file " + path);

  std::string expected;
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i > 0) expected.push_back(',');
    expected += cols[i];
  }
  if (line != expected) {
    throw Error(ErrorKind::IoError, "unexpected CSV header in " + path);
  }

  std::vector<ScanRow> rows;
  std::size_t line_no = 1;
  while (std::getline(f, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> toks;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) toks.push_back(tok);
    if (toks.size() != cols.size()) {
      throw Error(ErrorKind::IoError, "expected 17 fields on line " + std::to_string(line_no) +
                                          ", got " + std::to_string(toks.size()));
    }
    ScanRow r;
    r.g0 = parse_double(toks[0], line_no);
    r.delta_g = parse_double(toks[1], line_no);
    r.w_inv = parse_double(toks[2], line_no);
    r.q_c = parse_double(toks[3], line_no);
    r.q_inv = parse_double(toks[4], line_no);
    r.w_u = parse_double(toks[5], line_no);
    r.q_u = parse_double(toks[6], line_no);
    r.w_tpm = parse_double(toks[7], line_no);
    r.delta_u = parse_double(toks[8], line_no);
    r.s_u = parse_double(toks[9], line_no);
    r.s_d = parse_double(toks[10], line_no);
    r.s_gt = parse_double(toks[11], line_no);
    r.s_gamma = parse_double(toks[12], line_no);
    r.coherence = parse_double(toks[13], line_no);
    r.e0 = parse_double(toks[14], line_no);
    r.ground_gap = parse_double(toks[15], line_no);
    long long deg = 0;
    const auto res =
        std::from_chars(toks[16].data(), toks[16].data() + toks[16].size(), deg);
    if (res.ec != std::errc() || res.ptr != toks[16].data() + toks[16].size()) {
      throw Error(ErrorKind::IoError,
                  "bad degeneracy field on line " + std::to_string(line_no));
    }
    r.ground_degeneracy = deg;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace gtherm
