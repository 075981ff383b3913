#include "riesz.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <charconv>
#include <cmath>
#include <sstream>

#include "ops.hpp"
#include "rng.hpp"

namespace wigmd {

namespace {

Eigen::MatrixXcd to_eigen(int k, const std::vector<cplx>& data) {
  Eigen::MatrixXcd m(k, k);
  for (int j = 0; j < k; ++j)
    for (int c = 0; c < k; ++c) m(j, c) = data[static_cast<size_t>(j) * k + c];
  return m;
}

std::pair<double, double> singular_extremes(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  return {s(0), s(s.size() - 1)};
}

double parse_number(std::string_view s) {
  try {
    return std::stod(std::string(s));
  } catch (const std::exception&) {
    fail(Errc::parse_error, "malformed number in matrix spec");
  }
}

}  // namespace

OperatorMatrix::OperatorMatrix(int truncation, std::vector<cplx> row_major)
    : truncation_(truncation), data_(std::move(row_major)) {
  if (truncation < 1) fail(Errc::invalid_argument, "truncation must be positive");
  if (data_.size() != static_cast<size_t>(truncation) * truncation)
    fail(Errc::invalid_argument, "matrix data does not match truncation");
  std::tie(sigma_max_, sigma_min_) = singular_extremes(to_eigen(truncation_, data_));
}

OperatorMatrix OperatorMatrix::identity(int truncation) {
  std::vector<cplx> d(static_cast<size_t>(truncation) * truncation);
  for (int j = 0; j < truncation; ++j) d[static_cast<size_t>(j) * truncation + j] = 1.0;
  return OperatorMatrix(truncation, std::move(d));
}

OperatorMatrix OperatorMatrix::diagonal(int truncation, std::span<const double> cycle) {
  if (cycle.empty()) fail(Errc::invalid_argument, "empty diagonal cycle");
  std::vector<cplx> d(static_cast<size_t>(truncation) * truncation);
  for (int j = 0; j < truncation; ++j)
    d[static_cast<size_t>(j) * truncation + j] = cycle[static_cast<size_t>(j) % cycle.size()];
  return OperatorMatrix(truncation, std::move(d));
}

OperatorMatrix OperatorMatrix::random_conditioned(int truncation, double cond, std::uint64_t seed) {
  if (!(cond >= 1.0)) fail(Errc::invalid_argument, "condition number must be >= 1");
  Rng rng(seed);
  auto random_unitary = [&] {
    Eigen::MatrixXcd g(truncation, truncation);
    for (int j = 0; j < truncation; ++j)
      for (int c = 0; c < truncation; ++c) g(j, c) = rng.complex_gaussian();
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    return Eigen::MatrixXcd(qr.householderQ());
  };
  const Eigen::MatrixXcd q1 = random_unitary();
  const Eigen::MatrixXcd q2 = random_unitary();
  Eigen::VectorXd sigma(truncation);
  const double half_log = 0.5 * std::log(cond);
  for (int j = 0; j < truncation; ++j) {
    const double t = truncation > 1 ? 1.0 - 2.0 * j / (truncation - 1.0) : 0.0;
    sigma(j) = std::exp(half_log * t);
  }
  const Eigen::MatrixXcd v = q1 * sigma.asDiagonal() * q2.adjoint();
  std::vector<cplx> d(static_cast<size_t>(truncation) * truncation);
  for (int j = 0; j < truncation; ++j)
    for (int c = 0; c < truncation; ++c) d[static_cast<size_t>(j) * truncation + c] = v(j, c);
  return OperatorMatrix(truncation, std::move(d));
}

OperatorMatrix OperatorMatrix::from_generator(int truncation, std::string_view spec) {
  if (spec == "identity") return identity(truncation);
  if (spec.starts_with("diag:")) {
    std::vector<double> cycle;
    std::stringstream ss{std::string(spec.substr(5))};
    std::string item;
    while (std::getline(ss, item, ',')) cycle.push_back(parse_number(item));
    return diagonal(truncation, cycle);
  }
  if (spec.starts_with("random:")) {
    double cond = 2.0;
    std::uint64_t seed = 1;
    std::stringstream ss{std::string(spec.substr(7))};
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.starts_with("cond="))
        cond = parse_number(std::string_view(item).substr(5));
      else if (item.starts_with("seed="))
        seed = static_cast<std::uint64_t>(parse_number(std::string_view(item).substr(5)));
      else
        fail(Errc::parse_error, "unknown random matrix option: " + item);
    }
    return random_conditioned(truncation, cond, seed);
  }
  fail(Errc::parse_error, "unknown matrix generator: " + std::string(spec));
}

OperatorMatrix OperatorMatrix::from_csv_text(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::stringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) {
      if (field.find_first_not_of(" \t\r") == std::string::npos) continue;
      row.push_back(parse_number(field));
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  const int k = static_cast<int>(rows.size());
  if (k < 1) fail(Errc::io_error, "empty matrix file");
  std::vector<cplx> data(static_cast<size_t>(k) * k);
  for (int j = 0; j < k; ++j) {
    if (rows[static_cast<size_t>(j)].size() != static_cast<size_t>(2 * k))
      fail(Errc::io_error, "matrix row must hold re,im pairs for every column");
    for (int c = 0; c < k; ++c)
      data[static_cast<size_t>(j) * k + c] =
          cplx{rows[static_cast<size_t>(j)][static_cast<size_t>(2 * c)],
               rows[static_cast<size_t>(j)][static_cast<size_t>(2 * c + 1)]};
  }
  return OperatorMatrix(k, std::move(data));
}

CoeffVector OperatorMatrix::column(int k) const {
  if (k < 0 || k >= truncation_) fail(Errc::out_of_range, "column out of range");
  CoeffVector v(static_cast<size_t>(truncation_));
  for (int j = 0; j < truncation_; ++j) v[static_cast<size_t>(j)] = at(j, k);
  return v;
}

bool OperatorMatrix::is_singular() const { return sigma_min_ <= 1e-12 * std::max(1.0, sigma_max_); }

bool OperatorMatrix::norm_estimates_converged() const {
  const int half = truncation_ / 2;
  if (half < 1) return true;
  Eigen::MatrixXcd sub(half, half);
  for (int j = 0; j < half; ++j)
    for (int c = 0; c < half; ++c) sub(j, c) = at(j, c);
  const auto [smax, smin] = singular_extremes(sub);
  return std::abs(smax - sigma_max_) <= 0.01 * sigma_max_ && std::abs(smin - sigma_min_) <= 0.01 * sigma_min_;
}

std::vector<CoeffVector> riesz_family(const OperatorMatrix& v) {
  if (v.is_singular()) fail(Errc::singular_matrix, "not a Riesz family");
  std::vector<CoeffVector> out;
  out.reserve(static_cast<size_t>(v.truncation()));
  for (int k = 0; k < v.truncation(); ++k) out.push_back(v.column(k));
  return out;
}

double integer_part(double x) {
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= 1e-9 * std::max(1.0, std::abs(x))) return nearest;
  return std::floor(x);
}

RieszBoundReport riesz_bound(const OperatorMatrix& v_u, const OperatorMatrix& v_v, int n, int i) {
  if (n < 0 || n >= v_v.truncation()) fail(Errc::out_of_range, "n out of range");
  if (i < 0 || i >= v_u.truncation()) fail(Errc::out_of_range, "member index out of range");
  if (v_u.is_singular() || v_v.is_singular()) fail(Errc::singular_matrix, "not a Riesz family");

  double lhs = 0.0;
  for (int k = 0; k <= n; ++k) lhs += spectral_lhat_form(v_u.column(i), v_v.column(k));

  const double b = v_v.norm_u_inverse() * v_v.norm_u_inverse();          // ||U2^{-1}||^2
  const double u2_sq = v_v.norm_u() * v_v.norm_u();                      // ||U2||^2
  const double u1_sq = v_u.norm_u() * v_u.norm_u();                      // ||U1||^2
  const double floor_arg = (n + 1.0) / (b * u2_sq);
  const double fl = integer_part(floor_arg);

  RieszBoundReport r;
  r.n = n;
  r.lhs = lhs;
  r.rhs = (b / u1_sq) * fl * fl;
  r.m = static_cast<long long>(fl) - 1;
  r.margin = r.lhs - r.rhs;
  r.norms_converged = v_u.norm_estimates_converged() && v_v.norm_estimates_converged();
  return r;
}

RieszBoundReport riesz_md_bound(const OperatorMatrix& v, int n) {
  if (n < 0 || n >= v.truncation()) fail(Errc::out_of_range, "n out of range");
  if (v.is_singular()) fail(Errc::singular_matrix, "not a Riesz family");

  double lhs = 0.0;
  for (int k = 0; k <= n; ++k) {
    const CoeffVector u = v.column(k);
    double nn = 0.0, weighted = 0.0;
    for (size_t l = 0; l < u.size(); ++l) {
      nn += std::norm(u[l]);
      weighted += std::norm(u[l]) * (2.0 * static_cast<double>(l) + 1.0);
    }
    lhs += weighted / nn;
  }

  const double kappa_sq = v.norm_u_inverse() * v.norm_u_inverse() * v.norm_u() * v.norm_u();
  const double fl = integer_part((n + 1.0) / kappa_sq);

  RieszBoundReport r;
  r.n = n;
  r.lhs = lhs;
  r.rhs = fl * fl / kappa_sq;
  r.m = static_cast<long long>(fl) - 1;
  r.margin = r.lhs - r.rhs;
  r.norms_converged = v.norm_estimates_converged();
  return r;
}

}  // namespace wigmd
