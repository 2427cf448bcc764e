#include "ctd/evaluation.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <string>

#include "ctd/error.hpp"
#include "ctd/tensor_ops.hpp"

namespace ctd {

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Eigen::MatrixXd densify(const SparseMatrix& m) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m.rows(), m.cols());
  for (index_t j = 0; j < m.cols(); ++j) {
    const auto cr = m.column_rows(j);
    const auto cv = m.column_values(j);
    for (size_t t = 0; t < cr.size(); ++t) out(cr[t], j) = cv[t];
  }
  return out;
}

/// R * U densified; rows follow R, columns follow U.
DenseMatrix dense_product(const SparseMatrix& r, const DenseMatrix& u) {
  if (r.cols() != u.rows()) throw ShapeError("R U dimension mismatch");
  DenseMatrix out(r.rows(), u.cols());
  for (index_t k = 0; k < r.cols(); ++k) {
    const auto cr = r.column_rows(k);
    const auto cv = r.column_values(k);
    for (size_t t = 0; t < cr.size(); ++t)
      for (index_t c = 0; c < u.cols(); ++c)
        out.at(cr[t], c) += cv[t] * u.at(k, c);
  }
  return out;
}

}  // namespace

std::string tsv_header() {
  return "step\terror\tseconds\tmemory_usage\tkept_fibers";
}

std::string tsv_line(index_t step, const EvalReport& report) {
  std::string line = std::to_string(step);
  line += '\t';
  line += format_double(report.relative_error);
  line += '\t';
  line += format_double(report.wall_time_seconds);
  line += '\t';
  line += format_double(report.memory_usage);
  line += '\t';
  line += std::to_string(report.kept_fibers);
  return line;
}

double oracle_projection_error(const SparseTensor& x, int mode,
                               const SparseMatrix& r0, index_t cell_budget) {
  if (r0.cols() == 0) throw EmptyInputError("oracle needs at least one fiber");
  const SparseMatrix unfolded = matricize(x, mode);
  if (unfolded.rows() != r0.rows())
    throw ShapeError("fiber matrix rows do not match the tensor extent");
  const index_t cells = unfolded.rows() * unfolded.cols() +
                        r0.rows() * r0.cols();
  if (cells > cell_budget)
    throw OracleError("densified problem exceeds the oracle cell budget (" +
                      std::to_string(cells) + " > " +
                      std::to_string(cell_budget) + ")");

  const Eigen::MatrixXd target = densify(unfolded);
  const Eigen::MatrixXd basis = densify(r0);
  // Rank-revealing least squares; R0 carries duplicate columns by
  // construction, so small singular values must be treated as zero.
  Eigen::BDCSVD<Eigen::MatrixXd> svd(basis,
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-10);
  const Eigen::MatrixXd coeffs = svd.solve(target);
  return (target - basis * coeffs).norm();
}

double relative_error(const SparseTensor& x, const LRFactors& f) {
  if (f.tensor_shape() != x.shape())
    throw ShapeError("factor shape does not match the tensor");
  double x_sq = 0.0;
  for (double v : x.values()) x_sq += v * v;
  if (x_sq == 0.0)
    throw MetricError("relative error undefined for a zero tensor");

  const DenseMatrix projector = dense_product(f.R, f.U);  // R U
  const SparseMatrix unfolded = matricize(x, f.mode);
  const SparseMatrix core = matricize(f.C, f.mode);

  // |X - (R U) C|_F^2 column by column over the union of supports.
  const index_t rows = unfolded.rows();
  std::vector<double> recon(static_cast<size_t>(rows), 0.0);
  double err_sq = 0.0;
  for (index_t j = 0; j < unfolded.cols(); ++j) {
    const auto kr = core.column_rows(j);
    const auto kv = core.column_values(j);
    const auto xr = unfolded.column_rows(j);
    const auto xv = unfolded.column_values(j);
    if (kr.empty()) {
      for (double v : xv) err_sq += v * v;
      continue;
    }
    std::fill(recon.begin(), recon.end(), 0.0);
    for (size_t t = 0; t < kr.size(); ++t)
      for (index_t r = 0; r < rows; ++r)
        recon[static_cast<size_t>(r)] += projector.at(r, kr[t]) * kv[t];
    for (size_t t = 0; t < xr.size(); ++t)
      recon[static_cast<size_t>(xr[t])] -= xv[t];
    for (double v : recon) err_sq += v * v;
  }
  return err_sq / x_sq;
}

double memory_usage(const SparseTensor& x, const LRFactors& f) {
  if (x.nnz() == 0)
    throw MetricError("memory usage undefined for an empty tensor");
  const index_t factor_nnz = f.C.nnz() + f.U.nnz() + f.R.nnz();
  return static_cast<double>(factor_nnz) / static_cast<double>(x.nnz());
}

SparseTensor reconstruct(const LRFactors& f) {
  const DenseMatrix projector = dense_product(f.R, f.U);
  return n_mode_product(f.C, f.mode, projector, /*transpose=*/false);
}

}  // namespace ctd
