#include "hz/linalg.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hz {

SpMat matrix_from_triplets(Eigen::Index rows, Eigen::Index cols, std::vector<Triplet>& triplets) {
  SpMat A(rows, cols);
  A.setFromTriplets(triplets.begin(), triplets.end());
  A.makeCompressed();
  return A;
}

Vec sparse_diagonal(const SpMat& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("sparse_diagonal: matrix not square");
  Vec d = Vec::Zero(A.rows());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (SpMat::InnerIterator it(A, i); it; ++it)
      if (it.col() == i) d[i] = it.value();
  return d;
}

double symmetry_error(const SpMat& A) {
  SpMat At = SpMat(A.transpose());
  SpMat D = A - At;
  double amax = 0.0, dmax = 0.0;
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (SpMat::InnerIterator it(A, i); it; ++it) amax = std::max(amax, std::abs(it.value()));
  for (Eigen::Index i = 0; i < D.rows(); ++i)
    for (SpMat::InnerIterator it(D, i); it; ++it) dmax = std::max(dmax, std::abs(it.value()));
  if (amax == 0.0) return 0.0;
  return dmax / amax;
}

DenseMat to_dense(const SpMat& A) { return DenseMat(A); }

void write_matrix_market(const std::string& path, const SpMat& A, bool symmetric) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_matrix_market: cannot open " + path);
  out << "%%MatrixMarket matrix coordinate real " << (symmetric ? "symmetric" : "general") << "\n";
  Eigen::Index nnz = 0;
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (SpMat::InnerIterator it(A, i); it; ++it)
      if (!symmetric || it.col() <= i) ++nnz;
  out << A.rows() << " " << A.cols() << " " << nnz << "\n";
  out.precision(17);
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (SpMat::InnerIterator it(A, i); it; ++it) {
      if (symmetric && it.col() > i) continue;
      out << (i + 1) << " " << (it.col() + 1) << " " << it.value() << "\n";
    }
}

void write_matrix_market_vector(const std::string& path, const Vec& v) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_matrix_market_vector: cannot open " + path);
  out << "%%MatrixMarket matrix array real general\n";
  out << v.size() << " 1\n";
  out.precision(17);
  for (Eigen::Index i = 0; i < v.size(); ++i) out << v[i] << "\n";
}

SpMat read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_matrix_market: cannot open " + path);
  std::string header;
  std::getline(in, header);
  bool symmetric = header.find("symmetric") != std::string::npos;
  if (header.rfind("%%MatrixMarket", 0) != 0 || header.find("coordinate") == std::string::npos)
    throw std::runtime_error("read_matrix_market: unsupported header in " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '%') break;
  }
  std::istringstream sizes(line);
  Eigen::Index rows = 0, cols = 0, nnz = 0;
  sizes >> rows >> cols >> nnz;
  std::vector<Triplet> trips;
  trips.reserve(static_cast<size_t>(symmetric ? 2 * nnz : nnz));
  for (Eigen::Index k = 0; k < nnz; ++k) {
    Eigen::Index i, j;
    double v;
    in >> i >> j >> v;
    trips.emplace_back(i - 1, j - 1, v);
    if (symmetric && i != j) trips.emplace_back(j - 1, i - 1, v);
  }
  return matrix_from_triplets(rows, cols, trips);
}

} // namespace hz
