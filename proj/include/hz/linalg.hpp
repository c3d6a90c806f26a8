#ifndef HZ_LINALG_HPP
#define HZ_LINALG_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <string>
#include <vector>

namespace hz {

using Vec = Eigen::VectorXd;
using DenseMat = Eigen::MatrixXd;
// Compressed row storage; setFromTriplets + makeCompressed keeps columns sorted and deduplicated.
using SpMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using Triplet = Eigen::Triplet<double>;

SpMat matrix_from_triplets(Eigen::Index rows, Eigen::Index cols, std::vector<Triplet>& triplets);

Vec sparse_diagonal(const SpMat& A);

// max_{ij} |A - A^T| / max_{ij} |A| (0 for the zero matrix)
double symmetry_error(const SpMat& A);

DenseMat to_dense(const SpMat& A);

// MatrixMarket coordinate format, 1-based indices. With symmetric=true only the
// lower triangle is written under the "symmetric" qualifier.
void write_matrix_market(const std::string& path, const SpMat& A, bool symmetric = false);
void write_matrix_market_vector(const std::string& path, const Vec& v);
SpMat read_matrix_market(const std::string& path);

} // namespace hz

#endif
