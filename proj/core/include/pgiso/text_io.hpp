#pragma once

#include <string>
#include <utility>

#include "pgiso/fp_matrix.hpp"
#include "pgiso/matrix_space.hpp"
#include "pgiso/tensor.hpp"
#include "pgiso/tuple_algebra.hpp"

namespace pgiso {

// Matrix: "p rows cols" then rows lines of entries in [0, p).
FpMatrix parse_matrix(const std::string& text);
std::string write_matrix(const FpMatrix& a);

// Space: "p m n d" then d blocks of m lines (no per-block header).
MatrixSpace parse_space(const std::string& text);
std::string write_space(const MatrixSpace& s);

// Tensor: "p m n" then m skew blocks of n lines. Non-skew blocks are rejected.
SkewTensor parse_tensor(const std::string& text);
std::string write_tensor(const SkewTensor& t);

// Tuple: "p dim k" then k blocks of dim lines.
MatrixTuple parse_tuple(const std::string& text);
std::string write_tuple(const MatrixTuple& t);

// Witness: the matrix N followed by the matrix M, each in matrix format.
std::pair<FpMatrix, FpMatrix> parse_witness(const std::string& text);
std::string write_witness(const FpMatrix& n, const FpMatrix& m);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace pgiso
