#pragma once

#include <vector>

#include "courant/rational.hpp"

namespace courant {

/// Dense exact-rational matrix helpers.  Subspaces are stored as reduced
/// row-echelon bases, which makes equality a structural check.
using QVec = std::vector<Rational>;
using QMat = std::vector<QVec>;

QMat qmat_zero(int rows, int cols);
QMat qmat_identity(int n);
QMat qmat_transpose(const QMat& a);
QMat qmat_mul(const QMat& a, const QMat& b);
QVec qvec_mat(const QVec& v, const QMat& a);  // row vector times matrix

/// In-place reduced row echelon form; returns the rank.  Zero rows are
/// removed so the result is a canonical basis of the row space.
int rref(QMat& a);
int rank_of(QMat a);

/// Null space {x : a x^t = 0} as an RREF basis of row vectors.
QMat kernel(const QMat& a);

/// Row-space operations on RREF bases.
QMat row_space(QMat a);                       // rref + drop zero rows
QMat subspace_sum(const QMat& a, const QMat& b);
QMat subspace_intersection(const QMat& a, const QMat& b);
bool subspace_contains(const QMat& space, const QVec& v);
bool subspace_subset(const QMat& inner, const QMat& outer);
bool subspace_equal(const QMat& a, const QMat& b);

/// Solve x A = b for a single row vector b; empty optional when unsolvable.
/// Free variables are set to zero (RREF-normalized representative).
std::vector<Rational> solve_row(const QMat& a, const QVec& b, bool& ok);

}  // namespace courant
