#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aitlab/report.hpp"
#include "aitlab/types.hpp"

namespace aitlab {

/// One eigenvalue with the size of its (single) Jordan block.
struct EigenvalueSpec {
  Complex s;
  int jordan_size = 1;

  friend bool operator==(const EigenvalueSpec&, const EigenvalueSpec&) = default;
};

/// Ground-truth spectral data of a test operator.
///
/// `similarity_seed == 0` realizes the operator directly as its block-diagonal
/// Jordan matrix; any other seed conjugates by a random well-conditioned W.
struct OperatorSpec {
  std::vector<EigenvalueSpec> blocks;
  std::uint64_t similarity_seed = 0;
  double similarity_conditioning = 1e3;

  /// Sum of Jordan sizes.
  int dimension() const;
  friend bool operator==(const OperatorSpec&, const OperatorSpec&) = default;
};

/// A dense realization `matrix = basis_change * J * basis_change^{-1}`.
struct RealizedOperator {
  Matrix matrix;
  Matrix basis_change;
  Matrix basis_change_inverse;
  OperatorSpec truth;

  int dimension() const { return static_cast<int>(matrix.rows()); }
  /// Offset of block `index` inside the Jordan coordinates.
  int block_offset(std::size_t index) const;
};

/// Admissible window parameters Y for one operator.
struct ParameterSpace {
  std::vector<double> admissible_Y;
  std::vector<double> excluded;  // sorted distinct |Im(s)|
};

enum class FamilyKind { RhSemisimple, RhJordan, NonRh };

struct FamilyParams {
  std::vector<double> gammas;  // imaginary parts, one entry per eigenvalue (or mirrored pair)
  int jordan_size = 2;         // rh_jordan only
  double delta = 0.1;          // non_rh only: distance of the off-line pair from Re(s) = 1/2
  std::uint64_t seed = 0;
  double conditioning = 1e3;
};

/// Block-diagonal Jordan matrix diag(M(s_1), ..., M(s_k)).
Matrix jordan_matrix(const OperatorSpec& spec);

/// Condition number in the spectral norm (ratio of extreme singular values).
double condition_number(const Matrix& m);

RealizedOperator build_jordan_operator(const OperatorSpec& spec);

OperatorSpec generate_family(FamilyKind kind, const FamilyParams& params);

/// OP1..OP5 report. OP1, OP2 and OP3-a hold trivially in finite dimension.
Report validate_op_axioms(const OperatorSpec& spec);

/// Throws SpecViolation for the first failing axiom of validate_op_axioms.
void require_op_axioms(const OperatorSpec& spec);

ParameterSpace parameter_space(const OperatorSpec& spec, int count);

/// Y > 0, sigma_Y(A) nonempty and Y not equal to any |Im(s)|.
bool in_parameter_space(const OperatorSpec& spec, double Y);

/// Ground-truth Riesz projection onto H(s_i) for block `index`: W E_i W^{-1}.
Matrix spectral_projection_exact(const RealizedOperator& op, std::size_t index);

const char* to_string(FamilyKind kind);
FamilyKind family_from_string(const std::string& name);

}  // namespace aitlab
