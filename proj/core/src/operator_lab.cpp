#include "aitlab/operator_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "aitlab/errors.hpp"
#include "aitlab/linalg.hpp"

namespace aitlab {
namespace {

constexpr double kDistinctTol = 1e-12;
constexpr int kFreshDraws = 16;

std::string describe(Complex s) {
  std::ostringstream os;
  os << s.real() << (s.imag() < 0 ? "-" : "+") << std::abs(s.imag()) << "i";
  return os.str();
}

std::vector<double> distinct_abs_imag(const OperatorSpec& spec) {
  std::vector<double> v;
  v.reserve(spec.blocks.size());
  for (const auto& b : spec.blocks) v.push_back(std::abs(b.s.imag()));
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

Matrix random_similarity(int n, std::uint64_t seed, double bound) {
  if (seed == 0) return Matrix::Identity(n, n);
  SeededRng rng(seed);
  auto draw = [&] {
    Matrix r(n, n);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) r(i, j) = rng.complex_uniform();
    }
    return r;
  };
  Matrix r;
  for (int attempt = 0; attempt < kFreshDraws; ++attempt) {
    r = draw();
    if (condition_number(r) <= bound) return r;
  }
  // Blend the last draw toward the identity until the bound holds.
  const Matrix identity = Matrix::Identity(n, n);
  for (double alpha = 0.5; alpha > 1e-12; alpha *= 0.5) {
    Matrix w = identity + alpha * r;
    if (condition_number(w) <= bound) return w;
  }
  return identity;
}

}  // namespace

int OperatorSpec::dimension() const {
  return std::accumulate(blocks.begin(), blocks.end(), 0,
                         [](int acc, const EigenvalueSpec& b) { return acc + b.jordan_size; });
}

int RealizedOperator::block_offset(std::size_t index) const {
  int offset = 0;
  for (std::size_t k = 0; k < index; ++k) offset += truth.blocks[k].jordan_size;
  return offset;
}

Matrix jordan_matrix(const OperatorSpec& spec) {
  const int n = spec.dimension();
  Matrix J = Matrix::Zero(n, n);
  int offset = 0;
  for (const auto& b : spec.blocks) {
    for (int k = 0; k < b.jordan_size; ++k) {
      J(offset + k, offset + k) = b.s;
      if (k + 1 < b.jordan_size) J(offset + k, offset + k + 1) = 1.0;
    }
    offset += b.jordan_size;
  }
  return J;
}

double condition_number(const Matrix& m) {
  if (m.size() == 0) return 1.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  const double smallest = sv(sv.size() - 1);
  if (smallest <= 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smallest;
}

RealizedOperator build_jordan_operator(const OperatorSpec& spec) {
  for (const auto& b : spec.blocks) {
    if (b.jordan_size < 1) {
      throw InvalidArgument("jordan_size must be >= 1 (eigenvalue " + describe(b.s) + ")");
    }
  }
  if (!(spec.similarity_conditioning >= 1.0)) {
    throw InvalidArgument("similarity_conditioning must be >= 1");
  }
  const Report axioms = validate_op_axioms(spec);
  for (const char* name : {"OP3-b", "OP4"}) {
    const Check& c = axioms.at(name);
    if (!c.pass) throw SpecViolation(name, c.note);
  }

  RealizedOperator op;
  op.truth = spec;
  const int n = spec.dimension();
  const Matrix J = jordan_matrix(spec);
  if (spec.similarity_seed == 0) {
    op.basis_change = Matrix::Identity(n, n);
    op.basis_change_inverse = Matrix::Identity(n, n);
    op.matrix = J;
    return op;
  }
  op.basis_change = random_similarity(n, spec.similarity_seed, spec.similarity_conditioning);
  op.basis_change_inverse = op.basis_change.partialPivLu().inverse();
  op.matrix = op.basis_change * J * op.basis_change_inverse;
  return op;
}

OperatorSpec generate_family(FamilyKind kind, const FamilyParams& params) {
  if (params.gammas.empty()) throw InvalidArgument("generate_family: gammas must be nonempty");
  OperatorSpec spec;
  spec.similarity_seed = params.seed;
  spec.similarity_conditioning = params.conditioning;
  switch (kind) {
    case FamilyKind::RhSemisimple:
      for (double g : params.gammas) spec.blocks.push_back({{0.5, g}, 1});
      break;
    case FamilyKind::RhJordan: {
      if (params.jordan_size < 2) {
        throw InvalidArgument("rh_jordan needs jordan_size >= 2");
      }
      for (double g : params.gammas) spec.blocks.push_back({{0.5, g}, 1});
      // First eigenvalue of largest |Im| carries the Jordan block.
      auto it = std::max_element(spec.blocks.begin(), spec.blocks.end(),
                                 [](const EigenvalueSpec& a, const EigenvalueSpec& b) {
                                   return std::abs(a.s.imag()) < std::abs(b.s.imag());
                                 });
      it->jordan_size = params.jordan_size;
      break;
    }
    case FamilyKind::NonRh:
      if (!(params.delta > 0.0 && params.delta < 0.5)) {
        throw SpecViolation("OP4", "off-line offset delta must lie in (0, 1/2), got " +
                                       std::to_string(params.delta));
      }
      for (double g : params.gammas) {
        const Complex s{0.5 - params.delta, g};
        spec.blocks.push_back({s, 1});
        spec.blocks.push_back({1.0 - std::conj(s), 1});
      }
      break;
  }
  require_op_axioms(spec);
  return spec;
}

Report validate_op_axioms(const OperatorSpec& spec) {
  Report r;
  r.title = "operator axioms";
  const char* vacuous = "holds in finite dimension";
  r.add(make_check("OP1", 0.0, 0.0, std::string("closed: ") + vacuous));
  r.add(make_check("OP2", 0.0, 0.0,
                   std::string("pure point spectrum, no finite accumulation: ") + vacuous));
  r.add(make_check("OP3-a", 0.0, 0.0,
                   std::string("finite-dimensional spectral subspaces: ") + vacuous));

  {
    Check c = make_check("OP3-b", 0.0, 0.0, "one Jordan block per eigenvalue");
    for (std::size_t i = 0; i < spec.blocks.size() && c.pass; ++i) {
      for (std::size_t j = i + 1; j < spec.blocks.size(); ++j) {
        if (std::abs(spec.blocks[i].s - spec.blocks[j].s) <= kDistinctTol) {
          c.pass = false;
          c.worst_residual = 1.0;
          c.note = "eigenvalue " + describe(spec.blocks[i].s) +
                   " appears twice (two Jordan blocks)";
          c.witness = {spec.blocks[i].s};
          break;
        }
      }
      if (spec.blocks[i].jordan_size < 1) {
        c.pass = false;
        c.worst_residual = 1.0;
        c.note = "jordan_size < 1 at " + describe(spec.blocks[i].s);
        c.witness = {spec.blocks[i].s};
      }
    }
    r.add(std::move(c));
  }

  {
    Check c = make_check("OP4", 0.0, 0.0, "spectrum inside the open strip 0 < Re(s) < 1");
    for (const auto& b : spec.blocks) {
      const double re = b.s.real();
      const double violation = std::max(-re, re - 1.0);
      if (!(re > 0.0 && re < 1.0)) {
        c.pass = false;
        c.worst_residual = std::max(c.worst_residual, std::max(violation, 0.0));
        c.note = "eigenvalue " + describe(b.s) + " outside the strip";
        c.witness.push_back(b.s);
      }
    }
    r.add(std::move(c));
  }

  {
    bool below = false;
    bool above = false;
    for (const auto& b : spec.blocks) {
      below = below || b.s.real() < 0.5;
      above = above || b.s.real() > 0.5;
    }
    Check c = make_check("OP5", below == above ? 0.0 : 1.0, 0.0);
    if (c.pass) {
      c.note = below ? "off-line eigenvalues on both sides of Re(s) = 1/2"
                     : "no eigenvalue off Re(s) = 1/2";
    } else {
      c.note = below ? "some Re(s) < 1/2 but none > 1/2" : "some Re(s) > 1/2 but none < 1/2";
    }
    r.add(std::move(c));
  }
  return r;
}

void require_op_axioms(const OperatorSpec& spec) {
  const Report r = validate_op_axioms(spec);
  for (const auto& c : r.checks) {
    if (!c.pass) throw SpecViolation(c.name, c.note);
  }
}

bool in_parameter_space(const OperatorSpec& spec, double Y) {
  if (!(Y > 0.0) || !std::isfinite(Y)) return false;
  bool nonempty = false;
  for (const auto& b : spec.blocks) {
    const double im = std::abs(b.s.imag());
    if (im == Y) return false;
    nonempty = nonempty || im < Y;
  }
  return nonempty;
}

ParameterSpace parameter_space(const OperatorSpec& spec, int count) {
  if (count <= 0) throw InvalidArgument("parameter_space: count must be positive");
  if (spec.blocks.empty()) throw InvalidArgument("parameter_space: spec has no eigenvalues");
  ParameterSpace ps;
  ps.excluded = distinct_abs_imag(spec);

  std::vector<double> levels{0.0};
  for (double v : ps.excluded) {
    if (v > levels.back()) levels.push_back(v);
  }
  std::vector<double> candidates;
  for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
    const double mid = 0.5 * (levels[k] + levels[k + 1]);
    if (in_parameter_space(spec, mid)) candidates.push_back(mid);
  }
  const double top = levels.back();
  candidates.push_back(top + 1.0);

  if (static_cast<int>(candidates.size()) >= count) {
    ps.admissible_Y.assign(candidates.end() - count, candidates.end());
  } else {
    ps.admissible_Y = candidates;
    for (int k = 2; static_cast<int>(ps.admissible_Y.size()) < count; ++k) {
      ps.admissible_Y.push_back(top + k);
    }
  }
  return ps;
}

Matrix spectral_projection_exact(const RealizedOperator& op, std::size_t index) {
  const int offset = op.block_offset(index);
  const int m = op.truth.blocks.at(index).jordan_size;
  return op.basis_change.middleCols(offset, m) * op.basis_change_inverse.middleRows(offset, m);
}

const char* to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::RhSemisimple: return "rh_semisimple";
    case FamilyKind::RhJordan: return "rh_jordan";
    case FamilyKind::NonRh: return "non_rh";
  }
  return "unknown";
}

FamilyKind family_from_string(const std::string& name) {
  if (name == "rh_semisimple") return FamilyKind::RhSemisimple;
  if (name == "rh_jordan") return FamilyKind::RhJordan;
  if (name == "non_rh") return FamilyKind::NonRh;
  throw InvalidArgument("unknown family '" + name + "' (expected rh_semisimple, rh_jordan, non_rh)");
}

}  // namespace aitlab
