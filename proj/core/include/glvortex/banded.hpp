#pragma once

#include <span>
#include <vector>

namespace glv {

// Symmetric banded matrix stored by superdiagonal. Factorization state is
// invalidated by any coefficient mutation.
class BandedSym {
 public:
  BandedSym(int order, int bandwidth);

  int order() const { return n_; }
  int bandwidth() const { return bw_; }

  // entry (i,j) with |i-j| <= bandwidth; symmetric access
  double entry(int i, int j) const;
  void set(int i, int j, double v);
  void add(int i, int j, double v);

  double inf_norm() const;

  std::vector<double> multiply(std::span<const double> x) const;

  // LDL^T without pivoting, with optional diagonal shift K + shift*I.
  // Returns false (recording the pivot index) when a pivot is zero to
  // tolerance relative to the matrix norm.
  bool try_factorize(double shift = 0.0);
  int failed_pivot() const { return failed_pivot_; }
  bool factorized() const { return factorized_; }
  double applied_shift() const { return applied_shift_; }

  // Solve using the current factorization; factorizes on demand with the
  // Tikhonov-guard escalation used by banded_solve.
  std::vector<double> solve(std::span<const double> b) const;

 private:
  void factor_solve(std::span<const double> b, std::vector<double>& x) const;

  int n_;
  int bw_;
  std::vector<double> bands_;  // bands_[d][i] = A(i, i+d), flattened

  mutable std::vector<double> fact_;
  mutable bool factorized_ = false;
  mutable int failed_pivot_ = -1;
  mutable double applied_shift_ = 0.0;

  friend std::vector<double> banded_solve(const BandedSym& m, std::span<const double> b);
};

// Factor-and-solve with the Tikhonov pivot guard: on a failed pivot the
// factorization is retried with a diagonal shift of 1e-14*|K| (escalated
// twice by 100x); a persistent failure throws singular_operator_error with
// the offending pivot index. One step of iterative refinement keeps the
// residual at |Mx－b| <= 1e-10 (|M||x| + |b|).
std::vector<double> banded_solve(const BandedSym& m, std::span<const double> b);

// General banded matrix with LU partial-pivoting factorization, used for
// the nonsymmetric Newton systems of the profile solver.
class BandedLU {
 public:
  BandedLU(int order, int sub, int super);

  int order() const { return n_; }

  double entry(int i, int j) const;
  void set(int i, int j, double v);
  void add(int i, int j, double v);

  void factorize();
  std::vector<double> solve(std::span<const double> b) const;
  std::vector<double> multiply(std::span<const double> x) const;

 private:
  double& ab(int i, int j);
  double ab(int i, int j) const;

  int n_, kl_, ku_;
  int rows_;
  std::vector<double> a_;     // LAPACK-style band storage with kl fill rows
  std::vector<int> ipiv_;
  bool factorized_ = false;
};

}  // namespace glv
