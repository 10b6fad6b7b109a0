#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "topocand/lp.hpp"

namespace topocand {

// Bounded-variable revised simplex over the augmented system A x + s = b.
// Logical variables carry the row relation through their bounds. The basis is
// held as a sparse LU factorization plus product-form eta updates between
// refactorizations. Instances are single-threaded; reuse across solves keeps
// the last basis as a warm start.
class Simplex {
  public:
    enum class VarStatus : std::uint8_t { Basic, AtLower, AtUpper, Free };

    struct Basis {
        std::vector<int> basic;             // column index per row position
        std::vector<VarStatus> status;      // per column (structural + logical)
    };

    Simplex(const LpProblem& problem, SimplexOptions opts = {});
    ~Simplex();
    Simplex(const Simplex&) = delete;
    Simplex& operator=(const Simplex&) = delete;

    // Bounds may be tightened or relaxed between solves (branching, fixing).
    void set_var_bounds(int var, double lb, double ub);
    std::pair<double, double> var_bounds(int var) const;

    LpSolution solve();

    bool has_basis() const;
    Basis basis() const;
    void set_basis(const Basis& basis);
    long iterations() const;  // cumulative over the lifetime

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace topocand
