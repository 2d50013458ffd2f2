#ifndef QUADVERTEX_SIGNS_HPP
#define QUADVERTEX_SIGNS_HPP

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "quadvertex/partitions.hpp"
#include "quadvertex/vertexcore.hpp"

namespace quadvertex {

int sigma_dt(const SolidPartition& pi);
int sigma_pt(const Legs& cm_legs, const BoxConfiguration& b);
// (-1)^{|pi|} and (-1)^{|pi_CM| + |B|}: the rule for fixed points on {x4 = 0}.
int sigma_dimred_dt(const SolidPartition& pi);
int sigma_dimred_pt(const Legs& cm_legs, const BoxConfiguration& b);

struct SignCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Find every eps in {+1,-1}^n with sum_i eps_i column_i(pt) = target(pt).
// Columns and target are given as evaluators so that callers can fold
// known factors into them.
struct SignProblem {
    std::vector<std::function<Fp(const FpPoint&)>> columns_fp;
    std::function<Fp(const FpPoint&)> target_fp;
    std::vector<std::function<mpq_class(const QPoint&)>> columns_q;
    std::function<mpq_class(const QPoint&)> target_q;

    std::size_t size() const { return columns_fp.size(); }
};

// Convenience: columns are factored contributions.
SignProblem make_sign_problem(const std::vector<FactoredContribution>& columns,
                              std::function<Fp(const FpPoint&)> target_fp,
                              std::function<mpq_class(const QPoint&)> target_q);

struct SignSearchOptions {
    std::uint64_t seed = 20240611;
    int exact_points = 5;
    // sign vectors visited per order before switching to linear algebra
    std::uint64_t cap = std::uint64_t(1) << 20;
};

struct SignSearchResult {
    std::vector<std::vector<int>> solutions;
    // how the candidates were found
    bool used_linear_algebra = false;
    int rank = 0;
};

SignSearchResult search_signs(const SignProblem& p, const SignSearchOptions& opt = {});

} // namespace quadvertex

#endif
