#ifndef QUADVERTEX_SERIES_HPP
#define QUADVERTEX_SERIES_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <json.hpp>

#include "quadvertex/partitions.hpp"
#include "quadvertex/vertexcore.hpp"

namespace quadvertex {

// Truncated bivariate coefficients, q^0..q^q_max times Q^0..Q^Q_max.
template <class F>
struct Table {
    int q_max = 0;
    int Q_max = 0;
    std::vector<F> v;

    Table() = default;
    Table(int q, int Q) : q_max(q), Q_max(Q), v(static_cast<std::size_t>((q + 1) * (Q + 1)), F(0)) {}
    F& at(int q, int Q = 0) { return v[static_cast<std::size_t>(Q * (q_max + 1) + q)]; }
    const F& at(int q, int Q = 0) const { return v[static_cast<std::size_t>(Q * (q_max + 1) + q)]; }
};

template <class F>
Table<F> operator*(const Table<F>& a, const Table<F>& b)
{
    Table<F> r(std::min(a.q_max, b.q_max), std::min(a.Q_max, b.Q_max));
    for (int Q1 = 0; Q1 <= r.Q_max; ++Q1)
        for (int q1 = 0; q1 <= r.q_max; ++q1) {
            const F& x = a.at(q1, Q1);
            if (is_zero(x))
                continue;
            for (int Q2 = 0; Q1 + Q2 <= r.Q_max; ++Q2)
                for (int q2 = 0; q1 + q2 <= r.q_max; ++q2)
                    r.at(q1 + q2, Q1 + Q2) += x * b.at(q2, Q2);
        }
    return r;
}

// Evaluation at an equivariant point; Adams operations raise every root.
template <class F>
struct KContext {
    using Field = F;
    Point<F> pt;

    KContext adams(int n) const { return {pt.power(n)}; }
    F term(const FactoredContribution& c, int /*q_power*/) const { return c.eval(pt); }
};

using QContext = KContext<mpq_class>;
using FpContext = KContext<Fp>;

// Defined with the limits.
struct LimitIContext;
struct LimitIIContext;

struct SignedTerm {
    int sign = 1;
    FactoredContribution c;
    std::string key;
};

nlohmann::json contribution_json(const FactoredContribution& c);
nlohmann::json legs_json(const Legs& legs);
// [[rows of leg 1], ..., [rows of leg 4]]; throws InvalidInput.
Legs legs_from_json(const nlohmann::json& j);

class QSeries {
public:
    QSeries() = default;
    QSeries(int q_max, int Q_max = 0) : q_max_(q_max), Q_max_(Q_max) {}

    int q_max() const { return q_max_; }
    int Q_max() const { return Q_max_; }
    // Terms beyond the truncation are dropped.
    void add(int q, int Q, SignedTerm t);
    const std::vector<SignedTerm>& at(int q, int Q = 0) const;
    const std::map<std::pair<int, int>, std::vector<SignedTerm>>& coeffs() const { return coeffs_; }
    std::size_t term_count() const;
    // Sort each coefficient by key; makes output independent of insertion order.
    void canonicalize();

    template <class Ctx>
    Table<typename Ctx::Field> eval(const Ctx& ctx) const
    {
        using F = typename Ctx::Field;
        Table<F> t(q_max_, Q_max_);
        for (const auto& [k, terms] : coeffs_) {
            F s(0);
            for (const auto& term : terms) {
                F v = ctx.term(term.c, k.first);
                if (term.sign < 0)
                    s -= v;
                else
                    s += v;
            }
            t.at(k.first, k.second) = s;
        }
        return t;
    }

    nlohmann::json meta;
    nlohmann::json to_json() const;

private:
    int q_max_ = 0;
    int Q_max_ = 0;
    std::map<std::pair<int, int>, std::vector<SignedTerm>> coeffs_;
};

struct NonZeroConstantTerm : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A series known only through its values: sums of QSeries combined by
// products, plethystic exponentials and q -> -q.
class SeriesExpr {
public:
    SeriesExpr() = default;
    SeriesExpr(const QSeries& s); // NOLINT(google-explicit-constructor)

    int q_max() const { return q_max_; }
    int Q_max() const { return Q_max_; }

    template <class Ctx>
    Table<typename Ctx::Field> eval(const Ctx& ctx) const
    {
        if constexpr (std::is_same_v<Ctx, QContext>)
            return fq_(ctx);
        else if constexpr (std::is_same_v<Ctx, FpContext>)
            return fp_(ctx);
        else if constexpr (std::is_same_v<Ctx, LimitIContext>)
            return l1_(ctx);
        else
            return l2_(ctx);
    }

    friend SeriesExpr operator*(const SeriesExpr& a, const SeriesExpr& b);
    SeriesExpr negate_q() const;
    SeriesExpr scaled(int sign) const;
    SeriesExpr truncated(int q_max, int Q_max) const;

    template <class Fn>
    static SeriesExpr make(int q_max, int Q_max, Fn fn);

private:
    int q_max_ = 0;
    int Q_max_ = 0;
    std::function<Table<mpq_class>(const QContext&)> fq_;
    std::function<Table<Fp>(const FpContext&)> fp_;
    std::function<Table<mpq_class>(const LimitIContext&)> l1_;
    std::function<Table<mpq_class>(const LimitIIContext&)> l2_;
};

// exp(sum_n f(q^n, Q^n, tau^n) / n); f must have no constant term.
SeriesExpr plethystic_exp(const SeriesExpr& f);

struct EqualityCertificate {
    bool pass = true;
    std::uint64_t seed = 0;
    int q_max = 0;
    int Q_max = 0;
    struct Row {
        std::uint64_t index;
        std::array<std::string, 4> point;
        std::vector<std::string> a, b;
    };
    std::vector<Row> rows;
    // (point row, q, Q) of the first disagreement
    std::optional<std::array<int, 3>> first_failure;

    nlohmann::json to_json() const;
};

// Exact comparison at `points` deterministic rational points, up to the
// smaller truncation.  Singular points are skipped.
EqualityCertificate series_equal(const SeriesExpr& a, const SeriesExpr& b, int points = 5, std::uint64_t seed = 1);

enum class SignRule { Formula, Dimred, Unit };

struct SeriesOptions {
    int jobs = 1;
    EnumerationOptions enumeration;
};

FactoredContribution vertex_contribution(const VertexCharacter& ch, Mode mode);

// sum_pi sign(pi) [-v(pi)] q^{|pi| - |pi_CM|}
QSeries dt_vertex_series(const Legs& legs, int q_max, SignRule rule, const SeriesOptions& opt = {});
// sum_B sign(B) [-v(B)] q^{|B|}
QSeries pt_vertex_series(const Legs& legs, int q_max, SignRule rule, const SeriesOptions& opt = {});

// [t1t2][t1t3][t2t3][y] / ([t1][t2][t3][t4])
FactoredContribution nekrasov_prefactor();
QSeries nekrasov_F(int q_max);

// [y^{1/2} q][y^{1/2} q^{-1}] = -q^{-1} (1 - q y^{1/2})(1 - q y^{-1/2}), checked at random points.
bool verify_expansion_identity(std::uint64_t seed, int points = 5);

// Parallel map with a deterministic output order.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

} // namespace quadvertex

#endif
