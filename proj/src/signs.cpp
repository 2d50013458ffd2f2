#include "quadvertex/signs.hpp"

#include <algorithm>
#include <unordered_map>

namespace quadvertex {

namespace {

bool diagonal_off(const Box4& w) { return w[0] == w[1] && w[1] == w[2] && w[0] < w[3]; }

// prod over CM boxes (a,a,a,d), a < d, of (-1)^{1 - #legs}.  Boxes in exactly
// one leg contribute +1, so only the (finite) overlaps matter.
int cm_diagonal_sign(const Legs& legs)
{
    int s = 1;
    for (const auto& w : leg_overlaps(legs))
        if (diagonal_off(w) && (1 - legs_containing(legs, w)) % 2 != 0)
            s = -s;
    return s;
}

int parity_sign(long n) { return n % 2 == 0 ? 1 : -1; }

} // namespace

int sigma_dt(const SolidPartition& pi)
{
    int s = parity_sign(renormalized_volume(pi)) * cm_diagonal_sign(pi.legs());
    for (const auto& w : pi.embedded())
        if (diagonal_off(w))
            s = -s;
    return s;
}

int sigma_pt(const Legs& cm_legs, const BoxConfiguration& b)
{
    long n = cm_solid_partition(cm_legs).cm_volume() + b.length();
    for (const auto& box : b.boxes())
        if (diagonal_off(box.w))
            ++n;
    return parity_sign(n) * cm_diagonal_sign(cm_legs);
}

int sigma_dimred_dt(const SolidPartition& pi) { return parity_sign(renormalized_volume(pi)); }

int sigma_dimred_pt(const Legs& cm_legs, const BoxConfiguration& b)
{
    return parity_sign(cm_solid_partition(cm_legs).cm_volume() + b.length());
}

SignProblem make_sign_problem(const std::vector<FactoredContribution>& columns,
                              std::function<Fp(const FpPoint&)> target_fp,
                              std::function<mpq_class(const QPoint&)> target_q)
{
    SignProblem p;
    for (const auto& c : columns) {
        p.columns_fp.push_back([c](const FpPoint& pt) { return c.eval(pt); });
        p.columns_q.push_back([c](const QPoint& pt) { return c.eval(pt); });
    }
    p.target_fp = std::move(target_fp);
    p.target_q = std::move(target_q);
    return p;
}

namespace {

struct FpSystem {
    std::vector<std::vector<Fp>> a; // rows = points
    std::vector<Fp> b;
};

FpSystem sample(const SignProblem& p, std::size_t rows, std::uint64_t seed)
{
    FpSystem s;
    std::uint64_t index = 0;
    while (s.a.size() < rows) {
        if (index > rows + 64)
            throw SingularPoint("too many singular sample points");
        FpPoint pt = random_fppoint(seed, index++);
        try {
            std::vector<Fp> row;
            row.reserve(p.size());
            for (const auto& c : p.columns_fp)
                row.push_back(c(pt));
            Fp t = p.target_fp(pt);
            s.a.push_back(std::move(row));
            s.b.push_back(t);
        } catch (const SingularPoint&) {
        }
    }
    return s;
}

bool satisfies(const FpSystem& s, const std::vector<int>& eps)
{
    for (std::size_t r = 0; r < s.a.size(); ++r) {
        Fp acc(0);
        for (std::size_t i = 0; i < eps.size(); ++i)
            acc += eps[i] > 0 ? s.a[r][i] : -s.a[r][i];
        if (acc != s.b[r])
            return false;
    }
    return true;
}

std::vector<int> decode(std::uint64_t bits, std::size_t n, std::size_t offset = 0)
{
    std::vector<int> e(n);
    for (std::size_t i = 0; i < n; ++i)
        e[i] = (bits >> (i + offset)) & 1 ? -1 : 1;
    return e;
}

// Meet in the middle on the first sample row, confirmed on all rows.
std::vector<std::vector<int>> exhaustive(const FpSystem& s, std::size_t n)
{
    std::size_t n1 = n / 2, n2 = n - n1;
    const auto& row = s.a[0];
    std::unordered_multimap<std::uint64_t, std::uint64_t> left;
    left.reserve(std::size_t(1) << n1);
    for (std::uint64_t m = 0; m < (std::uint64_t(1) << n1); ++m) {
        Fp acc(0);
        for (std::size_t i = 0; i < n1; ++i)
            acc += (m >> i) & 1 ? -row[i] : row[i];
        left.emplace(acc.value(), m);
    }
    std::vector<std::vector<int>> out;
    for (std::uint64_t m = 0; m < (std::uint64_t(1) << n2); ++m) {
        Fp acc(0);
        for (std::size_t i = 0; i < n2; ++i)
            acc += (m >> i) & 1 ? -row[n1 + i] : row[n1 + i];
        Fp need = s.b[0] - acc;
        auto [lo, hi] = left.equal_range(need.value());
        for (auto it = lo; it != hi; ++it) {
            std::vector<int> eps = decode(it->second, n1);
            auto rest = decode(m, n2);
            eps.insert(eps.end(), rest.begin(), rest.end());
            if (satisfies(s, eps))
                out.push_back(std::move(eps));
        }
    }
    return out;
}

// Row reduction; free columns are enumerated over {+1,-1}.
std::vector<std::vector<int>> linear(FpSystem s, std::size_t n, std::uint64_t cap, int& rank)
{
    std::size_t rows = s.a.size();
    std::vector<int> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && s.a[p][c].is_zero())
            ++p;
        if (p == rows)
            continue;
        std::swap(s.a[p], s.a[r]);
        std::swap(s.b[p], s.b[r]);
        Fp inv = s.a[r][c].inverse();
        for (auto& v : s.a[r])
            v *= inv;
        s.b[r] *= inv;
        for (std::size_t q = 0; q < rows; ++q) {
            if (q == r || s.a[q][c].is_zero())
                continue;
            Fp f = s.a[q][c];
            for (std::size_t k = 0; k < n; ++k)
                s.a[q][k] -= f * s.a[r][k];
            s.b[q] -= f * s.b[r];
        }
        pivot_col.push_back(static_cast<int>(c));
        ++r;
    }
    rank = static_cast<int>(r);
    for (std::size_t q = r; q < rows; ++q)
        if (!s.b[q].is_zero())
            return {};
    std::vector<int> free_cols;
    for (std::size_t c = 0, k = 0; c < n; ++c) {
        if (k < pivot_col.size() && pivot_col[k] == static_cast<int>(c))
            ++k;
        else
            free_cols.push_back(static_cast<int>(c));
    }
    if (free_cols.size() >= 63 || (std::uint64_t(1) << free_cols.size()) > cap)
        throw SignCapExceeded("sign search: too many undetermined signs");
    std::vector<std::vector<int>> out;
    Fp one(1), minus_one(-1);
    for (std::uint64_t m = 0; m < (std::uint64_t(1) << free_cols.size()); ++m) {
        std::vector<int> eps(n, 0);
        for (std::size_t k = 0; k < free_cols.size(); ++k)
            eps[free_cols[k]] = (m >> k) & 1 ? -1 : 1;
        bool ok = true;
        for (std::size_t k = 0; k < r && ok; ++k) {
            Fp v = s.b[k];
            for (int c : free_cols)
                v -= eps[c] > 0 ? s.a[k][c] : -s.a[k][c];
            if (v == one)
                eps[pivot_col[k]] = 1;
            else if (v == minus_one)
                eps[pivot_col[k]] = -1;
            else
                ok = false;
        }
        if (ok)
            out.push_back(std::move(eps));
    }
    return out;
}

bool exact_check(const SignProblem& p, const std::vector<int>& eps, const SignSearchOptions& opt)
{
    int done = 0;
    for (std::uint64_t index = 0; done < opt.exact_points; ++index) {
        if (index > static_cast<std::uint64_t>(opt.exact_points) + 64)
            throw SingularPoint("too many singular exact points");
        QPoint pt = random_qpoint(opt.seed, index);
        try {
            mpq_class acc = 0;
            for (std::size_t i = 0; i < eps.size(); ++i)
                acc += eps[i] * p.columns_q[i](pt);
            if (acc != p.target_q(pt))
                return false;
            ++done;
        } catch (const SingularPoint&) {
        }
    }
    return true;
}

} // namespace

SignSearchResult search_signs(const SignProblem& p, const SignSearchOptions& opt)
{
    SignSearchResult res;
    std::size_t n = p.size();
    std::vector<std::vector<int>> cand;
    if (n < 63 && (std::uint64_t(1) << n) <= opt.cap) {
        cand = exhaustive(sample(p, 4, opt.seed), n);
    } else {
        res.used_linear_algebra = true;
        cand = linear(sample(p, n + 4, opt.seed), n, opt.cap, res.rank);
    }
    for (auto& e : cand)
        if (exact_check(p, e, opt))
            res.solutions.push_back(std::move(e));
    std::sort(res.solutions.begin(), res.solutions.end(), std::greater<>());
    return res;
}

} // namespace quadvertex
