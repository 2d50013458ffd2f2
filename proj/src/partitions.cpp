#include "quadvertex/partitions.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace quadvertex {

PlanePartition::PlanePartition(std::vector<std::vector<int>> rows)
{
    for (auto& r : rows)
        while (!r.empty() && r.back() == 0)
            r.pop_back();
    while (!rows.empty() && rows.back().empty())
        rows.pop_back();
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            int h = rows[i][j];
            if (h <= 0)
                throw InvalidInput("plane partition heights must be positive");
            if (j > 0 && h > rows[i][j - 1])
                throw InvalidInput("plane partition rows must be non-increasing");
            if (i > 0 && (j >= rows[i - 1].size() || h > rows[i - 1][j]))
                throw InvalidInput("plane partition columns must be non-increasing");
            size_ += h;
        }
    rows_ = std::move(rows);
}

int PlanePartition::height(int i, int j) const
{
    if (i < 0 || j < 0 || i >= static_cast<int>(rows_.size()))
        return 0;
    const auto& r = rows_[i];
    return j < static_cast<int>(r.size()) ? r[j] : 0;
}

std::array<int, 3> PlanePartition::extent() const
{
    std::array<int, 3> e{static_cast<int>(rows_.size()), 0, 0};
    for (const auto& r : rows_) {
        e[1] = std::max(e[1], static_cast<int>(r.size()));
        for (int h : r)
            e[2] = std::max(e[2], h);
    }
    return e;
}

std::vector<std::array<int, 3>> PlanePartition::boxes() const
{
    std::vector<std::array<int, 3>> b;
    for (int i = 0; i < static_cast<int>(rows_.size()); ++i)
        for (int j = 0; j < static_cast<int>(rows_[i].size()); ++j)
            for (int k = 0; k < rows_[i][j]; ++k)
                b.push_back({i, j, k});
    return b;
}

bool PlanePartition::is_flat() const
{
    for (const auto& r : rows_)
        for (int h : r)
            if (h > 1)
                return false;
    return true;
}

std::string PlanePartition::str() const
{
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        os << (i ? "," : "") << "[";
        for (std::size_t j = 0; j < rows_[i].size(); ++j)
            os << (j ? "," : "") << rows_[i][j];
        os << "]";
    }
    os << "]";
    return os.str();
}

std::vector<PlanePartition> plane_partitions_of_size(int n)
{
    std::vector<PlanePartition> out;
    std::vector<std::vector<int>> rows;
    std::function<void(int, int)> rec = [&](int i, int remaining) {
        // rows[0..i-1] are complete; row i (if present) is being filled.
        if (remaining == 0) {
            out.emplace_back(rows);
            return;
        }
        int j = static_cast<int>(rows.size() > static_cast<std::size_t>(i) ? rows[i].size() : 0);
        if (j == 0 && rows.size() <= static_cast<std::size_t>(i))
            rows.emplace_back();
        int bound = remaining;
        if (j > 0)
            bound = std::min(bound, rows[i][j - 1]);
        if (i > 0)
            bound = std::min(bound, j < static_cast<int>(rows[i - 1].size()) ? rows[i - 1][j] : 0);
        for (int h = bound; h >= 1; --h) {
            rows[i].push_back(h);
            rec(i, remaining - h);
            rows[i].pop_back();
        }
        if (j > 0)
            rec(i + 1, remaining);
        if (j == 0)
            rows.pop_back();
    };
    rec(0, n);
    return out;
}

int count_nonempty(const Legs& legs)
{
    int n = 0;
    for (const auto& l : legs)
        n += l.empty() ? 0 : 1;
    return n;
}

bool in_leg(const Legs& legs, int axis, const Box4& w)
{
    const auto& c = kComplement[axis];
    if (w[c[0]] < 0 || w[c[1]] < 0 || w[c[2]] < 0)
        return false;
    return legs[axis].contains(w[c[0]], w[c[1]], w[c[2]]);
}

int legs_containing(const Legs& legs, const Box4& w)
{
    int n = 0;
    for (int a = 0; a < 4; ++a)
        if (!legs[a].empty() && in_leg(legs, a, w))
            ++n;
    return n;
}

int max_extent(const Legs& legs)
{
    int r = 0;
    for (const auto& l : legs)
        for (int e : l.extent())
            r = std::max(r, e);
    return r;
}

Legs swap_axes(const Legs& legs, int a, int b)
{
    auto sw = [&](int i) { return i == a ? b : i == b ? a : i; };
    Legs out;
    for (int leg = 0; leg < 4; ++leg) {
        if (legs[leg].empty())
            continue;
        int to = sw(leg);
        const auto& from_c = kComplement[leg];
        const auto& to_c = kComplement[to];
        std::vector<std::vector<int>> rows;
        for (const auto& c : legs[leg].boxes()) {
            Box4 w{0, 0, 0, 0};
            for (int k = 0; k < 3; ++k)
                w[sw(from_c[k])] = c[k];
            int i = w[to_c[0]], j = w[to_c[1]];
            if (rows.size() <= std::size_t(i))
                rows.resize(i + 1);
            if (rows[i].size() <= std::size_t(j))
                rows[i].resize(j + 1, 0);
            rows[i][j] = std::max(rows[i][j], w[to_c[2]] + 1);
        }
        out[to] = PlanePartition(rows);
    }
    return out;
}

namespace {

template <class Fn>
void for_each_in_cube(int lo, int hi, Fn&& fn)
{
    Box4 w;
    for (w[0] = lo; w[0] < hi; ++w[0])
        for (w[1] = lo; w[1] < hi; ++w[1])
            for (w[2] = lo; w[2] < hi; ++w[2])
                for (w[3] = lo; w[3] < hi; ++w[3])
                    fn(w);
}

std::string legs_key(const Legs& legs)
{
    std::string s;
    for (const auto& l : legs)
        s += l.str();
    return s;
}

std::string boxes_key(const std::vector<Box4>& boxes)
{
    std::ostringstream os;
    for (const auto& b : boxes)
        os << "(" << b[0] << "," << b[1] << "," << b[2] << "," << b[3] << ")";
    return os.str();
}

} // namespace

std::vector<Box4> leg_overlaps(const Legs& legs)
{
    std::vector<Box4> out;
    int r = max_extent(legs);
    for_each_in_cube(0, r, [&](const Box4& w) {
        if (legs_containing(legs, w) >= 2)
            out.push_back(w);
    });
    return out;
}

SolidPartition::SolidPartition(Legs legs, std::vector<Box4> embedded) : legs_(std::move(legs)), embedded_(std::move(embedded))
{
    std::sort(embedded_.begin(), embedded_.end());
    embedded_.erase(std::unique(embedded_.begin(), embedded_.end()), embedded_.end());
}

bool SolidPartition::in_cm(const Box4& w) const
{
    for (int v : w)
        if (v < 0)
            return false;
    return legs_containing(legs_, w) > 0;
}

bool SolidPartition::contains(const Box4& w) const
{
    return in_cm(w) || std::binary_search(embedded_.begin(), embedded_.end(), w);
}

bool SolidPartition::is_valid() const
{
    for (const auto& b : embedded_) {
        for (int v : b)
            if (v < 0)
                return false;
        if (in_cm(b))
            return false;
        for (int i = 0; i < 4; ++i) {
            if (b[i] == 0)
                continue;
            Box4 p = b;
            --p[i];
            if (!contains(p))
                return false;
        }
    }
    return true;
}

int SolidPartition::cm_volume() const
{
    int v = 0;
    for (const auto& w : leg_overlaps(legs_))
        v -= legs_containing(legs_, w) - 1;
    return v;
}

std::string SolidPartition::key() const { return legs_key(legs_) + "|" + boxes_key(embedded_); }

SolidPartition cm_solid_partition(const Legs& legs) { return SolidPartition(legs, {}); }

int renormalized_volume_at(const SolidPartition& pi, int n)
{
    int count = 0;
    for_each_in_cube(0, n, [&](const Box4& w) {
        if (pi.contains(w))
            ++count;
    });
    int legs = 0;
    for (const auto& l : pi.legs())
        legs += l.size();
    return count - n * legs;
}

int renormalized_volume(const SolidPartition& pi)
{
    int n = max_extent(pi.legs());
    for (const auto& b : pi.embedded())
        for (int v : b)
            n = std::max(n, v + 1);
    ++n;
    int a = renormalized_volume_at(pi, n);
    int b = renormalized_volume_at(pi, n + 1);
    if (a != b)
        throw std::logic_error("renormalized volume depends on the cutoff");
    return a;
}

std::vector<SolidPartition> enumerate_dt(const Legs& legs, int v_max, const EnumerationOptions& opt)
{
    SolidPartition cm = cm_solid_partition(legs);
    int base = cm.cm_volume();
    if (v_max < base)
        throw InvalidInput("v_max below the volume of the Cohen-Macaulay curve");

    // Boxes addable to the bare curve lie in [0, R]^4 with R the largest extent.
    std::vector<Box4> cm_addable;
    for_each_in_cube(0, max_extent(legs) + 1, [&](const Box4& w) {
        if (cm.in_cm(w))
            return;
        for (int i = 0; i < 4; ++i) {
            if (w[i] == 0)
                continue;
            Box4 p = w;
            --p[i];
            if (!cm.in_cm(p))
                return;
        }
        cm_addable.push_back(w);
    });

    std::vector<SolidPartition> out{cm};
    std::vector<std::vector<Box4>> level{{}};
    std::size_t nodes = 1;
    for (int v = base + 1; v <= v_max; ++v) {
        std::set<std::vector<Box4>> next;
        for (const auto& emb : level) {
            SolidPartition pi(legs, emb);
            std::set<Box4> cand(cm_addable.begin(), cm_addable.end());
            for (const auto& b : emb)
                for (int i = 0; i < 4; ++i) {
                    Box4 s = b;
                    ++s[i];
                    cand.insert(s);
                }
            for (const auto& w : cand) {
                if (pi.contains(w))
                    continue;
                bool ok = true;
                for (int i = 0; i < 4 && ok; ++i) {
                    if (w[i] == 0)
                        continue;
                    Box4 p = w;
                    --p[i];
                    ok = pi.contains(p);
                }
                if (!ok)
                    continue;
                std::vector<Box4> e = emb;
                e.insert(std::upper_bound(e.begin(), e.end(), w), w);
                next.insert(std::move(e));
                if (++nodes > opt.node_cap)
                    throw BudgetExceeded("DT enumeration exceeded the node cap");
            }
        }
        level.assign(next.begin(), next.end());
        for (const auto& e : level)
            out.emplace_back(legs, e);
    }
    return out;
}

Region region_of(const Legs& legs, const Box4& w, int* leg)
{
    int n = 0, which = -1;
    for (int a = 0; a < 4; ++a)
        if (!legs[a].empty() && in_leg(legs, a, w)) {
            ++n;
            which = a;
        }
    if (leg)
        *leg = -1;
    if (n == 2)
        return Region::II;
    if (n == 1 && std::any_of(w.begin(), w.end(), [](int v) { return v < 0; })) {
        if (leg)
            *leg = which;
        return Region::IMinus;
    }
    return Region::None;
}

BoxConfiguration::BoxConfiguration(Legs legs, std::vector<Box4> boxes) : legs_(std::move(legs))
{
    if (count_nonempty(legs_) > 2)
        throw InvalidInput("box configurations need at most two nonempty legs");
    std::sort(boxes.begin(), boxes.end());
    boxes.erase(std::unique(boxes.begin(), boxes.end()), boxes.end());
    for (const auto& w : boxes) {
        int leg = -1;
        Region r = region_of(legs_, w, &leg);
        if (r == Region::None)
            throw InvalidInput("box outside regions II and I-");
        boxes_.push_back({w, r, leg});
    }
}

bool BoxConfiguration::contains(const Box4& w) const
{
    LabelledBox probe{w, Region::None, -1};
    return std::binary_search(boxes_.begin(), boxes_.end(), probe);
}

bool BoxConfiguration::satisfies_closure() const
{
    for (const auto& b : boxes_)
        for (int i = 0; i < 4; ++i) {
            Box4 s = b.w;
            ++s[i];
            if (region_of(legs_, s) != Region::None && !contains(s))
                return false;
        }
    return true;
}

std::string BoxConfiguration::key() const
{
    std::vector<Box4> ws;
    for (const auto& b : boxes_)
        ws.push_back(b.w);
    return legs_key(legs_) + "|" + boxes_key(ws);
}

std::vector<BoxConfiguration> enumerate_pt(const Legs& legs, int len_max, const EnumerationOptions& opt)
{
    if (count_nonempty(legs) > 2)
        throw InvalidInput("PT enumeration needs at most two nonempty legs");

    std::vector<Box4> seeds;
    for (const auto& w : leg_overlaps(legs))
        if (region_of(legs, w) == Region::II)
            seeds.push_back(w);
    for (int a = 0; a < 4; ++a) {
        const auto& c = kComplement[a];
        for (const auto& b : legs[a].boxes()) {
            Box4 w{};
            w[a] = -1;
            w[c[0]] = b[0];
            w[c[1]] = b[1];
            w[c[2]] = b[2];
            seeds.push_back(w);
        }
    }

    auto addable = [&](const std::set<Box4>& cfg, const Box4& w) {
        if (cfg.count(w) || region_of(legs, w) == Region::None)
            return false;
        for (int i = 0; i < 4; ++i) {
            Box4 s = w;
            ++s[i];
            if (region_of(legs, s) != Region::None && !cfg.count(s))
                return false;
        }
        return true;
    };

    std::vector<BoxConfiguration> out{BoxConfiguration(legs, {})};
    std::vector<std::set<Box4>> level{{}};
    std::size_t nodes = 1;
    for (int len = 1; len <= len_max; ++len) {
        std::set<std::set<Box4>> next;
        for (const auto& cfg : level) {
            std::set<Box4> cand(seeds.begin(), seeds.end());
            for (const auto& b : cfg)
                for (int i = 0; i < 4; ++i) {
                    Box4 p = b;
                    --p[i];
                    cand.insert(p);
                }
            for (const auto& w : cand) {
                if (!addable(cfg, w))
                    continue;
                auto n = cfg;
                n.insert(w);
                next.insert(std::move(n));
                if (++nodes > opt.node_cap)
                    throw BudgetExceeded("PT enumeration exceeded the node cap");
            }
        }
        level.assign(next.begin(), next.end());
        for (const auto& cfg : level)
            out.emplace_back(legs, std::vector<Box4>(cfg.begin(), cfg.end()));
    }
    return out;
}

} // namespace quadvertex
