#ifndef QUADVERTEX_PARTITIONS_HPP
#define QUADVERTEX_PARTITIONS_HPP

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace quadvertex {

using Box4 = std::array<int, 4>;

// For a leg along axis a the cross-section lives on the remaining axes in
// increasing order: the first two index the plane partition, the third is
// the height direction.
inline constexpr std::array<std::array<int, 3>, 4> kComplement{{{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}}};

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class PlanePartition {
public:
    PlanePartition() = default;
    // rows[i][j] = height at (i, j), 0-indexed.
    explicit PlanePartition(std::vector<std::vector<int>> rows);
    static PlanePartition single_box() { return PlanePartition(std::vector<std::vector<int>>{{1}}); }

    int height(int i, int j) const;
    bool contains(int i, int j, int k) const { return k >= 0 && k < height(i, j); }
    int size() const { return size_; }
    bool empty() const { return size_ == 0; }
    // Largest index + 1 used in each of the three directions.
    std::array<int, 3> extent() const;
    const std::vector<std::vector<int>>& rows() const { return rows_; }
    std::vector<std::array<int, 3>> boxes() const;
    // Heights at most one everywhere, i.e. a line partition lifted flat.
    bool is_flat() const;

    bool operator==(const PlanePartition& o) const { return rows_ == o.rows_; }
    bool operator<(const PlanePartition& o) const { return rows_ < o.rows_; }
    std::string str() const;

private:
    std::vector<std::vector<int>> rows_;
    int size_ = 0;
};

// All plane partitions of the given size, in a fixed order.
std::vector<PlanePartition> plane_partitions_of_size(int n);

using Legs = std::array<PlanePartition, 4>;

int count_nonempty(const Legs& legs);
// Number of legs containing w; the coordinate along a leg's own axis is free.
int legs_containing(const Legs& legs, const Box4& w);
bool in_leg(const Legs& legs, int axis, const Box4& w);
// Points of N^4 lying in at least two legs (finite).
std::vector<Box4> leg_overlaps(const Legs& legs);
int max_extent(const Legs& legs);
// The same leg data after exchanging coordinate axes a and b.
Legs swap_axes(const Legs& legs, int a, int b);

class SolidPartition {
public:
    SolidPartition() = default;
    SolidPartition(Legs legs, std::vector<Box4> embedded);

    const Legs& legs() const { return legs_; }
    const std::vector<Box4>& embedded() const { return embedded_; }
    bool in_cm(const Box4& w) const;
    bool contains(const Box4& w) const;
    // Every box has its predecessors (checked on the finite part and near the legs).
    bool is_valid() const;
    int cm_volume() const;
    int volume() const { return cm_volume() + static_cast<int>(embedded_.size()); }
    std::string key() const;

private:
    Legs legs_;
    std::vector<Box4> embedded_;
};

SolidPartition cm_solid_partition(const Legs& legs);

// #(pi in [0,N)^4) - N * sum |legs|, evaluated at N and N+1.
int renormalized_volume(const SolidPartition& pi);
int renormalized_volume_at(const SolidPartition& pi, int n);

struct EnumerationOptions {
    std::size_t node_cap = 2'000'000;
};

std::vector<SolidPartition> enumerate_dt(const Legs& legs, int v_max, const EnumerationOptions& opt = {});

enum class Region { None, II, IMinus };

struct LabelledBox {
    Box4 w;
    Region region;
    int leg; // supporting leg for I-minus boxes, -1 otherwise
    auto operator<=>(const LabelledBox& o) const { return w <=> o.w; }
    bool operator==(const LabelledBox& o) const { return w == o.w; }
};

Region region_of(const Legs& legs, const Box4& w, int* leg = nullptr);

class BoxConfiguration {
public:
    BoxConfiguration() = default;
    BoxConfiguration(Legs legs, std::vector<Box4> boxes);

    const Legs& legs() const { return legs_; }
    const std::vector<LabelledBox>& boxes() const { return boxes_; }
    int length() const { return static_cast<int>(boxes_.size()); }
    bool contains(const Box4& w) const;
    bool satisfies_closure() const;
    std::string key() const;

private:
    Legs legs_;
    std::vector<LabelledBox> boxes_;
};

std::vector<BoxConfiguration> enumerate_pt(const Legs& legs, int len_max, const EnumerationOptions& opt = {});

} // namespace quadvertex

#endif
