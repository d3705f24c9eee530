#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace nds {

/// Finite window [1, horizon] of Z+ with a sorted, duplicate-free subset.
class WindowedIndexSet {
public:
    explicit WindowedIndexSet(int horizon, std::vector<int> indices = {});

    static WindowedIndexSet full(int horizon);

    int horizon() const { return horizon_; }
    const std::vector<int>& indices() const { return indices_; }
    std::size_t size() const { return indices_.size(); }
    bool empty() const { return indices_.empty(); }
    bool contains(int n) const;

    WindowedIndexSet complement() const;
    WindowedIndexSet intersect(const WindowedIndexSet& other) const;
    WindowedIndexSet unite(const WindowedIndexSet& other) const;
    bool subset_of(const WindowedIndexSet& other) const;

    /// Longest stretch between consecutive members, counting the virtual
    /// members 0 and horizon + 1 at either end.
    int max_gap() const;

    friend bool operator==(const WindowedIndexSet&, const WindowedIndexSet&) = default;

private:
    int horizon_;
    std::vector<int> indices_;
};

struct NonemptyFamily {};

/// Surrogate for "infinite": at least min_count members and one member
/// beyond (1 - tail_fraction) * horizon.
struct InfiniteFamily {
    int min_count = 10;
    double tail_fraction = 0.25;
};

/// Surrogate for "cofinite": at most max_missing absentees and the last
/// max_missing indices of the window all present.
struct CofiniteFamily {
    int max_missing = 20;
};

/// Every run of absent indices (including at the window ends) is shorter than max_gap.
struct SyndeticFamily {
    int max_gap = 64;
};

struct FamilySpec;

struct DualFamily {
    std::shared_ptr<const FamilySpec> of;
};

struct FamilySpec {
    std::variant<NonemptyFamily, InfiniteFamily, CofiniteFamily, SyndeticFamily, DualFamily> kind;

    FamilySpec(NonemptyFamily f) : kind(f) {}
    FamilySpec(InfiniteFamily f);
    FamilySpec(CofiniteFamily f);
    FamilySpec(SyndeticFamily f);
    FamilySpec(DualFamily f);

    std::string describe() const;
    friend bool operator==(const FamilySpec& a, const FamilySpec& b);
};

bool member(const FamilySpec& fam, const WindowedIndexSet& s);

/// k(F); dual(dual(F)) gives back F itself.
FamilySpec dual(const FamilySpec& fam);

/// Shift every index by i and keep those in [1, H - |i|].
WindowedIndexSet translate(const WindowedIndexSet& s, int i);

struct FilterdualReport {
    std::size_t dual_members = 0;  ///< samples accepted by k(F)
    std::size_t pairs_checked = 0;
    std::vector<std::pair<std::size_t, std::size_t>> counterexamples;
    bool passed() const { return counterexamples.empty(); }
};

/// Checks k(F).k(F) within k(F) on every pair of samples accepted by k(F).
FilterdualReport filterdual_probe(const FamilySpec& fam, const std::vector<WindowedIndexSet>& samples);

struct TranslationReport {
    std::size_t checks = 0;
    std::vector<std::pair<std::size_t, int>> violations;  ///< (sample, shift)
    bool passed() const { return violations.empty(); }
};

/// Checks S in F implies S + i and S - i in F for shifts 1..max_shift.
TranslationReport translation_probe(const FamilySpec& fam, const std::vector<WindowedIndexSet>& samples,
                                    int max_shift);

} // namespace nds
