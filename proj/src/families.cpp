#include "nds/families.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace nds {

WindowedIndexSet::WindowedIndexSet(int horizon, std::vector<int> indices)
    : horizon_(horizon), indices_(std::move(indices)) {
    if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    std::sort(indices_.begin(), indices_.end());
    indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
    if (!indices_.empty() && (indices_.front() < 1 || indices_.back() > horizon))
        throw std::invalid_argument("index outside window [1, horizon]");
}

WindowedIndexSet WindowedIndexSet::full(int horizon) {
    std::vector<int> all(static_cast<std::size_t>(horizon));
    for (int i = 0; i < horizon; ++i) all[static_cast<std::size_t>(i)] = i + 1;
    return WindowedIndexSet(horizon, std::move(all));
}

bool WindowedIndexSet::contains(int n) const {
    return std::binary_search(indices_.begin(), indices_.end(), n);
}

WindowedIndexSet WindowedIndexSet::complement() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(horizon_) - indices_.size());
    auto it = indices_.begin();
    for (int n = 1; n <= horizon_; ++n) {
        if (it != indices_.end() && *it == n) ++it;
        else out.push_back(n);
    }
    return WindowedIndexSet(horizon_, std::move(out));
}

WindowedIndexSet WindowedIndexSet::intersect(const WindowedIndexSet& other) const {
    if (other.horizon_ != horizon_) throw std::invalid_argument("intersecting different windows");
    std::vector<int> out;
    std::set_intersection(indices_.begin(), indices_.end(), other.indices_.begin(),
                          other.indices_.end(), std::back_inserter(out));
    return WindowedIndexSet(horizon_, std::move(out));
}

WindowedIndexSet WindowedIndexSet::unite(const WindowedIndexSet& other) const {
    if (other.horizon_ != horizon_) throw std::invalid_argument("uniting different windows");
    std::vector<int> out;
    std::set_union(indices_.begin(), indices_.end(), other.indices_.begin(), other.indices_.end(),
                   std::back_inserter(out));
    return WindowedIndexSet(horizon_, std::move(out));
}

bool WindowedIndexSet::subset_of(const WindowedIndexSet& other) const {
    return other.horizon_ == horizon_ &&
           std::includes(other.indices_.begin(), other.indices_.end(), indices_.begin(), indices_.end());
}

int WindowedIndexSet::max_gap() const {
    int prev = 0, worst = 0;
    for (int n : indices_) {
        worst = std::max(worst, n - prev);
        prev = n;
    }
    return std::max(worst, horizon_ + 1 - prev);
}

// ---------------------------------------------------------------------------

FamilySpec::FamilySpec(InfiniteFamily f) : kind(f) {
    if (f.min_count < 1 || !(f.tail_fraction > 0.0 && f.tail_fraction <= 1.0))
        throw std::invalid_argument("infinite family needs min_count >= 1 and tail in (0,1]");
}

FamilySpec::FamilySpec(CofiniteFamily f) : kind(f) {
    if (f.max_missing < 0) throw std::invalid_argument("cofinite family needs max_missing >= 0");
}

FamilySpec::FamilySpec(SyndeticFamily f) : kind(f) {
    if (f.max_gap < 1) throw std::invalid_argument("syndetic family needs max_gap >= 1");
}

FamilySpec::FamilySpec(DualFamily f) : kind(std::move(f)) {
    const auto& d = std::get<DualFamily>(kind);
    if (!d.of) throw std::invalid_argument("dual of nothing");
    if (std::holds_alternative<DualFamily>(d.of->kind))
        throw std::invalid_argument("nested duals must be normalized with dual()");
}

std::string FamilySpec::describe() const {
    std::ostringstream os;
    std::visit(
        [&](const auto& f) {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, NonemptyFamily>) os << "nonempty";
            else if constexpr (std::is_same_v<F, InfiniteFamily>)
                os << "infinite(" << f.min_count << ", " << f.tail_fraction << ")";
            else if constexpr (std::is_same_v<F, CofiniteFamily>) os << "cofinite(" << f.max_missing << ")";
            else if constexpr (std::is_same_v<F, SyndeticFamily>) os << "syndetic(" << f.max_gap << ")";
            else os << "dual(" << f.of->describe() << ")";
        },
        kind);
    return os.str();
}

bool operator==(const FamilySpec& a, const FamilySpec& b) {
    if (a.kind.index() != b.kind.index()) return false;
    return std::visit(
        [&](const auto& f) {
            using F = std::decay_t<decltype(f)>;
            const auto& g = std::get<F>(b.kind);
            if constexpr (std::is_same_v<F, NonemptyFamily>) return true;
            else if constexpr (std::is_same_v<F, InfiniteFamily>)
                return f.min_count == g.min_count && f.tail_fraction == g.tail_fraction;
            else if constexpr (std::is_same_v<F, CofiniteFamily>) return f.max_missing == g.max_missing;
            else if constexpr (std::is_same_v<F, SyndeticFamily>) return f.max_gap == g.max_gap;
            else return *f.of == *g.of;
        },
        a.kind);
}

bool member(const FamilySpec& fam, const WindowedIndexSet& s) {
    const int h = s.horizon();
    return std::visit(
        [&](const auto& f) -> bool {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, NonemptyFamily>) {
                return !s.empty();
            } else if constexpr (std::is_same_v<F, InfiniteFamily>) {
                return static_cast<int>(s.size()) >= f.min_count && !s.empty() &&
                       s.indices().back() > (1.0 - f.tail_fraction) * h;
            } else if constexpr (std::is_same_v<F, CofiniteFamily>) {
                const int missing = h - static_cast<int>(s.size());
                if (missing > f.max_missing) return false;
                // The last max_missing indices must all be present.
                const int suffix = std::min(f.max_missing, h);
                const auto& idx = s.indices();
                return static_cast<int>(idx.size()) >= suffix &&
                       (suffix == 0 || idx[idx.size() - static_cast<std::size_t>(suffix)] == h - suffix + 1);
            } else if constexpr (std::is_same_v<F, SyndeticFamily>) {
                return s.max_gap() <= f.max_gap;
            } else {
                return !member(*f.of, s.complement());
            }
        },
        fam.kind);
}

FamilySpec dual(const FamilySpec& fam) {
    if (const auto* d = std::get_if<DualFamily>(&fam.kind)) return *d->of;
    return DualFamily{std::make_shared<const FamilySpec>(fam)};
}

WindowedIndexSet translate(const WindowedIndexSet& s, int i) {
    const int h = s.horizon();
    const int shift = i < 0 ? -i : i;
    if (shift >= h) throw std::invalid_argument("translation must be smaller than the horizon");
    const int new_h = h - shift;
    std::vector<int> out;
    for (int n : s.indices()) {
        int m = n + i;
        if (m >= 1 && m <= new_h) out.push_back(m);
    }
    return WindowedIndexSet(new_h, std::move(out));
}

FilterdualReport filterdual_probe(const FamilySpec& fam, const std::vector<WindowedIndexSet>& samples) {
    const FamilySpec k = dual(fam);
    FilterdualReport report;
    std::vector<std::size_t> accepted;
    for (std::size_t i = 0; i < samples.size(); ++i)
        if (member(k, samples[i])) accepted.push_back(i);
    report.dual_members = accepted.size();
    for (std::size_t a = 0; a < accepted.size(); ++a) {
        for (std::size_t b = a + 1; b < accepted.size(); ++b) {
            const auto& s = samples[accepted[a]];
            const auto& t = samples[accepted[b]];
            if (s.horizon() != t.horizon()) continue;
            ++report.pairs_checked;
            if (!member(k, s.intersect(t))) report.counterexamples.emplace_back(accepted[a], accepted[b]);
        }
    }
    return report;
}

TranslationReport translation_probe(const FamilySpec& fam, const std::vector<WindowedIndexSet>& samples,
                                    int max_shift) {
    TranslationReport report;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!member(fam, samples[i])) continue;
        for (int shift = 1; shift <= max_shift && shift < samples[i].horizon(); ++shift) {
            for (int signed_shift : {shift, -shift}) {
                ++report.checks;
                if (!member(fam, translate(samples[i], signed_shift)))
                    report.violations.emplace_back(i, signed_shift);
            }
        }
    }
    return report;
}

} // namespace nds
