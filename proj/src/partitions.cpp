#include "qtails/partitions.hpp"

#include <functional>

namespace qtails {

PartitionStats partition_stats(const Partition& p) {
    PartitionStats s;
    s.num_parts = static_cast<int>(p.parts.size());
    s.largest = p.parts.empty() ? 0 : p.parts.front();
    s.rank = s.largest - s.num_parts;
    for (int part : p.parts)
        if (part % 2 != 0) ++s.num_odd;
    return s;
}

bool in_class(const Partition& p, const PartitionClass& cls) {
    const auto& v = p.parts;
    for (size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[i - 1]) return false;
    auto strictly_decreasing = [&] {
        for (size_t i = 1; i < v.size(); ++i)
            if (v[i] >= v[i - 1]) return false;
        return true;
    };
    switch (cls.kind) {
        case PartitionClass::All:
            return true;
        case PartitionClass::Distinct:
            return strictly_decreasing();
        case PartitionClass::Odd:
            for (int part : v)
                if (part % 2 == 0) return false;
            return true;
        case PartitionClass::DistinctEvens:
            for (size_t i = 1; i < v.size(); ++i)
                if (v[i] == v[i - 1] && v[i] % 2 == 0) return false;
            return true;
        case PartitionClass::DistinctMaxLe:
            return strictly_decreasing() && (v.empty() || v.front() <= cls.k);
        case PartitionClass::DistinctExactly:
            return strictly_decreasing() && static_cast<int>(v.size()) == cls.k;
    }
    return false;
}

namespace {

// descending-part recursion; visit receives (num_parts, largest, num_odd)
template <typename Visit>
void walk(int remaining, int maxp, int prev, const PartitionClass& cls, int count,
          int largest, int num_odd, const Visit& visit) {
    if (remaining == 0) {
        if (cls.kind == PartitionClass::DistinctExactly && count != cls.k) return;
        visit(count, largest, num_odd);
        return;
    }
    if (cls.kind == PartitionClass::DistinctExactly && count >= cls.k) return;
    for (int p = std::min(maxp, remaining); p >= 1; --p) {
        bool strict = cls.kind == PartitionClass::Distinct ||
                      cls.kind == PartitionClass::DistinctMaxLe ||
                      cls.kind == PartitionClass::DistinctExactly;
        if (strict && p == prev) continue;
        if (cls.kind == PartitionClass::Odd && p % 2 == 0) continue;
        if (cls.kind == PartitionClass::DistinctEvens && p == prev && p % 2 == 0) continue;
        int next_max = strict ? p - 1 : p;
        walk(remaining - p, next_max, p, cls, count + 1, largest == 0 ? p : largest,
             num_odd + (p % 2), visit);
    }
}

template <typename Visit>
void walk_class(int n, const PartitionClass& cls, const Visit& visit) {
    int start_max = n;
    if (cls.kind == PartitionClass::DistinctMaxLe) start_max = std::min(n, cls.k);
    if (n == 0) {
        bool empty_ok = cls.kind != PartitionClass::DistinctExactly || cls.k == 0;
        if (empty_ok) visit(0, 0, 0);
        return;
    }
    walk(n, start_max, 0, cls, 0, 0, 0, visit);
}

Rational weight_value(WeightId w, int count, int largest, int num_odd) {
    int rank = largest - count;
    int rank_parity = ((rank % 2) + 2) % 2;  // indicator of odd rank
    switch (w) {
        case WeightId::One:
            return Rational(1);
        case WeightId::NumParts:
            return Rational(count);
        case WeightId::Largest:
            return Rational(largest);
        case WeightId::NumOdd:
            return Rational(num_odd);
        case WeightId::RankPlusParity:
            return Rational(rank + rank_parity);
        case WeightId::LargestPlusPartsPlusParity:
            return Rational(largest + count + rank_parity);
        case WeightId::SignedRankParity:
            return Rational(rank_parity ? -1 : 1);
    }
    return Rational(0);
}

void check_cap(int n, int cap, const char* what) {
    if (n > cap) throw series_error(std::string("enumeration cap exceeded for ") + what);
}

}  // namespace

std::vector<Partition> enumerate_partitions(int n, const PartitionClass& cls, int cap) {
    if (n < 0) throw series_error("cannot partition a negative integer");
    check_cap(n, cap, "enumerate");
    std::vector<Partition> out;
    std::vector<int> stack;
    std::function<void(int, int, int)> rec = [&](int remaining, int maxp, int prev) {
        if (remaining == 0) {
            Partition p{stack};
            if (in_class(p, cls)) out.push_back(std::move(p));
            return;
        }
        for (int p = std::min(maxp, remaining); p >= 1; --p) {
            stack.push_back(p);
            rec(remaining - p, p, p);
            stack.pop_back();
        }
    };
    if (n == 0) {
        Partition empty;
        if (in_class(empty, cls)) out.push_back(empty);
        return out;
    }
    rec(n, n, 0);
    return out;
}

QSeries class_series(const PartitionClass& cls, WeightId weight, int qorder, int cap) {
    if (qorder <= 0) throw series_error("order must be positive");
    check_cap(qorder - 1, cap, "class_series");
    QSeries out(qorder);
    for (int n = 0; n < qorder; ++n) {
        Rational total(0);
        walk_class(n, cls, [&](int count, int largest, int num_odd) {
            total += weight_value(weight, count, largest, num_odd);
        });
        out.c[static_cast<size_t>(n)] = total;
    }
    return out;
}

namespace {

// pi2 side: partitions with exactly n distinct parts, weight < qorder;
// aggregated as by_weight[w][largest] -> count
std::vector<std::map<int, long long>> distinct_exactly_by_weight(int n, int qorder) {
    std::vector<std::map<int, long long>> table(static_cast<size_t>(qorder));
    std::function<void(int, int, int, int, int)> rec =
        [&](int used, int left, int maxp, int largest, int weight) {
            if (left == 0) {
                if (weight < qorder) ++table[static_cast<size_t>(weight)][largest];
                return;
            }
            // smallest possible completion: left distinct parts 1..left
            for (int p = maxp; p >= left; --p) {
                int min_rest = (left - 1) * left / 2;
                if (weight + p + min_rest >= qorder) continue;
                rec(used + 1, left - 1, p - 1, largest == 0 ? p : largest, weight + p);
            }
        };
    if (n == 0) {
        ++table[0][0];
        return table;
    }
    rec(0, n, qorder - 1, 0, 0);
    return table;
}

// pi1 side: distinct partitions with largest <= n, by_weight[w][num_parts] -> count
std::vector<std::map<int, long long>> distinct_max_le_by_weight(int n, int qorder) {
    std::vector<std::map<int, long long>> table(static_cast<size_t>(qorder));
    std::function<void(int, int, int)> rec = [&](int maxp, int count, int weight) {
        ++table[static_cast<size_t>(weight)][count];
        for (int p = maxp; p >= 1; --p) {
            if (weight + p >= qorder) continue;
            rec(p - 1, count + 1, weight + p);
        }
    };
    rec(std::min(n, qorder - 1), 0, 0);
    return table;
}

}  // namespace

namespace {

template <typename PairWeight>
QSeries pair_aggregate(int qorder, int cap, const PairWeight& wt) {
    if (qorder <= 0) throw series_error("order must be positive");
    check_cap(qorder - 1, cap, "pair_series");
    QSeries out(qorder);
    for (int n = 0;; ++n) {
        long long minw2 = static_cast<long long>(n) * (n + 1) / 2;
        if (minw2 >= qorder) break;
        auto side2 = distinct_exactly_by_weight(n, qorder);
        auto side1 = distinct_max_le_by_weight(n, qorder);
        for (int w2 = 0; w2 < qorder; ++w2) {
            if (side2[static_cast<size_t>(w2)].empty()) continue;
            for (int w1 = 0; w1 + w2 < qorder; ++w1) {
                if (side1[static_cast<size_t>(w1)].empty()) continue;
                for (auto [largest2, c2] : side2[static_cast<size_t>(w2)])
                    for (auto [count1, c1] : side1[static_cast<size_t>(w1)])
                        out.c[static_cast<size_t>(w1 + w2)] +=
                            wt(count1, largest2) * Rational(c1 * c2);
            }
        }
    }
    return out;
}

}  // namespace

QSeries pair_series(int qorder, int cap) {
    return pair_aggregate(qorder, cap, [](int count1, int largest2) {
        long long gamma = largest2 + count1;
        return Rational(gamma + (gamma % 2));  // gamma + odd indicator
    });
}

QSeries pair_eps_series(int qorder, int cap) {
    return pair_aggregate(qorder, cap, [](int count1, int largest2) {
        return Rational(count1 + largest2);
    });
}

QSeries pair_sign_series(int qorder, int cap) {
    return pair_aggregate(qorder, cap, [](int count1, int largest2) {
        return Rational((count1 + largest2) % 2 == 0 ? 1 : -1);
    });
}

std::map<int, std::vector<std::pair<int, int>>> pair_table(int n_max, int cap) {
    check_cap(n_max - 1, cap, "pair_table");
    std::map<int, std::vector<std::pair<int, int>>> out;
    for (int n = 0;; ++n) {
        long long minw2 = static_cast<long long>(n) * (n + 1) / 2;
        if (minw2 >= n_max) break;
        auto side2 = distinct_exactly_by_weight(n, n_max);
        auto side1 = distinct_max_le_by_weight(n, n_max);
        for (int w2 = 0; w2 < n_max; ++w2)
            for (auto [largest2, c2] : side2[static_cast<size_t>(w2)])
                for (int w1 = 0; w1 + w2 < n_max; ++w1)
                    for (auto [count1, c1] : side1[static_cast<size_t>(w1)]) {
                        auto& bucket = out[w1 + w2];
                        for (long long r = 0; r < c1 * c2; ++r)
                            bucket.emplace_back(count1, largest2);
                    }
    }
    return out;
}

std::map<int, long long> rank_counts(int n, int cap) {
    check_cap(n, cap, "rank_counts");
    std::map<int, long long> out;
    walk_class(n, PartitionClass::all(),
               [&](int count, int largest, int) { ++out[largest - count]; });
    return out;
}

std::map<int, long long> parts_counts(int n, int cap) {
    check_cap(n, cap, "parts_counts");
    std::map<int, long long> out;
    walk_class(n, PartitionClass::all(), [&](int count, int, int) { ++out[count]; });
    return out;
}

QSeries j_oracle(int n, int qorder) {
    if (n < 0) throw series_error("index must be nonnegative");
    if (qorder <= 0) throw series_error("order must be positive");
    QSeries out(qorder);
    out.c[0] = 1;  // empty partition, statistic 0
    // choose largest part p, then at most n - p - 1 further parts each <= p
    std::function<void(int, int, int)> rec = [&](int maxp, int budget, int weight) {
        out.c[static_cast<size_t>(weight)] += 1;
        if (budget == 0) return;
        for (int p = maxp; p >= 1; --p) {
            if (weight + p >= qorder) continue;
            rec(p, budget - 1, weight + p);
        }
    };
    for (int p = 1; p <= n - 1 && p < qorder; ++p) rec(p, n - p - 1, p);
    return out;
}

}  // namespace qtails
