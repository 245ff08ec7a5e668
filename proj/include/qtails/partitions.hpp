#pragma once
#include "qtails/series.hpp"

#include <map>

namespace qtails {

struct Partition {
    std::vector<int> parts;  // weakly decreasing, positive
};

struct PartitionStats {
    int num_parts = 0;
    int largest = 0;
    int rank = 0;  // largest - num_parts
    int num_odd = 0;
};

struct PartitionClass {
    enum Kind { All, Distinct, Odd, DistinctEvens, DistinctMaxLe, DistinctExactly };
    Kind kind = All;
    int k = 0;  // parameter for DistinctMaxLe / DistinctExactly

    static PartitionClass all() { return {All, 0}; }
    static PartitionClass distinct() { return {Distinct, 0}; }
    static PartitionClass odd() { return {Odd, 0}; }
    static PartitionClass distinct_evens() { return {DistinctEvens, 0}; }
    static PartitionClass distinct_max_le(int k) { return {DistinctMaxLe, k}; }
    static PartitionClass distinct_exactly(int k) { return {DistinctExactly, k}; }
};

enum class WeightId {
    One,
    NumParts,
    Largest,
    NumOdd,
    RankPlusParity,
    LargestPlusPartsPlusParity,
    SignedRankParity,
};

inline constexpr int kEnumerationCap = 45;

PartitionStats partition_stats(const Partition& p);
bool in_class(const Partition& p, const PartitionClass& cls);

std::vector<Partition> enumerate_partitions(int n, const PartitionClass& cls,
                                            int cap = kEnumerationCap);

// sum over n < qorder of weight(pi) q^n over partitions of n in the class
QSeries class_series(const PartitionClass& cls, WeightId weight, int qorder,
                     int cap = kEnumerationCap);

// weighted count over pairs (pi1, pi2) with pi1 distinct with largest <= n and
// pi2 having exactly n distinct parts; gamma = largest(pi2) + num_parts(pi1)
QSeries pair_series(int qorder, int cap = kEnumerationCap);

// per total weight, the (num_parts(pi1), largest(pi2)) multiset of the same pairs
std::map<int, std::vector<std::pair<int, int>>> pair_table(int n_max,
                                                           int cap = kEnumerationCap);

// aggregates of the same pair space under formal-exponent evaluations:
// sum of (num_parts(pi1) + largest(pi2)) q^w, and of (-1)^(that) q^w
QSeries pair_eps_series(int qorder, int cap = kEnumerationCap);
QSeries pair_sign_series(int qorder, int cap = kEnumerationCap);

std::map<int, long long> rank_counts(int n, int cap = kEnumerationCap);
std::map<int, long long> parts_counts(int n, int cap = kEnumerationCap);

// coefficient of q^m counts partitions of m with largest part + number of parts <= n
QSeries j_oracle(int n, int qorder);

}  // namespace qtails
