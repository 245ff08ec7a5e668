#pragma once
#include "qtails/report.hpp"

#include <vector>

namespace qtails {

// counts[m] = number of ideals of Z[sqrt(2)] with absolute norm m, 1 <= m <= max_norm
struct IdealCountTable {
    int max_norm = 0;
    std::vector<long long> counts;  // index 0 unused
};

// multiplicative table from prime splitting: p = +-1 mod 8 splits,
// p = +-3 mod 8 is inert, p = 2 ramifies
IdealCountTable ideal_counts(int max_norm);

// brute-force check that m is an absolute element norm |x^2 - 2y^2|;
// in a class-number-one field this matches counts[m] > 0
bool element_norm_represented(int m);

// coefficient m of the first error series against (-1)^m * counts[8m+1]
IdentityReport verify_2_5(int qorder);

}  // namespace qtails
