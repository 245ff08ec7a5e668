#pragma once
#include "qtails/builders.hpp"

#include <map>

namespace qtails {

// memoizes Gaussian binomials at one truncation order for the double sums
class GaussianCache {
public:
    explicit GaussianCache(int qorder) : qorder_(qorder), zero_(qorder) {}
    const QSeries& get(int n, int m);
    int qorder() const { return qorder_; }

private:
    int qorder_;
    QSeries zero_;
    std::map<std::pair<int, int>, QSeries> memo_;
};

QSeries omega_n(int n, int qorder, GaussianCache* cache = nullptr);
QSeries theta_n(int n, int qorder, GaussianCache* cache = nullptr);
QSeries v_m(int m, int qorder, GaussianCache* cache = nullptr);
QSeries j_n(int n, int qorder, GaussianCache* cache = nullptr);

QSeries sigma_series(int qorder);

enum class ErrorKind { E1, E2 };
QSeries error_series(ErrorKind which, int qorder);

QSeries mock_theta_f(int qorder);

enum class FamilyId { L1, L2, FineV, M };

// the defining two-variable sum, truncated to t^0..t^{torder-1}
TSeries family_tseries(FamilyId family, int torder, int qorder);
QSeries family_tcoeff(FamilyId family, int n, int qorder);

// termwise substitution t = -1 in the defining sum; L2 is refused because
// every summand past the first carries a vanishing factor there
QSeries family_at_minus_one(FamilyId family, int qorder);

}  // namespace qtails
