#pragma once
#include "qtails/builders.hpp"
#include "qtails/report.hpp"

#include <string>
#include <vector>

namespace qtails {

// ids accepted by verify_identity / diagnose_identity, in catalog order
std::vector<std::string> catalog_ids();

// Recompute both sides of the catalog entry at the given truncation order and
// report the residual. Aggregate entries (several sub-checks under one id)
// fold the sub-results into detail and keep the first failing residual.
// pre: qorder >= 8
IdentityReport verify_identity(const std::string& id, int qorder);

// which families of corrections diagnose_identity may try
struct HypothesisSpace {
    bool sign_flips = true;
    bool index_shifts = true;
    bool series_additions = true;
};

// verify, then on failure search the correction space in a fixed order:
// sign flips of right-side terms, start-index shifts of shiftable sums,
// then adding c*S to the right side for c in {1,-1,1/2,-1/2,1/4,-1/4} and
// S among the named closed forms. The first hypothesis that zeroes the
// residual is reported; a passing identity comes back unchanged with a note.
IdentityReport diagnose_identity(const std::string& id, int qorder,
                                 const HypothesisSpace& space = {});

// transformation check: sum over n of (a q^base; q^base)_n / (b q^base; q^base)_n * t^n
// against (1 - b) / (1 - t) times the same shape with arguments a*t*q^base/b and t,
// summed with weight b^n. Monomial arguments; zero monomials allowed, b = 1 is an error.
IdentityReport verify_lemma2(const SignedMonomial& a, const SignedMonomial& b,
                             const SignedMonomial& t, int qorder, int base_qpow = 1);

// transformation check: sum of (x q; q^2)_n (t q)^n / (t; q^2)_{n+1} against
// sum of (x q)_n t^n q^{n(n+1)/2} / (t)_{n+1}
IdentityReport verify_lemma3(const SignedMonomial& x, const SignedMonomial& t, int qorder);

// named closed-form and enumeration series used by scripts and the expression
// evaluator; unknown name -> series_error
QSeries named_series(const std::string& name, int qorder);
std::vector<std::string> named_series_ids();

}  // namespace qtails
