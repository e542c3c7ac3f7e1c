#pragma once

#include <string>
#include <utility>
#include <vector>

#include "spingw/rational.hpp"
#include "spingw/series.hpp"

namespace spingw {

/// Split of a descendant index m~ = a * r + m with 0 <= m <= r - 1.
struct DescentIndex {
    int r = 2;
    int a = 0;
    int m = 0;

    int combined() const { return a * r + m; }
    static DescentIndex from_combined(int m_tilde, int r);
};

/// prod_{i=1}^{a} (r(a - i) + m + 1); 1 when a = 0.
Integer bracket_r(int a, int m, int r);

/// kappa(a, m, r) = (-1)^a r^a / bracket_r(a, m, r), the coordinate rescaling
/// t~^{alpha, a r + m} = kappa * u_a^{alpha, m}.
Rational substitution_coefficient(int a, int m, int r);

/// Iterating c~(m~ + r delta_i) = -((m~_i + 1)/r) psi_i c~(m~) down to the reduced
/// mark: returns the psi power a and the scalar (-1)^a prod_{j<a}(m + j r + 1) / r^a.
std::pair<int, Rational> descent_class_factor(int m_tilde, int r);

/// psi~_i = ((m_i + 1)/r) psi_i.
Rational tilde_psi_coefficient(int m, int r);

/// One coordinate pair of the descent change of variables: u-variable named
/// `u_name` for (alpha, a, m) corresponds to the t~-variable `t_name` for
/// (alpha, a r + m).
struct DescentVariable {
    int alpha = 0;
    DescentIndex index;
    std::string u_name;
    std::string t_name;
};

/// Both variable sets for classes alpha < n_classes and a <= a_max, named
/// u<a>_<alpha><m> and tt<alpha>_<a r + m>.
struct DescentCoordinates {
    int r = 2;
    std::vector<DescentVariable> variables;
    std::shared_ptr<const VariableSpec> u_spec;
    std::shared_ptr<const VariableSpec> t_spec;
};

DescentCoordinates make_descent_coordinates(int n_classes, int a_max, int r);

/// Checks that the correspondence is a bijection between the two specs and
/// that every index is reduced; throws DomainError otherwise.
void validate_descent_coordinates(const DescentCoordinates &coords);

/// Rewrites a series in u-variables in t~-variables via u = t~ / kappa.
TruncatedSeries apply_descent_substitution(const TruncatedSeries &u_series, const DescentCoordinates &coords);

/// Rewrites a series in t~-variables in u-variables via t~ = kappa u.
TruncatedSeries invert_descent_substitution(const TruncatedSeries &t_series, const DescentCoordinates &coords);

} // namespace spingw
