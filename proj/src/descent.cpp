#include "spingw/descent.hpp"

#include <map>
#include <set>

namespace spingw {

namespace {

void check_index(int a, int m, int r)
{
    if (r < 2)
        throw DomainError("r must be at least 2");
    if (a < 0)
        throw DomainError("descent level a must be nonnegative");
    if (m < 0 || m > r - 1)
        throw DomainError("mark m out of range 0..r-1");
}

} // namespace

DescentIndex DescentIndex::from_combined(int m_tilde, int r)
{
    if (r < 2)
        throw DomainError("r must be at least 2");
    if (m_tilde < 0)
        throw DomainError("descendant index must be nonnegative");
    return {r, m_tilde / r, m_tilde % r};
}

Integer bracket_r(int a, int m, int r)
{
    check_index(a, m, r);
    Integer out = 1;
    for (int i = 1; i <= a; ++i)
        out *= r * (a - i) + m + 1;
    return out;
}

Rational substitution_coefficient(int a, int m, int r)
{
    Integer num;
    mpz_ui_pow_ui(num.get_mpz_t(), static_cast<unsigned long>(r), static_cast<unsigned long>(a));
    if (a % 2)
        num = -num;
    Rational out(num, bracket_r(a, m, r));
    out.canonicalize();
    return out;
}

std::pair<int, Rational> descent_class_factor(int m_tilde, int r)
{
    DescentIndex idx = DescentIndex::from_combined(m_tilde, r);
    // Each step raises the index by r: c~(m + (j+1) r) = -((m + j r + 1)/r) psi c~(m + j r).
    Rational scalar = 1;
    for (int j = 0; j < idx.a; ++j)
        scalar *= ratio(-(idx.m + j * r + 1), r);
    return {idx.a, scalar};
}

Rational tilde_psi_coefficient(int m, int r)
{
    check_index(0, m, r);
    return ratio(m + 1, r);
}

DescentCoordinates make_descent_coordinates(int n_classes, int a_max, int r)
{
    if (n_classes < 1 || a_max < 0)
        throw DomainError("need at least one class and a_max >= 0");
    DescentCoordinates out;
    out.r = r;
    std::vector<std::string> u_names, t_names;
    for (int alpha = 0; alpha < n_classes; ++alpha) {
        for (int a = 0; a <= a_max; ++a) {
            for (int m = 0; m < r; ++m) {
                DescentVariable v{alpha, {r, a, m}, {}, {}};
                v.u_name = "u" + std::to_string(a) + "_" + std::to_string(alpha) + std::to_string(m);
                v.t_name = "tt" + std::to_string(alpha) + "_" + std::to_string(a * r + m);
                u_names.push_back(v.u_name);
                t_names.push_back(v.t_name);
                out.variables.push_back(std::move(v));
            }
        }
    }
    out.u_spec = make_spec(std::move(u_names));
    out.t_spec = make_spec(std::move(t_names));
    validate_descent_coordinates(out);
    return out;
}

void validate_descent_coordinates(const DescentCoordinates &coords)
{
    std::set<std::string> u_seen, t_seen;
    std::set<std::pair<int, int>> targets;
    for (const auto &v : coords.variables) {
        if (v.index.r != coords.r)
            throw DomainError("malformed descent correspondence: inconsistent r");
        check_index(v.index.a, v.index.m, coords.r);
        if (v.u_name.empty() || v.t_name.empty() || v.u_name == v.t_name)
            throw DomainError("malformed descent correspondence: bad variable names");
        if (!u_seen.insert(v.u_name).second || !t_seen.insert(v.t_name).second)
            throw DomainError("malformed descent correspondence: duplicate variable");
        if (!targets.emplace(v.alpha, v.index.combined()).second)
            throw DomainError("malformed descent correspondence: two u-variables share a t~ index");
    }
    for (const auto &u : u_seen)
        if (t_seen.count(u))
            throw DomainError("malformed descent correspondence: name used on both sides");
}

namespace {

/// Renames `from` variables to `to` variables and scales each by factor(v).
template <typename From, typename To, typename Factor>
TruncatedSeries rescale(const TruncatedSeries &s, const DescentCoordinates &coords, From from, To to, Factor factor)
{
    validate_descent_coordinates(coords);
    std::map<std::string, const DescentVariable *> by_source;
    for (const auto &v : coords.variables)
        by_source.emplace(from(v), &v);

    std::vector<std::string> names = s.spec().names();
    for (auto &n : names) {
        auto it = by_source.find(n);
        if (it != by_source.end())
            n = to(*it->second);
    }
    std::optional<std::string> novikov;
    if (auto q = s.spec().novikov_index())
        novikov = names[*q];
    auto target = make_spec(names, novikov);

    std::map<std::string, TruncatedSeries> assignment;
    for (const auto &n : s.spec().names()) {
        auto it = by_source.find(n);
        if (it == by_source.end())
            continue;
        const DescentVariable &v = *it->second;
        assignment.emplace(n, TruncatedSeries::variable(target, s.q_bound(), s.t_bound(), to(v)).scaled(factor(v)));
    }
    if (assignment.empty())
        return s;
    return s.substitute(assignment);
}

} // namespace

TruncatedSeries apply_descent_substitution(const TruncatedSeries &u_series, const DescentCoordinates &coords)
{
    return rescale(
        u_series, coords, [](const DescentVariable &v) { return v.u_name; },
        [](const DescentVariable &v) { return v.t_name; },
        [](const DescentVariable &v) -> Rational { return 1 / substitution_coefficient(v.index.a, v.index.m, v.index.r); });
}

TruncatedSeries invert_descent_substitution(const TruncatedSeries &t_series, const DescentCoordinates &coords)
{
    return rescale(
        t_series, coords, [](const DescentVariable &v) { return v.t_name; },
        [](const DescentVariable &v) { return v.u_name; },
        [](const DescentVariable &v) -> Rational { return substitution_coefficient(v.index.a, v.index.m, v.index.r); });
}

} // namespace spingw
