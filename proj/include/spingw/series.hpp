#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spingw/rational.hpp"

namespace spingw {

/// Ordered variable names, one of which may be flagged as the Novikov variable.
/// The Novikov exponent is graded by its own bound; every other variable counts
/// toward the coordinate (t-)degree.
class VariableSpec {
public:
    VariableSpec() = default;
    explicit VariableSpec(std::vector<std::string> names, std::optional<std::string> novikov = std::nullopt);

    const std::vector<std::string> &names() const { return names_; }
    std::size_t size() const { return names_.size(); }
    std::optional<std::size_t> novikov_index() const { return novikov_; }
    bool has(const std::string &name) const;
    std::size_t index_of(const std::string &name) const;
    bool is_novikov(std::size_t index) const { return novikov_ && *novikov_ == index; }

    friend bool operator==(const VariableSpec &, const VariableSpec &) = default;

private:
    std::vector<std::string> names_;
    std::optional<std::size_t> novikov_;
};

using Exponents = std::vector<int>;

/// Multivariate formal power series over Rational, truncated at a Novikov
/// degree bound and a total coordinate degree bound. Coefficients of monomials
/// within both bounds are exact; nothing is known beyond them.
///
/// Every operation states how the bounds of its result shrink, so a coefficient
/// read back from a result is always one the inputs actually determine. A
/// negative t_bound means no coefficient is certified at all.
class TruncatedSeries {
public:
    using TermMap = std::map<Exponents, Rational>;

    TruncatedSeries(std::shared_ptr<const VariableSpec> spec, int q_bound, int t_bound);

    static TruncatedSeries constant(std::shared_ptr<const VariableSpec> spec, int q_bound, int t_bound,
                                    const Rational &value);
    static TruncatedSeries variable(std::shared_ptr<const VariableSpec> spec, int q_bound, int t_bound,
                                    const std::string &name);
    static TruncatedSeries monomial(std::shared_ptr<const VariableSpec> spec, int q_bound, int t_bound,
                                    Exponents exponents, const Rational &coeff);

    const VariableSpec &spec() const { return *spec_; }
    const std::shared_ptr<const VariableSpec> &spec_ptr() const { return spec_; }
    int q_bound() const { return q_bound_; }
    int t_bound() const { return t_bound_; }
    const TermMap &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    int q_degree(const Exponents &e) const;
    int t_degree(const Exponents &e) const;
    bool within_bounds(const Exponents &e) const;

    /// Adds coeff to the coefficient of e. Monomials outside the bounds are
    /// dropped, since they are not representable.
    void add_term(const Exponents &e, const Rational &coeff);

    /// Stored coefficient or zero. Throws TruncationError when e is outside
    /// the bounds, so an uncertified coefficient never reads as a true zero.
    Rational coefficient(const Exponents &e) const;

    TruncatedSeries operator-() const;
    TruncatedSeries scaled(const Rational &factor) const;
    TruncatedSeries truncated(int q_bound, int t_bound) const;

    /// Formal derivative in a coordinate variable; t_bound drops by one.
    TruncatedSeries partial(const std::string &name) const;
    TruncatedSeries partial(std::size_t index) const;

    /// sum s^k / k!; requires a zero constant term.
    TruncatedSeries exp() const;

    /// Replaces variables by series over a common target spec. Variables absent
    /// from the assignment map to the same-named target variable. Result bounds
    /// are the minimum of all input bounds; substitutes that could lower the
    /// degree of truncated terms are rejected.
    TruncatedSeries substitute(const std::map<std::string, TruncatedSeries> &assignment) const;

    friend TruncatedSeries operator+(const TruncatedSeries &a, const TruncatedSeries &b);
    friend TruncatedSeries operator-(const TruncatedSeries &a, const TruncatedSeries &b);
    friend TruncatedSeries operator*(const TruncatedSeries &a, const TruncatedSeries &b);
    friend bool operator==(const TruncatedSeries &a, const TruncatedSeries &b);

private:
    void require_same_spec(const TruncatedSeries &other, const char *op) const;

    std::shared_ptr<const VariableSpec> spec_;
    int q_bound_;
    int t_bound_;
    TermMap terms_;
};

inline std::shared_ptr<const VariableSpec> make_spec(std::vector<std::string> names,
                                                     std::optional<std::string> novikov = std::nullopt)
{
    return std::make_shared<const VariableSpec>(std::move(names), std::move(novikov));
}

} // namespace spingw
