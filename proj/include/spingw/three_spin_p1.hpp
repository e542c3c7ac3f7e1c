#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spingw/execution.hpp"
#include "spingw/rational.hpp"
#include "spingw/series.hpp"
#include "spingw/spin_cft.hpp"

namespace spingw {

// Genus-zero 3-spin theory of P^1 on the basis tau_{alpha,m} = epsilon_alpha (x) e_m,
// alpha, m in {0, 1}. Coordinates are t00, t01, t10, t11 and the Novikov variable q.

/// Multiset of insertions: n0 copies of tau_{0,0}, n1 of tau_{0,1}, n2 of
/// tau_{1,0}, n3 of tau_{1,1}, in curve class beta.
struct CorrelatorKey {
    int beta = 0;
    int n0 = 0;
    int n1 = 0;
    int n2 = 0;
    int n3 = 0;
    friend auto operator<=>(const CorrelatorKey &, const CorrelatorKey &) = default;
};

/// How beta >= 2 rows are produced.
///  - pde: coefficient extraction from the WDVV equation for d^3_{11} Psi
///  - printed_t01: the closed recursion with tau_{0,1} second factors
///  - printed_t10: the same recursion with tau_{1,0} second factors
enum class Reading { pde, printed_t01, printed_t10 };

std::string to_string(Reading reading);
Reading parse_reading(const std::string &text);

/// Number of tau_{1,1} insertions forced by dimension: 6 beta + 2 n1 - 5.
int selection_n3(int beta, int n1);

/// The nonvanishing correlators below three insertions plus the divisor-shifted
/// base of the beta = 1 family.
std::vector<std::pair<CorrelatorKey, Rational>> base_correlators();

std::shared_ptr<const VariableSpec> p1_three_spin_spec();

/// Memoized table of c(beta, n1) = <tau_{0,1}^{n1} tau_{1,1}^{6 beta + 2 n1 - 5}>_beta.
///
/// Row beta = 1 is the closed form n1!/3^{n1}. Row beta >= 2 is built from the
/// rows below it: the quadratic part of each cell only reads lower rows and is
/// computed for all n1 at once (in parallel with Exec::parallel); the linear
/// n1 beta^2/3 c(beta, n1-1) part is then accumulated in order of n1.
///
/// Not thread-safe while building; concurrent reads of a built table are fine.
class CorrelatorTable {
public:
    explicit CorrelatorTable(Reading reading = Reading::pde) : reading_(reading) {}

    Reading reading() const { return reading_; }

    /// Ensures c(beta, n1) for beta <= beta_max, n1 <= n1_max, together with the
    /// cells of lower rows they depend on (row b up to n1_max + 2(beta_max - b)).
    void build(int beta_max, int n1_max, Exec exec = Exec::parallel);

    /// c(beta, n1), computing it and its dependencies on demand.
    const Rational &correlator(int beta, int n1);
    std::optional<Rational> find(int beta, int n1) const;

    /// Any correlator of the theory: beta >= 1 through the divisor axiom and the
    /// selection rule, beta = 0 from the classical 3-spin numbers.
    Rational full_correlator(const CorrelatorKey &key);
    /// As above, but throws DomainError when a needed cell is not in the table.
    Rational full_correlator_cached(const CorrelatorKey &key) const;

    /// n1! k! times the q^beta t01^{n1} t11^k coefficient (k = 6 beta + 2 n1 - 8)
    /// of the right-hand side of the d^3_{11} Psi equation, split into the part
    /// linear in Psi and the quadratic part. Their sum equals c(beta, n1).
    Rational pde_linear(int beta, int n1) const;
    Rational pde_quadratic(int beta, int n1) const;

    /// The closed beta >= 2 recursion evaluated on table entries, with the
    /// given reading of its second factors and <tau_{0,1}^{-1} ...> := 0.
    /// Throws DomainError if a lower-order entry is missing.
    Rational printed_recursion(int beta, int n1, Reading reading) const;
    Rational printed_linear(int beta, int n1) const;
    Rational printed_quadratic(int beta, int n1, Reading reading) const;

    /// Seeds a cell, e.g. from a cache file.
    void insert(int beta, int n1, const Rational &value);
    const std::map<std::pair<int, int>, Rational> &entries() const { return memo_; }

private:
    const Rational &at(int beta, int n1) const;
    /// Coefficient of q^beta t01^a t11^i (t00 = t10 = 0) in
    /// d01^x d10^y d11^z Psi.
    Rational derivative_coefficient(int beta, int x, int y, int z, int a, int i) const;
    void build_row(int beta, int n1_max, Exec exec);

    Reading reading_;
    std::map<std::pair<int, int>, Rational> memo_;
};

/// chi = chi_{beta=0} + sum_{beta>=1} q^beta sum t01^{n1} t10^{n2} t11^{n3} /(n1! n2! n3!) <...>_beta
/// over every key within q <= beta_max and total coordinate degree <= t_max.
TruncatedSeries assemble_potential(CorrelatorTable &table, int beta_max, int t_max);

} // namespace spingw
