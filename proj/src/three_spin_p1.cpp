#include "spingw/three_spin_p1.hpp"

#include <exception>

#include "spingw/multiset.hpp"

namespace spingw {

std::string to_string(Reading reading)
{
    switch (reading) {
    case Reading::pde:
        return "pde";
    case Reading::printed_t01:
        return "printed-t01";
    case Reading::printed_t10:
        return "printed-t10";
    }
    return "?";
}

Reading parse_reading(const std::string &text)
{
    if (text == "pde")
        return Reading::pde;
    if (text == "printed-t01")
        return Reading::printed_t01;
    if (text == "printed-t10")
        return Reading::printed_t10;
    throw DomainError("unknown recursion reading '" + text + "' (expected pde, printed-t01 or printed-t10)");
}

int selection_n3(int beta, int n1)
{
    if (beta < 1)
        throw DomainError("selection rule applies to beta >= 1");
    if (n1 < 0)
        throw DomainError("n1 must be nonnegative");
    return 6 * beta + 2 * n1 - 5;
}

std::vector<std::pair<CorrelatorKey, Rational>> base_correlators()
{
    return {
        {{1, 0, 0, 0, 1}, Rational(1)},  // <tau_{1,1}>_1
        {{1, 0, 0, 1, 1}, Rational(1)},  // <tau_{1,0} tau_{1,1}>_1
        {{1, 0, 0, 2, 1}, Rational(1)},  // <tau_{1,0}^2 tau_{1,1}>_1
    };
}

std::shared_ptr<const VariableSpec> p1_three_spin_spec()
{
    static const auto spec = make_spec({"q", "t00", "t01", "t10", "t11"}, "q");
    return spec;
}

void CorrelatorTable::insert(int beta, int n1, const Rational &value)
{
    if (beta < 1 || n1 < 0)
        throw DomainError("table cells need beta >= 1 and n1 >= 0");
    memo_[{beta, n1}] = value;
}

std::optional<Rational> CorrelatorTable::find(int beta, int n1) const
{
    auto it = memo_.find({beta, n1});
    if (it == memo_.end())
        return std::nullopt;
    return it->second;
}

const Rational &CorrelatorTable::at(int beta, int n1) const
{
    auto it = memo_.find({beta, n1});
    if (it == memo_.end())
        throw DomainError("missing lower-order entry c(" + std::to_string(beta) + ", " + std::to_string(n1) + ")");
    return it->second;
}

const Rational &CorrelatorTable::correlator(int beta, int n1)
{
    if (beta < 1)
        throw DomainError("correlator(beta, n1) needs beta >= 1");
    if (n1 < 0)
        throw DomainError("n1 must be nonnegative");
    if (!memo_.count({beta, n1}))
        build(beta, n1, Exec::serial);
    return at(beta, n1);
}

namespace {

void check_key(const CorrelatorKey &key)
{
    if (key.beta < 0 || key.n0 < 0 || key.n1 < 0 || key.n2 < 0 || key.n3 < 0)
        throw DomainError("correlator keys are nonnegative");
}

Rational classical_correlator(const CorrelatorKey &key)
{
    std::vector<std::pair<int, int>> insertions;
    const int counts[] = {key.n0, key.n1, key.n2, key.n3};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < counts[i]; ++k)
            insertions.emplace_back(i / 2, i % 2);
    if (insertions.size() > 4)
        return 0;
    return beta_zero_correlator(Target::p1, 3, insertions);
}

bool instanton_vanishes(const CorrelatorKey &key)
{
    // No t00 dependence in Psi, and the dimension constraint fixes n3.
    return key.n0 > 0 || key.n3 != selection_n3(key.beta, key.n1);
}

Rational beta_power(int beta, int exponent) { return power(Rational(beta), static_cast<unsigned long>(exponent)); }

} // namespace

Rational CorrelatorTable::full_correlator(const CorrelatorKey &key)
{
    check_key(key);
    if (key.beta == 0)
        return classical_correlator(key);
    if (instanton_vanishes(key))
        return 0;
    return beta_power(key.beta, key.n2) * correlator(key.beta, key.n1);
}

Rational CorrelatorTable::full_correlator_cached(const CorrelatorKey &key) const
{
    check_key(key);
    if (key.beta == 0)
        return classical_correlator(key);
    if (instanton_vanishes(key))
        return 0;
    return beta_power(key.beta, key.n2) * at(key.beta, key.n1);
}

Rational CorrelatorTable::derivative_coefficient(int beta, int x, int y, int z, int a, int i) const
{
    if (beta < 1 || a < 0 || i < 0)
        return 0;
    const int n1 = a + x;
    if (i + z != selection_n3(beta, n1))
        return 0;
    Rational out = beta_power(beta, y) * at(beta, n1);
    out /= Rational(factorial(static_cast<unsigned long>(a)) * factorial(static_cast<unsigned long>(i)));
    return out;
}

// Setting (alpha_1,m_1) = (1,0), (alpha_2,m_2) = (0,1), (alpha_3,m_3) = (alpha_4,m_4) = (1,1)
// in WDVV with the classical cubic substituted gives
//
//   d11^3 Psi = - d01^2 d10 Psi * d10 d11^2 Psi
//               - d01 d10^2 Psi * d01 d11^2 Psi
//               + (t01 / 3) d10^2 d11 Psi
//               + d01^2 d11 Psi * d10^2 d11 Psi
//               + (d01 d10 d11 Psi)^2 .
//
// The q^beta t01^{n1} t11^k coefficient of the left side is c(beta, n1) / (n1! k!)
// with k = 6 beta + 2 n1 - 8.

namespace {

struct QuadraticTerm {
    int sign;
    int x1, y1, z1;
    int x2, y2, z2;
};

constexpr QuadraticTerm kPdeQuadratic[] = {
    {-1, 2, 1, 0, 0, 1, 2},
    {-1, 1, 2, 0, 1, 0, 2},
    {+1, 2, 0, 1, 0, 2, 1},
    {+1, 1, 1, 1, 1, 1, 1},
};

int extraction_degree(int beta, int n1)
{
    int k = 6 * beta + 2 * n1 - 8;
    if (beta < 1 || n1 < 0 || k < 0)
        throw DomainError("no d11^3 coefficient certifies c(" + std::to_string(beta) + ", " + std::to_string(n1) + ")");
    return k;
}

Rational extraction_scale(int n1, int k)
{
    return Rational(factorial(static_cast<unsigned long>(n1)) * factorial(static_cast<unsigned long>(k)));
}

} // namespace

Rational CorrelatorTable::pde_linear(int beta, int n1) const
{
    const int k = extraction_degree(beta, n1);
    if (n1 == 0)
        return 0;
    Rational coeff = derivative_coefficient(beta, 0, 2, 1, n1 - 1, k) / 3;
    return coeff * extraction_scale(n1, k);
}

Rational CorrelatorTable::pde_quadratic(int beta, int n1) const
{
    const int k = extraction_degree(beta, n1);
    Rational sum = 0;
    for (int b1 = 1; b1 < beta; ++b1) {
        const int b2 = beta - b1;
        for (int a = 0; a <= n1; ++a) {
            const int b = n1 - a;
            for (const auto &t : kPdeQuadratic) {
                // The selection rule fixes the t11 degree of each factor.
                const int i = selection_n3(b1, a + t.x1) - t.z1;
                const int j = k - i;
                if (i < 0 || j < 0)
                    continue;
                Rational f1 = derivative_coefficient(b1, t.x1, t.y1, t.z1, a, i);
                if (f1 == 0)
                    continue;
                Rational f2 = derivative_coefficient(b2, t.x2, t.y2, t.z2, b, j);
                if (t.sign > 0)
                    sum += f1 * f2;
                else
                    sum -= f1 * f2;
            }
        }
    }
    return sum * extraction_scale(n1, k);
}

Rational CorrelatorTable::printed_linear(int beta, int n1) const
{
    if (n1 == 0)
        return 0;  // <tau_{0,1}^{-1} ...> := 0
    return ratio(n1 * beta * beta, 3) * at(beta, n1 - 1);
}

Rational CorrelatorTable::printed_quadratic(int beta, int n1, Reading reading) const
{
    if (beta < 2)
        throw DomainError("the closed recursion applies to beta >= 2");
    if (n1 < 0)
        throw DomainError("n1 must be nonnegative");
    const bool t10 = reading == Reading::printed_t10;
    auto first = [&](int bb, int count, int n3) { return full_correlator_cached({bb, 0, count, 0, n3}); };
    auto second = [&](int bb, int count, int n3) {
        return t10 ? full_correlator_cached({bb, 0, 0, count, n3}) : full_correlator_cached({bb, 0, count, 0, n3});
    };
    const long upper = 6L * beta + 2L * n1 - 8;
    Rational sum = 0;
    for (int b1 = 1; b1 < beta; ++b1) {
        const int b2 = beta - b1;
        for (int p = 0; p <= n1; ++p) {
            const int s = n1 - p;
            const Integer choose = binomial(n1, p);
            Integer c;
            if ((c = binomial(upper, 6L * b1 + 2 * p - 1)) != 0)
                sum -= Rational(b1 * b2 * choose * c) * first(b1, p + 2, 6 * b1 + 2 * p - 1) *
                       second(b2, s, 6 * b2 + 2 * s - 5);
            if ((c = binomial(upper, 6L * b1 + 2 * p - 3)) != 0)
                sum -= Rational(b1 * b1 * choose * c) * first(b1, p + 1, 6 * b1 + 2 * p - 3) *
                       second(b2, s + 1, 6 * b2 + 2 * s - 3);
            if ((c = binomial(upper, 6L * b1 + 2 * p - 2)) != 0)
                sum += Rational(b2 * b2 * choose * c) * first(b1, p + 2, 6 * b1 + 2 * p - 1) *
                       second(b2, s, 6 * b2 + 2 * s - 5);
            if ((c = binomial(upper, 6L * b1 + 2 * p - 4)) != 0)
                sum += Rational(b1 * b2 * choose * c) * first(b1, p + 1, 6 * b1 + 2 * p - 3) *
                       second(b2, s + 1, 6 * b2 + 2 * s - 3);
        }
    }
    return sum;
}

Rational CorrelatorTable::printed_recursion(int beta, int n1, Reading reading) const
{
    if (reading == Reading::pde)
        throw DomainError("printed_recursion needs a printed reading");
    return printed_linear(beta, n1) + printed_quadratic(beta, n1, reading);
}

void CorrelatorTable::build(int beta_max, int n1_max, Exec exec)
{
    if (beta_max < 1 || n1_max < 0)
        return;
    for (int beta = 1; beta <= beta_max; ++beta)
        build_row(beta, n1_max + 2 * (beta_max - beta), exec);
}

void CorrelatorTable::build_row(int beta, int n1_max, Exec exec)
{
    if (beta == 1) {
        for (int n1 = 0; n1 <= n1_max; ++n1)
            if (!memo_.count({1, n1})) {
                Integer three_pow;
                mpz_ui_pow_ui(three_pow.get_mpz_t(), 3, static_cast<unsigned long>(n1));
                Rational value(factorial(static_cast<unsigned long>(n1)), three_pow);
                value.canonicalize();
                memo_[{1, n1}] = value;
            }
        return;
    }
    std::vector<int> missing;
    for (int n1 = 0; n1 <= n1_max; ++n1)
        if (!memo_.count({beta, n1}))
            missing.push_back(n1);
    if (missing.empty())
        return;

    // Quadratic parts only read rows below beta, which are complete.
    std::vector<Rational> quadratic(missing.size());
    std::exception_ptr failure;
    const long count = static_cast<long>(missing.size());
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
    for (long idx = 0; idx < count; ++idx) {
        try {
            quadratic[idx] = reading_ == Reading::pde ? pde_quadratic(beta, missing[idx])
                                                      : printed_quadratic(beta, missing[idx], reading_);
        } catch (...) {
#pragma omp critical(spingw_table_failure)
            failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);

    for (std::size_t idx = 0; idx < missing.size(); ++idx) {
        const int n1 = missing[idx];
        Rational linear = reading_ == Reading::pde ? pde_linear(beta, n1) : printed_linear(beta, n1);
        memo_[{beta, n1}] = linear + quadratic[idx];
    }
}

TruncatedSeries assemble_potential(CorrelatorTable &table, int beta_max, int t_max)
{
    if (beta_max < 0 || t_max < 0)
        throw DomainError("potential bounds must be nonnegative");
    for (int beta = 1; beta <= beta_max; ++beta) {
        // Largest n1 with n1 + (6 beta + 2 n1 - 5) <= t_max.
        int n1_top = (t_max + 5 - 6 * beta) / 3;
        if (t_max + 5 - 6 * beta >= 0)
            table.build(beta, n1_top);
    }

    TruncatedSeries chi(p1_three_spin_spec(), beta_max, t_max);
    chi = chi + beta_zero_potential(Target::p1, 3, beta_max, t_max);
    Exponents e(5, 0);
    for (int beta = 1; beta <= beta_max; ++beta) {
        for_each_multiplicity(4, t_max, [&](const std::vector<int> &n) {
            Rational v = table.full_correlator_cached({beta, n[0], n[1], n[2], n[3]});
            if (v == 0)
                return;
            Integer denom = 1;
            for (int i = 0; i < 4; ++i) {
                denom *= factorial(static_cast<unsigned long>(n[i]));
                e[i + 1] = n[i];
            }
            e[0] = beta;
            chi.add_term(e, v / Rational(denom));
        });
    }
    return chi;
}

} // namespace spingw
