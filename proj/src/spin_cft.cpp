#include "spingw/spin_cft.hpp"

#include <algorithm>
#include <numeric>

#include "spingw/multiset.hpp"

namespace spingw {

Metric::Metric(std::vector<std::vector<Rational>> entries) : entries_(std::move(entries))
{
    for (const auto &row : entries_)
        if (row.size() != entries_.size())
            throw DomainError("metric must be a square matrix");
}

bool Metric::is_symmetric() const
{
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = i + 1; j < dim(); ++j)
            if (entries_[i][j] != entries_[j][i])
                return false;
    return true;
}

Metric Metric::inverse() const
{
    const std::size_t n = dim();
    auto a = entries_;
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0)
            ++pivot;
        if (pivot == n)
            throw DomainError("metric is degenerate");
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        Rational scale = 1 / a[col][col];
        for (std::size_t k = 0; k < n; ++k) {
            a[col][k] *= scale;
            inv[col][k] *= scale;
        }
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col] == 0)
                continue;
            Rational f = a[row][col];
            for (std::size_t k = 0; k < n; ++k) {
                a[row][k] -= f * a[col][k];
                inv[row][k] -= f * inv[col][k];
            }
        }
    }
    return Metric(std::move(inv));
}

Metric tensor_metric(const Metric &left, const Metric &right)
{
    const std::size_t dl = left.dim(), dr = right.dim();
    std::vector<std::vector<Rational>> out(dl * dr, std::vector<Rational>(dl * dr, 0));
    for (std::size_t i = 0; i < dl; ++i)
        for (std::size_t j = 0; j < dr; ++j)
            for (std::size_t k = 0; k < dl; ++k)
                for (std::size_t l = 0; l < dr; ++l)
                    out[i * dr + j][k * dr + l] = left(i, k) * right(j, l);
    return Metric(std::move(out));
}

StateSpace rspin_state_space(int r)
{
    if (r < 2)
        throw DomainError("r must be at least 2");
    const auto n = static_cast<std::size_t>(r - 1);
    StateSpace space;
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, 0));
    for (std::size_t a = 0; a < n; ++a) {
        space.labels.push_back(std::to_string(a));
        m[a][n - 1 - a] = 1;
    }
    space.metric = Metric(std::move(m));
    return space;
}

StateSpace tensor_state_space(const StateSpace &left, const StateSpace &right)
{
    StateSpace out;
    for (const auto &a : left.labels)
        for (const auto &b : right.labels)
            out.labels.push_back(a + b);
    out.metric = tensor_metric(left.metric, right.metric);
    return out;
}

StateSpace target_state_space(Target target)
{
    if (target == Target::point)
        return {{"0"}, Metric({{Rational(1)}})};
    return {{"0", "1"}, Metric({{Rational(0), Rational(1)}, {Rational(1), Rational(0)}})};
}

Rational target_integral(Target target, std::span<const int> classes)
{
    if (target == Target::point) {
        for (int c : classes)
            if (c != 0)
                throw DomainError("the point has a single basis class");
        return 1;
    }
    int points = 0;
    for (int c : classes) {
        if (c != 0 && c != 1)
            throw DomainError("P1 basis index must be 0 or 1");
        points += c;
    }
    return points == 1 ? 1 : 0;
}

nlohmann::ordered_json state_space_to_json(const StateSpace &space)
{
    nlohmann::ordered_json j;
    j["labels"] = space.labels;
    auto rows = nlohmann::ordered_json::array();
    for (const auto &row : space.metric.entries()) {
        auto r = nlohmann::ordered_json::array();
        for (const auto &x : row)
            r.push_back(to_string(x));
        rows.push_back(std::move(r));
    }
    j["metric"] = std::move(rows);
    return j;
}

bool is_admissible(const SpinType &type)
{
    if (type.r < 2 || type.genus < 0 || type.components < 1)
        return false;
    for (int m : type.marks)
        if (m < 0 || m > type.r - 1)
            return false;
    long numer = static_cast<long>(type.r - 2) * (type.genus - type.components) +
                 std::accumulate(type.marks.begin(), type.marks.end(), 0L);
    return numer % type.r == 0;
}

int spin_dimension(const SpinType &type)
{
    if (type.r < 2)
        throw DomainError("r must be at least 2");
    for (int m : type.marks)
        if (m < 0 || m > type.r - 1)
            throw DomainError("mark out of range 0..r-1");
    if (!is_admissible(type))
        throw DomainError("inadmissible type: (r-2)(g-alpha) + sum m is not divisible by r");
    long numer = static_cast<long>(type.r - 2) * (type.genus - type.components) +
                 std::accumulate(type.marks.begin(), type.marks.end(), 0L);
    return static_cast<int>(numer / type.r);
}

Rational unstable_class_value(int r, int genus, std::span<const int> marks, std::optional<int> index)
{
    if (r < 2)
        throw DomainError("r must be at least 2");
    const auto n = marks.size();
    for (int m : marks)
        if (m < 0 || m > r - 1)
            throw DomainError("mark out of range 0..r-1");
    if (genus == 0 && n <= 2) {
        bool top = std::any_of(marks.begin(), marks.end(), [r](int m) { return m == r - 1; });
        return top ? 0 : 1;
    }
    if (genus == 1 && n == 0) {
        if (!index)
            throw DomainError("genus-one class value needs the component index");
        if (*index < 1 || r % *index != 0)
            throw DomainError("component index must be a positive divisor of r");
        return *index == 1 ? Rational(-(r - 1)) : Rational(1);
    }
    throw DomainError("(g, n) = (" + std::to_string(genus) + ", " + std::to_string(n) + ") is in the stable range");
}

Rational three_spin_small_correlator(std::span<const int> marks)
{
    for (int m : marks)
        if (m != 0 && m != 1)
            throw DomainError("3-spin marks must be 0 or 1");
    if (marks.size() < 3)
        throw DomainError("small correlators need at least three insertions");
    int sum = std::accumulate(marks.begin(), marks.end(), 0);
    if (marks.size() == 3)
        return sum == 1 ? 1 : 0;
    if (marks.size() == 4)
        return sum == 4 ? Rational(1, 3) : Rational(0);
    return 0;
}

Rational spin_small_correlator(int r, std::span<const int> marks)
{
    if (r == 3)
        return three_spin_small_correlator(marks);
    if (r != 2)
        throw DomainError("small correlators are implemented for r = 2 and r = 3 only");
    for (int m : marks)
        if (m != 0 && m != 1)
            throw DomainError("2-spin marks must be 0 or 1");
    if (marks.size() < 3)
        throw DomainError("small correlators need at least three insertions");
    bool all_zero = std::all_of(marks.begin(), marks.end(), [](int m) { return m == 0; });
    return marks.size() == 3 && all_zero ? 1 : 0;
}

TruncatedSeries potential_from_oracle(const CorrelatorOracle &oracle, int t_bound)
{
    std::vector<std::string> names;
    std::optional<std::string> novikov;
    if (oracle.beta_max > 0) {
        names.push_back("q");
        novikov = "q";
    }
    const std::size_t offset = names.size();
    names.insert(names.end(), oracle.coordinates.begin(), oracle.coordinates.end());
    TruncatedSeries out(make_spec(std::move(names), novikov), oracle.beta_max, t_bound);

    Exponents e(out.spec().size(), 0);
    for (int beta = 0; beta <= oracle.beta_max; ++beta) {
        for_each_multiplicity(oracle.coordinates.size(), t_bound, [&](const std::vector<int> &counts) {
            Rational v = oracle.value(beta, counts);
            if (v == 0)
                return;
            Integer denom = 1;
            for (std::size_t i = 0; i < counts.size(); ++i) {
                denom *= factorial(static_cast<unsigned long>(counts[i]));
                e[offset + i] = counts[i];
            }
            if (offset)
                e[0] = beta;
            out.add_term(e, v / Rational(denom));
        });
    }
    return out;
}

Rational beta_zero_correlator(Target target, int r, std::span<const std::pair<int, int>> insertions)
{
    std::vector<int> classes, marks;
    for (auto [alpha, m] : insertions) {
        classes.push_back(alpha);
        marks.push_back(m);
    }
    if (insertions.size() < 3)
        return 0;
    Rational integral = target_integral(target, classes);
    if (integral == 0)
        return 0;
    return spin_small_correlator(r, marks) * integral;
}

namespace {

/// Classical correlators of target (x) H^r as a multiplicity oracle.
CorrelatorOracle beta_zero_oracle(Target target, int r)
{
    StateSpace space = tensor_state_space(target_state_space(target), rspin_state_space(r));
    const int spin_dim = r - 1;
    CorrelatorOracle oracle;
    for (const auto &label : space.labels)
        oracle.coordinates.push_back("t" + label);
    oracle.value = [target, r, spin_dim](int beta, std::span<const int> counts) -> Rational {
        if (beta != 0)
            return 0;
        std::vector<std::pair<int, int>> insertions;
        for (std::size_t i = 0; i < counts.size(); ++i)
            for (int k = 0; k < counts[i]; ++k)
                insertions.emplace_back(static_cast<int>(i) / spin_dim, static_cast<int>(i) % spin_dim);
        return beta_zero_correlator(target, r, insertions);
    };
    return oracle;
}

} // namespace

TruncatedSeries beta_zero_potential(Target target, int r, int q_bound, int t_bound)
{
    bool supported = (target == Target::p1 && (r == 2 || r == 3)) || (target == Target::point && r == 2);
    if (!supported)
        throw DomainError("beta_zero_potential: unimplemented (target, r) pair");
    CorrelatorOracle oracle = beta_zero_oracle(target, r);
    // Classical correlators vanish beyond four insertions.
    TruncatedSeries classical = potential_from_oracle(oracle, std::min(t_bound, 4));
    std::vector<std::string> names;
    std::optional<std::string> novikov;
    if (target == Target::p1) {
        names.push_back("q");
        novikov = "q";
    }
    const std::size_t offset = names.size();
    names.insert(names.end(), oracle.coordinates.begin(), oracle.coordinates.end());
    TruncatedSeries out(make_spec(std::move(names), novikov), q_bound, t_bound);
    for (const auto &[e, c] : classical.terms()) {
        Exponents full(offset, 0);
        full.insert(full.end(), e.begin(), e.end());
        out.add_term(full, c);
    }
    return out;
}

CorrelatorOracle point_gw_oracle()
{
    CorrelatorOracle oracle;
    oracle.coordinates = {"t0"};
    oracle.value = [](int beta, std::span<const int> counts) -> Rational {
        return beta == 0 && counts.size() == 1 && counts[0] == 3 ? 1 : 0;
    };
    return oracle;
}

CorrelatorOracle two_spin_lift(const CorrelatorOracle &gw)
{
    if (!gw.value)
        throw DomainError("two_spin_lift: oracle has no correlator function");
    CorrelatorOracle lifted = gw;
    for (auto &name : lifted.coordinates)
        name += "0";
    return lifted;
}

CorrelatorOracle drop_spin_factor(const CorrelatorOracle &lifted)
{
    CorrelatorOracle out = lifted;
    for (auto &name : out.coordinates) {
        if (name.empty() || name.back() != '0')
            throw DomainError("drop_spin_factor: coordinate '" + name + "' is not an e_0 coordinate");
        name.pop_back();
    }
    return out;
}

bool two_spin_reduction_check(const CorrelatorOracle &gw, int t_bound)
{
    TruncatedSeries gw_potential = potential_from_oracle(gw, t_bound);
    TruncatedSeries spin_potential = potential_from_oracle(two_spin_lift(gw), t_bound);
    std::map<std::string, TruncatedSeries> assignment;
    for (const auto &name : gw.coordinates)
        assignment.emplace(name + "0", TruncatedSeries::variable(gw_potential.spec_ptr(), gw_potential.q_bound(),
                                                                 gw_potential.t_bound(), name));
    return spin_potential.substitute(assignment) == gw_potential;
}

} // namespace spingw
