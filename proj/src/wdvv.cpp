#include "spingw/wdvv.hpp"

#include <algorithm>
#include <exception>

namespace spingw {

FrobeniusCoordinates p1_three_spin_coordinates()
{
    StateSpace space = tensor_state_space(target_state_space(Target::p1), rspin_state_space(3));
    FrobeniusCoordinates coords;
    for (const auto &label : space.labels)
        coords.names.push_back("t" + label);
    coords.metric = space.metric;
    return coords;
}

ThirdDerivatives::ThirdDerivatives(const TruncatedSeries &potential, const std::vector<std::string> &names, Exec exec)
    : dim_(names.size())
{
    if (potential.t_bound() - 3 < 0)
        throw TruncationError("bounds too small to certify any third derivative coefficient");
    std::vector<std::array<int, 3>> triples;
    for (int a = 0; a < static_cast<int>(dim_); ++a)
        for (int b = a; b < static_cast<int>(dim_); ++b)
            for (int c = b; c < static_cast<int>(dim_); ++c)
                triples.push_back({a, b, c});

    std::vector<std::size_t> index;
    for (const auto &n : names)
        index.push_back(potential.spec().index_of(n));

    std::vector<std::optional<TruncatedSeries>> slots(triples.size());
    std::exception_ptr failure;
    const long count = static_cast<long>(triples.size());
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
    for (long i = 0; i < count; ++i) {
        try {
            const auto &t = triples[i];
            slots[i] = potential.partial(index[t[0]]).partial(index[t[1]]).partial(index[t[2]]);
        } catch (...) {
#pragma omp critical(spingw_wdvv_failure)
            failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
    for (auto &s : slots)
        table_.push_back(std::move(*s));
}

std::size_t ThirdDerivatives::slot(int a, int b, int c) const
{
    std::array<int, 3> t{a, b, c};
    std::sort(t.begin(), t.end());
    // Position of (t0 <= t1 <= t2) in the nested-loop order used by the constructor.
    std::size_t pos = 0;
    const int n = static_cast<int>(dim_);
    for (int x = 0; x < n; ++x)
        for (int y = x; y < n; ++y)
            for (int z = y; z < n; ++z, ++pos)
                if (x == t[0] && y == t[1] && z == t[2])
                    return pos;
    throw DomainError("third derivative index out of range");
}

const TruncatedSeries &ThirdDerivatives::operator()(int a, int b, int c) const { return table_[slot(a, b, c)]; }

namespace {

TruncatedSeries residual_from(const ThirdDerivatives &d, const Metric &inverse, const std::array<int, 4> &idx)
{
    const auto [a, b, c, dd] = idx;
    const TruncatedSeries &proto = d(0, 0, 0);
    TruncatedSeries out(proto.spec_ptr(), proto.q_bound(), proto.t_bound());
    const int n = static_cast<int>(d.dim());
    for (int e = 0; e < n; ++e) {
        for (int f = 0; f < n; ++f) {
            const Rational &g = inverse(e, f);
            if (g == 0)
                continue;
            TruncatedSeries lhs = d(a, b, e) * d(f, c, dd);
            TruncatedSeries rhs = d(c, b, e) * d(f, a, dd);
            out = out + (lhs - rhs).scaled(g);
        }
    }
    return out;
}

void check_coordinates(const FrobeniusCoordinates &coords)
{
    if (coords.names.size() != coords.metric.dim())
        throw DomainError("one coordinate per basis element is required");
}

} // namespace

TruncatedSeries wdvv_residual(const TruncatedSeries &chi, const FrobeniusCoordinates &coords,
                              const std::array<int, 4> &indices)
{
    check_coordinates(coords);
    for (int i : indices)
        if (i < 0 || i >= static_cast<int>(coords.names.size()))
            throw DomainError("WDVV index out of range");
    ThirdDerivatives d(chi, coords.names, Exec::serial);
    return residual_from(d, coords.metric.inverse(), indices);
}

std::vector<WdvvOutcome> wdvv_all_residuals(const TruncatedSeries &chi, const FrobeniusCoordinates &coords, Exec exec)
{
    check_coordinates(coords);
    ThirdDerivatives d(chi, coords.names, exec);
    const Metric inverse = coords.metric.inverse();
    const int n = static_cast<int>(coords.names.size());
    const long total = static_cast<long>(n) * n * n * n;

    std::vector<std::optional<TruncatedSeries>> slots(total);
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
    for (long t = 0; t < total; ++t) {
        std::array<int, 4> idx{static_cast<int>(t / (n * n * n)), static_cast<int>(t / (n * n) % n),
                               static_cast<int>(t / n % n), static_cast<int>(t % n)};
        try {
            slots[t] = residual_from(d, inverse, idx);
        } catch (...) {
#pragma omp critical(spingw_wdvv_failure)
            failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);

    std::vector<WdvvOutcome> out;
    out.reserve(total);
    for (long t = 0; t < total; ++t)
        out.push_back({{static_cast<int>(t / (n * n * n)), static_cast<int>(t / (n * n) % n),
                        static_cast<int>(t / n % n), static_cast<int>(t % n)},
                       std::move(*slots[t])});
    return out;
}

} // namespace spingw
