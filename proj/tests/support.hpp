#pragma once

#include <unistd.h>

#include <filesystem>
#include <random>
#include <string>

#include "spingw/series.hpp"
#include "spingw/stable_graph.hpp"

namespace testing_support {

using spingw::Rational;
using spingw::TruncatedSeries;

inline Rational random_rational(std::mt19937 &rng, int span = 9, int max_den = 6)
{
    std::uniform_int_distribution<int> num(-span, span), den(1, max_den);
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

/// Random series with `terms` monomials, each of total degree <= t_bound and
/// Novikov degree <= q_bound.
inline TruncatedSeries random_series(std::mt19937 &rng, const std::shared_ptr<const spingw::VariableSpec> &spec,
                                     int q_bound, int t_bound, int terms)
{
    TruncatedSeries s(spec, q_bound, t_bound);
    const int nv = static_cast<int>(spec->size());
    std::uniform_int_distribution<int> var(0, nv - 1), deg(0, t_bound), qdeg(0, q_bound);
    for (int k = 0; k < terms; ++k) {
        spingw::Exponents e(spec->size(), 0);
        int d = deg(rng);
        for (int i = 0; i < d;) {
            int v = var(rng);
            if (spec->is_novikov(static_cast<std::size_t>(v)))
                continue;
            ++e[v];
            ++i;
        }
        if (auto q = spec->novikov_index())
            e[*q] = qdeg(rng);
        s.add_term(e, random_rational(rng));
    }
    return s;
}

/// Series with zero constant term, usable as an exp argument or substitute image.
inline TruncatedSeries random_positive_series(std::mt19937 &rng,
                                              const std::shared_ptr<const spingw::VariableSpec> &spec, int q_bound,
                                              int t_bound, int terms)
{
    TruncatedSeries s = random_series(rng, spec, q_bound, t_bound, terms);
    TruncatedSeries out(spec, q_bound, t_bound);
    for (const auto &[e, c] : s.terms())
        if (s.t_degree(e) >= 1)
            out.add_term(e, c);
    return out;
}

/// Connected-or-not random graph with congruent edge marks.
inline spingw::DecoratedGraph random_graph(std::mt19937 &rng, int r, int max_vertices = 6)
{
    spingw::DecoratedGraph g;
    g.r = r;
    int nv = std::uniform_int_distribution<int>(1, max_vertices)(rng);
    int ne = std::uniform_int_distribution<int>(0, 7)(rng);
    int nt = std::uniform_int_distribution<int>(0, 5)(rng);
    std::uniform_int_distribution<int> vert(0, nv - 1), mark(0, r - 1), small(0, 2), coin(0, 1);
    for (int v = 0; v < nv; ++v)
        g.vertices.push_back({coin(rng) ? 0 : small(rng), coin(rng) ? 0 : small(rng)});
    for (int i = 0; i < ne; ++i) {
        int m = mark(rng);
        g.edges.push_back({vert(rng), m, vert(rng), ((r - 2 - m) % r + r) % r});
    }
    for (int i = 0; i < nt; ++i)
        g.tails.push_back({vert(rng), i + 1, mark(rng)});
    return g;
}

/// Scratch path removed when the object goes out of scope.
class TempPath {
public:
    explicit TempPath(const std::string &stem)
    {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("spingw_" + stem + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    }
    ~TempPath()
    {
        std::error_code ec;
        std::filesystem::remove(path_, ec);
    }
    TempPath(const TempPath &) = delete;
    TempPath &operator=(const TempPath &) = delete;
    std::string str() const { return path_.string(); }

private:
    std::filesystem::path path_;
};

} // namespace testing_support
