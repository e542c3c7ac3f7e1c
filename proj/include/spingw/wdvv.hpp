#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "spingw/execution.hpp"
#include "spingw/series.hpp"
#include "spingw/spin_cft.hpp"

namespace spingw {

/// Flat coordinates of a potential together with the pairing of their basis.
struct FrobeniusCoordinates {
    std::vector<std::string> names;
    Metric metric;
};

FrobeniusCoordinates p1_three_spin_coordinates();

/// All third partial derivatives of a potential, indexed by sorted triples.
class ThirdDerivatives {
public:
    ThirdDerivatives(const TruncatedSeries &potential, const std::vector<std::string> &names, Exec exec);
    const TruncatedSeries &operator()(int a, int b, int c) const;
    std::size_t dim() const { return dim_; }

private:
    std::size_t slot(int a, int b, int c) const;
    std::size_t dim_;
    std::vector<TruncatedSeries> table_;
};

/// d_a d_b d_e chi eta^{ef} d_f d_c d_d chi - d_c d_b d_e chi eta^{ef} d_f d_a d_d chi.
/// The result carries the bounds certified by the truncation of chi; throws
/// TruncationError if those bounds leave no coefficient certified.
TruncatedSeries wdvv_residual(const TruncatedSeries &chi, const FrobeniusCoordinates &coords,
                              const std::array<int, 4> &indices);

struct WdvvOutcome {
    std::array<int, 4> indices{};
    TruncatedSeries residual;
};

/// Residuals for every 4-tuple of basis indices, in lexicographic order.
std::vector<WdvvOutcome> wdvv_all_residuals(const TruncatedSeries &chi, const FrobeniusCoordinates &coords,
                                            Exec exec = Exec::parallel);

} // namespace spingw
