#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "spingw/rational.hpp"
#include "spingw/series.hpp"

namespace spingw {

/// Symmetric bilinear pairing on a finite basis, stored as a dense matrix.
class Metric {
public:
    Metric() = default;
    explicit Metric(std::vector<std::vector<Rational>> entries);

    std::size_t dim() const { return entries_.size(); }
    const Rational &operator()(std::size_t i, std::size_t j) const { return entries_[i][j]; }
    const std::vector<std::vector<Rational>> &entries() const { return entries_; }

    bool is_symmetric() const;
    /// Exact Gauss-Jordan inverse; throws DomainError when singular.
    Metric inverse() const;

    friend bool operator==(const Metric &, const Metric &) = default;

private:
    std::vector<std::vector<Rational>> entries_;
};

/// Kronecker product: pairing of (i, j) with (i', j') is left(i, i') * right(j, j'),
/// with the combined index i * right.dim() + j.
Metric tensor_metric(const Metric &left, const Metric &right);

/// A graded basis with its pairing. Labels double as coordinate suffixes:
/// the coordinate dual to basis element "01" is named "t01".
struct StateSpace {
    std::vector<std::string> labels;
    Metric metric;
};

/// H^r with basis e_0..e_{r-2} (labels "0".."r-2") and the anti-diagonal pairing
/// eta(e_a, e_b) = [a + b == r - 2].
StateSpace rspin_state_space(int r);

/// Basis epsilon_a (x) e_m labelled by concatenating the factor labels.
StateSpace tensor_state_space(const StateSpace &left, const StateSpace &right);

enum class Target { point, p1 };

/// H*(point) = span{1}; H*(P^1) = span{epsilon_0 = 1, epsilon_1 = point class}.
StateSpace target_state_space(Target target);

/// Integral over the target of a cup product of basis classes, given by index.
Rational target_integral(Target target, std::span<const int> classes);

nlohmann::ordered_json state_space_to_json(const StateSpace &space);

// ---------------------------------------------------------------------------
// Spin-class bookkeeping

struct SpinType {
    int r = 2;
    int genus = 0;
    std::vector<int> marks;
    int components = 1;
};

bool is_admissible(const SpinType &type);

/// Degree D = ((r-2)(g - alpha) + sum m_i) / r of the spin virtual class.
/// Throws DomainError("inadmissible type") when D is not an integer.
int spin_dimension(const SpinType &type);

/// Class values outside the stable range: (g, n) in {(0,0), (0,1), (0,2), (1,0)}.
/// Genus zero: 0 if some mark equals r-1, else 1. Genus one with no points:
/// -(r-1) on the index-1 component, 1 on the others; index must divide r.
Rational unstable_class_value(int r, int genus, std::span<const int> marks, std::optional<int> index = std::nullopt);

/// Genus-zero 3-spin numbers with marks in {0, 1}: 1 for n = 3 and sum m = 1,
/// 1/3 for m = (1,1,1,1), zero otherwise (including every n >= 5).
Rational three_spin_small_correlator(std::span<const int> marks);

/// Genus-zero r-spin numbers for r in {2, 3}; r = 2 is 1 exactly for three e_0's.
Rational spin_small_correlator(int r, std::span<const int> marks);

// ---------------------------------------------------------------------------
// Correlator oracles and potentials

/// Genus-zero correlators indexed by multiplicities of basis insertions.
struct CorrelatorOracle {
    std::vector<std::string> coordinates;  ///< one coordinate name per basis element
    int beta_max = 0;                      ///< classes 0..beta_max are summed
    std::function<Rational(int beta, std::span<const int> multiplicities)> value;
};

/// sum_beta sum_n q^beta prod t_i^{n_i}/n_i! <...>_beta over all multiplicity
/// vectors of total size <= t_bound. A Novikov variable "q" is present only when
/// beta_max > 0.
TruncatedSeries potential_from_oracle(const CorrelatorOracle &oracle, int t_bound);

/// Classical (beta = 0) correlator with insertions (class index, spin mark):
/// the spin number times the cup-product integral on the target.
Rational beta_zero_correlator(Target target, int r, std::span<const std::pair<int, int>> insertions);

/// Classical potential for (P1, 3), (point, 2) and (P1, 2), over the tensor
/// coordinates t<alpha><m>. For P1 the spec carries a Novikov variable "q" with
/// bound q_bound so the result adds directly to instanton corrections.
TruncatedSeries beta_zero_potential(Target target, int r, int q_bound, int t_bound);

/// Ordinary genus-zero Gromov-Witten correlators of a point: <1^n>_0 = [n == 3].
CorrelatorOracle point_gw_oracle();

/// Lifts GW correlators of V to the 2-spin theory of V: H^(2) is spanned by e_0
/// with eta(e_0, e_0) = 1, so the lifted basis is epsilon_alpha (x) e_0 with
/// coordinates named <coord>0, and each lifted correlator equals the original.
CorrelatorOracle two_spin_lift(const CorrelatorOracle &gw);

/// Inverse of two_spin_lift on coordinate names.
CorrelatorOracle drop_spin_factor(const CorrelatorOracle &lifted);

/// Builds both potentials to t_bound and compares them after setting the
/// 2-spin coordinate <coord>0 equal to <coord>.
bool two_spin_reduction_check(const CorrelatorOracle &gw, int t_bound);

} // namespace spingw
