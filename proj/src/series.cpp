#include "spingw/series.hpp"

#include <algorithm>
#include <set>

namespace spingw {

VariableSpec::VariableSpec(std::vector<std::string> names, std::optional<std::string> novikov)
    : names_(std::move(names))
{
    std::set<std::string> seen;
    for (const auto &n : names_) {
        if (n.empty())
            throw DomainError("empty variable name");
        if (!seen.insert(n).second)
            throw DomainError("duplicate variable name '" + n + "'");
    }
    if (novikov)
        novikov_ = index_of(*novikov);
}

bool VariableSpec::has(const std::string &name) const
{
    return std::find(names_.begin(), names_.end(), name) != names_.end();
}

std::size_t VariableSpec::index_of(const std::string &name) const
{
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end())
        throw DomainError("unknown variable '" + name + "'");
    return static_cast<std::size_t>(it - names_.begin());
}

TruncatedSeries::TruncatedSeries(std::shared_ptr<const VariableSpec> spec, int q_bound, int t_bound)
    : spec_(std::move(spec)), q_bound_(q_bound), t_bound_(t_bound)
{
    if (!spec_)
        throw DomainError("series requires a variable spec");
    if (!spec_->novikov_index())
        q_bound_ = 0;
    if (q_bound_ < 0)
        throw DomainError("negative q bound");
}

TruncatedSeries TruncatedSeries::constant(std::shared_ptr<const VariableSpec> spec, int q_bound, int t_bound,
                                          const Rational &value)
{
    TruncatedSeries s(std::move(spec), q_bound, t_bound);
    s.add_term(Exponents(s.spec().size(), 0), value);
    return s;
}

TruncatedSeries TruncatedSeries::variable(std::shared_ptr<const VariableSpec> spec, int q_bound, int t_bound,
                                          const std::string &name)
{
    TruncatedSeries s(std::move(spec), q_bound, t_bound);
    Exponents e(s.spec().size(), 0);
    e[s.spec().index_of(name)] = 1;
    s.add_term(e, 1);
    return s;
}

TruncatedSeries TruncatedSeries::monomial(std::shared_ptr<const VariableSpec> spec, int q_bound, int t_bound,
                                          Exponents exponents, const Rational &coeff)
{
    TruncatedSeries s(std::move(spec), q_bound, t_bound);
    if (exponents.size() != s.spec().size())
        throw DomainError("exponent vector length does not match the variable spec");
    s.add_term(exponents, coeff);
    return s;
}

int TruncatedSeries::q_degree(const Exponents &e) const
{
    auto q = spec_->novikov_index();
    return q ? e[*q] : 0;
}

int TruncatedSeries::t_degree(const Exponents &e) const
{
    int d = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
        if (!spec_->is_novikov(i))
            d += e[i];
    return d;
}

bool TruncatedSeries::within_bounds(const Exponents &e) const
{
    return q_degree(e) <= q_bound_ && t_degree(e) <= t_bound_;
}

void TruncatedSeries::add_term(const Exponents &e, const Rational &coeff)
{
    if (e.size() != spec_->size())
        throw DomainError("exponent vector length does not match the variable spec");
    for (int x : e)
        if (x < 0)
            throw DomainError("negative exponent");
    if (coeff == 0 || !within_bounds(e))
        return;
    auto [it, inserted] = terms_.try_emplace(e, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0)
            terms_.erase(it);
    }
}

Rational TruncatedSeries::coefficient(const Exponents &e) const
{
    if (e.size() != spec_->size())
        throw DomainError("exponent vector length does not match the variable spec");
    if (!within_bounds(e))
        throw TruncationError("monomial lies outside truncation (q<=" + std::to_string(q_bound_) +
                              ", t<=" + std::to_string(t_bound_) + ")");
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

void TruncatedSeries::require_same_spec(const TruncatedSeries &other, const char *op) const
{
    if (spec_ != other.spec_ && !(*spec_ == *other.spec_))
        throw DomainError(std::string(op) + ": mismatched variable specs");
}

TruncatedSeries TruncatedSeries::operator-() const
{
    TruncatedSeries out = *this;
    for (auto &[e, c] : out.terms_)
        c = -c;
    return out;
}

TruncatedSeries TruncatedSeries::scaled(const Rational &factor) const
{
    TruncatedSeries out(spec_, q_bound_, t_bound_);
    if (factor == 0)
        return out;
    for (const auto &[e, c] : terms_)
        out.terms_.emplace_hint(out.terms_.end(), e, c * factor);
    return out;
}

TruncatedSeries TruncatedSeries::truncated(int q_bound, int t_bound) const
{
    TruncatedSeries out(spec_, std::min(q_bound, q_bound_), std::min(t_bound, t_bound_));
    for (const auto &[e, c] : terms_)
        if (out.within_bounds(e))
            out.terms_.emplace_hint(out.terms_.end(), e, c);
    return out;
}

TruncatedSeries operator+(const TruncatedSeries &a, const TruncatedSeries &b)
{
    a.require_same_spec(b, "add");
    TruncatedSeries out = a.truncated(b.q_bound_, b.t_bound_);
    for (const auto &[e, c] : b.terms_)
        out.add_term(e, c);
    return out;
}

TruncatedSeries operator-(const TruncatedSeries &a, const TruncatedSeries &b) { return a + (-b); }

TruncatedSeries operator*(const TruncatedSeries &a, const TruncatedSeries &b)
{
    a.require_same_spec(b, "mul");
    TruncatedSeries out(a.spec_, std::min(a.q_bound_, b.q_bound_), std::min(a.t_bound_, b.t_bound_));
    Exponents e(a.spec_->size());
    for (const auto &[ea, ca] : a.terms_) {
        int qa = a.q_degree(ea), ta = a.t_degree(ea);
        if (qa > out.q_bound_ || ta > out.t_bound_)
            continue;
        for (const auto &[eb, cb] : b.terms_) {
            if (qa + b.q_degree(eb) > out.q_bound_ || ta + b.t_degree(eb) > out.t_bound_)
                continue;
            for (std::size_t i = 0; i < e.size(); ++i)
                e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

bool operator==(const TruncatedSeries &a, const TruncatedSeries &b)
{
    return *a.spec_ == *b.spec_ && a.q_bound_ == b.q_bound_ && a.t_bound_ == b.t_bound_ && a.terms_ == b.terms_;
}

TruncatedSeries TruncatedSeries::partial(const std::string &name) const { return partial(spec_->index_of(name)); }

TruncatedSeries TruncatedSeries::partial(std::size_t index) const
{
    if (index >= spec_->size())
        throw DomainError("variable index out of range");
    if (spec_->is_novikov(index))
        throw DomainError("cannot differentiate in the Novikov variable '" + spec_->names()[index] + "'");
    TruncatedSeries out(spec_, q_bound_, t_bound_ - 1);
    for (const auto &[e, c] : terms_) {
        if (e[index] == 0)
            continue;
        Exponents d = e;
        d[index] -= 1;
        out.add_term(d, c * e[index]);
    }
    return out;
}

TruncatedSeries TruncatedSeries::exp() const
{
    Exponents zero(spec_->size(), 0);
    if (terms_.count(zero))
        throw DomainError("exp: series has a nonzero constant term");
    TruncatedSeries result = constant(spec_, q_bound_, t_bound_, 1);
    TruncatedSeries power = result;
    // Every term has q- or t-degree >= 1, so s^k vanishes once k exceeds both bounds combined.
    for (unsigned long k = 1; !power.is_zero(); ++k) {
        power = (power * *this).scaled(Rational(1, k));
        result = result + power;
    }
    return result;
}

TruncatedSeries TruncatedSeries::substitute(const std::map<std::string, TruncatedSeries> &assignment) const
{
    std::shared_ptr<const VariableSpec> target = spec_;
    int q_bound = q_bound_;
    int t_bound = t_bound_;
    if (!assignment.empty()) {
        target = assignment.begin()->second.spec_ptr();
        for (const auto &[name, s] : assignment) {
            if (!spec_->has(name))
                throw DomainError("substitute: unknown source variable '" + name + "'");
            if (s.spec_ptr() != target && !(s.spec() == *target))
                throw DomainError("substitute: assigned series use different variable specs");
            q_bound = std::min(q_bound, s.q_bound());
            t_bound = std::min(t_bound, s.t_bound());
        }
    }

    // One substitute per source variable, expressed over the target spec.
    std::vector<TruncatedSeries> images;
    images.reserve(spec_->size());
    for (std::size_t i = 0; i < spec_->size(); ++i) {
        const std::string &name = spec_->names()[i];
        auto it = assignment.find(name);
        if (it == assignment.end()) {
            if (!target->has(name))
                throw DomainError("substitute: variable '" + name + "' has no image in the target spec");
            if (spec_->is_novikov(i) != target->is_novikov(target->index_of(name)))
                throw DomainError("substitute: Novikov flag of '" + name + "' differs in the target spec");
            images.push_back(variable(target, q_bound, t_bound, name));
            continue;
        }
        TruncatedSeries image = it->second.truncated(q_bound, t_bound);
        // Truncated source terms must stay beyond the result bounds after substitution.
        for (const auto &[e, c] : image.terms()) {
            bool ok = spec_->is_novikov(i) ? image.q_degree(e) >= 1 : image.t_degree(e) >= 1;
            if (!ok)
                throw TruncationError("substitute: image of '" + name +
                                      "' would pull truncated terms into the certified range");
        }
        images.push_back(std::move(image));
    }

    TruncatedSeries out(target, q_bound, t_bound);
    std::vector<std::vector<TruncatedSeries>> powers(images.size());
    auto power_of = [&](std::size_t var, int k) -> const TruncatedSeries & {
        auto &cache = powers[var];
        if (cache.empty())
            cache.push_back(constant(target, q_bound, t_bound, 1));
        while (static_cast<int>(cache.size()) <= k)
            cache.push_back(cache.back() * images[var]);
        return cache[k];
    };
    for (const auto &[e, c] : terms_) {
        TruncatedSeries term = constant(target, q_bound, t_bound, c);
        for (std::size_t i = 0; i < e.size() && !term.is_zero(); ++i)
            if (e[i] > 0)
                term = term * power_of(i, e[i]);
        for (const auto &[te, tc] : term.terms())
            out.add_term(te, tc);
    }
    return out;
}

} // namespace spingw
