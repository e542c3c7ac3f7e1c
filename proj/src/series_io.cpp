#include "spingw/series_io.hpp"

#include <sstream>

namespace spingw {

nlohmann::ordered_json series_to_json(const TruncatedSeries &s)
{
    nlohmann::ordered_json j;
    j["variables"] = s.spec().names();
    if (auto q = s.spec().novikov_index())
        j["novikov"] = s.spec().names()[*q];
    else
        j["novikov"] = nullptr;
    j["q_bound"] = s.q_bound();
    j["t_bound"] = s.t_bound();
    auto terms = nlohmann::ordered_json::array();
    for (const auto &[e, c] : s.terms()) {
        nlohmann::ordered_json t;
        t["exponents"] = e;
        t["coeff"] = to_string(c);
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

TruncatedSeries series_from_json(const nlohmann::json &j)
{
    try {
        auto names = j.at("variables").get<std::vector<std::string>>();
        std::optional<std::string> novikov;
        if (j.contains("novikov") && !j.at("novikov").is_null())
            novikov = j.at("novikov").get<std::string>();
        TruncatedSeries s(make_spec(std::move(names), novikov), j.at("q_bound").get<int>(), j.at("t_bound").get<int>());
        for (const auto &t : j.at("terms")) {
            auto e = t.at("exponents").get<Exponents>();
            if (!s.within_bounds(e))
                throw TruncationError("serialized term lies outside its own bounds");
            s.add_term(e, parse_rational(t.at("coeff").get<std::string>()));
        }
        return s;
    } catch (const nlohmann::json::exception &ex) {
        throw DomainError(std::string("malformed series JSON: ") + ex.what());
    }
}

std::string series_to_csv(const TruncatedSeries &s)
{
    std::ostringstream out;
    for (const auto &n : s.spec().names())
        out << n << ',';
    out << "coeff\n";
    for (const auto &[e, c] : s.terms()) {
        for (int x : e)
            out << x << ',';
        out << to_string(c) << '\n';
    }
    return out.str();
}

} // namespace spingw
