#include "switchopt/json_io.hpp"

#include <cstdio>

namespace switchopt {

using nlohmann::json;

namespace {

void put(json& j, const char* key, const std::optional<double>& v) {
    if (v) j[key] = *v;
}

std::optional<double> get_opt(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<double>();
}

json interval_list(const std::vector<Interval>& list) {
    json out = json::array();
    for (const auto& iv : list) {
        json pair = json::array();
        pair.push_back(iv.lo);
        if (iv.hi == kInf)
            pair.push_back(nullptr);
        else
            pair.push_back(iv.hi);
        out.push_back(pair);
    }
    return out;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

json to_json(const ProblemData& data) {
    json j;
    j["market"] = {{"b", data.market.b},
                   {"sigma", data.market.sigma},
                   {"r", data.market.r}};
    j["costs"] = {{"K1", data.costs.K1},
                  {"K0", data.costs.K0},
                  {"K", data.costs.K}};
    json powers = json::array();
    for (const auto& p : data.payoff.powers)
        powers.push_back(json::array({p.c, p.theta}));
    json steps = json::array();
    for (const auto& s : data.payoff.steps)
        steps.push_back(json::array({s.j, s.a}));
    j["payoff"] = {{"powers", powers},
                   {"constant", data.payoff.constant},
                   {"steps", steps}};
    return j;
}

ProblemData problem_from_json(const json& j) {
    try {
        ProblemData data;
        const auto& m = j.at("market");
        data.market.b = m.at("b").get<double>();
        data.market.sigma = m.at("sigma").get<double>();
        data.market.r = m.at("r").get<double>();
        const auto& c = j.at("costs");
        data.costs.K1 = c.at("K1").get<double>();
        data.costs.K0 = c.at("K0").get<double>();
        data.costs.K = c.at("K").get<double>();
        const auto& p = j.at("payoff");
        for (const auto& t : p.at("powers"))
            data.payoff.powers.push_back(
                {t.at(0).get<double>(), t.at(1).get<double>()});
        data.payoff.constant = p.value("constant", 0.0);
        if (p.contains("steps"))
            for (const auto& t : p.at("steps"))
                data.payoff.steps.push_back(
                    {t.at(0).get<double>(), t.at(1).get<double>()});
        return data;
    } catch (const json::exception& e) {
        throw InvalidProblem(std::string("malformed problem JSON: ") + e.what());
    }
}

json to_json(const Thresholds& t) {
    json j = json::object();
    put(j, "delta_dagger", t.delta_dagger);
    put(j, "x_hat", t.x_hat);
    put(j, "K0_star", t.K0_star);
    put(j, "K1_dagger", t.K1_dagger);
    put(j, "K0_dagger", t.K0_dagger);
    return j;
}

json to_json(const Classification& c) {
    json j;
    j["case"] = to_string(c.id);
    j["thresholds"] = to_json(c.thresholds);
    return j;
}

json to_json(const FreeBoundaries& b) {
    json j = json::object();
    put(j, "zeta", b.zeta);
    put(j, "delta", b.delta);
    put(j, "gamma", b.gamma);
    put(j, "beta", b.beta);
    put(j, "alpha", b.alpha);
    return j;
}

FreeBoundaries boundaries_from_json(const json& j) {
    FreeBoundaries b;
    b.zeta = get_opt(j, "zeta");
    b.delta = get_opt(j, "delta");
    b.gamma = get_opt(j, "gamma");
    b.beta = get_opt(j, "beta");
    b.alpha = get_opt(j, "alpha");
    return b;
}

json to_json(const Coefficients& c) {
    json j = json::object();
    put(j, "A", c.A);
    put(j, "B", c.B);
    put(j, "Gamma1", c.Gamma1);
    put(j, "Gamma2", c.Gamma2);
    put(j, "Delta1", c.Delta1);
    put(j, "Delta2", c.Delta2);
    return j;
}

json to_json(const RegionMap& regions) {
    json j;
    j["P"] = interval_list(regions.P);
    j["W"] = interval_list(regions.W);
    j["S_out"] = interval_list(regions.S_out);
    j["S_in"] = interval_list(regions.S_in);
    j["A0"] = interval_list(regions.A0);
    j["A1"] = interval_list(regions.A1);
    return j;
}

json to_json(const Solution& sol) {
    json j;
    j["problem"] = to_json(sol.ctx.data);
    j["case"] = to_string(sol.case_id);
    j["roots"] = {{"m", sol.ctx.m()}, {"n", sol.ctx.n()}};
    j["thresholds"] = to_json(sol.thresholds);
    j["boundaries"] = to_json(sol.boundaries);
    j["coefficients"] = to_json(sol.coefficients);
    j["regions"] = to_json(sol.regions);
    return j;
}

json to_json(const HjbReport& rep) {
    json j;
    j["pass"] = rep.pass;
    j["points"] = rep.grid.size();
    j["max_clause"] = rep.max_clause;
    j["max_clause_normalized"] = rep.max_clause_normalized;
    j["min_pointwise_max1"] = rep.min_pointwise_max1;
    j["min_pointwise_max0"] = rep.min_pointwise_max0;
    return j;
}

json to_json(const C1Report& rep) {
    json j;
    j["pass"] = rep.pass;
    json gaps = json::array();
    for (const auto& g : rep.gaps)
        gaps.push_back({{"mode", g.mode},
                        {"boundary", g.boundary},
                        {"value_gap", g.value_gap},
                        {"slope_gap", g.slope_gap},
                        {"tol", g.tol}});
    j["gaps"] = gaps;
    return j;
}

json to_json(const McResult& res) {
    json j;
    j["mean"] = res.mean;
    j["std_error"] = res.std_error;
    j["switch_count_mean"] = res.switch_count_mean;
    j["abandon_fraction"] = res.abandon_fraction;
    j["truncation_fraction"] = res.truncation_fraction;
    j["bias_budget"] = res.bias_budget;
    j["paths"] = res.paths;
    return j;
}

std::string sample_csv(const Solution& sol, const GridSpec& grid) {
    std::string out = "x,w1,w0,dw1,dw0,region1,region0\n";
    for (double x : make_grid(grid)) {
        const char* r1 = "P";
        if (sol.regions.in(sol.regions.A1, x))
            r1 = "A1";
        else if (sol.regions.in(sol.regions.S_out, x))
            r1 = "Sout";
        const char* r0 = "W";
        if (sol.regions.in(sol.regions.A0, x))
            r0 = "A0";
        else if (sol.regions.in(sol.regions.S_in, x))
            r0 = "Sin";
        out += fmt17(x) + "," + fmt17(eval(sol, 1, x, 0)) + "," +
               fmt17(eval(sol, 0, x, 0)) + "," + fmt17(eval(sol, 1, x, 1)) +
               "," + fmt17(eval(sol, 0, x, 1)) + "," + r1 + "," + r0 + "\n";
    }
    return out;
}

std::string hjb_csv(const HjbReport& rep) {
    std::string out = "x,gen1,sw_out,ab1,gen0,sw_in,ab0\n";
    for (std::size_t i = 0; i < rep.grid.size(); ++i) {
        out += fmt17(rep.grid[i]);
        for (double c : rep.clauses[i]) out += "," + fmt17(c);
        out += "\n";
    }
    return out;
}

}  // namespace switchopt
