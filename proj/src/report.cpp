#include <sstream>

#include "json.hpp"
#include "wamsley/wamsley.hpp"

namespace wamsley {

namespace {

using nlohmann::ordered_json;

// Integers that fit in 64 bits are numbers, larger ones strings.
ordered_json num(const Int& x) {
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(x);
    return to_string(x);
}

ordered_json nums(const std::vector<Int>& v) {
    ordered_json a = ordered_json::array();
    for (const auto& x : v) a.push_back(num(x));
    return a;
}

ordered_json params_json(const Params& p) {
    ordered_json j;
    j["alpha"] = num(p.alpha);
    j["gamma"] = num(p.gamma);
    j["p"] = num(p.p);
    j["case"] = case_name(p.tag);
    j["m"] = p.m;
    j["n"] = p.n;
    j["h"] = p.h;
    j["k"] = num(p.k);
    j["ell"] = num(p.ell);
    j["q"] = num(p.q);
    if (p.h0) j["h0"] = *p.h0;
    return j;
}

}  // namespace

std::string report_to_json(const StructureReport& r, int indent) {
    ordered_json j;
    j["params"] = params_json(r.params);
    j["cyclic"] = r.cyclic;
    j["npForm"] = r.np_form;
    ordered_json orders;
    orders["J"] = num(r.order_J);
    orders["Np"] = num(r.order_Np);
    orders["quotient"] = num(r.order_quotient);
    orders["Wp"] = num(r.order_Wp);
    orders["closedForms"] = {{"J", num(r.order_J_closed)},
                             {"Np", num(r.order_Np_closed)},
                             {"quotient", num(r.order_quotient_closed)},
                             {"Wp", num(r.order_Wp_closed)}};
    j["orders"] = orders;
    j["npInvariants"] = {{"computed", nums(r.np_invariants)},
                         {"closed", r.np_invariants_closed ? nums(*r.np_invariants_closed) : ordered_json()}};
    ordered_json levels = ordered_json::array();
    for (const auto& l : r.series)
        levels.push_back({{"index", l.index}, {"computedGens", l.computed}, {"closedGens", l.closed}, {"equal", l.equal}});
    j["series"] = {{"kind", r.series_kind}, {"levels", levels}};
    j["class"] = {{"computed", r.class_computed}, {"formula", r.class_formula}};
    j["derivedLength"] = {{"computed", r.derived_computed}, {"formula", r.derived_formula}};
    j["oracle"] = {{"ran", r.oracle_ran},
                   {"toddCoxeterOrder", {{"quotient", num(r.tc_order_quotient)}, {"Wp", num(r.tc_order_Wp)}}},
                   {"relationsPass", r.relations_pass}};
    ordered_json readings = ordered_json::array();
    for (const auto& t : r.readings) {
        ordered_json cands = ordered_json::array();
        for (const auto& c : t.candidates) cands.push_back({{"reading", c.reading}, {"holds", c.holds}});
        readings.push_back({{"relation", t.relation}, {"instances", t.instances}, {"candidates", cands},
                            {"resolved", t.resolved}});
    }
    j["readings"] = readings;
    ordered_json checks = ordered_json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["checks"] = checks;
    j["skipped"] = r.skipped;
    j["verdict"] = r.green() ? "green" : "red";
    j["mismatches"] = r.mismatches();
    return j.dump(indent);
}

std::string report_to_text(const StructureReport& r) {
    std::ostringstream os;
    const auto& p = r.params;
    os << "alpha=" << p.alpha << " gamma=" << p.gamma << " p=" << p.p << "  " << case_name(p.tag) << "  m=" << p.m
       << " n=" << p.n << " h=" << p.h << "\n";
    if (!r.cyclic) {
        os << "  |J| = " << r.order_J << "  |N_p| = " << r.order_Np << "  |G_p/N_p| = " << r.order_quotient << "\n";
        if (!r.np_form.empty()) os << "  N_p: " << r.np_form << "\n";
    }
    os << "  |W_p| = " << r.order_Wp;
    if (r.class_computed > 0) os << "  class " << r.class_computed;
    os << "\n";
    for (const auto& t : r.readings)
        os << "  reading of " << t.relation << ": " << (t.unique() ? t.resolved : "unresolved") << "\n";
    for (const auto& c : r.checks) {
        os << "  [" << (c.pass ? "ok" : "FAIL") << "] " << c.name;
        if (!c.detail.empty()) os << "  (" << c.detail << ")";
        os << "\n";
    }
    for (const auto& k : r.skipped) os << "  [skip] " << k << "\n";
    os << "  verdict: " << (r.green() ? "green" : "red") << "\n";
    return os.str();
}

}  // namespace wamsley
