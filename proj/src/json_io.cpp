#include "coulomb/json_io.hpp"

#include "coulomb/errors.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>

namespace coulomb::json_io {

std::string format12(double x) {
    if (x == 0.0) return "0";  // drops the sign of -0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

double round12(double x) {
    if (!std::isfinite(x)) return x;
    return std::strtod(format12(x).c_str(), nullptr);
}

json to_json(double x) {
    if (!std::isfinite(x)) return nullptr;
    return round12(x);
}

json to_json(cplx z) { return json::array({to_json(z.real()), to_json(z.imag())}); }

json to_json(const Mat2& m) {
    json out = json::array();
    for (int i = 0; i < 2; ++i) {
        json row = json::array();
        for (int j = 0; j < 2; ++j) row.push_back(to_json(m(i, j)));
        out.push_back(row);
    }
    return out;
}

json to_json(const BoundaryData& bd) {
    json out;
    out["phi_plus"] = to_json(bd.phi_plus);
    out["phi_minus"] = to_json(bd.phi_minus);
    out["phitilde_plus"] = to_json(bd.phitilde_plus);
    out["phitilde_minus"] = to_json(bd.phitilde_minus);
    return out;
}

json to_json(const ExtensionSpec& ext) {
    json out;
    out["dim"] = ext.dimension();
    if (const auto* o = std::get_if<OneD>(&ext.variant)) {
        out["unitary"] = to_json(o->u.matrix());
    } else if (const auto* t = std::get_if<TwoD>(&ext.variant)) {
        out["theta"] = to_json(t->theta);
    } else if (const auto* r = std::get_if<ThreeD>(&ext.variant)) {
        out["lambda"] = r->lambda ? json(round12(*r->lambda)) : json("inf");
    }
    return out;
}

json to_json(const BCForm& bc) {
    json out;
    out["case"] = to_string(bc.case_tag);
    out["a_matrix"] = bc.a_matrix ? to_json(*bc.a_matrix) : json(nullptr);
    out["a_from_i_minus_u"] = bc.a_from_i_minus_u ? to_json(*bc.a_from_i_minus_u) : json(nullptr);
    out["a_from_i_plus_u"] = bc.a_from_i_plus_u ? to_json(*bc.a_from_i_plus_u) : json(nullptr);
    if (bc.uv_params) {
        out["u"] = to_json(bc.uv_params->first);
        out["v"] = to_json(bc.uv_params->second);
    }
    return out;
}

json to_json(const PermeabilityVerdict& v) {
    json out;
    out["verdict"] = to_string(v.verdict);
    out["case"] = to_string(v.case_tag);
    out["coupling"] = to_json(v.coupling);
    if (v.witness) {
        out["witness"] = to_json(*v.witness);
        out["witness_current"] = to_json(v.witness_current);
    } else {
        out["witness"] = nullptr;
    }
    return out;
}

json to_json(const EigenRecord& rec) {
    json out;
    out["energy"] = to_json(rec.energy);
    out["tau"] = to_json(rec.tau);
    out["multiplicity"] = rec.multiplicity;
    if (!rec.basis.empty()) {
        json basis = json::array();
        for (const auto& c : rec.basis) basis.push_back(json::array({to_json(c[0]), to_json(c[1])}));
        out["basis"] = basis;
    }
    if (!rec.channels.empty()) {
        json ch = json::array();
        for (const auto& c : rec.channels) ch.push_back({{"l", c.l}, {"degeneracy", c.degeneracy}});
        out["channels"] = ch;
    }
    return out;
}

json to_json(const ParityEigen& e) {
    json out;
    out["index"] = e.index;
    out["parity"] = to_string(e.parity);
    out["parity_index"] = e.parity_index;
    out["energy"] = to_json(e.energy);
    out["multiplicity"] = e.multiplicity;
    return out;
}

json to_json(const ConventionCheck& c) {
    json out;
    out["convention"] = to_string(c.convention);
    json rows = json::array();
    for (std::size_t k = 0; k < c.ns.size(); ++k) {
        rows.push_back({{"n", c.ns[k]},
                        {"exact", to_json(c.exact[k])},
                        {"asymptotic", to_json(c.asymptotic[k])},
                        {"rel_err", to_json(c.rel_err[k])}});
    }
    out["rows"] = rows;
    out["below_one_percent_for_n_ge_20"] = c.below_one_percent;
    return out;
}

json to_json(const oracle::LevelEstimate& lv) {
    json out;
    out["energy"] = to_json(lv.energy);
    out["multiplicity"] = lv.multiplicity;
    out["per_grid"] = json::array({to_json(lv.per_grid[0]), to_json(lv.per_grid[1]),
                                   to_json(lv.per_grid[2])});
    return out;
}

json to_json(const oracle::ChannelEvidence& ev) {
    json out;
    out["dim"] = ev.dim;
    out["l"] = ev.l;
    out["mu"] = to_json(ev.mu);
    out["energy"] = to_json(ev.energy);
    out["limit_circle_at_origin"] = ev.limit_circle_at_origin;
    out["limit_circle_at_infinity"] = ev.limit_circle_at_infinity;
    out["index_contribution"] = ev.index_contribution;
    json trends = json::array();
    for (const auto& t : ev.trends) {
        json inc = json::array();
        for (double x : t.increments) inc.push_back(to_json(x));
        trends.push_back({{"solution", std::string(1, t.solution)},
                          {"endpoint", t.at_origin ? "origin" : "infinity"},
                          {"trend", t.trend == oracle::Trend::Convergent ? "convergent" : "divergent"},
                          {"increments", inc}});
    }
    out["trends"] = trends;
    return out;
}

json to_json(const oracle::DeficiencySummary& s) {
    json out;
    out["dim"] = s.dim;
    out["origin_removed"] = s.origin_removed;
    out["computed"] = s.computed;
    out["index"] = s.index;
    json ch = json::array();
    for (const auto& c : s.channels) ch.push_back(to_json(c));
    out["channels"] = ch;
    return out;
}

json to_json(const SelfAdjointnessRow& row) {
    json out;
    out["potential"] = to_string(row.potential);
    out["domain"] = to_string(row.domain);
    out["essentially_self_adjoint"] =
        row.essentially_self_adjoint ? json(*row.essentially_self_adjoint) : json(nullptr);
    out["deficiency_index"] = row.deficiency_index ? json(*row.deficiency_index) : json(nullptr);
    out["spectrum"] = row.spectrum.empty() ? json(nullptr) : json(row.spectrum);
    return out;
}

Mat2 parse_matrix(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw DomainError(std::string("unitary: invalid JSON: ") + e.what());
    }
    auto bad = [] { throw DomainError("unitary: expected [[[re,im],[re,im]],[[re,im],[re,im]]]"); };
    if (!j.is_array() || j.size() != 2) bad();
    Mat2 m;
    for (int r = 0; r < 2; ++r) {
        if (!j[r].is_array() || j[r].size() != 2) bad();
        for (int c = 0; c < 2; ++c) {
            const json& z = j[r][c];
            if (z.is_number()) {
                m(r, c) = cplx(z.get<double>(), 0.0);
            } else if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number()) {
                m(r, c) = cplx(z[0].get<double>(), z[1].get<double>());
            } else {
                bad();
            }
        }
    }
    return m;
}

}  // namespace coulomb::json_io
