// JSON views of every report type. Key order is fixed (insertion order is
// preserved by the ordered JSON type), so serialized reports are stable
// byte-for-byte and safe to use as golden values. Integers that fit in 64
// bits are emitted as JSON numbers; anything larger becomes a decimal
// string.
#pragma once

#include "certificate.hpp"
#include "dynamics.hpp"
#include "parse.hpp"
#include "search.hpp"
#include "zmod.hpp"

#include "json.hpp"

#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <utility>

namespace orbita {

using Json = nlohmann::ordered_json;

inline Json json_int(const Int& x) {
    if (x >= Int(std::numeric_limits<std::int64_t>::min()) &&
        x <= Int(std::numeric_limits<std::int64_t>::max()))
        return static_cast<std::int64_t>(x);
    if (x > 0 && x <= Int(std::numeric_limits<std::uint64_t>::max()))
        return static_cast<std::uint64_t>(x);
    return x.str();
}

inline Json json_of(const Point& P) {
    Json a = Json::array();
    for (const auto& c : P.coords) a.push_back(json_int(c));
    return a;
}

inline Json json_of(const ModPoint& v) {
    Json a = Json::array();
    for (auto c : v.coords) a.push_back(c);
    return a;
}

inline Json json_of(const ModMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.n; ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.n; ++j) row.push_back(m.at(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json json_of(const IntMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.n; ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.n; ++j) row.push_back(json_int(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json json_of(const LocalOrbitReport& r) {
    Json j;
    j["p"] = r.p;
    j["tail_length"] = r.tail_length;
    j["cycle_length"] = r.cycle_length;
    j["on_cycle"] = r.on_cycle;
    j["local_period"] = r.local_period ? Json(*r.local_period) : Json(nullptr);
    return j;
}

inline const char* kind_name(PeriodicityCertificate::Kind k) {
    switch (k) {
        case PeriodicityCertificate::Kind::ExactReturn: return "exact_return";
        case PeriodicityCertificate::Kind::ModularExclusion: return "modular_exclusion";
        case PeriodicityCertificate::Kind::ExactMismatch: return "exact_mismatch";
        case PeriodicityCertificate::Kind::None: return "none";
    }
    return "none";
}

inline Json json_of(const PeriodicityCertificate& c) {
    Json j;
    j["kind"] = kind_name(c.kind);
    if (c.kind == PeriodicityCertificate::Kind::ExactReturn) j["k"] = c.k;
    j["bound"] = c.bound;
    Json filters = Json::array();
    for (const auto& f : c.filters) {
        Json jf;
        jf["p"] = f.p;
        jf["on_cycle"] = f.on_cycle;
        jf["local_period"] = f.on_cycle ? Json(f.local_period) : Json(nullptr);
        filters.push_back(std::move(jf));
    }
    j["filters"] = std::move(filters);
    Json mismatches = Json::array();
    for (const auto& m : c.mismatches) {
        Json jm;
        jm["k"] = m.k;
        jm["coord"] = m.coord;
        jm["expected"] = json_int(m.expected);
        jm["got"] = json_int(m.got);
        mismatches.push_back(std::move(jm));
    }
    j["mismatches"] = std::move(mismatches);
    j["steps_used"] = c.steps_used;
    j["primes_used"] = c.primes_used;
    return j;
}

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Periodic: return "periodic";
        case Verdict::NotPeriodic: return "not_periodic";
        case Verdict::Unresolved: return "unresolved";
    }
    return "unresolved";
}

inline Json json_of(const Decision& d) {
    Json j;
    j["verdict"] = verdict_name(d.verdict);
    j["n"] = d.n ? Json(*d.n) : Json(nullptr);
    if (d.verdict == Verdict::Unresolved) j["reason"] = d.unresolved_reason;
    j["certificate"] = json_of(d.certificate);
    return j;
}

inline Json json_of(const OrbitReport& r) {
    Json j;
    j["periodic"] = r.verdict == Verdict::Unresolved ? Json(nullptr) : Json(r.periodic);
    j["n"] = r.primitive_period ? Json(*r.primitive_period) : Json(nullptr);
    if (r.verdict == Verdict::Unresolved) j["reason"] = r.unresolved_reason;
    Json orbit = Json::array();
    for (const auto& P : r.orbit_points) orbit.push_back(json_of(P));
    j["orbit"] = std::move(orbit);
    j["certificate"] = json_of(r.certificate);
    return j;
}

inline Json json_of(const DecompositionCertificate& c) {
    Json j;
    j["p"] = c.p;
    j["n"] = c.n;
    j["m"] = c.m;
    j["e"] = c.e;
    j["d0"] = c.d0;
    j["g"] = c.g;
    j["r"] = c.r ? Json(*c.r) : Json(nullptr);
    j["v"] = c.v ? json_of(*c.v) : Json(nullptr);
    j["D_tilde"] = json_of(c.D_tilde);
    Json checks;
    checks["m_divides_n"] = c.checks.m_divides_n;
    checks["period_product"] = c.checks.period_product;
    checks["d0_coprime_p"] = c.checks.d0_coprime_p;
    checks["d0_leq_bound"] = c.checks.d0_leq_bound;
    checks["d0_divides_g"] = c.checks.d0_divides_g;
    checks["v_nonzero"] = c.checks.v_nonzero;
    checks["residue_identity"] = c.checks.residue_identity;
    checks["all_pass"] = c.checks.all_pass;
    j["checks"] = std::move(checks);
    return j;
}

inline Json json_of(const BoundsReport& r) {
    Json j;
    j["elementary"] = json_int(r.elementary);
    j["divisor"] = json_int(r.divisor);
    if (r.plane) j["plane"] = *r.plane;
    if (r.p_of_n) j["p_of_N"] = *r.p_of_n;
    return j;
}

inline Json json_of(const LemmaSweepReport& r) {
    Json j;
    j["max_g"] = r.max_g;
    j["bound"] = json_int(r.bound);
    j["ok"] = r.ok;
    j["dim"] = r.n;
    j["p"] = r.p;
    j["matrices_scanned"] = json_int(r.matrices_scanned);
    Json hist;
    for (const auto& [g, c] : r.histogram) hist[std::to_string(g)] = c;
    j["histogram"] = std::move(hist);
    j["witnesses_total"] = r.witnesses.size();
    Json wits = Json::array();
    for (const auto& w : r.witnesses) wits.push_back(json_of(w));
    j["witnesses"] = std::move(wits);
    return j;
}

inline Json json_of(const FamilySpec& s) {
    Json j;
    j["dim"] = s.dim;
    j["degree"] = s.degree;
    j["coeff_bound"] = s.coeff_bound;
    j["point_box"] = s.point_box;
    j["linear_only"] = s.linear_only;
    return j;
}

inline FamilySpec family_from_json(const Json& j) {
    FamilySpec s;
    s.dim = j.at("dim").get<std::size_t>();
    s.degree = j.at("degree").get<std::uint64_t>();
    s.coeff_bound = j.at("coeff_bound").get<std::int64_t>();
    s.point_box = j.at("point_box").get<std::int64_t>();
    s.linear_only = j.at("linear_only").get<bool>();
    return s;
}

inline Json json_of(const CensusReport& r) {
    Json j;
    j["family"] = json_of(r.family);
    j["complete"] = r.complete;
    j["pairs_scanned"] = r.pairs_scanned;
    j["maps_scanned"] = r.maps_scanned;
    j["points_scanned"] = r.points_scanned;
    j["max_period"] = r.max_period;
    Json hist;
    for (const auto& [n, c] : r.histogram) hist[std::to_string(n)] = c;
    j["histogram"] = std::move(hist);
    Json wits;
    for (const auto& [n, w] : r.witnesses) {
        Json jw;
        jw["map_index"] = w.map_index;
        jw["point_index"] = w.point_index;
        jw["map"] = print_map(w.map);
        jw["point"] = json_of(w.point);
        wits[std::to_string(n)] = std::move(jw);
    }
    j["witnesses"] = std::move(wits);
    j["unresolved"] = r.unresolved;
    j["unresolved_samples"] = r.unresolved_samples;
    return j;
}

inline Json json_of(const OpenQuestionReport& r) {
    Json j;
    j["dim"] = r.dim;
    j["census_max"] = r.census_max;
    j["gl_max"] = r.gl_max;
    j["exceeded"] = r.exceeded;
    j["witness_reverified"] = r.witness_reverified;
    j["census"] = json_of(r.census);
    return j;
}

inline Json checkpoint_to_json(const FamilySpec& family, const CensusState& s) {
    Json j;
    j["family"] = json_of(family);
    j["next_index"] = s.next_index;
    Json hist;
    for (const auto& [n, c] : s.histogram) hist[std::to_string(n)] = c;
    j["histogram"] = std::move(hist);
    Json wits;
    for (const auto& [n, w] : s.witnesses) {
        Json jw;
        jw["map_index"] = w.map_index;
        jw["point_index"] = w.point_index;
        wits[std::to_string(n)] = std::move(jw);
    }
    j["witnesses"] = std::move(wits);
    j["unresolved"] = s.unresolved;
    j["unresolved_samples"] = s.unresolved_samples;
    return j;
}

inline std::pair<FamilySpec, CensusState> checkpoint_from_json(const Json& j) {
    FamilySpec family = family_from_json(j.at("family"));
    CensusState s;
    s.next_index = j.at("next_index").get<std::uint64_t>();
    for (const auto& [key, val] : j.at("histogram").items())
        s.histogram[std::stoull(key)] = val.get<std::uint64_t>();
    for (const auto& [key, val] : j.at("witnesses").items())
        s.witnesses[std::stoull(key)] =
            CensusWitness{val.at("map_index").get<std::uint64_t>(),
                          val.at("point_index").get<std::uint64_t>()};
    s.unresolved = j.at("unresolved").get<std::uint64_t>();
    for (const auto& v : j.at("unresolved_samples"))
        s.unresolved_samples.push_back(v.get<std::uint64_t>());
    return {std::move(family), std::move(s)};
}

/// Flat "path = value" rendering of a JSON report; same values as the JSON
/// form, one scalar per line.
inline void render_text(const Json& j, std::ostream& out, const std::string& prefix = "") {
    if (j.is_object()) {
        if (j.empty() && !prefix.empty()) out << prefix << " = {}\n";
        for (const auto& [key, val] : j.items())
            render_text(val, out, prefix.empty() ? key : prefix + "." + key);
        return;
    }
    if (j.is_array()) {
        bool all_scalar = true;
        for (const auto& v : j)
            if (v.is_object() || v.is_array()) all_scalar = false;
        if (all_scalar) {
            out << prefix << " = " << j.dump() << "\n";
            return;
        }
        std::size_t i = 0;
        for (const auto& v : j) render_text(v, out, prefix + "[" + std::to_string(i++) + "]");
        return;
    }
    out << prefix << " = ";
    if (j.is_string())
        out << j.get<std::string>();
    else
        out << j.dump();
    out << "\n";
}

}  // namespace orbita
