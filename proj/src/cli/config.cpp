#include "nsfp/cli/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace nsfp {

using nlohmann::json;

namespace {

// Reads one JSON object, remembering which keys were consumed so leftovers
// can be rejected.
class Reader {
public:
    Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
    }

    template <class T>
    void get(const std::string& key, T& out) {
        seen_.insert(key);
        const auto it = j_.find(key);
        if (it == j_.end()) return;
        try {
            out = it->template get<T>();
        } catch (const json::exception&) {
            throw ConfigError(name(key), "wrong type (found " + std::string(it->type_name()) + ")");
        }
    }

    bool has(const std::string& key) const { return j_.contains(key); }

    Reader child(const std::string& key) {
        seen_.insert(key);
        static const json empty = json::object();
        const auto it = j_.find(key);
        return Reader(it == j_.end() ? empty : *it, name(key));
    }

    const json& raw(const std::string& key) {
        seen_.insert(key);
        return j_.at(key);
    }

    std::string name(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    void finish() const {
        for (const auto& item : j_.items()) {
            if (!seen_.count(item.key())) throw ConfigError(name(item.key()), "unknown key");
        }
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

CoefficientLaw read_law(Reader r) {
    CoefficientLaw law;
    std::string kind = law.name();
    r.get("kind", kind);
    try {
        law.kind = parse_law_kind(kind);
    } catch (const ConfigError& e) {
        throw ConfigError(r.name("kind"), e.what());
    }
    r.get("c0", law.c0);
    r.get("c1", law.c1);
    r.get("c2", law.c2);
    r.get("lo", law.lo);
    r.get("hi", law.hi);
    r.finish();
    if (law.kind == CoefficientLaw::Kind::affine_rho_pn && !(law.lo <= law.hi)) {
        throw ConfigError(r.name("lo"), "clamp range must satisfy lo <= hi");
    }
    return law;
}

json law_json(const CoefficientLaw& law) {
    return {{"kind", law.name()}, {"c0", law.c0}, {"c1", law.c1}, {"c2", law.c2}, {"lo", law.lo}, {"hi", law.hi}};
}

} // namespace

RunConfig config_from_json(const json& j) {
    RunConfig cfg;
    ProblemSetup& s = cfg.setup;
    Reader root(j, "");
    int version = kConfigSchemaVersion;
    root.get("schema_version", version);
    if (version != kConfigSchemaVersion) {
        throw ConfigError("schema_version", "unsupported version " + std::to_string(version));
    }
    root.get("dim", s.dim);
    root.get("lengths", s.lengths);
    root.get("final_time", s.final_time);
    root.get("dt", s.dt);
    root.get("seed", s.seed);
    root.get("stress_form", s.stress_form);
    root.get("drift_uses_mm", s.drift_uses_mm);
    {
        Reader c = root.child("chain");
        c.get("b", s.b);
        c.get("rouse", s.rouse);
        c.finish();
    }
    {
        Reader l = root.child("laws");
        if (l.has("mu")) s.laws.mu = read_law(l.child("mu"));
        if (l.has("zeta")) s.laws.zeta = read_law(l.child("zeta"));
        l.get("k", s.laws.k);
        l.get("rho_min", s.laws.rho_min);
        l.get("rho_max", s.laws.rho_max);
        l.get("mu_min", s.laws.mu_min);
        l.get("mu_max", s.laws.mu_max);
        l.get("zeta_min", s.laws.zeta_min);
        l.get("zeta_max", s.laws.zeta_max);
        l.finish();
    }
    {
        Reader l = root.child("levels");
        l.get("ell", s.ell);
        l.get("m", s.m);
        l.get("maxwellian_index", s.maxwellian_index);
        l.get("n", s.n);
        l.get("n_conf", s.n_conf);
        l.finish();
    }
    {
        Reader q = root.child("quadrature");
        q.get("radial_order", s.radial_order);
        q.get("angular_order", s.angular_order);
        q.get("grid_n", s.grid_n);
        q.get("max_index", s.max_index);
        q.get("transport_substep", s.transport_substep);
        q.finish();
    }
    {
        Reader init = root.child("initial");
        Reader dn = init.child("density");
        dn.get("kind", s.density.kind);
        dn.get("mean", s.density.mean);
        dn.get("amplitude", s.density.amplitude);
        dn.get("modes", s.density.modes);
        dn.finish();
        Reader v = init.child("velocity");
        v.get("kind", s.velocity.kind);
        v.get("amplitude", s.velocity.amplitude);
        v.get("coefficients", s.velocity.coefficients);
        v.finish();
        Reader p = init.child("pdf");
        p.get("kind", s.pdf.kind);
        p.get("value", s.pdf.value);
        p.get("amplitude", s.pdf.amplitude);
        p.get("modes", s.pdf.modes);
        p.get("normalize", s.pdf.normalize);
        p.finish();
        init.finish();
    }
    {
        Reader f = root.child("forcing");
        f.get("kind", s.forcing.kind);
        f.get("amplitude", s.forcing.amplitude);
        f.finish();
    }
    {
        Reader fp = root.child("fixed_point");
        fp.get("tol", s.fixed_point.tol);
        fp.get("max_iter", s.fixed_point.max_iter);
        fp.get("damping", s.fixed_point.damping);
        fp.finish();
    }
    {
        Reader o = root.child("output");
        o.get("dir", cfg.output.dir);
        o.get("cadence", cfg.output.cadence);
        o.get("snapshot_cadence", cfg.output.snapshot_cadence);
        o.finish();
        if (cfg.output.cadence < 1) throw ConfigError("output.cadence", "must be at least 1");
        if (cfg.output.snapshot_cadence < 0) throw ConfigError("output.snapshot_cadence", "must be nonnegative");
    }
    {
        Reader sw = root.child("sweep");
        for (const char* axis : {"dt", "ell", "m", "n", "n_conf"}) {
            if (!sw.has(axis)) continue;
            std::vector<double> ladder;
            sw.get(axis, ladder);
            cfg.sweep[axis] = ladder;
        }
        sw.finish();
    }
    {
        Reader c = root.child("check");
        c.get("steps", cfg.check.steps);
        InvariantTolerances& t = cfg.check.tolerances;
        Reader tol = c.child("tolerances");
        tol.get("density", t.density);
        tol.get("fluid_mass", t.fluid_mass);
        tol.get("pdf_mass", t.pdf_mass);
        tol.get("max_principle", t.max_principle);
        tol.get("energy_slack", t.energy_slack);
        tol.get("cancellation", t.cancellation);
        tol.get("mass_eig", t.mass_eig);
        tol.finish();
        c.finish();
        if (cfg.check.steps < 1) throw ConfigError("check.steps", "must be at least 1");
    }
    root.finish();
    s.validate();
    return cfg;
}

json config_to_json(const RunConfig& cfg) {
    const ProblemSetup& s = cfg.setup;
    json sweep = json::object();
    for (const auto& [axis, ladder] : cfg.sweep) sweep[axis] = ladder;
    const InvariantTolerances& t = cfg.check.tolerances;
    return json{
        {"schema_version", kConfigSchemaVersion},
        {"dim", s.dim},
        {"lengths", s.lengths},
        {"final_time", s.final_time},
        {"dt", s.dt},
        {"seed", s.seed},
        {"stress_form", s.stress_form},
        {"drift_uses_mm", s.drift_uses_mm},
        {"chain", {{"b", s.b}, {"rouse", s.rouse}}},
        {"laws",
         {{"mu", law_json(s.laws.mu)},
          {"zeta", law_json(s.laws.zeta)},
          {"k", s.laws.k},
          {"rho_min", s.laws.rho_min},
          {"rho_max", s.laws.rho_max},
          {"mu_min", s.laws.mu_min},
          {"mu_max", s.laws.mu_max},
          {"zeta_min", s.laws.zeta_min},
          {"zeta_max", s.laws.zeta_max}}},
        {"levels",
         {{"ell", s.ell}, {"m", s.m}, {"maxwellian_index", s.maxwellian_index}, {"n", s.n}, {"n_conf", s.n_conf}}},
        {"quadrature",
         {{"radial_order", s.radial_order},
          {"angular_order", s.angular_order},
          {"grid_n", s.grid_n},
          {"max_index", s.max_index},
          {"transport_substep", s.transport_substep}}},
        {"initial",
         {{"density",
           {{"kind", s.density.kind}, {"mean", s.density.mean}, {"amplitude", s.density.amplitude},
            {"modes", s.density.modes}}},
          {"velocity",
           {{"kind", s.velocity.kind}, {"amplitude", s.velocity.amplitude},
            {"coefficients", s.velocity.coefficients}}},
          {"pdf",
           {{"kind", s.pdf.kind}, {"value", s.pdf.value}, {"amplitude", s.pdf.amplitude}, {"modes", s.pdf.modes},
            {"normalize", s.pdf.normalize}}}}},
        {"forcing", {{"kind", s.forcing.kind}, {"amplitude", s.forcing.amplitude}}},
        {"fixed_point",
         {{"tol", s.fixed_point.tol}, {"max_iter", s.fixed_point.max_iter}, {"damping", s.fixed_point.damping}}},
        {"output",
         {{"dir", cfg.output.dir}, {"cadence", cfg.output.cadence}, {"snapshot_cadence", cfg.output.snapshot_cadence}}},
        {"sweep", sweep},
        {"check",
         {{"steps", cfg.check.steps},
          {"tolerances",
           {{"density", t.density},
            {"fluid_mass", t.fluid_mass},
            {"pdf_mass", t.pdf_mass},
            {"max_principle", t.max_principle},
            {"energy_slack", t.energy_slack},
            {"cancellation", t.cancellation},
            {"mass_eig", t.mass_eig}}}}},
    };
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("", "config file '" + path + "' is not valid JSON: " + e.what());
    }
    return config_from_json(j);
}

} // namespace nsfp
