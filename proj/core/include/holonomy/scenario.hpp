#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "holonomy/bundle.hpp"
#include "holonomy/gauge.hpp"
#include "holonomy/groupconn.hpp"
#include "holonomy/moduli.hpp"
#include "holonomy/path.hpp"

namespace holonomy {

struct RunParams {
    int steps = 10000;
    double tol = 1e-6;
    std::uint64_t seed = 42;
};

/// A scenario file bundles a base chart, a fiber group, a connection (or the
/// data to induce one), named paths, and default run parameters.  Accessors
/// resolve the JSON lazily and throw SchemaError with the path of the
/// offending field.
///
/// Top-level keys: base, group, bundle, connection, connection2, cocycle,
/// principal, representation, representation2, witness, paths, cube, run.
class Scenario {
public:
    static Scenario load_file(const std::string& file);
    static Scenario from_json(nlohmann::json j);

    bool has(const std::string& key) const { return doc_.contains(key); }

    BaseChart base() const;
    std::optional<AnnulusBase> annulus() const;
    LieGroupModel group() const;
    GroupBundle bundle() const;
    Connection connection(const std::string& key = "connection") const;
    CocycleForm cocycle_form() const;
    PrincipalConnection principal() const;
    RepresentationSpec representation(const std::string& key = "representation") const;
    std::optional<AutomorphismWitness> witness() const;
    PathSpec path(const std::string& name) const;
    std::vector<std::string> path_names() const;
    Box cube() const;
    RunParams run_params() const;

    const nlohmann::json& raw() const { return doc_; }

private:
    nlohmann::json doc_;
};

}  // namespace holonomy
