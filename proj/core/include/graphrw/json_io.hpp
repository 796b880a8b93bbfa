#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "graphrw/algebra.hpp"
#include "graphrw/models.hpp"
#include "graphrw/stochastic.hpp"

namespace graphrw {

using Json = nlohmann::json;

// Graph schema: {"types": …, "vertices": [{"id","type"}],
// "edges": [{"id","type","ends":[v,(v)]}]}. "types" is optional on
// input when a type graph is supplied externally.
Json type_graph_to_json(const TypeGraphPtr& t);
TypeGraphPtr type_graph_from_json(const Json& j);

Json graph_to_json(const GraphPtr& g, bool with_types = false);
GraphPtr graph_from_json(const Json& j, const TypeGraphPtr& types = nullptr);

// Morphism: {"v":[…],"e":[…]} plus optional embedded "dom"/"cod".
Json morphism_to_json(const Morphism& m, bool with_graphs = false);
Morphism morphism_from_json(const Json& j, const GraphPtr& dom, const GraphPtr& cod);

// Condition: recursive {"op":"true|exists|not|and","mono":…,"sub":…};
// "and" takes an array "sub". The shorthand {"forbid":[graph,…]} is
// accepted on input (over any root) as ∧ ¬∃(root ↪ root ⊎ N).
Json condition_to_json(const CondPtr& c, const GraphPtr& root);
CondPtr condition_from_json(const Json& j, const GraphPtr& root, const TypeGraphPtr& types);

// Rule: {"O":…,"K":…,"I":…,"o":map,"i":map,"cond":…}.
Json rule_to_json(const Rule& r, bool with_types = false);
Rule rule_from_json(const Json& j, const TypeGraphPtr& types = nullptr);

// Element: [{"coeff":"p/q","rule":…}] sorted by canonical key.
Json element_to_json(const Element& a);
Element element_from_json(const Json& j, const TypeGraphPtr& types = nullptr);

// Composition report: one record per overlap with its verdict.
Json composition_report_json(const std::vector<Composition>& comps);

Json ode_system_to_json(const ODESystem& sys);
std::string ode_system_text(const ODESystem& sys);
std::string ode_system_latex(const ODESystem& sys);

std::string trajectory_csv(const Trajectory& tr);

std::string graph_to_dot(const GraphPtr& g, const std::string& name = "g");

// Model file: named artifacts over one type universe. The type graph
// comes from "types", or is compiled from an embedded "kappa" /
// "chem" model (which also provides the constraint).
//   {"types"|"kappa"|"chem": …, "constraint": condition|{"forbid":…},
//    "semantics": "dpo"|"sqpo", "graphs": {name: graph},
//    "rules": {name: rule}, "observables": {name: element|graph},
//    "transitions": [{"rate":"p/q","rule": name|rule}]}
struct Workspace {
    TypeGraphPtr types;
    CondPtr constraint;  // over the empty graph; may be null
    std::vector<GraphPtr> forbidden;  // negative patterns behind `constraint`
    PositiveConstraint c_pos;         // non-empty only for compiled models
    Semantics sem = Semantics::SqPO;
    std::map<std::string, GraphPtr> graphs;
    std::map<std::string, Rule> rules;
    std::map<std::string, Element> observables;
    std::vector<Transition> transitions;
};

Workspace workspace_from_json(const Json& j);
Workspace load_workspace(const std::string& path);

// Resolves `name` against the fixture search path: as given, then
// relative to each ':'-separated entry of GRAPHRW_FIXTURE_PATH.
std::string find_fixture(const std::string& name);

Json kappa_model_to_json(const KappaModel& m);
KappaModel kappa_model_from_json(const Json& j);
Json chem_model_to_json(const ChemModel& m);
ChemModel chem_model_from_json(const Json& j);

}  // namespace graphrw
