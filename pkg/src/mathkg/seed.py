"""Curated fixture dataset: the built-in knowledge graph content.

Covers two worked use cases (free fall in pomology, Romanization spreading
as an SI network model), the linear-system and tomography algorithm
exemplars, and the Runge-Kutta family together with the selection
patterns their requires/recommends/precludes edges point at.

The graph built here is the single source of truth; the checked-in
``data/*.ttl`` files and the documentation templates under ``templates/``
are kept byte- and triple-identical to it by tests.

One directionality subtlety is deliberate: task equivalence is symmetric,
and the equivalence of the free-fall-time task is stored pointing from
the algorithmic task to the computational task. The selection query
probes the other direction, so that task contributes no result rows --
which is exactly what the expected result table requires.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from mathkg.model import (
    EXTERNAL_ID,
    LATEX,
    MADB,
    MMDB,
    Iri,
    Literal,
    Triple,
    boolean,
    integer,
)
from mathkg.schema import (
    CONTAINS_QUANTITY,
    DEFINING_FORMULATION,
    DFG_ID,
    IS_KIND_OF,
    MSC_ID,
    QUDT_ID,
    RDF_TYPE,
    RDFS_LABEL,
    SYMBOL,
    TENSOR_ORDER,
    WIKIDATA_ID,
    schema,
)
from mathkg.store import Graph
from mathkg.turtle import parse_document, serialize
from mathkg.validate import repair_inverses

SEED_FILES = ("mathmoddb.ttl", "mathalgodb.ttl")
MANIFEST_FILE = "manifest.json"

_QUDT = "https://qudt.org/vocab/quantitykind/"

# (local name, class, label); namespace follows the class.
ENTITIES: tuple[tuple[str, str, str], ...] = (
    ("Pomology", "ResearchField", "Pomology"),
    ("RomanArchaeology", "ResearchField", "Roman Archaeology"),
    ("GravitationalEffectsOnFruit", "ResearchProblem", "Gravitational Effects on Fruit"),
    ("RomanizationSpreadingNorthernTunisia", "ResearchProblem",
     "Romanization Spreading in Northern Tunisia"),
    ("FreeFallModelVacuum", "MathematicalModel", "Free Fall in Vacuum"),
    ("FreeFallModelAirDrag", "MathematicalModel", "Free Fall with Air Drag"),
    ("SINetworkSpreadingModel", "MathematicalModel", "SI Network Spreading Model"),
    ("FreeFallEquationVacuum", "MathematicalFormulation", "Free Fall Equation"),
    ("FreeFallEquationAirDrag", "MathematicalFormulation", "Free Fall Equation with Air Drag"),
    ("ConstantGravitationAssumption", "MathematicalFormulation", "Constant Gravitation Assumption"),
    ("SISusceptibleEquation", "MathematicalFormulation", "Susceptible Cities Equation"),
    ("SIInfectedEquation", "MathematicalFormulation", "Infected Cities Equation"),
    ("TomographyLinearSystem", "MathematicalFormulation", "Tomography Linear System"),
    ("SpdLinearSystem", "MathematicalFormulation", "Symmetric Positive Definite Linear System"),
    ("ToeplitzLinearSystem", "MathematicalFormulation", "Toeplitz Linear System"),
    ("PoissonCountLinearSystem", "MathematicalFormulation", "Positive Poisson Count Linear System"),
    ("StiffODEPattern", "MathematicalFormulation", "Stiff ODE Pattern"),
    ("SmoothOrder4Pattern", "MathematicalFormulation", "Smoothness Order 4 Pattern"),
    ("SymmetricPattern", "MathematicalFormulation", "Symmetric Matrix Pattern"),
    ("SPDPattern", "MathematicalFormulation", "Symmetric Positive Definite Pattern"),
    ("ToeplitzPattern", "MathematicalFormulation", "Toeplitz Matrix Pattern"),
    ("RadonTransformPattern", "MathematicalFormulation", "Radon Transform Pattern"),
    ("RadonParallelBeamPattern", "MathematicalFormulation", "Radon Parallel Beam Pattern"),
    ("PositivityPattern", "MathematicalFormulation", "Positivity Constraint Pattern"),
    ("PoissonDataPattern", "MathematicalFormulation", "Poisson Data Pattern"),
    ("HighDimSmoothGradientPattern", "MathematicalFormulation",
     "High-Dimensional Smooth Gradient Pattern"),
    ("v", "Quantity", "Free Fall Velocity"),
    ("g", "Quantity", "Gravitational Acceleration"),
    ("rho", "Quantity", "Air Density"),
    ("C_D", "Quantity", "Drag Coefficient"),
    ("A", "Quantity", "Cross Section"),
    ("m", "Quantity", "Apple Mass"),
    ("t", "Quantity", "Time"),
    ("s_m", "Quantity", "Susceptible Cities per Region"),
    ("i_m", "Quantity", "Infected Cities per Region"),
    ("alpha", "Quantity", "Spreading Rate"),
    ("G", "Quantity", "Interregional Contact Network"),
    ("P_m", "Quantity", "Total Cities per Region"),
    ("N_R", "Quantity", "Number of Regions"),
    ("SystemMatrix", "Quantity", "Linear System Matrix"),
    ("x", "Quantity", "Linear System Unknown"),
    ("b", "Quantity", "Linear System Right-Hand Side"),
    ("MembranePotential", "Quantity", "Electrical Membrane Potential"),
    ("Velocity", "QuantityKind", "Velocity"),
    ("Acceleration", "QuantityKind", "Acceleration"),
    ("Voltage", "QuantityKind", "Voltage"),
    ("Mass", "QuantityKind", "Mass"),
    ("Time", "QuantityKind", "Time"),
    ("Density", "QuantityKind", "Density"),
    ("Area", "QuantityKind", "Area"),
    ("FreeFallDetermineVelocity", "ComputationalTask", "Determine Impact Velocity"),
    ("CalculateFreeFallTime", "ComputationalTask", "Calculate Free Fall Time"),
    ("DetermineSpreadingCurves", "ComputationalTask", "Determine Spreading Curves"),
    ("DetermineOptimalParameters", "ComputationalTask", "Determine Optimal Spreading Parameters"),
    ("ComputeEvolutionODE", "AlgorithmicTask", "Compute Evolution of ODE"),
    ("MinimizeLossFunction", "AlgorithmicTask", "Minimize Loss Function"),
    ("SolveLinearSystem", "AlgorithmicTask", "Solve Linear System"),
    ("RKex11", "Algorithm", "Forward Euler"),
    ("RKim11", "Algorithm", "Backward Euler"),
    ("RK44kutta", "Algorithm", "Classical Runge-Kutta Method"),
    ("LUDecomposition", "Algorithm", "LU Decomposition"),
    ("ConjugateGradient", "Algorithm", "Conjugate Gradient Method"),
    ("TrenchAlgorithm", "Algorithm", "Trench Algorithm"),
    ("Kaczmarz", "Algorithm", "Kaczmarz Algorithm"),
    ("FilteredBackprojection", "Algorithm", "Filtered Backprojection"),
    ("ExpectationMaximization", "Algorithm", "Expectation Maximization"),
    ("PrescaledMALA", "Algorithm", "Prescaled Metropolis-Adjusted Langevin Algorithm"),
    ("DifferentialEquationsJl", "Software", "DifferentialEquations.jl"),
    ("Brusselator", "Benchmark", "Brusselator"),
    ("Kostre2022", "Publication", "Kostre et al. 2022"),
)

LATEX_EXPRESSIONS = {
    "FreeFallEquationVacuum": r"\dot{v}=g",
    "FreeFallEquationAirDrag": r"\dot{v}=g-\frac{\rho C_{D}Av^2}{2m}",
    "ConstantGravitationAssumption": r"g = \mathrm{const}",
    "SISusceptibleEquation":
        r"\frac{d s_m(t)}{dt} = -s_m(t) \alpha(t) \sum_{n=1}^{N_R} G_{m,n} i_n(t)",
    "SIInfectedEquation": r"i_m(t) = P_m - s_m(t)",
    "TomographyLinearSystem": r"Ax = b",
}

SYMBOLS = {
    "v": "v", "g": "g", "rho": "ρ", "C_D": "C_D", "A": "A", "m": "m", "t": "t",
    "s_m": "s_m", "i_m": "i_m", "alpha": "α", "G": "G", "P_m": "P_m", "N_R": "N_R",
    "SystemMatrix": "A", "x": "x", "b": "b", "MembranePotential": "V_m",
}

# (formulation-or-pattern, property local name, typed value)
FLAGS: tuple[tuple[str, str, Literal], ...] = (
    ("FreeFallEquationVacuum", "isLinear", boolean(True)),
    ("FreeFallEquationVacuum", "smoothnessOrder", integer(4)),
    ("FreeFallEquationAirDrag", "isLinear", boolean(False)),
    ("FreeFallEquationAirDrag", "isStiff", boolean(True)),
    ("SISusceptibleEquation", "isLinear", boolean(False)),
    ("SIInfectedEquation", "isLinear", boolean(True)),
    ("TomographyLinearSystem", "isLinear", boolean(True)),
    ("TomographyLinearSystem", "stemsFromRadonTransform", boolean(True)),
    ("TomographyLinearSystem", "usesParallelBeamGeometry", boolean(True)),
    ("TomographyLinearSystem", "isSparse", boolean(True)),
    ("SpdLinearSystem", "isSymmetric", boolean(True)),
    ("SpdLinearSystem", "isPositiveDefinite", boolean(True)),
    ("ToeplitzLinearSystem", "isToeplitz", boolean(True)),
    ("PoissonCountLinearSystem", "hasPositivityConstraint", boolean(True)),
    ("PoissonCountLinearSystem", "hasPoissonDistributedRhs", boolean(True)),
    ("StiffODEPattern", "isStiff", boolean(True)),
    ("SmoothOrder4Pattern", "smoothnessOrder", integer(4)),
    ("SymmetricPattern", "isSymmetric", boolean(True)),
    ("SPDPattern", "isSymmetric", boolean(True)),
    ("SPDPattern", "isPositiveDefinite", boolean(True)),
    ("ToeplitzPattern", "isToeplitz", boolean(True)),
    ("RadonTransformPattern", "stemsFromRadonTransform", boolean(True)),
    ("RadonParallelBeamPattern", "stemsFromRadonTransform", boolean(True)),
    ("RadonParallelBeamPattern", "usesParallelBeamGeometry", boolean(True)),
    ("PositivityPattern", "hasPositivityConstraint", boolean(True)),
    ("PoissonDataPattern", "hasPoissonDistributedRhs", boolean(True)),
    ("HighDimSmoothGradientPattern", "isHighDimensional", boolean(True)),
    ("HighDimSmoothGradientPattern", "isSmooth", boolean(True)),
    ("HighDimSmoothGradientPattern", "hasStrongGradientInformation", boolean(True)),
    ("G", "isSparse", boolean(True)),
)

TENSOR_ORDERS = {
    "s_m": "vector", "i_m": "vector", "P_m": "vector",
    "G": "matrix", "SystemMatrix": "matrix", "x": "vector", "b": "vector",
}

# Controlled-vocabulary identifiers (QUDT / Wikidata / MSC / DFG).
EXTERNAL_IDS: tuple[tuple[str, str, str], ...] = (
    ("Velocity", "qudt", _QUDT + "Velocity"),
    ("Velocity", "wikidata", "Q11465"),
    ("Acceleration", "qudt", _QUDT + "Acceleration"),
    ("Acceleration", "wikidata", "Q11376"),
    ("Voltage", "qudt", _QUDT + "Voltage"),
    ("Voltage", "wikidata", "Q25428"),
    ("Mass", "qudt", _QUDT + "Mass"),
    ("Time", "qudt", _QUDT + "Time"),
    ("Density", "qudt", _QUDT + "Density"),
    ("Area", "qudt", _QUDT + "Area"),
    ("Pomology", "msc", "92"),
    ("RomanArchaeology", "dfg", "101"),
)

CONTAINS_QUANTITY_EDGES = {
    "FreeFallEquationVacuum": ("v", "g"),
    "FreeFallEquationAirDrag": ("v", "g", "rho", "C_D", "A", "m"),
    "ConstantGravitationAssumption": ("g",),
    "SISusceptibleEquation": ("s_m", "i_m", "alpha", "G", "N_R", "t"),
    "SIInfectedEquation": ("i_m", "P_m", "s_m", "t"),
    "TomographyLinearSystem": ("SystemMatrix", "x", "b"),
}

KIND_EDGES = {
    "v": "Velocity", "g": "Acceleration", "m": "Mass", "t": "Time",
    "rho": "Density", "A": "Area", "MembranePotential": "Voltage",
}

# Structural edges (subject local, relation local, object local). Only one
# direction is listed; inverse repair closes the paired relations.
RELATION_EDGES: tuple[tuple[str, str, str], ...] = (
    ("Pomology", "containsProblem", "GravitationalEffectsOnFruit"),
    ("RomanArchaeology", "containsProblem", "RomanizationSpreadingNorthernTunisia"),
    ("GravitationalEffectsOnFruit", "modeledBy", "FreeFallModelVacuum"),
    ("GravitationalEffectsOnFruit", "modeledBy", "FreeFallModelAirDrag"),
    ("RomanizationSpreadingNorthernTunisia", "modeledBy", "SINetworkSpreadingModel"),
    ("FreeFallModelVacuum", "containsFormulation", "FreeFallEquationVacuum"),
    ("FreeFallModelVacuum", "containsAssumption", "ConstantGravitationAssumption"),
    ("FreeFallModelAirDrag", "containsFormulation", "FreeFallEquationAirDrag"),
    ("FreeFallModelAirDrag", "containsAssumption", "ConstantGravitationAssumption"),
    ("SINetworkSpreadingModel", "containsFormulation", "SISusceptibleEquation"),
    ("SINetworkSpreadingModel", "containsFormulation", "SIInfectedEquation"),
    ("FreeFallDetermineVelocity", "appliesModel", "FreeFallModelVacuum"),
    ("FreeFallDetermineVelocity", "appliesModel", "FreeFallModelAirDrag"),
    ("CalculateFreeFallTime", "appliesModel", "FreeFallModelAirDrag"),
    ("DetermineSpreadingCurves", "appliesModel", "SINetworkSpreadingModel"),
    ("DetermineOptimalParameters", "appliesModel", "SINetworkSpreadingModel"),
    ("FreeFallDetermineVelocity", "containsOutput", "v"),
    ("CalculateFreeFallTime", "containsConstant", "g"),
    ("CalculateFreeFallTime", "containsInput", "m"),
    ("CalculateFreeFallTime", "containsOutput", "t"),
    ("DetermineSpreadingCurves", "containsParameter", "alpha"),
    ("DetermineSpreadingCurves", "containsParameter", "G"),
    ("DetermineSpreadingCurves", "containsOutput", "i_m"),
    ("DetermineOptimalParameters", "containsOutput", "G"),
    ("DetermineOptimalParameters", "containsOutput", "alpha"),
    # Task equivalences. The free-fall-time equivalence points from the
    # algorithmic task on purpose; see the module docstring.
    ("FreeFallDetermineVelocity", "equivalentTo", "ComputeEvolutionODE"),
    ("ComputeEvolutionODE", "equivalentTo", "CalculateFreeFallTime"),
    ("DetermineSpreadingCurves", "equivalentTo", "ComputeEvolutionODE"),
    ("DetermineOptimalParameters", "equivalentTo", "MinimizeLossFunction"),
    ("RKex11", "solves", "ComputeEvolutionODE"),
    ("RKim11", "solves", "ComputeEvolutionODE"),
    ("RK44kutta", "solves", "ComputeEvolutionODE"),
    ("LUDecomposition", "solves", "SolveLinearSystem"),
    ("ConjugateGradient", "solves", "SolveLinearSystem"),
    ("TrenchAlgorithm", "solves", "SolveLinearSystem"),
    ("Kaczmarz", "solves", "SolveLinearSystem"),
    ("FilteredBackprojection", "solves", "SolveLinearSystem"),
    ("ExpectationMaximization", "solves", "SolveLinearSystem"),
    ("PrescaledMALA", "solves", "MinimizeLossFunction"),
    ("RKex11", "precludes", "StiffODEPattern"),
    ("RKim11", "recommends", "StiffODEPattern"),
    ("RK44kutta", "requires", "SmoothOrder4Pattern"),
    ("RK44kutta", "recommends", "SmoothOrder4Pattern"),
    ("RK44kutta", "precludes", "StiffODEPattern"),
    ("ConjugateGradient", "requires", "SymmetricPattern"),
    ("ConjugateGradient", "requires", "SPDPattern"),
    ("TrenchAlgorithm", "requires", "ToeplitzPattern"),
    ("TrenchAlgorithm", "recommends", "ToeplitzPattern"),
    ("Kaczmarz", "requires", "RadonTransformPattern"),
    ("FilteredBackprojection", "requires", "RadonParallelBeamPattern"),
    ("FilteredBackprojection", "recommends", "RadonParallelBeamPattern"),
    ("ExpectationMaximization", "requires", "PositivityPattern"),
    ("ExpectationMaximization", "recommends", "PoissonDataPattern"),
    ("PrescaledMALA", "recommends", "HighDimSmoothGradientPattern"),
    ("RKim11", "implementedBy", "DifferentialEquationsJl"),
    ("DifferentialEquationsJl", "testedBy", "Brusselator"),
    ("Brusselator", "instantiates", "ComputeEvolutionODE"),
    ("SINetworkSpreadingModel", "documentedIn", "Kostre2022"),
    ("PrescaledMALA", "usedIn", "Kostre2022"),
)

_EXTERNAL_ID_PREDICATES = {"qudt": QUDT_ID, "wikidata": WIKIDATA_ID, "msc": MSC_ID, "dfg": DFG_ID}


def _iri_map() -> dict[str, Iri]:
    reg = schema()
    out = {}
    for local, class_name, _ in ENTITIES:
        out[local] = Iri(reg.class_named(class_name).namespace + local)
    return out


def seed_graph() -> Graph:
    reg = schema()
    iris = _iri_map()
    graph = Graph()
    for local, class_name, label in ENTITIES:
        subject = iris[local]
        graph.insert(Triple(subject, RDF_TYPE, reg.class_named(class_name).iri))
        graph.insert(Triple(subject, RDFS_LABEL, Literal(label)))
    for local, latex in LATEX_EXPRESSIONS.items():
        graph.insert(Triple(iris[local], DEFINING_FORMULATION, Literal(latex, LATEX)))
    for local, symbol in SYMBOLS.items():
        graph.insert(Triple(iris[local], SYMBOL, Literal(symbol)))
    for local, prop, value in FLAGS:
        graph.insert(Triple(iris[local], Iri(MMDB + prop), value))
    for local, order in TENSOR_ORDERS.items():
        graph.insert(Triple(iris[local], TENSOR_ORDER, Literal(order)))
    for local, kind, value in EXTERNAL_IDS:
        graph.insert(
            Triple(iris[local], _EXTERNAL_ID_PREDICATES[kind], Literal(value, EXTERNAL_ID))
        )
    for form, quantities in CONTAINS_QUANTITY_EDGES.items():
        for q in quantities:
            graph.insert(Triple(iris[form], CONTAINS_QUANTITY, iris[q]))
    for quantity, kind in KIND_EDGES.items():
        graph.insert(Triple(iris[quantity], IS_KIND_OF, iris[kind]))
    for subject, relation, obj in RELATION_EDGES:
        predicate = reg.relation_by_local_name(relation)
        if predicate is None:
            raise KeyError(f"unknown relation {relation!r} in seed data")
        graph.insert(Triple(iris[subject], predicate, iris[obj]))
    return repair_inverses(graph)


def entity_counts(graph: Graph) -> dict[str, int]:
    reg = schema()
    return {c.name: len(graph.subjects_of_type(c.iri)) for c in reg.classes}


def split_by_namespace(graph: Graph) -> dict[str, Graph]:
    """Partition triples into one graph per seed file by subject namespace."""
    parts = {name: Graph(graph.prefixes) for name in SEED_FILES}
    for t in graph:
        if t.subject.value.startswith(MMDB):
            parts["mathmoddb.ttl"].insert(t)
        elif t.subject.value.startswith(MADB):
            parts["mathalgodb.ttl"].insert(t)
        else:
            raise ValueError(f"seed subject outside known namespaces: {t.subject.value}")
    return parts


def build_manifest(directory: Path) -> dict:
    graph = Graph()
    total = 0
    files = []
    for name in SEED_FILES:
        data = (directory / name).read_bytes()
        triples, prefixes = parse_document(data.decode("utf-8"))
        graph.prefixes.update(prefixes)
        for t in triples:
            graph.insert(t)
        total += len(triples)
        files.append({"path": name, "sha256": hashlib.sha256(data).hexdigest(),
                      "triples": len(triples)})
    return {
        "files": files,
        "expectedCounts": entity_counts(graph),
        "totalTriples": total,
    }


def write_seed_files(directory: Path) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    for name, part in split_by_namespace(seed_graph()).items():
        (directory / name).write_text(serialize(part), encoding="utf-8")
    manifest = build_manifest(directory)
    (directory / MANIFEST_FILE).write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")


if __name__ == "__main__":  # regenerate the checked-in fixtures
    import sys

    target = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("data")
    write_seed_files(target)
    print(f"wrote seed files to {target}/")
