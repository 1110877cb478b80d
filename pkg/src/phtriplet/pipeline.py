"""Report builders behind the CLI subcommands.

Each builder takes a ProblemSpec and returns a JSON-ready dict. Matrices go
through ``encode_matrix`` so that reports are diff-able and round-trip.
"""

from .classify import (
    RelationBC,
    SkewBC,
    check_generalized_ph,
    classify_relation_bc,
    classify_skew_bc,
    oracle_classify,
    relation_kernel,
    trace_bc_to_triplet_bc,
)
from .coercivity import coercivity_scan
from .errors import AssumptionViolated, DegeneratePencil, DimensionMismatch, ParseError
from .greens import range_green_suite, skew_green_suite
from .opspec import check_maxwell_symmetry, check_mixed_order, check_skew_parity, defect_dimensions
from .problem import encode_matrix
from .triplet import build_range_triplet, build_skew_triplet


def _factorization(fact):
    return {"kind": fact.kind, "rank": fact.rank, "u_r": encode_matrix(fact.u_r), "d_r": encode_matrix(fact.d_r)}


def structural_checks(problem):
    tols = problem.tolerances
    maxwell = check_maxwell_symmetry(problem.pair, tols.struct_tol)
    mixed = check_mixed_order(problem.pair)
    out = {"maxwell_symmetry": maxwell.as_dict(), "mixed_order": {"passed": bool(mixed)}}
    if problem.skew is not None:
        out["skew_parity"] = check_skew_parity(problem.skew, tols.struct_tol).as_dict()
    return out


def structural_ok(checks):
    return all(c["passed"] for c in checks.values())


def check_report(problem, k_max=None):
    tols = problem.tolerances
    checks = structural_checks(problem)
    try:
        dims = defect_dimensions(problem.pair, tols.deg_tol)
        defect = {"d_plus": dims.d_plus, "d_minus": dims.d_minus,
                  "triplet_exists": dims.existence_of_triplet}
    except DegeneratePencil as exc:
        defect = {"error": "DegeneratePencil", "message": str(exc)}
    cert = coercivity_scan(problem.pair, k_max or problem.k_max)
    return {
        "command": "check",
        "structural": checks,
        "structural_passed": structural_ok(checks),
        "defect_dimensions": defect,
        "coercivity": cert.as_dict(),
        "tolerances": tols.as_dict(),
    }


def range_triplet(problem, rtol=None):
    tols = problem.tolerances
    return build_range_triplet(problem.pair, rtol or tols.rank_rtol, tols.struct_tol)


def skew_triplet(problem, rtol=None):
    tols = problem.tolerances
    return build_skew_triplet(problem.skew, rtol or tols.rank_rtol, tols.struct_tol)


def triplet_report(problem, rtol=None):
    t = range_triplet(problem, rtol)
    out = {
        "command": "triplet",
        "range": {
            "mode": t.mode,
            "boundary_space_dim": t.boundary_space_dim,
            "B": encode_matrix(t.b_matrix),
            "A": encode_matrix(t.a_matrix),
            "factorization": _factorization(t.factorization),
            "gamma0": encode_matrix(t.gamma0_matrix),
            "gamma1": encode_matrix(t.gamma1_matrix),
        },
    }
    if problem.skew is not None:
        s = skew_triplet(problem, rtol)
        out["skew"] = {
            "boundary_space_dim": s.boundary_space_dim,
            "Q": encode_matrix(s.q_matrix),
            "factorization": _factorization(s.factorization),
            "gamma0": encode_matrix(s.gamma0_matrix),
            "gamma1": encode_matrix(s.gamma1_matrix),
        }
    out["tolerances"] = problem.tolerances.as_dict()
    return out


def _check_size(mats, g, label):
    for name, m in mats.items():
        if m.shape != (g, g):
            raise DimensionMismatch(f"{name} has shape {m.shape}; the {label} boundary space has dimension {g}")


def classify_report(problem, rtol=None):
    bcs = problem.boundary_conditions
    if not bcs:
        raise ParseError("classify needs boundary_conditions in the problem file")
    tols = problem.tolerances
    t = range_triplet(problem, rtol)
    if bcs["form"] == "trace":
        rel = trace_bc_to_triplet_bc(bcs["Q_b"], bcs["R_b"], t, tols.rank_rtol)
    else:
        _check_size({"K": bcs["K"], "L": bcs["L"]}, t.boundary_space_dim, "range")
        rel = RelationBC(bcs["K"], bcs["L"])
    rel_report = classify_relation_bc(rel, tols.defect_tol, tols.rank_rtol)
    out = {
        "command": "classify",
        "form": bcs["form"],
        "K": encode_matrix(rel.k_matrix),
        "L": encode_matrix(rel.l_matrix),
        "relation": rel_report.as_dict(),
        "relation_oracle": oracle_classify(relation_kernel(rel, tols.rank_rtol), tols.psd_tol,
                                           tols.subspace_tol, tols.rank_rtol),
    }
    if "F" in bcs:
        if problem.skew is None:
            raise ParseError("F and E need a skew operator J in the problem file")
        s = skew_triplet(problem, rtol)
        _check_size({"F": bcs["F"], "E": bcs["E"]}, s.boundary_space_dim, "skew")
        skew_bc = SkewBC(bcs["F"], bcs["E"])
        out["skew"] = classify_skew_bc(skew_bc, tols.defect_tol, tols.rank_rtol).as_dict()
        out["skew_oracle"] = oracle_classify(relation_kernel(skew_bc, tols.rank_rtol), tols.psd_tol,
                                             tols.subspace_tol, tols.rank_rtol)
        out["generalized_port_hamiltonian"] = check_generalized_ph(
            rel, skew_bc, tols.defect_tol, tols.rank_rtol
        ).holds
    out["tolerances"] = tols.as_dict()
    return out


def green_report(problem, samples, seed, degree=None, rtol=None):
    tols = problem.tolerances
    checks = structural_checks(problem)
    if not checks["maxwell_symmetry"]["passed"] or not checks["mixed_order"]["passed"]:
        raise AssumptionViolated("Green identity only holds for structurally valid pairs; run `check`")
    if degree is None:
        degree = 2 * problem.pair.order + 4
    t = range_triplet(problem, rtol)
    stats = range_green_suite(problem.pair, t, samples, seed, degree)
    out = {
        "command": "green",
        "range": {**stats.as_dict(), "passed": stats.max_relative_residual <= tols.green_tol},
    }
    if problem.skew is not None:
        s = skew_triplet(problem, rtol)
        sk = skew_green_suite(problem.skew, s, samples, seed, degree)
        out["skew"] = {**sk.as_dict(), "passed": sk.max_relative_residual <= tols.green_tol}
    out["tolerances"] = tols.as_dict()
    return out


def coercivity_report(problem, k_max=None):
    cert = coercivity_scan(problem.pair, k_max or problem.k_max)
    return {"command": "coercivity", "coercivity": cert.as_dict(),
            "tolerances": problem.tolerances.as_dict()}
