#!/usr/bin/env python
"""Command line front end.

    python -m lrcoh check problems/cubic_z3.json
    python -m lrcoh cohomology problems/cubic.json --window -6:6 --format text
    python -m lrcoh connection problems/cubic_z3.json --module problems/maximal_ideal.json \
        --connection problems/trivial_connection.json --equivariant

Exit codes: 0 success, 1 validation failure, 2 bound instability, 3 input parse error.
"""

import argparse
import logging
import sys
from typing import List, Optional, Tuple

from . import config
from .action import CyclicActionType
from .conn import (
    Connection,
    RankOneModule,
    average_connection,
    integrability_class,
    moduli_class,
    trivial_connection,
    twisted,
    verify_connection,
)
from .deriv import apply
from .equiv import (
    check_action,
    class_weights,
    invariant_cohomology,
    pseudo_reflection_check,
)
from .errors import (
    GaloisHypothesisError,
    IncompatibleActionError,
    InstabilityError,
    InvalidConnectionError,
    LrcohError,
    NonIntegrableError,
    NotHomogeneousError,
    NotInSpanError,
    PolyParseError,
    ProblemFileError,
    ScalarInconsistencyError,
)
from .lrc import LieRinehartComplex, stability_check
from .presmod import cochain_dimension_drift
from .report import (
    GALOIS_BRIDGE_NOTE,
    ActionCheck,
    CheckSection,
    ClassSummary,
    CohomologyEntry,
    CohomologySection,
    ConnectionSection,
    ConnectionSpec,
    GeneratorInfo,
    ModuleSpec,
    ModuliSummary,
    ProblemSpec,
    PseudoReflectionSummary,
    Report,
    build_action,
    build_algebra,
    fraction_text,
    load_connection,
    load_module,
    load_problem,
    parse_polys,
)
from .wpoly import WeightedAlgebra, format_poly, hilbert_series, parse_poly, weighted_degree

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_UNSTABLE = 2
EXIT_PARSE = 3


# ============================================================
#  SETTINGS
# ============================================================


def resolve_window(spec: ProblemSpec, override: Optional[str] = None) -> Tuple[int, int]:
    if override:
        return config.parse_window(override)
    if spec.degree_window is not None:
        lo, hi = spec.degree_window
        if lo > hi:
            raise ProblemFileError(f"degree_window: empty window {lo}:{hi}")
        return lo, hi
    return config.parse_window(config.DEFAULT_WINDOW)


def resolve_max_n(spec: ProblemSpec, override: Optional[int] = None) -> int:
    if override is not None:
        return override
    return spec.max_n if spec.max_n is not None else config.DEFAULT_MAX_N


def resolve_bound(spec: ProblemSpec, alg: WeightedAlgebra) -> int:
    if spec.presentation_bound is not None:
        return spec.presentation_bound
    return config.default_bound(alg.degree, alg.weights)


def _base_report(command: str, spec: ProblemSpec, alg: WeightedAlgebra,
                 act: Optional[CyclicActionType]) -> Report:
    return Report(
        command=command,
        f=format_poly(alg.f, spec.variables),
        weights=list(alg.weights),
        degree=alg.degree,
        degree_shift=alg.ws.shift,
        exponent_shift=None if act is None else sum(spec.action.exponents) - act.m,
    )


def _validated(spec: ProblemSpec):
    alg = build_algebra(spec)
    act = build_action(spec)
    report = None
    if act is not None:
        report = check_action(alg, act, spec.action.exponents)
    return alg, act, report


# ============================================================
#  COMMANDS
# ============================================================


def cmd_check(spec: ProblemSpec) -> Report:
    """Homogeneity, action compatibility, pseudo-reflections and the Galois flag."""
    f = parse_poly(spec.f, spec.variables)
    degree = spec.degree
    if degree is None:
        degree = max(weighted_degree(mon, spec.weights) for mon in f.terms) if f.terms else 0
    try:
        alg, act, action_report = _validated(spec)
    except (NotHomogeneousError, IncompatibleActionError) as e:
        return Report(
            command="check",
            f=format_poly(f, spec.variables),
            weights=list(spec.weights),
            degree=degree,
            degree_shift=degree - sum(spec.weights),
            check=CheckSection(
                homogeneous=not isinstance(e, NotHomogeneousError),
                degree=degree,
                weights=list(spec.weights),
                degree_shift=degree - sum(spec.weights),
                hilbert=[],
                galois_asserted=spec.galois_asserted,
            ),
            errors=[str(e)],
            ok=False,
        )
    report = _base_report("check", spec, alg, act)
    section = CheckSection(
        homogeneous=True,
        degree=alg.degree,
        weights=list(alg.weights),
        degree_shift=alg.ws.shift,
        hilbert=hilbert_series(alg.ws, max(2 * alg.degree, 10)),
        galois_asserted=spec.galois_asserted,
        equivariant=act is not None and not act.is_trivial,
    )
    if action_report is not None:
        section.action = ActionCheck(
            m=act.m,
            exponents=list(spec.action.exponents),
            compatible=action_report.compatible,
            strict_equality=action_report.strict_equality,
            exponent_shift=action_report.exponent_shift,
            h_weight=action_report.h_weight,
        )
        census = pseudo_reflection_check(act)
        section.pseudo_reflections = PseudoReflectionSummary(
            fixed_dimensions=census.fixed_dimensions,
            pseudo_reflections=census.pseudo_reflections,
        )
        report.warnings.extend(action_report.warnings)
        if not census.clean:
            report.warnings.append(
                f"g^k is a pseudo-reflection of the ambient space for k in {census.pseudo_reflections}"
            )
        if not spec.galois_asserted:
            report.warnings.append("galois_asserted is false: invariant results will not be interpreted")
    else:
        report.notes.append("no action given: equivariant features are disabled")
    report.check = section
    return report


def _generator_info(cx: LieRinehartComplex, variables) -> List[GeneratorInfo]:
    return [
        GeneratorInfo(
            index=i + 1,
            degree=cx.gens.degrees[i],
            weight=cx.gens.weights[i],
            coefficients=[format_poly(a, variables) for a in G.coefficients],
        )
        for i, G in enumerate(cx.generators)
    ]


def cmd_cohomology(spec: ProblemSpec, max_n: Optional[int] = None, window: Optional[str] = None,
                   invariants: bool = False, check_stability: bool = True) -> Report:
    """The table of dim Hⁿ_e, split by ξ-weight when an action is given."""
    alg, act, action_report = _validated(spec)
    lo, hi = resolve_window(spec, window)
    top = resolve_max_n(spec, max_n)
    bound = resolve_bound(spec, alg)
    if invariants and act is not None and not act.is_trivial and not spec.galois_asserted:
        raise GaloisHypothesisError(
            "--invariants needs galois_asserted: true (A^G ⊆ A unramified in codimension one)"
        )
    report = _base_report("cohomology", spec, alg, act)
    if action_report is not None:
        report.warnings.extend(action_report.warnings)
    cx = LieRinehartComplex(alg, bound, act)
    equivariant = act is not None and not act.is_trivial
    entries = []
    for n in range(top + 1):
        for e in range(lo, hi + 1):
            dim = cx.cohomology_dimension(n, e)
            entry = CohomologyEntry(n=n, e=e, dimension=dim)
            if equivariant:
                for t in act.weights():
                    block, classes = cx.cohomology(n, e, t)
                    entry.weight_dimensions[t] = block
                    entry.class_weights.extend(class_weights(classes, act))
                if sum(entry.weight_dimensions.values()) != dim:
                    report.warnings.append(f"weight blocks of H^{n}_{e} do not sum to {dim}")
                if invariants:
                    entry.invariant_dimension, _ = invariant_cohomology(cx, n, e, spec.galois_asserted)
            elif invariants:
                entry.invariant_dimension = dim
            entries.append(entry)
    report.cohomology = CohomologySection(
        window=(lo, hi), max_n=top, bound=bound,
        generators=_generator_info(cx, spec.variables), entries=entries,
    )
    if equivariant:
        report.notes.append(GALOIS_BRIDGE_NOTE)
    if check_stability:
        unstable = stability_check(alg, act, bound, (lo, hi), top)
        if unstable:
            report.unstable = True
            report.warnings.extend(f"bound instability: {msg}" for msg in unstable)
        drift = cochain_dimension_drift(alg, act, bound, (lo, hi), top + 1)
        report.warnings.extend(f"cochain drift: {msg}" for msg in drift)
    return report


def build_module(cx: LieRinehartComplex, spec: ProblemSpec, module: ModuleSpec) -> RankOneModule:
    try:
        return RankOneModule(cx, parse_polys(module.generators, spec.variables), module.weights)
    except ValueError as e:
        raise InvalidConnectionError([f"module: {e}"])


def build_connection(M: RankOneModule, spec: ProblemSpec, doc: ConnectionSpec) -> Connection:
    if doc.gamma is not None:
        gamma = [[parse_polys(col, spec.variables) for col in row] for row in doc.gamma]
        conn = Connection(M, gamma)
    elif doc.trivial or doc.one_form is not None or doc.exact is not None:
        conn = trivial_connection(M)
    else:
        raise ProblemFileError("connection: give 'gamma', or 'trivial' with optional 'one_form' / 'exact'")
    if doc.one_form is not None:
        conn = twisted(conn, parse_polys(doc.one_form, spec.variables))
    if doc.exact is not None:
        b = parse_poly(doc.exact, spec.variables)
        conn = twisted(conn, [apply(G, b) for G in M.cx.generators])
    return conn


def _class_summaries(components) -> List[ClassSummary]:
    return [
        ClassSummary(
            e=c.e,
            is_cocycle=c.is_cocycle,
            is_coboundary=c.is_coboundary,
            coordinates=None if c.coordinates is None else [fraction_text(x) for x in c.coordinates],
        )
        for c in components.values()
    ]


def cmd_connection(spec: ProblemSpec, module: ModuleSpec, connection: ConnectionSpec,
                   equivariant: bool = False, compare: Optional[ConnectionSpec] = None) -> Report:
    """Verify a connection, classify its curvature and optionally compare it with another."""
    alg, act, action_report = _validated(spec)
    if equivariant and (act is None or act.is_trivial):
        raise GaloisHypothesisError("--equivariant needs a non-trivial action block")
    if equivariant and not spec.galois_asserted:
        raise GaloisHypothesisError(
            "--equivariant needs galois_asserted: true (A^G ⊆ A unramified in codimension one)"
        )
    bound = resolve_bound(spec, alg)
    lo, hi = resolve_window(spec)
    cx = LieRinehartComplex(alg, bound, act)
    M = build_module(cx, spec, module)
    conn = build_connection(M, spec, connection)
    report = _base_report("connection", spec, alg, act)
    if action_report is not None:
        report.warnings.extend(action_report.warnings)

    checked = verify_connection(conn)
    section = ConnectionSection(valid=checked.valid, violations=checked.violations)
    report.connection = section
    if not checked.valid:
        report.ok = False
        report.errors.extend(checked.violations)
        section.conclusion = "not a connection"
        return report

    ic = integrability_class(conn)
    section.integrable = ic.integrable
    section.curvature = [format_poly(v, spec.variables) for v in ic.curvature.values]
    section.integrability_class_zero = ic.zero
    section.integrability_components = _class_summaries(ic.components)

    working = conn
    if equivariant:
        averaged = average_connection(conn)
        section.averaged = True
        section.averaged_valid = verify_connection(averaged).valid
        avg_ic = integrability_class(averaged, equivariant=True)
        section.averaged_class_zero = avg_ic.zero
        section.invariant_h1_dimension = sum(cx.cohomology_dimension(1, e, 0) for e in range(lo, hi + 1))
        working = averaged
        report.notes.append(GALOIS_BRIDGE_NOTE)
        if avg_ic.zero:
            unique = "unique class" if section.invariant_h1_dimension == 0 else (
                f"classes form an invariant H^1 of dimension {section.invariant_h1_dimension}")
            section.conclusion = f"integrable connection on the quotient exists, {unique}"
        else:
            section.conclusion = "invariant integrability class is non-zero: no integrable connection on the quotient"
    else:
        section.conclusion = (
            "integrable" if ic.integrable else
            "integrable connection exists (class zero)" if ic.zero else
            "no integrable connection (class non-zero)"
        )

    if compare is not None:
        other = build_connection(M, spec, compare)
        if equivariant:
            other = average_connection(other)
        mc = moduli_class(working, other, equivariant)
        section.moduli = ModuliSummary(
            equivalent=mc.equivalent,
            is_cocycle=mc.is_cocycle,
            omega=[format_poly(v, spec.variables) for v in mc.omega],
            components=_class_summaries(mc.components),
        )
    return report


# ============================================================
#  TEXT OUTPUT
# ============================================================


def render_text(report: Report) -> str:
    lines = []
    status = "✅" if report.ok else "❌"
    lines.append(f"{status} f = {report.f}   weights {tuple(report.weights)}   d = {report.degree}")
    lines.append(f"   d - d1 - d2 - d3 = {report.degree_shift}")
    if report.exponent_shift is not None:
        lines.append(f"   m1 + m2 + m3 - m = {report.exponent_shift}")
    if report.check is not None:
        ch = report.check
        lines.append(f"   homogeneous: {'yes' if ch.homogeneous else 'no'}")
        if ch.hilbert:
            lines.append(f"   Hilbert series: {' '.join(map(str, ch.hilbert))}")
        if ch.action is not None:
            a = ch.action
            lines.append(f"   action ({a.m};{','.join(map(str, a.exponents))}): compatible, "
                         f"strict equality {'holds' if a.strict_equality else 'fails'}, "
                         f"H-weight {a.h_weight}")
        if ch.pseudo_reflections is not None:
            pr = ch.pseudo_reflections
            lines.append("   pseudo-reflections: " + (
                "none" if not pr.pseudo_reflections else ", ".join(f"g^{k}" for k in pr.pseudo_reflections)))
        lines.append(f"   Galois asserted: {'yes' if ch.galois_asserted else 'no'}")
    if report.cohomology is not None:
        co = report.cohomology
        lines.append(f"📐 Der generators (bound {co.bound}):")
        for g in co.generators:
            lines.append(f"   G{g.index}  deg {g.degree:>3}  wt {g.weight}  "
                         f"[{', '.join(g.coefficients)}]")
        lo, hi = co.window
        header = "n\\e   " + "".join(f"{e:>5}" for e in range(lo, hi + 1))
        lines.append(header)
        by_key = {(x.n, x.e): x for x in co.entries}
        for n in range(co.max_n + 1):
            lines.append(f"H^{n}   " + "".join(f"{by_key[(n, e)].dimension:>5}" for e in range(lo, hi + 1)))
            if any(by_key[(n, e)].invariant_dimension is not None for e in range(lo, hi + 1)):
                lines.append(f"H^{n}^G " + "".join(
                    f"{by_key[(n, e)].invariant_dimension or 0:>5}" for e in range(lo, hi + 1)))
        for x in co.entries:
            if x.dimension and x.weight_dimensions:
                blocks = ", ".join(f"wt {t}: {d}" for t, d in sorted(x.weight_dimensions.items()) if d)
                lines.append(f"   H^{x.n}_{x.e}: {blocks}")
    if report.connection is not None:
        c = report.connection
        lines.append(f"🔗 connection valid: {'yes' if c.valid else 'no'}")
        for v in c.violations:
            lines.append(f"   ❌ {v}")
        if c.valid:
            lines.append(f"   integrable: {'yes' if c.integrable else 'no'}; "
                         f"integrability class zero: {'yes' if c.integrability_class_zero else 'no'}")
            if c.averaged:
                lines.append(f"   averaged connection valid: {'yes' if c.averaged_valid else 'no'}; "
                             f"invariant class zero: {'yes' if c.averaged_class_zero else 'no'}")
            if c.moduli is not None:
                lines.append(f"   compared connection: {'equivalent' if c.moduli.equivalent else 'not equivalent'}")
        if c.conclusion:
            lines.append(f"💡 {c.conclusion}")
    for w in report.warnings:
        lines.append(f"⚠️  {w}")
    for e in report.errors:
        lines.append(f"❌ {e}")
    for note in report.notes:
        lines.append(f"💡 {note}")
    return "\n".join(lines)


def emit(report: Report, fmt: str) -> None:
    print(report.to_json() if fmt == "json" else render_text(report))


# ============================================================
#  ENTRYPOINT
# ============================================================


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lrcoh",
        description="Graded and equivariant Lie-Rinehart cohomology of quasi-homogeneous surface singularities",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="validate a problem document")
    p_check.add_argument("spec")
    p_check.add_argument("--format", choices=["json", "text"], default="text")

    p_coh = sub.add_parser("cohomology", help="tabulate dim H^n_e")
    p_coh.add_argument("spec")
    p_coh.add_argument("--max-n", type=int, default=None)
    p_coh.add_argument("--window", default=None, help="degree window LO:HI")
    p_coh.add_argument("--invariants", action="store_true")
    p_coh.add_argument("--format", choices=["json", "text"], default="text")

    p_conn = sub.add_parser("connection", help="verify and classify a connection")
    p_conn.add_argument("spec")
    p_conn.add_argument("--module", required=True)
    p_conn.add_argument("--connection", required=True)
    p_conn.add_argument("--equivariant", action="store_true")
    p_conn.add_argument("--compare", default=None, help="second connection document")
    p_conn.add_argument("--format", choices=["json", "text"], default="text")
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=config.LOG_LEVEL.upper(), format="%(levelname)s %(name)s: %(message)s")
    try:
        spec = load_problem(args.spec)
        if args.command == "check":
            report = cmd_check(spec)
        elif args.command == "cohomology":
            report = cmd_cohomology(spec, args.max_n, args.window, args.invariants)
        else:
            module = load_module(args.module)
            connection = load_connection(args.connection)
            compare = load_connection(args.compare) if args.compare else None
            report = cmd_connection(spec, module, connection, args.equivariant, compare)
    except (ProblemFileError, PolyParseError) as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_PARSE
    except ValueError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_PARSE
    except (InstabilityError, NotInSpanError) as e:
        print(f"⚠️  {e}", file=sys.stderr)
        return EXIT_UNSTABLE
    except (NotHomogeneousError, IncompatibleActionError, InvalidConnectionError,
            GaloisHypothesisError, NonIntegrableError, ScalarInconsistencyError) as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except LrcohError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_VALIDATION

    emit(report, args.format)
    if not report.ok:
        return EXIT_VALIDATION
    if report.unstable:
        return EXIT_UNSTABLE
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
