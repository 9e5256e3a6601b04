"""Command line entry point: one deterministic JSON report per run.

Subcommands
    ext            one graded Ext piece of a monomial quotient
    scan           all nonzero Ext pieces of one cohomological degree in a box
    transition     injectivity of the maps between consecutive ideal powers
    pipeline       the staged annihilator computation over the p-local base
    dsub           classify the differential submodule generated by polynomials
    saturate       strip pi powers from term generators ((I : pi^infinity))
    simplicial     face counts and reduced cohomology of a facet complex
    hochster       graded local cohomology of a face ring via links
    filtration     build a layer chain, check its axioms, report the verdict
    radical-check  the four-element up-to-radical generation certificate

Exit codes: 0 success, 1 usage or input error, 2 when a checked claim
failed, meaning the computation ran and did not reproduce the statement.

Reports are byte-identical across runs and across --threads values for
identical inputs.  Tuning flags (--threads, --timeout-secs) are never
echoed into the report; wall-clock seconds go to standard error only,
while the report's "timing" field carries deterministic work counters.

File arguments accept "-" for standard input.  Formats are documented in
textio; generator lists may omit the "vars n" header, in which case the
variable count is inferred from the largest index present.
"""

from __future__ import annotations

import argparse
import re
import sys
import time
from typing import Optional

from .diffops import classify_d_submodule, pi_saturate
from .filtrations import (
    build_filtration_localization,
    build_filtration_quotient,
    check_axioms,
    finite_type_and_verdict,
    inject_shift_fault,
    inject_tail_fault,
)
from .groebner import sv_containment_check
from .monomials import power_ideal
from .pipeline import annihilator_pipeline
from .polynomials import Polynomial
from .reports import FAILED, Claim, Report, verified
from .scalars import DVR, PrimeField, RationalField
from .simplicial import (
    SimplicialComplex,
    hochster_local_cohomology_piece,
    hochster_nonzero_levels,
    reduced_cohomology,
)
from .taylor import TaylorComplex, transition_between
from .textio import (
    load_facets_text,
    load_generators_text,
    load_ideal_text,
    parse_polynomial,
    parse_polynomials,
    reisner_ideal,
    rp2_facets,
)

REISNER_BOX = ((-1, 0),) * 6
REISNER_SOCLE = (-1,) * 6


class UsageError(Exception):
    pass


# flags whose values may begin with '-' (negative degrees, intervals);
# fused to --flag=value so argparse does not read them as options
_VALUE_FLAGS = ("--alpha", "--box", "--degree", "--f")


def _fuse_values(argv: list) -> list:
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read_source(path: str):
    if path == "-":
        return sys.stdin.read(), "<stdin>"
    with open(path, encoding="utf-8") as fh:
        return fh.read(), path


def _load_ideal(path: str):
    text, source = _read_source(path)
    return load_ideal_text(text, source=source), source


def _load_facets(path: str):
    text, source = _read_source(path)
    n, facets = load_facets_text(text, source=source)
    return SimplicialComplex(n, facets), source


def _load_generators(path: str, ring):
    """Generator list; a leading 'vars n' header is optional here."""
    text, source = _read_source(path)
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if re.fullmatch(r"vars\s+\d+", line):
            return load_generators_text(text, ring, source=source), source
        break
    lines = [
        stripped
        for raw in text.splitlines()
        if (stripped := raw.split("#", 1)[0].strip())
    ]
    if not lines:
        raise ValueError(f"{source}: no generators given")
    try:
        return parse_polynomials(lines, ring), source
    except ValueError as exc:
        raise ValueError(f"{source}: {exc}") from None


def _parse_box(text: str, n: int):
    pairs = []
    for part in text.split(","):
        lo, sep, hi = part.partition(":")
        try:
            if not sep:
                raise ValueError
            pairs.append((int(lo), int(hi)))
        except ValueError:
            raise ValueError(f"bad box interval {part!r}, expected 'lo:hi'") from None
    if len(pairs) == 1 and n > 1:
        pairs = pairs * n
    if len(pairs) != n:
        raise ValueError(f"box has {len(pairs)} intervals, ideal has {n} variables")
    return tuple(pairs)


def _parse_alpha(text: str, n: int):
    try:
        alpha = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"bad degree {text!r}, expected comma-separated integers") from None
    if len(alpha) != n:
        raise ValueError(f"degree has {len(alpha)} entries, expected {n}")
    return alpha


def _deadline(ns) -> Optional[float]:
    if ns.timeout_secs is None:
        return None
    return time.monotonic() + ns.timeout_secs


def _check_deadline(deadline: Optional[float], what: str):
    if deadline is not None and time.monotonic() > deadline:
        raise TimeoutError(f"{what} passed the --timeout-secs budget")


def _piece_entry(piece, p: int) -> dict:
    free, exps = piece.dvr_invariants(p)
    entry = piece.describe()
    entry["p_local"] = {"free_rank": free, "pi_exponents": list(exps)}
    return entry


def cmd_ext(ns) -> Report:
    ideal, source = _load_ideal(ns.ideal)
    alpha = _parse_alpha(ns.alpha, ideal.n)
    piece = TaylorComplex(ideal).ext_piece(ns.j, alpha)
    return Report(
        command="ext",
        inputs={"ideal": source, "j": ns.j, "alpha": list(alpha), "p": ns.p},
        results={"piece": _piece_entry(piece, ns.p)},
        claims=(),
        timing={"degrees_computed": 1},
    )


def cmd_scan(ns) -> Report:
    ideal, source = _load_ideal(ns.ideal)
    tc = TaylorComplex(ideal)
    box = _parse_box(ns.box, ideal.n) if ns.box else tc.default_box()
    scan = tc.support_scan(ns.j, box=box, shell=not ns.no_shell)
    results = scan.describe()
    results["pieces"] = [_piece_entry(p, ns.p) for p in scan.pieces]
    claims = []
    timing = {"degrees_scanned": scan.degrees_scanned, "pieces": len(scan.pieces)}
    socle_scope = (
        ideal == reisner_ideal()
        and ns.j == 4
        and box == REISNER_BOX
        and scan.shell_checked
    )
    if socle_scope:
        socle = (
            len(scan.pieces) == 1
            and scan.pieces[0].alpha == REISNER_SOCLE
            and scan.pieces[0].group.describe() == {"rank": 0, "torsion": [2]}
            and scan.shell_clean
        )
        maps = [tc.mult_map(4, REISNER_SOCLE, i) for i in range(6)] if socle else []
        results["mult_maps"] = [m.describe() for m in maps]
        timing["mult_maps_checked"] = len(maps)
        if socle and all(m.zero for m in maps):
            claims.append(
                Claim(
                    "ext4-socle",
                    "Ext^4 = Z/2 at (-1,...,-1), clean shell, six zero maps out",
                    verified(),
                )
            )
        else:
            claims.append(Claim("ext4-socle", "Z/2 socle not reproduced", FAILED))
    return Report(
        command="scan",
        inputs={
            "ideal": source,
            "j": ns.j,
            "box": [list(iv) for iv in box],
            "shell": not ns.no_shell,
            "p": ns.p,
        },
        results=results,
        claims=tuple(claims),
        timing=timing,
    )


def cmd_transition(ns) -> Report:
    if ns.levels < 2:
        raise ValueError("need --levels >= 2 to have maps between levels")
    ideal, source = _load_ideal(ns.ideal)
    deadline = _deadline(ns)
    complexes = {}
    for ell in range(1, ns.levels + 1):
        _check_deadline(deadline, f"building level {ell}")
        complexes[ell] = TaylorComplex(power_ideal(ideal, ell))
    checks = []
    degrees = 0
    transitions = 0
    all_injective = True
    complete = True
    for ell in range(1, ns.levels):
        _check_deadline(deadline, f"level {ell} support scan")
        low, high = complexes[ell], complexes[ell + 1]
        scan = low.support_scan(ns.j)
        degrees += scan.degrees_scanned
        complete = complete and scan.complete_support()
        entry = {
            "level": ell,
            "support_size": len(scan.pieces),
            "complete_support": scan.complete_support(),
            "transitions": [],
        }
        for k, piece in enumerate(scan.pieces):
            rep = transition_between(low, high, ell, ns.j, piece.alpha, check_chain=k == 0)
            transitions += 1
            all_injective = all_injective and rep.injective
            entry["transitions"].append(
                {"alpha": list(piece.alpha), "injective": rep.injective}
            )
        checks.append(entry)
    ok = all_injective and complete
    claims = (
        Claim(
            "transition-injective",
            f"levels 1..{ns.levels}: injective on every computed support degree"
            if ok
            else f"levels 1..{ns.levels}: injectivity not established",
            verified() if ok else FAILED,
        ),
    )
    return Report(
        command="transition",
        inputs={"ideal": source, "j": ns.j, "levels": ns.levels, "p": ns.p},
        results={"levels": checks, "all_injective": all_injective},
        claims=claims,
        timing={"degrees_scanned": degrees, "transitions_checked": transitions},
    )


def cmd_pipeline(ns) -> Report:
    ideal, source = _load_ideal(ns.ideal)
    box = _parse_box(ns.box, ideal.n) if ns.box else None
    rep = annihilator_pipeline(ideal, p=ns.p, j=ns.j, levels=ns.levels, box=box)
    results = rep.describe()
    claims = []
    if rep.verdict is not None and rep.verdict.kind != "inconclusive":
        claims.append(
            Claim("top-annihilator", f"Ann = {rep.verdict.tag()}", verified(rep.levels))
        )
    elif rep.verdict is not None:
        claims.append(Claim("top-annihilator", f"Ann = {rep.verdict.tag()}", FAILED))
    else:
        claims.append(
            Claim(
                "top-annihilator",
                f"no conclusion: stage {rep.failing_stage()} did not certify",
                FAILED,
            )
        )
    stage1 = rep.stages[0]
    if ideal == reisner_ideal() and ns.j == 4 and ns.p == 2:
        torsion_ok = stage1.ok and all(
            lv["support_size"] == lv["level"] ** 6
            and lv["free_rank_total"] == 0
            and all(s["pi_exponents"] == [1] for s in lv["support"])
            for lv in stage1.details["levels"]
        )
        claims.append(
            Claim(
                "levelwise-torsion",
                f"levels 1..{ns.levels}: ell^6 pieces, all Z/2"
                if torsion_ok
                else f"levels 1..{ns.levels}: levelwise support not reproduced",
                verified() if torsion_ok else FAILED,
            )
        )
        stage2 = next((s for s in rep.stages if s.name == "transition_injectivity"), None)
        if stage2 is not None and any(p["checked"] for p in stage2.details["pairs"]):
            claims.append(
                Claim(
                    "transition-injective",
                    f"levels 1..{ns.levels}: injective on every computed support degree"
                    if stage2.ok
                    else f"levels 1..{ns.levels}: injectivity not established",
                    verified() if stage2.ok else FAILED,
                )
            )
    degrees = sum(lv["degrees_scanned"] for lv in stage1.details["levels"])
    transitions = 0
    for stage in rep.stages:
        if stage.name == "transition_injectivity":
            transitions = sum(p["checked"] for p in stage.details["pairs"])
    return Report(
        command="pipeline",
        inputs={
            "ideal": source,
            "j": ns.j,
            "levels": ns.levels,
            "p": ns.p,
            "box": None if not ns.box else [list(iv) for iv in box],
        },
        results=results,
        claims=tuple(claims),
        timing={"degrees_scanned": degrees, "transitions_checked": transitions},
    )


def cmd_dsub(ns) -> Report:
    gens, source = _load_generators(ns.gens, DVR(ns.p))
    verdict = classify_d_submodule(list(gens))
    return Report(
        command="dsub",
        inputs={"gens": source, "p": ns.p, "count": len(gens)},
        results={"ell": verdict.ell, "ideal": verdict.ideal_tag()},
        claims=(),
        timing={"generators": len(gens)},
    )


def cmd_saturate(ns) -> Report:
    gens, source = _load_generators(ns.gens, DVR(ns.p))
    ideal = pi_saturate(list(gens))
    return Report(
        command="saturate",
        inputs={"gens": source, "p": ns.p, "count": len(gens)},
        results={
            "vars": ideal.n,
            "generators": [list(e) for e in ideal.gens],
            "unit": ideal.is_unit(),
        },
        claims=(),
        timing={"generators": len(gens)},
    )


def cmd_simplicial(ns) -> Report:
    cx, source = _load_facets(ns.facets)
    tables = {"Z": reduced_cohomology(cx, "Z"), "Q": reduced_cohomology(cx, "Q")}
    if ns.p is not None:
        tables[f"F{ns.p}"] = reduced_cohomology(cx, ns.p)
    results = {
        "vertices": cx.n,
        "dim": cx.dim(),
        "face_counts": cx.face_counts(),
        "reduced_euler_characteristic": cx.reduced_euler_characteristic(),
        "cohomology": {
            coeff: {str(spot): value for spot, value in sorted(table.items())}
            for coeff, table in tables.items()
        },
    }
    claims = []
    if (cx.n, tuple(sorted(cx.facets))) == (6, tuple(sorted(rp2_facets()[1]))):
        z = tables["Z"]
        ok = all(
            z[spot].is_trivial() for spot in z if spot != 2
        ) and z.get(2) is not None and z[2].describe() == {"rank": 0, "torsion": [2]}
        claims.append(
            Claim(
                "projective-plane-cohomology",
                "reduced integral cohomology = Z/2 in degree 2 only"
                if ok
                else "integral cohomology not reproduced",
                verified() if ok else FAILED,
            )
        )
    return Report(
        command="simplicial",
        inputs={"facets": source, "p": ns.p},
        results=results,
        claims=tuple(claims),
        timing={"faces": sum(cx.face_counts())},
    )


def cmd_hochster(ns) -> Report:
    cx, source = _load_facets(ns.facets)
    inputs = {"facets": source, "p": ns.p}
    claims = []
    if ns.degree is not None:
        if ns.i is None:
            raise ValueError("--degree needs --i (the cohomological spot)")
        a = _parse_alpha(ns.degree, cx.n)
        coeff = ns.p if ns.p is not None else "Q"
        dim = hochster_local_cohomology_piece(cx, ns.i, a, coeff)
        inputs.update({"i": ns.i, "degree": list(a)})
        results = {"piece_dimension": dim, "coefficients": "Q" if ns.p is None else f"F{ns.p}"}
        timing = {"pieces": 1}
    else:
        coeffs = [("F2", 2), ("F3", 3), ("Q", "Q")] if ns.p is None else [(f"F{ns.p}", ns.p)]
        levels = {name: list(hochster_nonzero_levels(cx, c)) for name, c in coeffs}
        results = {"nonzero_levels": levels}
        timing = {"faces": sum(cx.face_counts()), "fields": len(coeffs)}
        if ns.p is None and (cx.n, tuple(sorted(cx.facets))) == (
            6,
            tuple(sorted(rp2_facets()[1])),
        ):
            ok = levels == {"F2": [2, 3], "F3": [3], "Q": [3]}
            claims.append(
                Claim(
                    "projective-plane-local-cohomology",
                    "nonzero only in degrees {2,3} over F2 and {3} over F3, Q"
                    if ok
                    else "local cohomology degrees not reproduced",
                    verified() if ok else FAILED,
                )
            )
    return Report(
        command="hochster",
        inputs=inputs,
        results=results,
        claims=tuple(claims),
        timing=timing,
    )


def cmd_filtration(ns) -> Report:
    ring = DVR(ns.p)
    if ns.model == "quotient":
        if ns.ell is None:
            raise ValueError("quotient model needs --ell")
        spec = build_filtration_quotient(ns.ell, p=ns.p)
        inputs = {"model": "quotient", "ell": ns.ell, "p": ns.p}
    else:
        if ns.f is None:
            raise ValueError("localization model needs --f")
        try:
            f = parse_polynomial(ns.f, ring, ns.vars)
        except ValueError as exc:
            if ns.vars is None and "pass n" in str(exc):
                f = parse_polynomial(ns.f, ring, 1)
            else:
                raise
        if f.is_zero():
            raise ValueError("cannot localize at zero")
        spec = build_filtration_localization(f)
        inputs = {"model": "localization", "f": ns.f, "p": ns.p, "vars": f.n}
    inputs["fault"] = ns.fault
    if ns.fault == "shift":
        spec = inject_shift_fault(spec)
    elif ns.fault == "tail":
        spec = inject_tail_fault(spec)
    axioms = check_axioms(spec)
    results = {"spec": spec.describe(), "axioms": axioms.describe()}
    claims = [
        Claim(
            "filtration-axioms",
            "all five layer conditions hold on the window"
            if axioms.ok()
            else "violated conditions (tier, condition): "
            + str(sorted(axioms.failed_conditions())),
            verified() if axioms.ok() else FAILED,
        )
    ]
    if axioms.ok():
        verdict = finite_type_and_verdict(spec)
        results["verdict"] = verdict.describe()
        claims.append(Claim("length-verdict", verdict.tag(), verified()))
    tiers = len(spec.tiers)
    samples = sum(len(t.samples) for t in spec.tiers)
    return Report(
        command="filtration",
        inputs=inputs,
        results=results,
        claims=tuple(claims),
        timing={"tiers": tiers, "samples": samples},
    )


def cmd_radical_check(ns) -> Report:
    if ns.p is not None:
        fields = [PrimeField(ns.p)]
    else:
        fields = [PrimeField(2), RationalField()]
    per_field = {}
    for ring in fields:
        out = sv_containment_check(ring, order=ns.order, timeout_secs=ns.timeout_secs)
        per_field[ring.name] = {
            "generators_in_ideal": out["generators_in_ideal"],
            "radical_members": out["radical_members"],
            "all_ok": out["all_ok"],
        }
    results = {"fields": per_field, "order": ns.order}
    claims = []
    if ns.p is None:
        ok = all(entry["all_ok"] for entry in per_field.values())
        claims.append(
            Claim(
                "four-element-radical",
                "4 elements inside the ideal; all 10 cubics radical members over F2 and Q"
                if ok
                else "containment certificate not reproduced",
                verified() if ok else FAILED,
            )
        )
    memberships = sum(len(e["radical_members"]) for e in per_field.values())
    return Report(
        command="radical-check",
        inputs={"p": ns.p, "order": ns.order},
        results=results,
        claims=tuple(claims),
        timing={"radical_memberships": memberships, "fields": len(fields)},
    )


def _add_tuning(sp):
    sp.add_argument("--threads", type=int, default=1, help="worker budget; results never depend on it")
    sp.add_argument("--timeout-secs", type=float, default=None, help="give up after this much wall time")


def build_parser() -> _Parser:
    parser = _Parser(prog="mixedchar", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="subcommand")

    sp = sub.add_parser("ext", help="one graded Ext piece")
    sp.add_argument("--ideal", required=True, help="ideal file, or - for stdin")
    sp.add_argument("--j", type=int, required=True, help="cohomological degree")
    sp.add_argument("--alpha", required=True, help="graded degree, comma-separated")
    sp.add_argument("--p", type=int, default=2, help="prime for the local base ring")
    _add_tuning(sp)
    sp.set_defaults(handler=cmd_ext)

    sp = sub.add_parser("scan", help="all nonzero Ext pieces in a degree box")
    sp.add_argument("--ideal", required=True)
    sp.add_argument("--j", type=int, required=True)
    sp.add_argument("--box", default=None, help="intervals lo:hi, comma-separated (one per variable, or one for all)")
    sp.add_argument("--no-shell", action="store_true", help="skip the enlargement shell certificate")
    sp.add_argument("--p", type=int, default=2)
    _add_tuning(sp)
    sp.set_defaults(handler=cmd_scan)

    sp = sub.add_parser("transition", help="maps between consecutive ideal powers")
    sp.add_argument("--ideal", required=True)
    sp.add_argument("--j", type=int, default=4)
    sp.add_argument("--levels", type=int, default=2, help="check levels 1..N")
    sp.add_argument("--p", type=int, default=2)
    _add_tuning(sp)
    sp.set_defaults(handler=cmd_transition)

    sp = sub.add_parser("pipeline", help="staged annihilator computation")
    sp.add_argument("--ideal", required=True)
    sp.add_argument("--j", type=int, default=4)
    sp.add_argument("--levels", type=int, default=3)
    sp.add_argument("--p", type=int, default=2)
    sp.add_argument("--box", default=None)
    _add_tuning(sp)
    sp.set_defaults(handler=cmd_pipeline)

    sp = sub.add_parser("dsub", help="classify a differential submodule")
    sp.add_argument("--gens", required=True, help="generator file, or - for stdin")
    sp.add_argument("--p", type=int, default=2)
    _add_tuning(sp)
    sp.set_defaults(handler=cmd_dsub)

    sp = sub.add_parser("saturate", help="strip pi powers from term generators")
    sp.add_argument("--gens", required=True)
    sp.add_argument("--p", type=int, default=2)
    _add_tuning(sp)
    sp.set_defaults(handler=cmd_saturate)

    sp = sub.add_parser("simplicial", help="reduced cohomology of a facet complex")
    sp.add_argument("--facets", required=True, help="facet file, or - for stdin")
    sp.add_argument("--p", type=int, default=None, help="also report dimensions over F_p")
    _add_tuning(sp)
    sp.set_defaults(handler=cmd_simplicial)

    sp = sub.add_parser("hochster", help="graded local cohomology via links")
    sp.add_argument("--facets", required=True)
    sp.add_argument("--p", type=int, default=None, help="field (default: scan F2, F3, Q)")
    sp.add_argument("--i", type=int, default=None, help="cohomological spot for a single piece")
    sp.add_argument("--degree", default=None, help="graded degree for a single piece")
    _add_tuning(sp)
    sp.set_defaults(handler=cmd_hochster)

    sp = sub.add_parser("filtration", help="layer chain axioms and length verdict")
    sp.add_argument("--model", choices=["quotient", "localization"], required=True)
    sp.add_argument("--ell", type=int, default=None, help="pi power for the quotient model")
    sp.add_argument("--f", default=None, help="element to invert for the localization model")
    sp.add_argument("--vars", type=int, default=None, help="variable count for parsing --f")
    sp.add_argument("--p", type=int, default=2)
    sp.add_argument("--fault", choices=["none", "shift", "tail"], default="none", help="inject a deliberate axiom violation")
    _add_tuning(sp)
    sp.set_defaults(handler=cmd_filtration)

    sp = sub.add_parser("radical-check", help="four-element generation up to radical")
    sp.add_argument("--p", type=int, default=None, help="single prime field (default: F2 and Q)")
    sp.add_argument("--order", choices=["grlex", "lex"], default="grlex")
    _add_tuning(sp)
    sp.set_defaults(handler=cmd_radical_check)

    return parser


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        ns = parser.parse_args(_fuse_values(argv))
        if ns.threads < 1:
            raise UsageError("--threads must be >= 1")
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 1
    start = time.monotonic()
    try:
        report = ns.handler(ns)
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except TimeoutError as err:
        print(f"timeout: {err}", file=sys.stderr)
        return 1
    sys.stdout.write(report.to_json())
    print(f"wall_seconds={time.monotonic() - start:.3f}", file=sys.stderr)
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())
