"""Command-line front end: every verification as a deterministic report.

Commands mirror the library checks:

    dunklcms verify closed-form      --family rat-a --deg 8
    dunklcms verify commute-infinity --family rat-a --r 2 --s 3 --deg 6
    dunklcms verify diagram          --family rat-b --kind dcomm --N 3 --r 2
    dunklcms verify deformed         --n 2 --m 1 --r 3
    dunklcms verify lax              --family trig-a --n 1 --m 1
    dunklcms verify moser-integrals  --family rat-b --n 1 --m 1 --r 2
    dunklcms verify degenerate-k1    --n 1 --m 1 --r 3
    dunklcms generate integral       --family trig-a --r 2 --deg 4

Reports are emitted as text or stable-keyed JSON; exit code 0 means verified,
1 falsified, 2 error.  ``--mode sampled --seed S`` substitutes seeded random
rational parameter values before running, as a fast precheck; symbolic mode is
the ground truth.  Guard rails cap sizes to desk scale unless ``--unsafe``.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass, field

from .coeffs import Rat, const
from .dunkl_infinity import (
    InfDunkl,
    apply_closed_form_L2,
    closed_form_L2,
    commutator_on_basis,
    integral_L,
    pmono_basis,
)
from .finite_cms import (
    Hom,
    ParityData,
    deformed_integral,
    diagram_check,
    heckman_integral,
    standard_testset,
)
from .powersums import Family, LambdaElem, pmono_text
from .weyl import (
    RatFun,
    commute_check,
    gauge_conjugate,
    hamiltonian,
    integral_vs_hamiltonian,
    lax_check,
    moser_integral,
    psi0_logderivs,
)

FAMILIES = {f.value: f for f in Family}

#: Desk-scale guard rails; --unsafe lifts them.
LIMITS = {
    "deg": 10,
    "N": 5,
    "nm": 4,
    "r": 6,
}


class InvalidRequest(ValueError):
    """Request fails validation; reported with exit code 2."""


@dataclass
class Report:
    command: str
    request: dict
    status: str = "verified"
    counterexamples: list = field(default_factory=list)
    checks: int = 0
    notes: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    timing_ms: float = 0.0

    def record(self, ok: bool, label: str, lhs: str = "", rhs: str = ""):
        self.checks += 1
        if not ok:
            self.status = "falsified"
            self.counterexamples.append({"input": label, "lhs": lhs, "rhs": rhs})

    def observe_terms(self, obj):
        """Track the largest term count seen, a rough cost statistic."""
        terms = getattr(obj, "terms", None)
        if terms is None:
            return
        n = len(terms)
        if n > self.stats.get("max_terms", 0):
            self.stats["max_terms"] = n

    def to_json(self) -> str:
        payload = {
            "command": self.command,
            "request": {k: self.request[k] for k in sorted(self.request)},
            "status": self.status,
            "checks": self.checks,
            "counterexamples": self.counterexamples,
            "notes": self.notes,
            "stats": {k: self.stats[k] for k in sorted(self.stats)},
            "timing_ms": self.timing_ms,
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))

    def to_text(self) -> str:
        lines = ["%s: %s (%d checks)" % (self.command, self.status, self.checks)]
        for note in self.notes:
            lines.append("  note: %s" % note)
        for ce in self.counterexamples:
            lines.append("  counterexample %s" % ce["input"])
            if ce["lhs"] or ce["rhs"]:
                lines.append("    lhs: %s" % ce["lhs"])
                lines.append("    rhs: %s" % ce["rhs"])
        for key in sorted(self.stats):
            lines.append("  %s: %s" % (key, self.stats[key]))
        lines.append("  timing_ms: %s" % self.timing_ms)
        return "\n".join(lines)


def report_emit(report: Report, fmt: str = "text") -> str:
    return report.to_json() if fmt == "json" else report.to_text()


def _family(value: str) -> Family:
    try:
        return FAMILIES[value]
    except KeyError:
        raise InvalidRequest("unknown family %r (choose from %s)" % (value, sorted(FAMILIES)))


def _sample_bindings(family: Family, seed: int) -> dict:
    """Seeded random rational values for the family's free parameters."""
    rng = random.Random(seed)

    def draw():
        return const(Rat(rng.randint(2, 10 ** 6), rng.randint(1, 97)))

    return {name: draw() for name in family.symbols}


def _explicit_bindings(args) -> dict:
    """Parse --param name=value assignments into exact rational bindings."""
    out = {}
    for item in getattr(args, "param", None) or ():
        name, _, value = item.partition("=")
        if name not in ("k", "p", "q", "r", "s") or not value:
            raise InvalidRequest("bad --param %r (expected e.g. k=3/2)" % item)
        try:
            out[name] = const(Rat(value))
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidRequest("bad --param value %r: %s" % (value, exc))
    return out


def _bindings(args, family: Family):
    """Numeric bindings for this run: sampled values, explicit ones, or none."""
    bindings = {}
    if args.mode == "sampled":
        bindings.update(_sample_bindings(family, args.seed))
    bindings.update(_explicit_bindings(args))
    return bindings or None


def _guard(args, **vals):
    if getattr(args, "unsafe", False):
        return
    for key, v in vals.items():
        if v is not None and v > LIMITS[key]:
            raise InvalidRequest(
                "%s=%d exceeds the desk-scale cap %d (pass --unsafe to override)"
                % (key, v, LIMITS[key])
            )


def _maybe_sub(obj, bindings):
    return obj.substitute(bindings) if bindings else obj


# -- verify subcommands -------------------------------------------------------


def _verify_closed_form(args, report):
    family = _family(args.family)
    _guard(args, deg=args.deg)
    bindings = _bindings(args, family)
    r = 1 if family.even_integrals else 2
    for m in pmono_basis(args.deg, args.deg):
        f = LambdaElem.monomial(m)
        lhs = _maybe_sub(apply_closed_form_L2(family, f), bindings)
        rhs = _maybe_sub(integral_L(family, r, f), bindings)
        report.observe_terms(rhs)
        report.record((lhs - rhs).is_zero(), pmono_text(m), lhs.text(), rhs.text())


def _verify_commute_infinity(args, report):
    family = _family(args.family)
    _guard(args, deg=args.deg, r=max(args.r, args.s))
    bindings = _bindings(args, family)
    if bindings:
        op = InfDunkl(family)
        for m in pmono_basis(args.deg, args.pwindow or args.deg):
            f = LambdaElem.monomial(m)
            lhs = op.integral(args.s, op.integral(args.r, f)).substitute(bindings)
            rhs = op.integral(args.r, op.integral(args.s, f)).substitute(bindings)
            report.record((lhs - rhs).is_zero(), pmono_text(m), lhs.text(), rhs.text())
        return
    for m, residual in commutator_on_basis(family, args.r, args.s, args.deg, args.pwindow or args.deg):
        report.observe_terms(residual)
        report.record(residual.is_zero(), pmono_text(m), residual.text(), "0")


def _verify_diagram(args, report):
    family = _family(args.family)
    _guard(args, N=args.N, nm=(args.n or 0) + (args.m or 0), r=args.r)
    kind = args.kind
    kwargs = {}
    if kind in ("dcomm", "heckdiag"):
        if args.N is None:
            raise InvalidRequest("--N is required for kind %s" % kind)
        kwargs["N"] = args.N
        if kind == "dcomm":
            kwargs["i"] = args.i - 1
    else:
        if args.n is None or args.m is None:
            raise InvalidRequest("--n and --m are required for kind %s" % kind)
        kwargs["parity"] = ParityData(args.n, args.m)
        if kind == "propcomm":
            kwargs["i"] = args.i - 1
    testset = standard_testset(family, with_x=(kind == "dcomm"))
    rep = diagram_check(kind, family, testset, r=args.r, **kwargs)
    report.notes.append(rep.detail)
    for res in rep.results:
        report.record(res.ok, res.label, res.lhs, res.rhs)


def _verify_deformed(args, report):
    # rational A deformed recursion: diagram consistency plus commutativity
    _guard(args, nm=args.n + args.m, r=args.r)
    parity = ParityData(args.n, args.m)
    family = Family.RAT_A
    testset = standard_testset(family, with_x=False)
    for r in range(1, args.r + 1):
        rep = diagram_check("intrat", family, testset, r=r, parity=parity)
        for res in rep.results:
            report.record(res.ok, "intrat r=%d %s" % (r, res.label), res.lhs, res.rhs)
    hom = Hom(family, "phi_nm", parity=parity)
    for label, f in testset:
        g = hom.apply(f.to_lambda())
        lhs = deformed_integral(parity, 2, deformed_integral(parity, 3, g))
        rhs = deformed_integral(parity, 3, deformed_integral(parity, 2, g))
        report.record(lhs == rhs, "[L2,L3] on %s" % label, lhs.text(), rhs.text())


def _verify_lax(args, report):
    family = _family(args.family)
    if family not in (Family.RAT_A, Family.TRIG_A):
        raise InvalidRequest("lax verification applies to rat-a and trig-a")
    nm = args.n + args.m
    if not getattr(args, "unsafe", False) and args.mode == "symbolic" and nm > LIMITS["nm"]:
        raise InvalidRequest("n+m=%d exceeds the symbolic cap %d" % (nm, LIMITS["nm"]))
    parity = ParityData(args.n, args.m)
    bindings = _bindings(args, family)
    if bindings:
        report.notes.append("numeric bindings %s" % {k: v.text() for k, v in sorted(bindings.items())})
        from .weyl import OpMatrix, moser_L, moser_M

        def sub(mat):
            return OpMatrix([[op.substitute(bindings) for op in row] for row in mat.entries])

        L = sub(moser_L(family, parity))
        M = sub(moser_M(family, parity))
        H = hamiltonian(family, parity, gauged=False).substitute(bindings)
        LM = L.matmul(M) - M.matmul(L)
        for i in range(L.rows):
            for j in range(L.cols):
                res = L.entries[i][j].commutator(H) - LM.entries[i][j]
                report.record(res.is_zero(), "entry (%d,%d)" % (i + 1, j + 1), res.text(), "0")
        return
    rep = lax_check(family, parity)
    for res in rep.results:
        report.record(res.ok, "entry (%d,%d)" % (res.i + 1, res.j + 1), res.residual, "0")


def _verify_moser_integrals(args, report):
    family = _family(args.family)
    _guard(args, nm=args.n + args.m, r=args.r)
    parity = ParityData(args.n, args.m)
    bindings = _bindings(args, family)
    H = hamiltonian(family, parity, gauged=False)
    if bindings:
        H = H.substitute(bindings)
    for r in range(1, args.r + 1):
        I = moser_integral(family, parity, r)
        if bindings:
            I = I.substitute(bindings)
        if family.even_integrals or args.basis_deg:
            deg = args.basis_deg or 4
            rep = commute_check(I, H, "basis", deg=deg)
            report.record(rep.ok, "[e*L^%de, H] basis deg %d" % (r, deg),
                          rep.counterexamples[0][1] if rep.counterexamples else "", "0")
        else:
            rep = commute_check(I, H, "symbolic")
            report.record(rep.ok, "[e*L^%de, H] symbolic" % r,
                          rep.counterexamples[0][1] if rep.counterexamples else "", "0")
    factor, cst, residual = integral_vs_hamiltonian(family, parity)
    ok = residual.is_zero() and _is_scalar(cst)
    report.record(ok, "e*L^2e = %s*H + const" % factor.text(), cst.text(), "scalar")
    report.notes.append("hamiltonian factor %s, additive constant %s" % (factor.text(), cst.text()))


def _is_scalar(f: RatFun) -> bool:
    return (not f.den) and (len(f.num.terms) <= 1) and all(
        not any(e) for e in f.num.terms
    )


def _verify_degenerate_k1(args, report):
    _guard(args, nm=args.n + args.m, r=args.r)
    parity = ParityData(args.n, args.m)
    N = parity.size
    one = {"k": const(1)}
    hom = Hom(Family.RAT_A, "phi_nm", parity=parity)
    tests = [("p1", LambdaElem.p(1)), ("p2", LambdaElem.p(2)),
             ("p3", LambdaElem.p(3)), ("p1*p2", LambdaElem.p(1) * LambdaElem.p(2))]
    for r in range(1, args.r + 1):
        for label, f in tests:
            g = hom.apply(f)
            lhs = deformed_integral(parity, r, g).substitute(one)
            rhs = heckman_integral(Family.RAT_A, N, r, g.substitute(one)).substitute(one)
            report.record(lhs == rhs, "recursion r=%d %s" % (r, label), lhs.text(), rhs.text())
    w = [-x for x in psi0_logderivs(Family.RAT_A, parity)]
    for r in range(1, args.r + 1):
        G = gauge_conjugate(moser_integral(Family.RAT_A, parity, r), w).substitute(one)
        for label, f in tests:
            g1 = hom.apply(f).substitute(one)
            lhs = G.apply(g1)
            rhs = heckman_integral(Family.RAT_A, N, r, g1).substitute(one)
            report.record((lhs - RatFun.from_poly(rhs)).is_zero(),
                          "moser r=%d %s" % (r, label), lhs.text(), rhs.text())


def _generate_integral(args, report):
    family = _family(args.family)
    _guard(args, deg=args.deg, r=args.r)
    if family.even_integrals:
        if args.r % 2:
            raise InvalidRequest("family %s has even-indexed integrals; --r must be even" % family.value)
        r = args.r // 2
    else:
        r = args.r
    if args.r == 2:
        report.notes.append("closed form: %s" % closed_form_L2(family, args.deg).text())
    for m in pmono_basis(args.deg, args.deg):
        val = integral_L(family, r, LambdaElem.monomial(m))
        report.notes.append("%s -> %s" % (pmono_text(m), val.text()))
        report.checks += 1


# -- argument parsing ----------------------------------------------------------


def _add_common(p):
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--mode", choices=("symbolic", "sampled"), default="symbolic")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--unsafe", action="store_true", help="lift desk-scale caps")
    p.add_argument("--param", action="append", metavar="NAME=VALUE",
                   help="bind a parameter to an exact rational, e.g. k=3/2")
    p.add_argument("--no-timing", action="store_true",
                   help="zero the timing field for byte-stable reports")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="dunklcms", description=__doc__.splitlines()[0])
    sub = top.add_subparsers(dest="group", required=True)

    verify = sub.add_parser("verify", help="machine-verify an identity")
    vsub = verify.add_subparsers(dest="command", required=True)

    p = vsub.add_parser("closed-form", help="explicit second integral vs E.D^2")
    p.add_argument("--family", required=True)
    p.add_argument("--deg", type=int, default=6)
    _add_common(p)

    p = vsub.add_parser("commute-infinity", help="[L^(r), L^(s)] = 0 on the monomial basis")
    p.add_argument("--family", required=True)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--s", type=int, default=3)
    p.add_argument("--deg", type=int, default=4)
    p.add_argument("--pwindow", type=int, default=None)
    _add_common(p)

    p = vsub.add_parser("diagram", help="commutative-diagram checks")
    p.add_argument("--family", required=True)
    p.add_argument("--kind", choices=("dcomm", "heckdiag", "propcomm", "intrat"), default="dcomm")
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--i", type=int, default=1, help="distinguished index, 1-based")
    p.add_argument("--r", type=int, default=1)
    _add_common(p)

    p = vsub.add_parser("deformed", help="deformed recursion and integrals (rational A)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=int, default=3)
    _add_common(p)

    p = vsub.add_parser("lax", help="[L,H] = [L,M] entrywise")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    _add_common(p)

    p = vsub.add_parser("moser-integrals", help="[e*L^re, H] = 0 and e*L^2e vs H")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--basis-deg", type=int, default=None,
                   help="force basis mode at this degree")
    _add_common(p)

    p = vsub.add_parser("degenerate-k1", help="k=1 reduction to the undeformed system")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=int, default=3)
    _add_common(p)

    generate = sub.add_parser("generate", help="print operators and integral actions")
    gsub = generate.add_subparsers(dest="command", required=True)
    p = gsub.add_parser("integral", help="action of the integral on the monomial basis")
    p.add_argument("--family", required=True)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--deg", type=int, default=4)
    _add_common(p)

    return top


_HANDLERS = {
    ("verify", "closed-form"): _verify_closed_form,
    ("verify", "commute-infinity"): _verify_commute_infinity,
    ("verify", "diagram"): _verify_diagram,
    ("verify", "deformed"): _verify_deformed,
    ("verify", "lax"): _verify_lax,
    ("verify", "moser-integrals"): _verify_moser_integrals,
    ("verify", "degenerate-k1"): _verify_degenerate_k1,
    ("generate", "integral"): _generate_integral,
}


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = _HANDLERS[(args.group, args.command)]
    request = {
        k: v for k, v in sorted(vars(args).items())
        if k not in ("group", "command", "format", "no_timing") and v is not None
    }
    report = Report(command="%s %s" % (args.group, args.command), request=request)
    t0 = time.perf_counter()
    try:
        handler(args, report)
    except InvalidRequest as exc:
        report.status = "error"
        report.notes.append(str(exc))
    except Exception as exc:  # noqa: BLE001 - reported, not swallowed
        report.status = "error"
        report.notes.append("%s: %s" % (type(exc).__name__, exc))
    report.timing_ms = 0.0 if args.no_timing else round((time.perf_counter() - t0) * 1000.0, 3)
    print(report_emit(report, args.format))
    return {"verified": 0, "falsified": 1, "error": 2}[report.status]


def main():  # console entry point
    sys.exit(run())


if __name__ == "__main__":
    main()
