"""Command-line front end.

Commands: ``chi`` (multiplicity of a curve at its base point, by any or
all routes), ``kappa`` (blow-up order of the inverse), ``classical``
(eigenvalue ascent and multiplicity of a square matrix), ``parity``
(interval, crossings, chi-sum and loop variants), ``torsion`` (invariant
of a sign homomorphism, or the full table), ``theta`` (Gaussian lattice
sums with tail bounds), ``weights`` (deck-class weight table) and
``orientable``.

Exit codes: 0 success, 2 malformed documents or flags, 3 violated
mathematical preconditions, 4 internal consistency failure (a bug).
Human-readable output goes to stdout; ``--json PATH`` additionally writes
a canonical machine-readable report, byte-identical for identical inputs.
"""

from __future__ import annotations

import argparse
import sys

from . import documents
from .errors import (
    CurveInvError,
    DocumentError,
    InternalConsistencyError,
    PreconditionError,
)
from .exactnum import SingularToKnownOrder
from .multiplicity import (
    algebraic_order,
    classical_multiplicity,
    multiplicity_det,
    multiplicity_laurent,
    multiplicity_schur,
    multiplicity_transversal,
    NotTransversal,
    shifted_eigen_curve,
)
from .parity import (
    crossing_parity,
    interval_parity,
    loop_parity,
    multiplicity_sum_parity,
)
from .torsion import (
    DEFAULT_CUTOFF,
    DEFAULT_PERIOD,
    FlatTorus,
    Z2Homomorphism,
    is_orientable,
    theta_sum,
    torsion_invariant,
    weight_table,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_INTERNAL = 4

_METHODS = ("ord-det", "schur", "laurent", "transversal")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curveinv",
        description="Exact multiplicity, parity and torsion invariants "
        "of matrix operator curves.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_json(p):
        p.add_argument("--json", metavar="PATH", help="write a machine-readable report")

    p_chi = sub.add_parser("chi", help="multiplicity of a curve at its base point")
    p_chi.add_argument("--curve", required=True, metavar="FILE")
    p_chi.add_argument(
        "--method", default="all", choices=_METHODS + ("all",)
    )
    add_json(p_chi)

    p_kappa = sub.add_parser("kappa", help="blow-up order of the inverse curve")
    p_kappa.add_argument("--curve", required=True, metavar="FILE")
    add_json(p_kappa)

    p_classical = sub.add_parser(
        "classical", help="ascent and multiplicity of a matrix eigenvalue"
    )
    p_classical.add_argument("--matrix", required=True, metavar="FILE")
    p_classical.add_argument("--mu", required=True, metavar="R")
    add_json(p_classical)

    p_parity = sub.add_parser("parity", help="parity of a path or loop")
    p_parity.add_argument(
        "variant", choices=("interval", "crossings", "chi-sum", "loop")
    )
    p_parity.add_argument("--curve", metavar="FILE", help="path document")
    p_parity.add_argument("--loop", metavar="FILE", help="loop document")
    p_parity.add_argument("--a", metavar="R", help="left endpoint override")
    p_parity.add_argument("--b", metavar="R", help="right endpoint override")
    add_json(p_parity)

    p_torsion = sub.add_parser("torsion", help="global torsion invariant")
    p_torsion.add_argument(
        "table", nargs="?", choices=("table",), help="emit all 2^n rows"
    )
    p_torsion.add_argument("--n", type=int, required=True)
    p_torsion.add_argument("--signs", metavar="s1,s2,...")
    p_torsion.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF)
    p_torsion.add_argument("--tol", type=float, default=1e-12)
    p_torsion.add_argument("--period", type=float, default=DEFAULT_PERIOD)
    add_json(p_torsion)

    p_theta = sub.add_parser("theta", help="Gaussian lattice sums with tail bounds")
    p_theta.add_argument("--kind", choices=("plain", "alternating"), default="plain")
    p_theta.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF)
    add_json(p_theta)

    p_weights = sub.add_parser("weights", help="deck-class weight table")
    p_weights.add_argument("--n", type=int, required=True)
    p_weights.add_argument("--max-class", type=int, default=2)
    p_weights.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF)
    p_weights.add_argument("--period", type=float, default=DEFAULT_PERIOD)
    add_json(p_weights)

    p_orient = sub.add_parser("orientable", help="orientability of a bundle class")
    p_orient.add_argument("--n", type=int, required=True)
    p_orient.add_argument("--signs", required=True, metavar="s1,s2,...")
    p_orient.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF)
    p_orient.add_argument("--tol", type=float, default=1e-12)
    p_orient.add_argument("--period", type=float, default=DEFAULT_PERIOD)
    add_json(p_orient)

    return parser


# ---------------------------------------------------------------------------
# payload helpers


def _report_payload(report) -> dict:
    return {
        "kind": report.kind,
        "value": report.value,
        "method": report.method,
        "order_bound": report.order_bound,
        "witness": str(report.witness) if report.witness is not None else None,
    }


def _parity_payload(value) -> dict:
    return {
        "sign": value.sign,
        "crossings": [
            {
                "location": str(c.location),
                "approx": c.location.as_float(),
                "multiplicity": c.multiplicity,
            }
            for c in value.crossings
        ],
        "from_connector_abstraction": value.from_connector_abstraction,
    }


def _parse_signs(raw: str, n: int) -> Z2Homomorphism:
    try:
        parts = [int(tok) for tok in raw.split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise DocumentError(f"malformed signs: {raw!r}") from exc
    if len(parts) != n or any(s not in (1, -1) for s in parts):
        raise DocumentError(
            f"signs must be {n} comma-separated values from {{1, -1}}"
        )
    return Z2Homomorphism(tuple(parts))


def _power_tag(value: float, n: int, tol: float) -> str | None:
    """Annotate a torsion value as a quarter power of one half."""
    for m in range(0, 4 * max(n, 1) + 1):
        if abs(value - 2.0 ** (-m / 4.0)) < tol:
            if m == 0:
                return "1"
            if m % 4 == 0:
                return f"2^(-{m // 4})"
            if m % 2 == 0:
                return f"2^(-{m // 2}/2)"
            return f"2^(-{m}/4)"
    return None


# ---------------------------------------------------------------------------
# commands


def _cmd_chi(args):
    curve = documents.curve_from_document(documents.load_file(args.curve))
    routes = _METHODS if args.method == "all" else (args.method,)
    reports = {}
    notes = {}
    for name in routes:
        try:
            if name == "ord-det":
                reports[name] = multiplicity_det(curve)
            elif name == "schur":
                reports[name] = multiplicity_schur(curve)
            elif name == "laurent":
                reports[name] = multiplicity_laurent(curve)
            else:
                reports[name] = multiplicity_transversal(curve)
        except NotTransversal as exc:
            if args.method == "all":
                notes[name] = f"not transversal ({exc})"
            else:
                raise
        except SingularToKnownOrder as exc:
            if args.method == "all" and name == "laurent":
                notes[name] = f"not isolated ({exc})"
            else:
                raise

    print(f"multiplicity at base point {curve.base_point}")
    for name in routes:
        if name in reports:
            r = reports[name]
            print(f"  {name:<12}: {r}")
            if r.witness is not None:
                print(f"  {'':<12}  witness {r.witness}")
        else:
            print(f"  {name:<12}: {notes[name]}")

    outcomes = {(r.kind, r.value) for r in reports.values()}
    agree = len(outcomes) == 1
    if args.method == "all":
        print(f"agreement: {'yes' if agree else 'NO'}")
    payload = {
        "command": "chi",
        "base_point": str(curve.base_point),
        "reports": {k: _report_payload(r) for k, r in reports.items()},
        "notes": notes,
        "agreement": agree,
    }
    if not agree:
        raise InternalConsistencyError(
            "multiplicity routes disagree: "
            + ", ".join(f"{k}={v}" for k, v in reports.items())
        )
    kind = next(iter(reports.values())).kind
    return payload, EXIT_OK if kind == "finite" else EXIT_PRECONDITION


def _cmd_kappa(args):
    curve = documents.curve_from_document(documents.load_file(args.curve))
    report = algebraic_order(curve)
    if report.is_algebraic:
        print(f"algebraic order kappa = {report.kappa}")
    else:
        print("regular point: the curve is invertible at its base point")
    print(f"determinant order    = {report.determinant_order}")
    payload = {
        "command": "kappa",
        "kappa": report.kappa,
        "determinant_order": report.determinant_order,
    }
    return payload, EXIT_OK


def _cmd_classical(args):
    mat = documents.matrix_from_document(documents.load_file(args.matrix))
    mu = documents.parse_rational(args.mu)
    report = classical_multiplicity(mat, mu)
    cross = multiplicity_det(shifted_eigen_curve(mat, mu))
    print(f"eigenvalue {mu}: ascent = {report.ascent}, "
          f"multiplicity = {report.multiplicity}")
    payload = {
        "command": "classical",
        "mu": str(mu),
        "ascent": report.ascent,
        "multiplicity": report.multiplicity,
        "determinant_route": _report_payload(cross),
    }
    if not (cross.is_finite and cross.value == report.multiplicity):
        raise InternalConsistencyError(
            f"kernel-chain multiplicity {report.multiplicity} disagrees with "
            f"determinant order {cross}"
        )
    return payload, EXIT_OK


def _cmd_parity(args):
    if args.variant == "loop":
        if not args.loop:
            raise DocumentError("parity loop requires --loop FILE")
        loop = documents.loop_from_document(documents.load_file(args.loop))
        value = loop_parity(loop)
    else:
        if not args.curve:
            raise DocumentError(f"parity {args.variant} requires --curve FILE")
        a = documents.parse_rational(args.a) if args.a is not None else None
        b = documents.parse_rational(args.b) if args.b is not None else None
        path = documents.path_from_document(
            documents.load_file(args.curve), a=a, b=b
        )
        fn = {
            "interval": interval_parity,
            "crossings": crossing_parity,
            "chi-sum": multiplicity_sum_parity,
        }[args.variant]
        value = fn(path)
    print(f"parity = {value.sign:+d}")
    for c in value.crossings:
        print(f"  crossing at {c.location}  multiplicity {c.multiplicity}")
    if value.from_connector_abstraction:
        print("  (computed through a symbolic GL connector)")
    payload = {"command": f"parity-{args.variant}", **_parity_payload(value)}
    return payload, EXIT_OK


def _torus(args, n):
    if getattr(args, "period", DEFAULT_PERIOD) <= 0:
        raise DocumentError("--period must be positive")
    if getattr(args, "cutoff", DEFAULT_CUTOFF) < 1:
        raise DocumentError("--cutoff must be at least 1")
    return FlatTorus(n, period=args.period)


def _cmd_torsion(args):
    if args.n < 1:
        raise DocumentError("--n must be at least 1")
    torus = _torus(args, args.n)
    if args.table == "table":
        rows = []
        for signs in sorted(
            _all_sign_vectors(args.n), key=lambda s: (s.count(-1), _bits(s))
        ):
            report = torsion_invariant(torus, Z2Homomorphism(signs), args.cutoff)
            rows.append((signs, report))
        header = "  ".join(f"zeta(g{i + 1})" for i in range(args.n))
        print(f"{header}  torsion")
        for signs, report in rows:
            cells = "  ".join(f"{s:+d}".rjust(9) for s in signs)
            tag = _power_tag(report.value, args.n, args.tol)
            suffix = f"  = {tag}" if tag else ""
            print(f"{cells}  {report.value:.12f}{suffix}")
        payload = {
            "command": "torsion-table",
            "n": args.n,
            "cutoff": args.cutoff,
            "rows": [
                {
                    "signs": list(signs),
                    "value": report.value,
                    "error_bound": report.error_bound,
                }
                for signs, report in rows
            ],
        }
        return payload, EXIT_OK

    if not args.signs:
        raise DocumentError("torsion requires --signs (or the table subcommand)")
    zeta = _parse_signs(args.signs, args.n)
    report = torsion_invariant(torus, zeta, args.cutoff)
    tag = _power_tag(report.value, args.n, args.tol)
    suffix = f"  = {tag}" if tag else ""
    print(f"torsion invariant = {report.value:.12f}{suffix}")
    print(f"error bound       = {report.error_bound:.3e}")
    payload = {
        "command": "torsion",
        "n": args.n,
        "signs": list(zeta.signs),
        "cutoff": report.cutoff,
        "value": report.value,
        "error_bound": report.error_bound,
    }
    return payload, EXIT_OK


def _all_sign_vectors(n):
    out = []
    for mask in range(1 << n):
        out.append(tuple(-1 if (mask >> i) & 1 else 1 for i in range(n)))
    return out


def _bits(signs):
    return tuple(0 if s == 1 else 1 for s in signs)


def _cmd_theta(args):
    if args.cutoff < 1:
        raise DocumentError("--cutoff must be at least 1")
    result = theta_sum(args.kind == "alternating", args.cutoff)
    print(f"{args.kind} sum (cutoff {args.cutoff}) = {result.value:.12f}")
    print(f"tail bound = {result.tail_bound:.3e}")
    payload = {
        "command": "theta",
        "kind": args.kind,
        "cutoff": result.cutoff,
        "value": result.value,
        "tail_bound": result.tail_bound,
    }
    return payload, EXIT_OK


def _cmd_weights(args):
    if args.n < 1:
        raise DocumentError("--n must be at least 1")
    if args.max_class < 0:
        raise DocumentError("--max-class must be non-negative")
    table = weight_table(_torus(args, args.n), args.max_class, args.cutoff)
    print(f"deck-class weights (n={args.n}, box {args.max_class}, "
          f"cutoff {args.cutoff})")
    shown = set()
    for cls_, w in table.entries:
        if args.n == 1:
            key = abs(cls_[0])
            if key in shown:
                continue
            shown.add(key)
            label = "0" if key == 0 else f"+-{key}"
        else:
            label = str(cls_)
        print(f"  {label:>8}: {w:.10e}")
    print(f"tail bound on the normalizer: {table.tail_bound:.3e}")
    payload = {
        "command": "weights",
        "n": args.n,
        "max_class": args.max_class,
        "cutoff": table.cutoff,
        "entries": [
            {"deck_class": list(cls_), "weight": w} for cls_, w in table.entries
        ],
        "normalization": table.normalization,
        "tail_bound": table.tail_bound,
    }
    return payload, EXIT_OK


def _cmd_orientable(args):
    if args.n < 1:
        raise DocumentError("--n must be at least 1")
    zeta = _parse_signs(args.signs, args.n)
    report = is_orientable(
        zeta, _torus(args, args.n), cutoff=args.cutoff, tol=args.tol
    )
    print("orientable" if report.orientable else "not orientable")
    print(f"torsion invariant = {report.torsion_value:.12f}")
    payload = {
        "command": "orientable",
        "n": args.n,
        "signs": list(zeta.signs),
        "orientable": report.orientable,
        "torsion_value": report.torsion_value,
        "error_bound": report.error_bound,
    }
    return payload, EXIT_OK


_DISPATCH = {
    "chi": _cmd_chi,
    "kappa": _cmd_kappa,
    "classical": _cmd_classical,
    "parity": _cmd_parity,
    "torsion": _cmd_torsion,
    "theta": _cmd_theta,
    "weights": _cmd_weights,
    "orientable": _cmd_orientable,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_PARSE

    payload = None
    try:
        payload, code = _DISPATCH[args.command](args)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InternalConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        code = EXIT_INTERNAL
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except CurveInvError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION

    if payload is not None and getattr(args, "json", None):
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(documents.dumps(payload))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
