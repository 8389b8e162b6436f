"""Command line front end.

Every subcommand is a thin wrapper over one library call; the result is
rendered as plain text or, with --json, as a stable JSON document.  Exit
codes: 0 ok, 1 usage error, 2 domain error, 3 search bound exhausted.
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .arith import is_prime, kronecker
from .classfield import hilbert_class_polynomial, splitting_count, verify_theorem8
from .classgroup import compose, group_structure, odd_witness, order
from .errors import DomainError, InternalError
from .forms import Form, enumerate_reduced, reduce
from .isotropy import pair_report, trivial_intersection
from .represent import locally_represented, nonsquare_multiple, represents

_EXIT = {"ok": 0, "usage-error": 1, "domain-error": 2, "bound-exhausted": 3}

_DEFAULT_BOUND = 10**5


@dataclass(frozen=True)
class CommandResult:
    status: str
    payload: dict
    text: str
    json_mode: bool = False

    @property
    def exit_code(self) -> int:
        return _EXIT[self.status]

    def render(self) -> str:
        if self.json_mode:
            return json.dumps(self.payload, indent=2, sort_keys=True)
        return self.text


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _triple(text: str):
    parts = text.split(",")
    if len(parts) != 3 or not all(p.lstrip("+-").isdigit() for p in parts):
        raise argparse.ArgumentTypeError(f"expected 'a,b,c', got {text!r}")
    return tuple(int(p) for p in parts)


def _build_parser() -> _Parser:
    top = _Parser(prog="qf", add_help=False)
    sub = top.add_subparsers(dest="command", metavar="command", required=True)

    def cmd(name, *flags, bound=False, cache=False):
        p = sub.add_parser(name, add_help=False)
        for flag in flags:
            if flag == "--disc":
                p.add_argument("--disc", type=int, required=True)
            elif flag == "--disc*":
                p.add_argument("--disc", type=int, action="append")
            elif flag in ("--form", "--f1", "--f2"):
                p.add_argument(flag, type=_triple, required=flag == "--form")
            elif flag == "--value":
                p.add_argument("--value", type=int, required=True)
            elif flag == "--prime":
                p.add_argument("--prime", type=int, required=True)
        if bound:
            p.add_argument("--bound", type=int, default=_DEFAULT_BOUND)
        if cache:
            p.add_argument("--cache", default=None)
        p.add_argument("--json", action="store_true")
        return p

    cmd("reduce", "--form")
    cmd("forms", "--disc")
    cmd("group", "--disc")
    cmd("compose", "--f1", "--f2")
    cmd("order", "--form")
    cmd("witness", "--disc")
    cmd("represents", "--form", "--value")
    cmd("intersect", "--disc*", "--f1", "--f2")
    cmd("trivial", "--disc", bound=True)
    cmd("local", "--form", "--value")
    cmd("multiple", "--form", "--value", bound=True)
    cmd("hcp", "--disc", cache=True)
    cmd("split", "--prime", "--disc", cache=True)
    cmd("verify-thm8", "--prime", "--disc", cache=True)
    cmd("verify-paper", cache=True)
    # --f1/--f2 are optional on intersect only
    return top


def _cache_path(args):
    # flag wins over the environment
    if getattr(args, "cache", None):
        return args.cache
    return os.environ.get("QF_CACHE") or None


def _cmd_reduce(args):
    g, m = reduce(Form(*args.form))
    payload = {
        "form": ",".join(str(v) for v in args.form),
        "reduced": str(g),
        "matrix": [list(m[0]), list(m[1])],
    }
    return payload, f"{g} via {payload['matrix']}"


def _cmd_forms(args):
    forms = enumerate_reduced(args.disc)
    payload = {
        "discriminant": args.disc,
        "class_number": len(forms),
        "forms": [str(f) for f in forms],
    }
    return payload, "\n".join(str(f) for f in forms)


def _cmd_group(args):
    g = group_structure(args.disc)
    factors = list(g.invariant_factors)
    payload = {
        "discriminant": args.disc,
        "class_number": len(g.elements),
        "invariant_factors": factors,
        "forms": [str(f) for f in g.elements],
    }
    return payload, f"h = {len(g.elements)}, invariant factors {factors}"


def _cmd_compose(args):
    if args.f1 is None or args.f2 is None:
        raise _UsageError("compose needs both --f1 and --f2")
    h = compose(Form(*args.f1), Form(*args.f2))
    payload = {
        "f1": ",".join(str(v) for v in args.f1),
        "f2": ",".join(str(v) for v in args.f2),
        "composition": str(h),
    }
    return payload, str(h)


def _cmd_order(args):
    k = order(Form(*args.form))
    payload = {"form": ",".join(str(v) for v in args.form), "order": k}
    return payload, str(k)


def _cmd_witness(args):
    m = odd_witness(args.disc)
    forms = enumerate_reduced(args.disc)
    payload = {
        "discriminant": args.disc,
        "witness": m,
        "forms": [str(f) for f in forms],
    }
    return payload, str(m)


def _cmd_represents(args):
    f = Form(*args.form)
    w = represents(f, args.value)
    payload = {
        "form": str(f),
        "value": args.value,
        "represented": w is not None,
        "witness": list(w) if w is not None else None,
    }
    text = f"witness ({w[0]}, {w[1]})" if w is not None else "not represented"
    return payload, text


def _render_pair(report: dict) -> str:
    i, j = report["pair"]
    if report["anisotropic"]:
        return (
            f"pair ({i},{j}): anisotropic at p = {report['prime']}"
            f" (epsilon {report['epsilon']:+d})"
        )
    x, y, z, w = report["witness"]
    return f"pair ({i},{j}): isotropic, witness ({x}, {y}, {z}, {w})"


def _cmd_intersect(args):
    explicit = args.f1 is not None or args.f2 is not None
    discs = args.disc or []
    if explicit:
        if args.f1 is None or args.f2 is None:
            raise _UsageError("intersect with explicit forms needs --f1 and --f2")
        if discs:
            raise _UsageError("give either --f1/--f2 or --disc, not both")
        report = pair_report(Form(*args.f1), Form(*args.f2))
        payload = {
            "f1": ",".join(str(v) for v in args.f1),
            "f2": ",".join(str(v) for v in args.f2),
            "report": report,
        }
        return payload, _render_pair(report)
    if not discs:
        raise _UsageError("intersect needs --disc or --f1/--f2")
    if len(discs) == 1:
        forms = enumerate_reduced(discs[0])
        reports = [
            pair_report(forms[i], forms[j], (i, j))
            for i in range(len(forms))
            for j in range(i + 1, len(forms))
        ]
        payload = {"discriminant": discs[0], "reports": reports}
    elif len(discs) == 2:
        left = enumerate_reduced(discs[0])
        right = enumerate_reduced(discs[1])
        reports = [
            pair_report(f, g, (i, j))
            for i, f in enumerate(left)
            for j, g in enumerate(right)
        ]
        payload = {"discriminants": discs, "reports": reports}
    else:
        raise _UsageError("intersect takes at most two --disc values")
    return payload, "\n".join(_render_pair(r) for r in reports)


def _cmd_trivial(args):
    v = trivial_intersection(args.disc, bound=args.bound)
    payload = {
        "discriminant": args.disc,
        "trivial": v.trivial,
        "branch": v.branch,
    }
    if v.witness is not None:
        payload["witness"] = v.witness
    if v.witnesses is not None:
        payload["witnesses"] = [list(w) for w in v.witnesses]
    if v.certificate is not None:
        payload["pair"] = list(v.pair)
        payload["certificate"] = {
            "prime": v.certificate.prime,
            "epsilon": v.certificate.epsilon,
        }
    if v.trivial:
        i, j = v.pair
        text = (
            f"trivial ({v.branch}): pair ({i},{j}) anisotropic"
            f" at p = {v.certificate.prime}"
        )
    else:
        text = f"nontrivial ({v.branch}): common value {v.witness}"
    return payload, text


def _cmd_local(args):
    report = locally_represented(Form(*args.form), args.value)
    payload = {
        "form": ",".join(str(v) for v in args.form),
        "value": args.value,
        "represented": report.represented,
        "places": [[p, ok] for p, ok in report.places],
    }
    if report.represented:
        text = "locally represented"
    else:
        bad = ", ".join(str(p) for p, ok in report.places if not ok)
        text = f"obstruction at p = {bad}"
    return payload, text


def _cmd_multiple(args):
    f = Form(*args.form)
    found = nonsquare_multiple(f, args.value, args.bound)
    base = {
        "form": str(f),
        "value": args.value,
        "bound": args.bound,
    }
    if found is None:
        base["k"] = None
        text = f"no nonsquare multiple found with k <= {args.bound}"
        return CommandResult("bound-exhausted", base, text, args.json)
    k, (x, y) = found
    base.update({"k": k, "product": args.value * k, "witness": [x, y]})
    return base, f"k = {k}: {args.value * k} = Q({x}, {y})"


def _poly_text(coefficients) -> str:
    # ascending storage, descending rendering
    deg = len(coefficients) - 1
    parts = [f"X^{deg}" if deg > 1 else "X"]
    for e in range(deg - 1, -1, -1):
        c = coefficients[e]
        if c == 0:
            continue
        sign = " + " if c > 0 else " - "
        mag = abs(c)
        if e == 0:
            parts.append(f"{sign}{mag}")
        else:
            head = "" if mag == 1 else f"{mag}*"
            parts.append(f"{sign}{head}" + ("X" if e == 1 else f"X^{e}"))
    return "".join(parts)


def _cmd_hcp(args):
    poly = hilbert_class_polynomial(args.disc, cache=_cache_path(args))
    payload = {
        "discriminant": args.disc,
        "degree": poly.degree,
        "coefficients": list(poly.coefficients),
        "residual": poly.residual,
    }
    return payload, _poly_text(poly.coefficients)


def _cmd_split(args):
    report = splitting_count(args.prime, args.disc, cache=_cache_path(args))
    payload = {
        "prime": args.prime,
        "discriminant": args.disc,
        "kronecker": report.kronecker_dK,
        "f": report.f,
        "g": report.g,
        "total": report.total,
    }
    word = "split" if report.kronecker_dK == 1 else "inert"
    return payload, f"{word}: f = {report.f}, g = {report.g}, total = {report.total}"


def _cmd_verify_thm8(args):
    chk = verify_theorem8(args.prime, args.disc, cache=_cache_path(args))
    payload = {
        "prime": args.prime,
        "discriminant": args.disc,
        "ok": chk.ok,
        "m": chk.m,
        "representing": [str(f) for f in chk.representing],
        "kronecker": chk.report.kronecker_dK,
        "f": chk.report.f,
        "g": chk.report.g,
        "total": chk.report.total,
    }
    word = "ok" if chk.ok else "FAILED"
    if chk.m is None:
        text = f"{word}: no representing class (inert), total = {chk.report.total}"
    else:
        text = (
            f"{word}: m = {chk.m}, f = {chk.report.f},"
            f" g = {chk.report.g}, total = {chk.report.total}"
        )
    return payload, text


_S23 = (Form(1, 1, 6), Form(2, 1, 3), Form(2, -1, 3))
_S47 = (Form(1, 1, 12), Form(2, 1, 6), Form(2, -1, 6), Form(3, 1, 4), Form(3, -1, 4))
_CAPSTONE_SKIP = (2, 3, 7, 11, 29)


def _chain(*forms: Form) -> Form:
    acc = forms[0]
    for f in forms[1:]:
        acc = compose(acc, f)
    return acc


def _capstone_scan(cache):
    """Ascending prime scan for the four residue conditions plus splitting."""
    rejected = []
    p = 1
    while True:
        p += 1
        if not is_prime(p) or p in _CAPSTONE_SKIP:
            continue
        if kronecker(p, 11) != -1 or kronecker(p, 7) != 1:
            continue
        if p % 8 != 3 or p % 3 != 2:
            continue
        if splitting_count(p, -87, cache=cache).total == 2:
            return p, rejected
        rejected.append(p)


def _cmd_verify_paper(args):
    cache = _cache_path(args)
    checks = []

    def check(name, ok, **detail):
        if not ok:
            raise InternalError(f"reproduction check failed: {name}")
        checks.append({"name": name, "pass": True, **detail})

    check("reduced forms of -23", set(enumerate_reduced(-23)) == set(_S23))
    check("reduced forms of -47", set(enumerate_reduced(-47)) == set(_S47))

    q6, q7, q8 = _S23
    check(
        "composition identities at -23",
        compose(q7, q8) == q6 and compose(q8, q8) == q7 and compose(q7, q7) == q8,
    )
    q1, q2, q3, q4, q5 = _S47
    check(
        "composition identities at -47",
        _chain(q2, q3, q4, q5) == q1
        and _chain(q2, q3, q4, q4) == q2
        and _chain(q2, q3, q5, q5) == q3
        and _chain(q4, q5, q3, q3) == q4
        and _chain(q4, q5, q2, q2) == q5,
    )

    for delta, expected in ((-23, 6), (-47, 144)):
        m = odd_witness(delta)
        witnesses = [list(represents(f, m)) for f in enumerate_reduced(delta)]
        check(
            f"common witness {expected} at {delta}",
            m == expected and all(w is not None for w in witnesses),
            witness=m,
            representations=witnesses,
        )

    factors = {
        d: list(group_structure(d).invariant_factors) for d in (-88, -87, -84)
    }
    check(
        "invariant factors at -88, -87, -84",
        factors == {-88: [2], -87: [6], -84: [2, 2]},
        invariant_factors={str(d): v for d, v in factors.items()},
    )

    smallest, rejected = _capstone_scan(cache)
    check(
        "smallest admissible prime = 659",
        smallest == 659,
        prime=smallest,
        rejected=rejected,
    )

    targets = [Form(2, b, 11) for b in (0, 1, -1, 2)]
    reps = {str(f): represents(f, 659) for f in targets}
    check(
        "659 represented by all four forms 2,b,11",
        all(w is not None for w in reps.values()),
        representations={k: list(w) for k, w in reps.items()},
    )

    payload = {"ok": True, "checks": checks}
    lines = [f"{c['name']}: pass" for c in checks]
    lines.append("all checks passed")
    return payload, "\n".join(lines)


_HANDLERS = {
    "reduce": _cmd_reduce,
    "forms": _cmd_forms,
    "group": _cmd_group,
    "compose": _cmd_compose,
    "order": _cmd_order,
    "witness": _cmd_witness,
    "represents": _cmd_represents,
    "intersect": _cmd_intersect,
    "trivial": _cmd_trivial,
    "local": _cmd_local,
    "multiple": _cmd_multiple,
    "hcp": _cmd_hcp,
    "split": _cmd_split,
    "verify-thm8": _cmd_verify_thm8,
    "verify-paper": _cmd_verify_paper,
}


def run(argv: list) -> CommandResult:
    """Parse argv, dispatch, and map errors onto exit statuses."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as e:
        return CommandResult("usage-error", {"error": str(e)}, f"usage error: {e}")
    json_mode = args.json
    try:
        out = _HANDLERS[args.command](args)
    except _UsageError as e:
        return CommandResult(
            "usage-error", {"error": str(e)}, f"usage error: {e}", json_mode
        )
    except DomainError as e:
        return CommandResult(
            "domain-error", {"error": str(e)}, f"domain error: {e}", json_mode
        )
    if isinstance(out, CommandResult):
        return out
    payload, text = out
    return CommandResult("ok", payload, text, json_mode)


def main(argv=None) -> int:
    result = run(sys.argv[1:] if argv is None else argv)
    rendered = result.render()
    if rendered:
        print(rendered)
    return result.exit_code
