"""Command-line entry point: ``wittforge <subcommand> [flags]``.

Every subcommand prints one JSON object ``{"status": ..., ...}``. Exit codes:
0 for ``ok``, 1 for ``violated`` (a checked mathematical property failed),
2 for ``error`` (bad input, parse failure, unsupported ring, budget).
Integers are rendered as decimal strings; output is deterministic for fixed
inputs and seed unless ``--timing`` adds ``elapsed_ms``.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from dataclasses import dataclass, field

from . import __version__
from .alternating import AlternatingMatrix, hyperbolic, pfaffian, psi, sigma, verify_equivalence_certificate, witt_inverse
from .checks import SUITES, run_suites
from .elementary import ElementaryFactorization, block_swap_factorization, block_swap_matrix, whitehead_factorization
from .exceptions import WittforgeError
from .kummer import kummer_verify, sweep_kummer
from .lemmas import (
    CancellationInput,
    StabilizationInput,
    cancel_hyperbolic_summand,
    random_cancellation_input,
    random_stabilization_input,
    symplectic_stabilization,
)
from .matrix import Matrix, direct_sum
from .orbits import GroupSpec, is_symplectic, orbit_enumerate, orbits_to_json
from .rings import ring_parse
from .suslin import suslin_det_check, suslin_matrix

DEFAULT_SEED = 0

EXIT_CODES = {"ok": 0, "violated": 1, "error": 2}


@dataclass
class CommandResult:
    status: str
    payload: dict = field(default_factory=dict)
    elapsed_ms: int | None = None
    pretty: bool = False

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_json(self) -> dict:
        out = {"status": self.status, **self.payload}
        if self.elapsed_ms is not None:
            out["elapsed_ms"] = self.elapsed_ms
        return _stringify(out)


def _stringify(obj):
    """Render integers (not booleans) as decimal strings, recursively."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _stringify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_stringify(v) for v in obj]
    return obj


class _UsageError(WittforgeError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


# input helpers ----------------------------------------------------------------


def _load_json(text: str):
    """Inline JSON, or the contents of a file if ``text`` names one."""
    if os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise WittforgeError(f"malformed JSON: {exc}") from None


def _ring(args, data=None):
    if args.ring:
        return ring_parse(args.ring)
    if isinstance(data, dict) and "ring" in data:
        return ring_parse(data["ring"])
    return ring_parse("Z")


def _matrix(args, text, what="matrix"):
    if text is None:
        raise WittforgeError(f"--{what} is required")
    data = _load_json(text)
    return Matrix.from_json(data, _ring(args, data))


def _row(args, text):
    data = _load_json(text)
    if not isinstance(data, list):
        raise WittforgeError("rows are given as JSON arrays")
    return data


def _rows(M: Matrix):
    return M.to_json()["rows"]


# subcommands ------------------------------------------------------------------


def cmd_pfaffian(args):
    M = _matrix(args, args.matrix)
    pf = pfaffian(M)
    return "ok", {"ring": M.ring.descriptor, "pfaffian": str(pf)}


def cmd_psi(args):
    R = _ring(args)
    return "ok", {"ring": R.descriptor, "matrix": _rows(psi(args.rank, R).matrix)}


def cmd_sigma(args):
    R = _ring(args)
    return "ok", {"ring": R.descriptor, "matrix": _rows(sigma(args.rank, R))}


def cmd_hyperbolic(args):
    G = _matrix(args, args.matrix)
    return "ok", {"ring": G.ring.descriptor, "matrix": _rows(hyperbolic(G).matrix)}


def cmd_witt_inv(args):
    N = _matrix(args, args.matrix)
    return "ok", {"ring": N.ring.descriptor, "matrix": _rows(witt_inverse(N).matrix)}


def cmd_verify_equiv(args):
    M = _matrix(args, args.matrix)
    N = _matrix(args, args.other, "other")
    cert = ElementaryFactorization.from_json(_load_json(args.certificate), M.ring)
    valid = verify_equivalence_certificate(M, N, args.s, cert)
    payload = {"ring": M.ring.descriptor, "s": args.s, "valid": valid}
    return ("ok" if valid else "violated"), payload


def cmd_suslin(args):
    R = _ring(args)
    M = suslin_matrix(_row(args, args.a), _row(args, args.b), R)
    return "ok", {"ring": R.descriptor, "size": M.nrows, "matrix": _rows(M), "det": str(M.det())}


def cmd_suslin_check(args):
    R = _ring(args)
    c = suslin_det_check(_row(args, args.a), _row(args, args.b), R)
    payload = {"ring": R.descriptor, "det": str(c.lhs), "ab_power": str(c.rhs), "equal": c.equal}
    return ("ok" if c.equal else "violated"), payload


def cmd_orbit(args):
    R = _ring(args)
    form = None
    if args.form is not None:
        form = AlternatingMatrix(_matrix(args, args.form, "form"))
    elif args.group in ("symplectic", "elementary-symplectic"):
        form = psi(args.n, R)
    group = GroupSpec(args.group, form=form, depth=args.depth)
    start = _row(args, args.start) if args.start else None
    orbits = orbit_enumerate(R, args.n, group, start=start, budget=args.budget)
    return "ok", orbits_to_json(R, args.n, group, orbits)


def cmd_sp_check(args):
    g = _matrix(args, args.matrix)
    chi = _matrix(args, args.form, "form") if args.form else psi(g.nrows, g.ring).matrix
    ok = is_symplectic(g, AlternatingMatrix(chi))
    return ("ok" if ok else "violated"), {"ring": g.ring.descriptor, "symplectic": ok}


def cmd_whitehead(args):
    A = _matrix(args, args.matrix)
    F = whitehead_factorization(A)
    matches = F.evaluate() == direct_sum(A, A.inverse())
    return ("ok" if matches else "violated"), {"factorization": F.to_json(), "matches": matches}


def cmd_block_swap(args):
    R = _ring(args)
    F = block_swap_factorization(args.r, args.s, R)
    matches = F.evaluate() == block_swap_matrix(args.r, args.s, R)
    return ("ok" if matches else "violated"), {"factorization": F.to_json(), "matches": matches}


def cmd_stabilize(args):
    rng = random.Random(args.seed)
    if args.input:
        data = _load_json(args.input)
        inp = StabilizationInput.from_json(data, _ring(args, data))
    else:
        inp = random_stabilization_input(_ring(args) if args.ring else ring_parse("GF(3)"), args.n, args.s, rng)
    res = symplectic_stabilization(inp)
    return ("ok" if res.ok else "violated"), {"input": inp.to_json(), "result": res.to_json()}


def cmd_cancel(args):
    rng = random.Random(args.seed)
    if args.input:
        data = _load_json(args.input)
        inp = CancellationInput.from_json(data, _ring(args, data))
    else:
        inp = random_cancellation_input(_ring(args) if args.ring else ring_parse("GF(3)"), rng, args.n)
    res = cancel_hyperbolic_summand(inp)
    return ("ok" if res.ok else "violated"), {"input": inp.to_json(), "result": res.to_json()}


def cmd_kummer(args):
    rep = kummer_verify(args.p, args.a)
    return ("ok" if rep.implication_holds else "violated"), rep.to_json()


def cmd_kummer_sweep(args):
    sw = sweep_kummer(args.p)
    return ("ok" if not sw.counterexamples else "violated"), sw.to_json()


def cmd_verify_all(args):
    report = run_suites(args.seed, args.suite or None)
    return ("ok" if report["ok"] else "violated"), report


# parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--ring", help="ring descriptor, e.g. Z, GF(7), Z/6, GF(7)[x]/(x^2+1)")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized commands")
    common.add_argument("--budget", type=int, help="enumeration budget (overrides WITTFORGE_BUDGET)")
    out = common.add_mutually_exclusive_group()
    out.add_argument("--json", dest="pretty", action="store_false", help="compact JSON output (default)")
    out.add_argument("--pretty", dest="pretty", action="store_true", help="indented JSON output")
    common.set_defaults(pretty=False)
    common.add_argument("--timing", action="store_true", help="add elapsed_ms to the output")

    parser = _Parser(prog="wittforge", description="Exact symplectic Witt-group computations.")
    parser.add_argument("--version", action="version", version=f"wittforge {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    add("pfaffian", cmd_pfaffian, "Pfaffian of an alternating matrix").add_argument("--matrix")
    add("psi", cmd_psi, "standard alternating form").add_argument("--rank", type=int, required=True)
    add("sigma", cmd_sigma, "block swap form used for Witt inversion").add_argument("--rank", type=int, required=True)
    add("hyperbolic", cmd_hyperbolic, "G^t psi G").add_argument("--matrix")
    add("witt-inv", cmd_witt_inv, "sigma N^-1 sigma").add_argument("--matrix")

    p = add("verify-equiv", cmd_verify_equiv, "check an equivalence certificate")
    p.add_argument("--matrix", help="M")
    p.add_argument("--other", help="N")
    p.add_argument("--s", type=int, default=0)
    p.add_argument("--certificate", required=True, help="elementary factorization JSON")

    for name, func, text in (
        ("suslin", cmd_suslin, "Suslin matrix alpha_n(a, b)"),
        ("suslin-check", cmd_suslin_check, "determinant law for alpha_n(a, b)"),
    ):
        p = add(name, func, text)
        p.add_argument("--a", required=True)
        p.add_argument("--b", required=True)

    p = add("orbit", cmd_orbit, "orbits of unimodular rows over a finite ring")
    p.add_argument("--n", type=int, required=True)
    p.add_argument(
        "--group",
        default="elementary",
        choices=["elementary", "special-linear", "symplectic", "elementary-symplectic"],
    )
    p.add_argument("--form", help="alternating form (default psi_n for symplectic groups)")
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--start", help="only the orbit through this row")

    p = add("sp-check", cmd_sp_check, "is g symplectic for a form")
    p.add_argument("--matrix")
    p.add_argument("--form")

    add("whitehead", cmd_whitehead, "elementary factorization of A ⊥ A^-1").add_argument("--matrix")
    p = add("block-swap", cmd_block_swap, "elementary factorization of the block swap")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)

    p = add("lemma21", cmd_stabilize, "stabilize a hyperbolic-kernel matrix to a symplectic one")
    p.add_argument("--input", help="input record JSON; random instance if omitted")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--s", type=int, default=1)
    p = add("lemma35", cmd_cancel, "cancel a hyperbolic plane from a congruence")
    p.add_argument("--input", help="input record JSON; random instance if omitted")
    p.add_argument("--n", type=int, default=1)

    p = add("kummer", cmd_kummer, "irreducibility of X^8 - a over GF(p)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    add("kummer-sweep", cmd_kummer_sweep, "X^8 - a for every non-square a").add_argument("--p", type=int, required=True)

    p = add("verify-all", cmd_verify_all, "run the property suites")
    p.add_argument("--suite", action="append", choices=sorted(SUITES))
    return parser


def run(argv=None) -> CommandResult:
    start = time.perf_counter()
    timing = False
    pretty = False
    saved_budget = os.environ.get("WITTFORGE_BUDGET")
    try:
        args = build_parser().parse_args(argv)
        timing, pretty = args.timing, args.pretty
        if args.budget is not None:
            os.environ["WITTFORGE_BUDGET"] = str(args.budget)
        status, payload = args.func(args)
        result = CommandResult(status, payload)
    except (WittforgeError, ArithmeticError) as exc:
        result = CommandResult("error", {"error": f"{type(exc).__name__}: {exc}"})
    finally:
        if saved_budget is None:
            os.environ.pop("WITTFORGE_BUDGET", None)
        else:
            os.environ["WITTFORGE_BUDGET"] = saved_budget
    result.pretty = pretty
    if timing:
        result.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return result


def main(argv=None) -> int:
    result = run(argv)
    indent = 2 if result.pretty else None
    print(json.dumps(result.to_json(), indent=indent, ensure_ascii=False))
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
