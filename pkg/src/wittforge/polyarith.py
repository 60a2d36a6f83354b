"""Dense univariate polynomial arithmetic over an arbitrary coefficient ring.

Polynomials are tuples of raw coefficients ordered from the constant term
upwards, with trailing zeros stripped (the zero polynomial is ``()``). Every
function takes the coefficient ring first so the same code serves ``Z[x]``,
``GF(p)[x]``, quotient rings and the Kummer irreducibility check.
"""

from __future__ import annotations

import re

from .exceptions import NotInvertibleError, RingParseError


def trim(R, coeffs) -> tuple:
    coeffs = list(coeffs)
    while coeffs and R.is_zero(coeffs[-1]):
        coeffs.pop()
    return tuple(coeffs)


def degree(f) -> int:
    return len(f) - 1


def add(R, f, g):
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = R.add(out[i], c)
    return trim(R, out)


def neg(R, f):
    return tuple(R.neg(c) for c in f)


def sub(R, f, g):
    return add(R, f, neg(R, g))


def scale(R, c, f):
    return trim(R, (R.mul(c, a) for a in f))


def mul(R, f, g):
    if not f or not g:
        return ()
    out = [R.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if R.is_zero(a):
            continue
        for j, b in enumerate(g):
            out[i + j] = R.add(out[i + j], R.mul(a, b))
    return trim(R, out)


def monomial(R, c, e):
    if R.is_zero(c):
        return ()
    return tuple([R.zero] * e + [c])


def divmod_unit_lead(R, f, g):
    """Divide ``f`` by ``g`` whose leading coefficient is a unit of ``R``."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    lead_inv = R.inv(g[-1])
    q = [R.zero] * max(len(f) - len(g) + 1, 0)
    r = list(f)
    dg = len(g) - 1
    for k in range(len(f) - len(g), -1, -1):
        c = R.mul(r[k + dg], lead_inv)
        q[k] = c
        if R.is_zero(c):
            continue
        for i, b in enumerate(g):
            r[k + i] = R.sub(r[k + i], R.mul(c, b))
    return trim(R, q), trim(R, r[:dg] if dg > 0 else [])


def rem(R, f, g):
    return divmod_unit_lead(R, f, g)[1]


def make_monic(R, f):
    if not f:
        return f
    return scale(R, R.inv(f[-1]), f)


def gcd(R, f, g):
    """Monic gcd over a field."""
    while g:
        f, g = g, rem(R, f, g)
    return make_monic(R, f)


def xgcd(R, f, g):
    """Return ``(d, s, t)`` with ``s*f + t*g = d`` and ``d`` monic, over a field."""
    r0, r1 = f, g
    s0, s1 = (R.one,), ()
    t0, t1 = (), (R.one,)
    while r1:
        q, r = divmod_unit_lead(R, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(R, s0, mul(R, q, s1))
        t0, t1 = t1, sub(R, t0, mul(R, q, t1))
    if not r0:
        return (), s0, t0
    c = R.inv(r0[-1])
    return scale(R, c, r0), scale(R, c, s0), scale(R, c, t0)


def inverse_mod(R, f, modulus):
    """Inverse of ``f`` modulo ``modulus`` over a field."""
    d, s, _ = xgcd(R, f, modulus)
    if d != (R.one,):
        raise NotInvertibleError("polynomial is not invertible modulo the given modulus")
    return rem(R, s, modulus)


def mulmod(R, f, g, modulus):
    return rem(R, mul(R, f, g), modulus)


def powmod(R, f, e, modulus):
    result = rem(R, (R.one,), modulus)
    base = rem(R, f, modulus)
    while e > 0:
        if e & 1:
            result = mulmod(R, result, base, modulus)
        e >>= 1
        if e:
            base = mulmod(R, base, base, modulus)
    return result


def evaluate(R, f, point):
    acc = R.zero
    for c in reversed(f):
        acc = R.add(R.mul(acc, point), c)
    return acc


def format_poly(R, f, var="x") -> str:
    if not f:
        return "0"
    out = ""
    for e in range(len(f) - 1, -1, -1):
        c = f[e]
        if R.is_zero(c):
            continue
        text = R.format(c)
        sign = "+"
        if text.startswith("-") and not any(ch in text[1:] for ch in "+-"):
            sign, text = "-", text[1:]
        if any(ch in text for ch in "+-"):
            text = f"({text})"
        if e > 0:
            mono = var if e == 1 else f"{var}^{e}"
            text = mono if text == "1" else f"{text}*{mono}"
        if out or sign == "-":
            out += sign
        out += text
    return out


def _split_terms(text: str):
    terms = []
    depth = 0
    start = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > start and text[i - 1] not in "^*/":
            terms.append(text[start:i])
            start = i
    terms.append(text[start:])
    return [t for t in terms if t not in ("", "+")]


_EXP = re.compile(r"^\^(\d+)$")


def parse_poly(R, text: str, var="x"):
    """Parse sparse text such as ``x^8-3`` or ``(g+1)*x^2+g`` into a coefficient tuple."""
    src = text.replace(" ", "")
    if not src:
        raise RingParseError("empty polynomial literal")
    acc = ()
    for term in _split_terms(src):
        sign = 1
        if term[0] in "+-":
            sign = -1 if term[0] == "-" else 1
            term = term[1:]
        if not term:
            raise RingParseError(f"malformed polynomial literal {text!r}")
        pos = _find_var(term, var)
        if pos is None:
            coeff_text, exp = term, 0
        else:
            coeff_text = term[:pos]
            tail = term[pos + len(var):]
            if tail == "":
                exp = 1
            else:
                m = _EXP.match(tail)
                if not m:
                    raise RingParseError(f"malformed exponent in {text!r}")
                exp = int(m.group(1))
            if coeff_text.endswith("*"):
                coeff_text = coeff_text[:-1]
            if coeff_text == "":
                coeff_text = "1"
        if coeff_text.startswith("(") and coeff_text.endswith(")"):
            coeff_text = coeff_text[1:-1]
        c = R.parse(coeff_text)
        if sign < 0:
            c = R.neg(c)
        acc = add(R, acc, monomial(R, c, exp))
    return acc


def _find_var(term, var):
    depth = 0
    found = None
    for i, ch in enumerate(term):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and term.startswith(var, i):
            found = i
    return found
