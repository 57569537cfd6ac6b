"""Dense univariate polynomials with rational coefficients.

A polynomial is a tuple of :class:`~fractions.Fraction` coefficients, lowest
degree first, with no trailing zeros. The zero polynomial is ``()``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Poly = tuple  # tuple[Fraction, ...]


def poly(coeffs: Iterable) -> Poly:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def degree(p: Poly) -> int:
    return len(p) - 1


def add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return poly((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n))


def neg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, neg(q))


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return poly(out)


def scale(p: Poly, c) -> Poly:
    return poly(c * a for a in p)


def divmod_poly(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    lead = q[-1]
    while len(r) >= len(q) and r:
        c = r[-1] / lead
        shift = len(r) - len(q)
        quot[shift] = c
        for i, b in enumerate(q):
            r[shift + i] -= c * b
        while r and r[-1] == 0:
            r.pop()
    return poly(quot), poly(r)


def monic(p: Poly) -> Poly:
    if not p:
        return p
    return scale(p, 1 / p[-1])


def gcd(p: Poly, q: Poly) -> Poly:
    while q:
        p, q = q, divmod_poly(p, q)[1]
    return monic(p)


def derivative(p: Poly) -> Poly:
    return poly(i * c for i, c in enumerate(p) if i > 0)


def evaluate(p: Poly, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def compose_square(p: Poly) -> Poly:
    """Return ``p(x**2)``."""
    out = [Fraction(0)] * (2 * len(p) - 1) if p else []
    for i, c in enumerate(p):
        out[2 * i] = c
    return poly(out)


def is_squarefree(p: Poly) -> bool:
    return degree(gcd(p, derivative(p))) == 0


def sturm_sequence(p: Poly) -> list[Poly]:
    seq = [p, derivative(p)]
    while seq[-1] and degree(seq[-1]) > 0:
        r = divmod_poly(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append(neg(r))
    return seq


def _sign_changes(values: Sequence[Fraction]) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p: Poly, lo, hi) -> int:
    """Number of distinct real roots of ``p`` in the half-open interval ``(lo, hi]``."""
    seq = sturm_sequence(p)
    return _sign_changes([evaluate(s, Fraction(lo)) for s in seq]) - _sign_changes(
        [evaluate(s, Fraction(hi)) for s in seq]
    )


def interpolate(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> Poly:
    """Lagrange interpolation through the points ``(xs[i], ys[i])``."""
    result: Poly = ()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis: Poly = (Fraction(1),)
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = mul(basis, poly([-xj, 1]))
                denom *= xi - xj
        result = add(result, scale(basis, yi / denom))
    return result


def _to_sympy(p: Poly):
    import sympy

    x = sympy.Symbol("x")
    return sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) for c in p])), x, domain="QQ")


def factor(p: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factors of ``p`` over the rationals with multiplicities."""
    if degree(p) < 1:
        return []
    _, factors = _to_sympy(p).factor_list()
    out = []
    for f, mult in factors:
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(f.all_coeffs())]
        out.append((monic(poly(coeffs)), mult))
    out.sort(key=lambda fm: (degree(fm[0]), fm[0]))
    return out


def is_irreducible(p: Poly) -> bool:
    if degree(p) < 1:
        return False
    if degree(p) == 1:
        return True
    # cheap filters before factoring
    if p[0] == 0 or not is_squarefree(p):
        return False
    return _to_sympy(p).is_irreducible


def to_str(p: Poly, var: str = "x") -> str:
    if not p:
        return "0"
    terms = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if i == 0:
            body = str(a)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if a == 1 else f"{a}*{mono}"
        terms.append((sign, body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def is_integral(p: Poly) -> bool:
    return all(c.denominator == 1 for c in p)
