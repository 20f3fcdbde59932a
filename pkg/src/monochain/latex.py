"""LaTeX rendering of chain potentials.

Downstream potentials are written as ``prefactor \\, numerator / (x_0^2 + r^2)^{p}``
and upstream ones in the three-family shape with the shorthands LOG, SQRT
(m = 2) and QUAT, LNSQ (m = 3).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .axial import Atom, AxialExpr, Poly
from .chain import TWO_PI, UpstreamForm
from .exactnum import Coefficient

_RVAR = {2: "r", 3: r"\rho"}


def _pi_factor(n: int) -> str:
    if n == 0:
        return ""
    return r"\pi" if abs(n) == 1 else _power(r"\pi", abs(n))


def latex_scalar(q: Fraction, n: int = 0, unit_implicit: bool = False) -> str:
    """Unsigned ``|q| * pi**n``: integers plain, fractions as ``\\frac``."""
    q = abs(q)
    num, den = q.numerator, q.denominator
    top = "" if (num == 1 and n > 0) else str(num)
    top += _pi_factor(n) if n > 0 else ""
    bottom = ("" if den == 1 else str(den)) + (_pi_factor(n) if n < 0 else "")
    if not bottom:
        return "" if (unit_implicit and top == "1") else top
    if not top:
        top = "1"
    return rf"\frac{{{top}}}{{{bottom}}}"


def latex_coefficient(c: Coefficient) -> str:
    """Signed rendering of an element of Q[pi, 1/pi]."""
    items = sorted(c.terms.items(), reverse=True)
    if not items:
        return "0"
    if len(items) == 1:
        n, q = items[0]
        return ("-" if q < 0 else "") + latex_scalar(q, n)
    text = latex_poly([(q, n, 0, 0) for n, q in items], "r", r_first=False)
    return f"({text})"


def _power(var: str, e: int) -> str:
    if e == 0:
        return ""
    if e == 1:
        return var
    return f"{var}^{e}" if 0 < e < 10 else f"{var}^{{{e}}}"


def _sub(name: str, k: int) -> str:
    return f"{name}_{k}" if 0 <= k < 10 else f"{name}_{{{k}}}"


def _monomial(a: int, b: int, rvar: str, r_first: bool) -> list[str]:
    xs, rs = _power("x_0", a), _power(rvar, b)
    factors = [rs, xs] if r_first else [xs, rs]
    return [f for f in factors if f]


def latex_poly(items, rvar: str, r_first: bool) -> str:
    """Signed sum of ``coefficient * monomial`` entries ``(q, n, a, b)``.

    Rational coefficients are written as ``\\frac``; the first term carries a
    bare minus sign when negative.
    """
    out = []
    for q, n, a, b in items:
        mono = _monomial(a, b, rvar, r_first)
        coef = latex_scalar(q, n, unit_implicit=bool(mono))
        body = " ".join([c for c in [coef] + mono if c])
        sign = "-" if q < 0 else "+"
        if not out:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f"{sign} {body}")
    return " ".join(out) if out else "0"


def _poly_items(p: Poly) -> list:
    """Entries of a polynomial whose coefficients are single pi powers, descending in x0."""
    items = []
    for (a, b), c in sorted(p.items(), key=lambda kv: (-kv[0][0], kv[0][1])):
        q, n = c.monomial()
        items.append((q, n, a, b))
    return items


# -- downstream ------------------------------------------------------------------


def _prefactor(m: int) -> Coefficient:
    # m = 2 prefactor 1/(2 pi), m = 3 prefactor 1/pi^2
    return Coefficient.pi_power(Fraction(1, 2), -1) if m == 2 else Coefficient.pi_power(1, -2)


def _s_power(m: int, alpha2: int) -> str:
    if m == 2:
        return f"^{{{-alpha2}/2}}"
    return f"^{{{-alpha2 // 2}}}"


def downstream_latex(expr: AxialExpr, m: int, kind: str) -> str:
    """Right-hand side for ``A_{-k}`` (``kind='A'``) or ``B_{-k}`` (``kind='B'``)."""
    rvar = _RVAR[m]
    terms = expr.terms
    alphas = {t.alpha2 for t in terms}
    if len(alphas) != 1 or any(t.atom is not Atom.ONE for t in terms):
        raise ValueError("not a single-denominator downstream expression")
    alpha2 = alphas.pop()
    pre = _prefactor(m)
    shift = -1 if kind == "B" else 0
    ints = []
    for t in terms:
        q, n = (t.c / pre).monomial()
        if n != 0:
            raise ValueError("unexpected pi power in downstream numerator")
        ints.append((q, t.a, t.b + shift))
    ints.sort(key=lambda x: -x[1])
    scale = Fraction(1)
    sign = ""
    if kind == "B":
        if m == 3:
            content = 0
            for q, _, _ in ints:
                content = gcd(content, q.numerator)
            scale = Fraction(content)
        if ints[0][0] < 0 and (m == 2 or len(ints) == 1):
            sign = "- "
            scale = -scale
    body = latex_poly([(q / scale, 0, a, b) for q, a, b in ints], rvar, r_first=False)
    if kind == "B":
        xv = r"\underline{x}"
        if body == "1":
            body = xv
        elif len(ints) == 1:
            body = f"{body} {xv}"
        else:
            body = f"({body}) {xv}"
    head = latex_scalar(pre.monomial()[0] * abs(scale), pre.monomial()[1])
    den = f"(x_0^2 + {rvar}^2){_s_power(m, alpha2)}"
    return rf"{sign}{head} \, \frac{{{body}}}{{{den}}}"


# -- upstream --------------------------------------------------------------------

_SHORTHAND = {2: ("LOG", "SQRT"), 3: ("QUAT", "LNSQ")}


def upstream_latex(form: UpstreamForm) -> str:
    """``2\\pi A_j(x_0,\\underline{x}) = ...`` in the three-family layout."""
    rvar = "r"
    pieces = []
    for poly, name in zip((form.first, form.second), _SHORTHAND[form.m]):
        items = _poly_items(poly)
        if not items:
            continue
        text = latex_poly(items, rvar, r_first=True)
        if len(items) > 1:
            text = f"({text})"
        elif text in ("1", "-1"):
            text = text[:-1]
        pieces.append((text, name))
    rest = _poly_items(form.third)
    out = ""
    for text, name in pieces:
        if not out:
            out = f"{text}{name}" if text in ("", "-") else f"{text} {name}"
        elif text.startswith("-"):
            out += f" - {text[1:]} {name}".replace("  ", " ")
        else:
            out += f" + {text} {name}".replace("  ", " ")
    if rest:
        tail = latex_poly(rest, rvar, r_first=True)
        if not out:
            out = tail
        elif tail.startswith("-"):
            out += f" - {tail[1:]}"
        else:
            out += f" + {tail}"
    return rf"2\pi {_sub('A', form.j)}(x_0,\underline{{x}}) = {out or '0'}"


# -- generic ---------------------------------------------------------------------

_ATOM_TEX = {
    Atom.ONE: "",
    Atom.LOG: r"\ln(x_0 + \sqrt{x_0^2 + r^2})",
    Atom.ARCTAN: r"\arctan\frac{r}{x_0}",
    Atom.LNSQ: r"\ln\sqrt{x_0^2 + r^2}",
}


def generic_latex(expr: AxialExpr) -> str:
    """Term-by-term rendering of any expression."""
    if expr.is_zero():
        return "0"
    out = []
    for t in expr.terms:
        c = latex_coefficient(t.c)
        factors = []
        if t.a:
            factors.append(_power("x_0", t.a))
        if t.b:
            factors.append(f"r^{{{t.b}}}" if t.b != 1 else "r")
        if t.alpha2:
            factors.append(f"(x_0^2 + r^2)^{{{Fraction(t.alpha2, 2)}}}")
        if t.atom is not Atom.ONE:
            factors.append(_ATOM_TEX[t.atom])
        body = " ".join(factors)
        if c == "1" and body:
            c = ""
        elif c == "-1" and body:
            c = "-"
        term = f"{c} {body}".strip() if c not in ("", "-") else f"{c}{body}"
        if out and not term.startswith("-"):
            out.append(f"+ {term}")
        elif out:
            out.append(f"- {term[1:].lstrip()}")
        else:
            out.append(term)
    return " ".join(out)


def chain_document(chain) -> str:
    """Stand-alone LaTeX document listing every level of a chain."""
    m = chain.m
    lines = [
        r"\documentclass{article}",
        r"\usepackage{amsmath}",
        r"\begin{document}",
        rf"\section*{{Potentials in $\mathbb{{R}}^{{{m + 1}}}_+$}}",
    ]
    if m == 2:
        lines.append(r"$LOG = \ln{(x_0+\sqrt{x_0^2+r^2})}$, $SQRT = \sqrt{x_0^2+r^2}$")
    else:
        lines.append(r"$QUAT = \frac{1}{r} \arctan{\frac{r}{x_0}}$, $LNSQ = \ln{\sqrt{x_0^2+r^2}}$")
    lines.append("")
    for rec in chain:
        k = rec.level
        if k <= -1:
            lines += [
                "$$",
                rf"A_{{{k}}}(x_0,\underline{{x}}) = {downstream_latex(rec.A, m, 'A')}",
                "$$",
                "$$",
                rf"B_{{{k}}}(x_0,\underline{{x}}) = {downstream_latex(rec.B, m, 'B')}",
                "$$",
            ]
        elif k == 0:
            lines += [
                "$$",
                rf"A_{{0}}(x_0,\underline{{x}}) = {generic_latex(rec.A)}",
                "$$",
                "$$",
                rf"B_{{0}}(x_0,\underline{{x}}) = \underline{{\omega}} \left( {generic_latex(rec.B)} \right)",
                "$$",
            ]
        else:
            form = UpstreamForm.from_expr(rec.A * TWO_PI, m, k)
            lines += ["$$", upstream_latex(form), "$$"]
    lines.append(r"\end{document}")
    return "\n".join(lines) + "\n"
