"""Sparse exact-rational bivariate polynomials.

A polynomial is a map from exponent pairs (ex, ey) to nonzero Fraction
coefficients; the zero polynomial has an empty map.  Structural equality
coincides with mathematical equality.  All arithmetic is exact.

Conventions fixed here and relied on elsewhere:

* graded-lex order with x > y: terms compare by (total degree, x-exponent);
* `normalize` scales by a positive rational so coefficients are coprime
  integers, then flips sign so the graded-lex leading coefficient is
  positive;
* `resultant(a, b, var)` is the determinant of the Sylvester matrix whose
  first deg_var(b) rows hold the coefficients of `a` (so for instance
  res_y(y - x^2, y) = +x^2);
* gcds are returned in normalized form.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd

import numpy as np

from .intervals import Iv

Term = tuple[int, int]


class PolynomialError(ValueError):
    pass


def _as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, float):
        return Fraction(v)
    raise TypeError(f"cannot use {type(v).__name__} as a coefficient")


class BiPoly:
    """Immutable sparse polynomial in Q[x, y]."""

    __slots__ = ("terms", "_hash", "_evalcache")

    def __init__(self, terms: dict[Term, Fraction] | None = None):
        clean: dict[Term, Fraction] = {}
        if terms:
            for (ex, ey), c in terms.items():
                c = _as_fraction(c)
                if c != 0:
                    clean[(int(ex), int(ey))] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)
        object.__setattr__(self, "_evalcache", None)

    def __setattr__(self, *a):
        raise AttributeError("BiPoly is immutable")

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero() -> "BiPoly":
        return _ZERO

    @staticmethod
    def one() -> "BiPoly":
        return _ONE

    @staticmethod
    def const(c) -> "BiPoly":
        return BiPoly({(0, 0): _as_fraction(c)})

    @staticmethod
    def x(e: int = 1) -> "BiPoly":
        return BiPoly({(e, 0): Fraction(1)})

    @staticmethod
    def y(e: int = 1) -> "BiPoly":
        return BiPoly({(0, e): Fraction(1)})

    # -- basic queries --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(t == (0, 0) for t in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise PolynomialError("not a constant polynomial")
        return self.terms.get((0, 0), Fraction(0))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(ex + ey for ex, ey in self.terms)

    def degree_in(self, var: str) -> int:
        if not self.terms:
            return -1
        i = 0 if var == "x" else 1
        return max(t[i] for t in self.terms)

    def depends_on(self, var: str) -> bool:
        i = 0 if var == "x" else 1
        return any(t[i] > 0 for t in self.terms)

    def lead_term(self) -> tuple[Term, Fraction]:
        """Graded-lex leading term (total degree, then x-exponent)."""
        if not self.terms:
            raise PolynomialError("zero polynomial has no leading term")
        t = max(self.terms, key=lambda e: (e[0] + e[1], e[0]))
        return t, self.terms[t]

    def __eq__(self, o):
        return isinstance(o, BiPoly) and self.terms == o.terms

    def __hash__(self):
        h = object.__getattribute__(self, "_hash")
        if h is None:
            h = hash(frozenset(self.terms.items()))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self):
        return bool(self.terms)

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, o: "BiPoly") -> "BiPoly":
        if not isinstance(o, BiPoly):
            return NotImplemented
        out = dict(self.terms)
        for t, c in o.terms.items():
            s = out.get(t, Fraction(0)) + c
            if s:
                out[t] = s
            else:
                out.pop(t, None)
        return BiPoly(out)

    def __sub__(self, o: "BiPoly") -> "BiPoly":
        if not isinstance(o, BiPoly):
            return NotImplemented
        out = dict(self.terms)
        for t, c in o.terms.items():
            s = out.get(t, Fraction(0)) - c
            if s:
                out[t] = s
            else:
                out.pop(t, None)
        return BiPoly(out)

    def __neg__(self) -> "BiPoly":
        return BiPoly({t: -c for t, c in self.terms.items()})

    def __mul__(self, o) -> "BiPoly":
        if isinstance(o, (int, Fraction)):
            c = _as_fraction(o)
            if c == 0:
                return _ZERO
            return BiPoly({t: cc * c for t, cc in self.terms.items()})
        if not isinstance(o, BiPoly):
            return NotImplemented
        if not self.terms or not o.terms:
            return _ZERO
        # multiply the smaller operand into the larger
        a, b = (self.terms, o.terms) if len(self.terms) <= len(o.terms) else (o.terms, self.terms)
        out: dict[Term, Fraction] = {}
        for (ax, ay), ac in a.items():
            for (bx, by), bc in b.items():
                t = (ax + bx, ay + by)
                s = out.get(t)
                p = ac * bc
                if s is None:
                    out[t] = p
                else:
                    s = s + p
                    if s:
                        out[t] = s
                    else:
                        del out[t]
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "BiPoly":
        if not isinstance(e, int) or e < 0:
            raise PolynomialError("exponent must be a nonnegative integer")
        result = _ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    # -- structure -------------------------------------------------------------

    def normalize(self) -> "BiPoly":
        """Scale to coprime integer coefficients with positive graded-lex lead."""
        if not self.terms:
            return _ZERO
        den_lcm = 1
        for c in self.terms.values():
            den_lcm = den_lcm * c.denominator // int_gcd(den_lcm, c.denominator)
        num_gcd = 0
        for c in self.terms.values():
            num_gcd = int_gcd(num_gcd, abs(c.numerator * (den_lcm // c.denominator)))
        scale = Fraction(den_lcm, num_gcd)
        _, lead = self.lead_term()
        if lead < 0:
            scale = -scale
        return self * scale

    def content_and_primitive(self, var: str) -> tuple["BiPoly", list["BiPoly"]]:
        """Content (gcd of coefficients) w.r.t. `var`, and coefficient list.

        Returns (content, coeffs) where coeffs[i] is the coefficient of
        var**i as a polynomial in the other variable.
        """
        coeffs = self.coeffs_in(var)
        cont = _ZERO
        for c in coeffs:
            if not c.is_zero():
                cont = poly_gcd(cont, c) if not cont.is_zero() else c.normalize()
                if cont.is_constant():
                    cont = _ONE
                    break
        return cont, coeffs

    def coeffs_in(self, var: str) -> list["BiPoly"]:
        """Coefficients of powers of `var`, ascending, as polynomials in the other."""
        d = self.degree_in(var)
        if d < 0:
            return []
        out: list[dict[Term, Fraction]] = [dict() for _ in range(d + 1)]
        if var == "y":
            for (ex, ey), c in self.terms.items():
                out[ey][(ex, 0)] = c
        else:
            for (ex, ey), c in self.terms.items():
                out[ex][(0, ey)] = c
        return [BiPoly(t) for t in out]

    @staticmethod
    def from_coeffs(coeffs: list["BiPoly"], var: str) -> "BiPoly":
        out: dict[Term, Fraction] = {}
        for i, c in enumerate(coeffs):
            for (ex, ey), q in c.terms.items():
                t = (ex, ey + i) if var == "y" else (ex + i, ey)
                out[t] = out.get(t, Fraction(0)) + q
        return BiPoly(out)

    def derivative(self, var: str) -> "BiPoly":
        out: dict[Term, Fraction] = {}
        for (ex, ey), c in self.terms.items():
            if var == "x" and ex > 0:
                out[(ex - 1, ey)] = c * ex
            elif var == "y" and ey > 0:
                out[(ex, ey - 1)] = c * ey
        return BiPoly(out)

    def substitute(self, x_sub: "BiPoly", y_sub: "BiPoly") -> "BiPoly":
        """Evaluate at x = x_sub, y = y_sub (polynomial composition)."""
        # Horner in y over Horner in x keeps the work modest at our degrees.
        ycoeffs = self.coeffs_in("y")
        if not ycoeffs:
            return _ZERO
        acc = _ZERO
        for c in reversed(ycoeffs):
            acc = acc * y_sub + _subst_x(c, x_sub)
        return acc

    # -- evaluation --------------------------------------------------------------

    def eval_exact(self, xv: Fraction, yv: Fraction) -> Fraction:
        xv = _as_fraction(xv)
        yv = _as_fraction(yv)
        ycoeffs = self.coeffs_in("y")
        acc = Fraction(0)
        for c in reversed(ycoeffs):
            inner = Fraction(0)
            for cc in reversed(c.coeffs_in("x")):
                inner = inner * xv + cc.constant_value()
            acc = acc * yv + inner
        return acc

    def _eval_arrays(self):
        cache = object.__getattribute__(self, "_evalcache")
        if cache is None:
            items = sorted(self.terms.items())
            ex = np.array([t[0][0] for t in items], dtype=np.int64)
            ey = np.array([t[0][1] for t in items], dtype=np.int64)
            clo = np.empty(len(items))
            chi = np.empty(len(items))
            cf = np.empty(len(items))
            for i, (_, c) in enumerate(items):
                f = float(c)
                cf[i] = f
                if Fraction(f) == c:
                    clo[i] = chi[i] = f
                else:
                    clo[i] = np.nextafter(f, -np.inf)
                    chi[i] = np.nextafter(f, np.inf)
            cache = (ex, ey, clo, chi, cf)
            object.__setattr__(self, "_evalcache", cache)
        return cache

    def eval_float(self, xv: np.ndarray, yv: np.ndarray) -> np.ndarray:
        """Fast non-rigorous evaluation over numpy arrays."""
        if not self.terms:
            return np.zeros(np.broadcast(xv, yv).shape)
        ex, ey, _, _, cf = self._eval_arrays()
        dx = int(ex.max())
        dy = int(ey.max())
        xv = np.asarray(xv, dtype=np.float64)
        yv = np.asarray(yv, dtype=np.float64)
        xp = [np.ones_like(xv)]
        for _ in range(dx):
            xp.append(xp[-1] * xv)
        yp = [np.ones_like(yv)]
        for _ in range(dy):
            yp.append(yp[-1] * yv)
        acc = np.zeros(np.broadcast(xv, yv).shape)
        for i in range(len(cf)):
            acc = acc + cf[i] * xp[ex[i]] * yp[ey[i]]
        return acc

    def eval_iv(self, xv: Iv, yv: Iv) -> Iv:
        """Rigorous interval evaluation over (broadcastable) interval arrays."""
        if not self.terms:
            z = np.zeros(np.broadcast(xv.lo, yv.lo).shape)
            return Iv(z, z)
        ex, ey, clo, chi, _ = self._eval_arrays()
        dx = int(ex.max())
        dy = int(ey.max())
        xp = [Iv.point(np.ones(np.shape(xv.lo)))]
        for _ in range(dx):
            xp.append(xp[-1] * xv)
        yp = [Iv.point(np.ones(np.shape(yv.lo)))]
        for _ in range(dy):
            yp.append(yp[-1] * yv)
        acc = None
        for i in range(len(clo)):
            term = Iv(clo[i], chi[i]) * xp[ex[i]] * yp[ey[i]]
            acc = term if acc is None else acc + term
        return acc

    # -- printing ----------------------------------------------------------------

    def to_str(self) -> str:
        if not self.terms:
            return "0"
        keys = sorted(self.terms, key=lambda e: (e[0] + e[1], e[0]), reverse=True)
        parts = []
        for t in keys:
            c = self.terms[t]
            mono = monomial_str(t)
            if mono == "1":
                body = str(abs(c)) if c.denominator == 1 else f"{abs(c.numerator)}/{c.denominator}"
            elif abs(c) == 1:
                body = mono
            else:
                cs = str(abs(c)) if c.denominator == 1 else f"{abs(c.numerator)}/{c.denominator}"
                body = f"{cs}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        sign0, body0 = parts[0]
        out = ("-" if sign0 == "-" else "") + body0
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"BiPoly({self.to_str()})"


def monomial_str(t: Term) -> str:
    ex, ey = t
    bits = []
    if ex == 1:
        bits.append("x")
    elif ex > 1:
        bits.append(f"x^{ex}")
    if ey == 1:
        bits.append("y")
    elif ey > 1:
        bits.append(f"y^{ey}")
    return "*".join(bits) if bits else "1"


def _subst_x(p: BiPoly, x_sub: BiPoly) -> BiPoly:
    """Substitute x in a polynomial that depends on x only."""
    acc = _ZERO
    for c in reversed(p.coeffs_in("x")):
        acc = acc * x_sub + c
    return acc


_ZERO = BiPoly.__new__(BiPoly)
object.__setattr__(_ZERO, "terms", {})
object.__setattr__(_ZERO, "_hash", None)
object.__setattr__(_ZERO, "_evalcache", None)
_ONE = BiPoly.__new__(BiPoly)
object.__setattr__(_ONE, "terms", {(0, 0): Fraction(1)})
object.__setattr__(_ONE, "_hash", None)
object.__setattr__(_ONE, "_evalcache", None)


def arith(a: BiPoly, b: BiPoly, op: str) -> BiPoly:
    """Dispatch form of the ring operations ({add, sub, mul, pow})."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "pow":
        if not b.is_constant() or b.constant_value().denominator != 1 or b.constant_value() < 0:
            raise PolynomialError("pow exponent must be a nonnegative integer")
        return a ** int(b.constant_value())
    raise PolynomialError(f"unknown operation {op!r}")


# -- division ---------------------------------------------------------------------


def exact_div(a: BiPoly, b: BiPoly) -> BiPoly:
    """Exact quotient a / b; raises if b does not divide a."""
    if b.is_zero():
        raise PolynomialError("division by the zero polynomial")
    if a.is_zero():
        return _ZERO
    if b.is_constant():
        return a * (1 / b.constant_value())
    (bx, by), bc = b.lead_term()
    out: dict[Term, Fraction] = {}
    r = a
    while not r.is_zero():
        (rx, ry), rc = r.lead_term()
        if rx < bx or ry < by:
            raise PolynomialError("inexact polynomial division")
        t = (rx - bx, ry - by)
        q = rc / bc
        out[t] = q
        r = r - BiPoly({t: q}) * b
    return BiPoly(out)


def divides(b: BiPoly, a: BiPoly) -> bool:
    try:
        exact_div(a, b)
        return True
    except PolynomialError:
        return False


def pseudo_rem(a_coeffs: list[BiPoly], b_coeffs: list[BiPoly]) -> list[BiPoly]:
    """Pseudo-remainder of coefficient vectors (ascending) in the main variable.

    Computes prem such that lc(b)^(da-db+1) * a = q*b + prem.
    """
    a = list(a_coeffs)
    b = list(b_coeffs)
    while a and a[-1].is_zero():
        a.pop()
    while b and b[-1].is_zero():
        b.pop()
    if not b:
        raise PolynomialError("pseudo-division by zero")
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        lcb = b[-1]
        return [c * 1 for c in a]
    lcb = b[-1]
    e = da - db + 1
    r = a
    while True:
        dr = len(r) - 1
        while dr >= 0 and r[dr].is_zero():
            dr -= 1
        if dr < db:
            break
        lcr = r[dr]
        shift = dr - db
        new = [c * lcb for c in r]
        for i in range(db + 1):
            new[shift + i] = new[shift + i] - lcr * b[i]
        new = new[:dr]  # leading term cancels
        r = new
        e -= 1
    # match the standard prem scaling
    for _ in range(max(e, 0)):
        r = [c * lcb for c in r]
    while r and r[-1].is_zero():
        r.pop()
    return r


# -- gcd ----------------------------------------------------------------------------


# -- integer kernels ------------------------------------------------------------
#
# gcd work happens on dense integer coefficient lists: Python ints are an
# order of magnitude faster than Fractions and the PRS theory guarantees all
# divisions below are exact.


def _zx_trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _zx_mul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, av in enumerate(a):
        if av:
            for j, bv in enumerate(b):
                out[i + j] += av * bv
    return _zx_trim(out)


def _zx_pow(a: list[int], e: int) -> list[int]:
    out = [1]
    for _ in range(e):
        out = _zx_mul(out, a)
    return out


def _zx_divexact(a: list[int], b: list[int]) -> list[int]:
    if not b:
        raise PolynomialError("integer polynomial division by zero")
    if not a:
        return []
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    q = [0] * (len(a) - db)
    while r and len(r) - 1 >= db:
        c, rem = divmod(r[-1], lb)
        if rem:
            raise PolynomialError("inexact integer polynomial division")
        sh = len(r) - 1 - db
        q[sh] = c
        for i in range(db + 1):
            r[sh + i] -= c * b[i]
        _zx_trim(r)
    if r:
        raise PolynomialError("inexact integer polynomial division")
    return q


def _zx_content(a: list[int]) -> int:
    g = 0
    for c in a:
        g = int_gcd(g, c)
        if g == 1:
            return 1
    return g


def _zx_primitive(a: list[int]) -> list[int]:
    a = _zx_trim(list(a))
    if not a:
        return []
    g = _zx_content(a)
    if a[-1] < 0:
        g = -g
    return [c // g for c in a]


def _zx_prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder over Z: lc(b)^(da-db+1) * a mod b."""
    a = _zx_trim(list(a))
    b = _zx_trim(list(b))
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        return a
    lb = b[-1]
    e = da - db + 1
    r = a
    while r and len(r) - 1 >= db:
        lr = r[-1]
        sh = len(r) - 1 - db
        r = [c * lb for c in r]
        for i in range(db + 1):
            r[sh + i] -= lr * b[i]
        r = _zx_trim(r[: len(r) - 1])
        e -= 1
    for _ in range(max(e, 0)):
        r = [c * lb for c in r]
    return r


def _zx_gcd(a: list[int], b: list[int]) -> list[int]:
    """Primitive gcd over Z (positive leading coefficient)."""
    p, q = _zx_primitive(a), _zx_primitive(b)
    if not p:
        return q
    if not q:
        return p
    if len(p) < len(q):
        p, q = q, p
    while q:
        r = _zx_primitive(_zx_prem(p, q))
        p, q = q, r
    return _zx_primitive(p)


def _univar_to_zx(p: BiPoly, var: str) -> list[int]:
    cs = [c.constant_value() for c in p.coeffs_in(var)]
    if not cs:
        return []
    L = 1
    for c in cs:
        L = L * c.denominator // int_gcd(L, c.denominator)
    return _zx_trim([int(c * L) for c in cs])


def _zx_to_univar(a: list[int], var: str) -> BiPoly:
    if var == "x":
        return BiPoly({(i, 0): Fraction(c) for i, c in enumerate(a)})
    return BiPoly({(0, i): Fraction(c) for i, c in enumerate(a)})


def _univar_gcd(a: BiPoly, b: BiPoly, var: str) -> BiPoly:
    g = _zx_gcd(_univar_to_zx(a, var), _univar_to_zx(b, var))
    return _zx_to_univar(g, var).normalize()


# bivariate integer form: list over y-degree of x-coefficient int lists


def _bivar_to_zz(coeffs: list[BiPoly]) -> list[list[int]]:
    L = 1
    for c in coeffs:
        for q in c.terms.values():
            L = L * q.denominator // int_gcd(L, q.denominator)
    out = []
    for c in coeffs:
        row = [0] * (c.degree_in("x") + 1 if not c.is_zero() else 0)
        for (ex, _), q in c.terms.items():
            row[ex] = int(q * L)
        out.append(_zx_trim(row))
    while out and not out[-1]:
        out.pop()
    return out


def _zz_to_bipoly(A: list[list[int]]) -> BiPoly:
    terms = {}
    for ey, row in enumerate(A):
        for ex, c in enumerate(row):
            if c:
                terms[(ex, ey)] = Fraction(c)
    return BiPoly(terms)


def _zz_prem(A: list[list[int]], B: list[list[int]]) -> list[list[int]]:
    A = [list(c) for c in A]
    while A and not A[-1]:
        A.pop()
    B = [list(c) for c in B]
    while B and not B[-1]:
        B.pop()
    da, db = len(A) - 1, len(B) - 1
    if da < db:
        return A
    lb = B[-1]
    e = da - db + 1
    r = A
    while r and len(r) - 1 >= db:
        lr = r[-1]
        sh = len(r) - 1 - db
        r = [_zx_mul(c, lb) for c in r]
        for i in range(db + 1):
            prod = _zx_mul(lr, B[i])
            tgt = r[sh + i]
            n = max(len(tgt), len(prod))
            tgt += [0] * (n - len(tgt))
            for k, v in enumerate(prod):
                tgt[k] -= v
            r[sh + i] = _zx_trim(tgt)
        r = r[: len(r) - 1]
        while r and not r[-1]:
            r.pop()
        e -= 1
    for _ in range(max(e, 0)):
        r = [_zx_mul(c, lb) for c in r]
    return r


def _zz_content(A: list[list[int]]) -> list[int]:
    g: list[int] = []
    for c in A:
        if c:
            g = _zx_gcd(g, c) if g else _zx_primitive(c)
            if len(g) == 1 and abs(g[0]) == 1:
                return [1]
    return g or [1]


def poly_gcd(a: BiPoly, b: BiPoly) -> BiPoly:
    """Normalized gcd in Q[x, y] via content split + subresultant PRS."""
    if a.is_zero() and b.is_zero():
        raise PolynomialError("gcd undefined for two zero polynomials")
    if a.is_zero():
        return b.normalize()
    if b.is_zero():
        return a.normalize()
    if a.is_constant() or b.is_constant():
        return _ONE
    ax, ay = a.depends_on("x"), a.depends_on("y")
    bx, by = b.depends_on("x"), b.depends_on("y")
    if not ay and not by:
        return _univar_gcd(a, b, "x")
    if not ax and not bx:
        return _univar_gcd(a, b, "y")
    if not ay:  # a in Q[x], b genuinely bivariate: gcd divides content_y(b)
        cont_b, _ = b.content_and_primitive("y")
        return poly_gcd(a, cont_b) if not cont_b.is_constant() else _ONE
    if not by:
        cont_a, _ = a.content_and_primitive("y")
        return poly_gcd(cont_a, b) if not cont_a.is_constant() else _ONE
    # main variable y, coefficients in Q[x]
    cont_a, acoeffs = a.content_and_primitive("y")
    cont_b, bcoeffs = b.content_and_primitive("y")
    pa = [exact_div(c, cont_a) for c in acoeffs] if not cont_a.is_constant() else acoeffs
    pb = [exact_div(c, cont_b) for c in bcoeffs] if not cont_b.is_constant() else bcoeffs
    cont_gcd = poly_gcd(cont_a, cont_b)
    prim = _subresultant_prs_gcd(pa, pb)
    g = BiPoly.from_coeffs(prim, "y")
    gc, gcoeffs = g.content_and_primitive("y")
    if not gc.is_constant():
        g = BiPoly.from_coeffs([exact_div(c, gc) for c in gcoeffs], "y")
    return (cont_gcd * g).normalize()


def _subresultant_prs_gcd(a: list[BiPoly], b: list[BiPoly]) -> list[BiPoly]:
    """Last nonzero element of the subresultant PRS of primitive inputs.

    Runs on integer coefficient lists for speed; coefficient growth is
    controlled with the classical g*h^delta divisors.  Only the final
    element is used (as a gcd candidate, up to content).
    """
    A = _bivar_to_zz(a)
    B = _bivar_to_zz(b)
    if len(A) - 1 < len(B) - 1:
        A, B = B, A
    g: list[int] = [1]
    h: list[int] = [1]
    while True:
        da, db = len(A) - 1, len(B) - 1
        delta = da - db
        R = _zz_prem(A, B)
        if not R:
            out = _zz_to_bipoly(B)
            return out.coeffs_in("y")
        divisor = _zx_mul(g, _zx_pow(h, delta))
        R = [_zx_divexact(c, divisor) if c else [] for c in R]
        A, B = B, R
        g = A[-1]
        if delta == 1:
            h = g
        elif delta > 1:
            h = _zx_divexact(_zx_pow(g, delta), _zx_pow(h, delta - 1))


def multi_gcd(polys: list[BiPoly]) -> BiPoly:
    nonzero = [p for p in polys if not p.is_zero()]
    if not nonzero:
        raise PolynomialError("gcd undefined: all inputs are zero")
    acc = nonzero[0].normalize()
    for p in nonzero[1:]:
        if acc.is_constant():
            break
        acc = poly_gcd(acc, p)
    return acc if not acc.is_constant() else _ONE


# -- resultants and subresultants ------------------------------------------------------


def sylvester_matrix(a: BiPoly, b: BiPoly, var: str) -> list[list[BiPoly]]:
    ac = a.coeffs_in(var)
    bc = b.coeffs_in(var)
    m, n = len(ac) - 1, len(bc) - 1
    size = m + n
    rows: list[list[BiPoly]] = []
    for sh in range(n):  # rows of a
        row = [_ZERO] * size
        for i, c in enumerate(reversed(ac)):  # descending degrees
            row[sh + i] = c
        rows.append(row)
    for sh in range(m):  # rows of b
        row = [_ZERO] * size
        for i, c in enumerate(reversed(bc)):
            row[sh + i] = c
        rows.append(row)
    return rows


def bareiss_det(mat: list[list[BiPoly]]) -> BiPoly:
    """Fraction-free determinant (Bareiss) over the polynomial ring."""
    n = len(mat)
    if n == 0:
        return _ONE
    M = [row[:] for row in mat]
    sign = 1
    prev = _ONE
    for k in range(n - 1):
        if M[k][k].is_zero():
            pivot = next((i for i in range(k + 1, n) if not M[i][k].is_zero()), None)
            if pivot is None:
                return _ZERO
            M[k], M[pivot] = M[pivot], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = exact_div(M[k][k] * M[i][j] - M[i][k] * M[k][j], prev)
            M[i][k] = _ZERO
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return det if sign > 0 else -det


def _det_fractions(M: list[list[Fraction]]) -> Fraction:
    """Exact determinant of a rational matrix (row-scaled integer Bareiss)."""
    n = len(M)
    if n == 0:
        return Fraction(1)
    rows: list[list[int]] = []
    scale = Fraction(1)
    for row in M:
        L = 1
        for c in row:
            L = L * c.denominator // int_gcd(L, c.denominator)
        rows.append([int(c * L) for c in row])
        scale *= L
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if rows[i][k] != 0), None)
            if piv is None:
                return Fraction(0)
            rows[k], rows[piv] = rows[piv], rows[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[k][k] * rows[i][j] - rows[i][k] * rows[k][j]) // prev
            rows[i][k] = 0
        prev = rows[k][k]
    return Fraction(sign * rows[n - 1][n - 1]) / scale


def _interp_det(mat: list[list[BiPoly]], var: str) -> BiPoly:
    """Determinant of a matrix of univariate polynomials by interpolation.

    Entries depend on `var` only.  The determinant degree is bounded by the
    sum over rows of each row's maximal entry degree; evaluating the matrix
    at that many abscissas and interpolating is exact.
    """
    n = len(mat)
    if n == 0:
        return _ONE
    bound = 0
    entry_coeffs: list[list[list[Fraction]]] = []
    for row in mat:
        rowmax = 0
        crow = []
        for e in row:
            d = max(e.degree_in(var), 0)
            rowmax = max(rowmax, d)
            crow.append([c.constant_value() for c in e.coeffs_in(var)] or [Fraction(0)])
        bound += rowmax
        entry_coeffs.append(crow)
    xs: list[Fraction] = []
    x0 = 0
    while len(xs) < bound + 1:
        xs.append(Fraction(x0))
        x0 = -x0 + (1 if x0 <= 0 else 0)
    vals = []
    for q in xs:
        M = []
        for crow in entry_coeffs:
            M.append([_horner(c, q) for c in crow])
        vals.append(_det_fractions(M))
    coeffs = _lagrange_fraction_list(list(zip(xs, vals)))
    if var == "x":
        return BiPoly({(i, 0): c for i, c in enumerate(coeffs)})
    return BiPoly({(0, i): c for i, c in enumerate(coeffs)})


def _horner(cs: list[Fraction], q: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(cs):
        acc = acc * q + c
    return acc


def _lagrange_fraction_list(samples: list[tuple[Fraction, Fraction]]) -> list[Fraction]:
    """Newton-form interpolation through exact rational samples."""
    xs = [s[0] for s in samples]
    divided = [s[1] for s in samples]
    n = len(samples)
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            divided[i] = (divided[i] - divided[i - 1]) / (xs[i] - xs[i - level])
    coeffs = [Fraction(0)] * n
    coeffs[0] = divided[n - 1]
    deg = 0
    for i in range(n - 2, -1, -1):
        # multiply by (t - xs[i]) and add divided[i]
        for j in range(deg, -1, -1):
            coeffs[j + 1] += coeffs[j]
            coeffs[j] = coeffs[j] * (-xs[i])
        deg += 1
        coeffs[0] += divided[i]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def resultant(a: BiPoly, b: BiPoly, var: str) -> BiPoly:
    """Sylvester resultant eliminating `var` (a-rows first; see module doc)."""
    if a.is_zero() or b.is_zero():
        return _ZERO
    m = a.degree_in(var)
    n = b.degree_in(var)
    if m <= 0 and n <= 0:
        return _ONE
    if m <= 0:
        return a ** n
    if n <= 0:
        return b ** m
    return _interp_det(sylvester_matrix(a, b, var), "x" if var == "y" else "y")


def subresultant(a: BiPoly, b: BiPoly, var: str, k: int) -> list[BiPoly]:
    """Coefficients (ascending in `var`) of the k-th subresultant polynomial.

    Determinant definition: rows are var^(n-k-1)*a .. a, var^(m-k-1)*b .. b
    in the monomial basis of degree m+n-k-1 down to 0; the coefficient of
    var^j is the minor using the leading m+n-2k-1 columns plus the column
    of degree var^j.  S_0 equals the resultant.
    """
    ac = a.coeffs_in(var)
    bc = b.coeffs_in(var)
    m, n = len(ac) - 1, len(bc) - 1
    if k < 0 or k >= min(m, n):
        raise PolynomialError("subresultant index out of range")
    nrows = m + n - 2 * k
    ncols = m + n - k
    rect: list[list[BiPoly]] = []
    for sh in range(n - k - 1, -1, -1):  # var^sh * a, highest shift first
        row = [_ZERO] * ncols
        for i, c in enumerate(ac):  # degree of c is i + sh
            col = ncols - 1 - (i + sh)
            row[col] = c
        rect.append(row)
    for sh in range(m - k - 1, -1, -1):
        row = [_ZERO] * ncols
        for i, c in enumerate(bc):
            col = ncols - 1 - (i + sh)
            row[col] = c
        rect.append(row)
    lead_cols = list(range(nrows - 1))
    other = "x" if var == "y" else "y"
    out = []
    for j in range(k + 1):
        col_j = ncols - 1 - j
        cols = lead_cols + [col_j]
        minor = [[rect[r][c] for c in cols] for r in range(nrows)]
        out.append(_interp_det(minor, other))
    return out  # ascending: coeff of var^0 .. var^k


def squarefree_radical(p: BiPoly) -> BiPoly:
    """p / gcd(p, p_x, p_y): same real zero set, squarefree."""
    if p.is_zero():
        raise PolynomialError("radical of the zero polynomial")
    if p.is_constant():
        return _ONE
    parts = [p]
    px = p.derivative("x")
    py = p.derivative("y")
    if not px.is_zero():
        parts.append(px)
    if not py.is_zero():
        parts.append(py)
    g = multi_gcd(parts)
    return exact_div(p, g).normalize() if not g.is_constant() else p.normalize()
