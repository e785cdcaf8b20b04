"""Univariate helpers over exact rationals: Sturm sequences, real root
isolation and refinement, and arithmetic modulo a squarefree polynomial.

Polynomials here are plain lists of Fractions in ascending degree order;
`from_bipoly`/`to_bipoly` bridge to the sparse bivariate type (x-only).
Root isolation returns either exact rational roots or open brackets with
rational endpoints, one per distinct real root.
"""

from __future__ import annotations

from fractions import Fraction

from .bipoly import BiPoly, PolynomialError

UPoly = list[Fraction]


def from_bipoly(p: BiPoly, var: str = "x") -> UPoly:
    if p.depends_on("y" if var == "x" else "x"):
        raise PolynomialError(f"polynomial is not univariate in {var}")
    return [c.constant_value() for c in p.coeffs_in(var)] or [Fraction(0)]


def to_bipoly(c: UPoly, var: str = "x") -> BiPoly:
    if var == "x":
        return BiPoly({(i, 0): q for i, q in enumerate(c)})
    return BiPoly({(0, i): q for i, q in enumerate(c)})


def trim(p: UPoly) -> UPoly:
    while p and p[-1] == 0:
        p.pop()
    return p


def deg(p: UPoly) -> int:
    return len(p) - 1


def is_zero(p: UPoly) -> bool:
    return not p or all(c == 0 for c in p)


def ueval(p: UPoly, t: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * t + c
    return acc


def uderiv(p: UPoly) -> UPoly:
    return [c * i for i, c in enumerate(p)][1:] or [Fraction(0)]


def uscale(p: UPoly, s: Fraction) -> UPoly:
    return [c * s for c in p]


def usub(p: UPoly, q: UPoly) -> UPoly:
    n = max(len(p), len(q))
    out = [(p[i] if i < len(p) else Fraction(0)) - (q[i] if i < len(q) else Fraction(0)) for i in range(n)]
    return trim(out)


def umul(p: UPoly, q: UPoly) -> UPoly:
    if is_zero(p) or is_zero(q):
        return [Fraction(0)]
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def udivmod(a: UPoly, b: UPoly) -> tuple[UPoly, UPoly]:
    a = trim(list(a))
    b = trim(list(b))
    if is_zero(b):
        raise PolynomialError("univariate division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    r = list(a)
    db = deg(b)
    lb = b[-1]
    while not is_zero(r) and deg(r) >= db:
        shift = deg(r) - db
        c = r[-1] / lb
        q[shift] += c
        for i in range(db + 1):
            r[shift + i] -= c * b[i]
        trim(r)
    return trim(q), (r if r else [Fraction(0)])


def umod(a: UPoly, m: UPoly) -> UPoly:
    return udivmod(a, m)[1]


def primitive_positive(p: UPoly) -> UPoly:
    """Scale by a positive rational to coprime integer coefficients."""
    p = trim(list(p))
    if is_zero(p):
        return [Fraction(0)]
    from math import gcd as _g
    den = 1
    for c in p:
        den = den * c.denominator // _g(den, c.denominator)
    num = 0
    for c in p:
        num = _g(num, abs(c.numerator * (den // c.denominator)))
    s = Fraction(den, num)
    return [c * s for c in p]


def to_int(p: UPoly) -> list[int]:
    """Clear denominators: a positive rational multiple with integer coefficients."""
    from math import gcd as _g
    p = trim(list(p))
    if is_zero(p):
        return []
    den = 1
    for c in p:
        den = den * c.denominator // _g(den, c.denominator)
    return [int(c * den) for c in p]


def from_int(p: list[int]) -> UPoly:
    return [Fraction(c) for c in p] or [Fraction(0)]


def zgcd(a: list[int], b: list[int]) -> list[int]:
    from .bipoly import _zx_gcd

    return _zx_gcd(a, b)


def ugcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd over Q (integer primitive-PRS internally)."""
    g = zgcd(to_int(a), to_int(b))
    if not g:
        raise PolynomialError("gcd of zero polynomials")
    return uscale(from_int(g), Fraction(1, g[-1]))


def uext_gcd(a: UPoly, b: UPoly) -> tuple[UPoly, UPoly, UPoly]:
    """Extended gcd: (g, u, v) with u*a + v*b = g, g monic."""
    r0, r1 = trim(list(a)), trim(list(b))
    s0, s1 = [Fraction(1)], [Fraction(0)]
    t0, t1 = [Fraction(0)], [Fraction(1)]
    while not is_zero(r1):
        q, r = udivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, usub(s0, umul(q, s1))
        t0, t1 = t1, usub(t0, umul(q, t1))
    if is_zero(r0):
        raise PolynomialError("extended gcd of zero polynomials")
    lc = r0[-1]
    return uscale(r0, 1 / lc), uscale(s0, 1 / lc), uscale(t0, 1 / lc)


def uinvert_mod(a: UPoly, m: UPoly) -> UPoly:
    g, u, _ = uext_gcd(a, m)
    if deg(g) != 0:
        raise PolynomialError("not invertible modulo the given polynomial")
    return umod(u, m)


def squarefree_part(p: UPoly) -> UPoly:
    p = trim(list(p))
    if deg(p) <= 0:
        return p
    from .bipoly import _zx_divexact

    pz = to_int(p)
    if pz[-1] < 0:
        pz = [-c for c in pz]
    dz = [c * i for i, c in enumerate(pz)][1:]
    g = zgcd(pz, dz)
    if len(g) == 1:
        return primitive_positive(from_int(pz))
    return primitive_positive(from_int(_zx_divexact(pz, g)))


def compose_y_mod(G: BiPoly, w: UPoly, m: UPoly) -> UPoly:
    """Reduce G(t, w(t)) modulo m(t); G lives in Q[t, y] with t stored as x."""
    ycoeffs = G.coeffs_in("y")
    acc: UPoly = [Fraction(0)]
    for c in reversed(ycoeffs):
        acc = umod(umul(acc, w), m)
        cu = from_bipoly(c, "x")
        acc = trim([
            (acc[i] if i < len(acc) else Fraction(0)) + (cu[i] if i < len(cu) else Fraction(0))
            for i in range(max(len(acc), len(cu)))
        ]) or [Fraction(0)]
        acc = umod(acc, m)
    return acc


# -- Sturm sequences and isolation ------------------------------------------------


def sturm_chain(p: UPoly) -> list[UPoly]:
    """Sturm sequence via integer pseudo-remainders with sign-safe scaling."""
    from .bipoly import _zx_prem, _zx_content

    def posprim(a: list[int]) -> list[int]:
        g = _zx_content(a)
        return [c // g for c in a] if g > 1 else list(a)

    p0 = to_int(p)
    p1 = [c * i for i, c in enumerate(p0)][1:]
    chain_z = [posprim(p0)]
    if p1:
        chain_z.append(posprim(p1))
    while len(chain_z) >= 2 and len(chain_z[-1]) - 1 > 0:
        a, b = chain_z[-2], chain_z[-1]
        r = _zx_prem(a, b)
        if not r:
            break
        # prem scales by lc(b)^e; flip back if that scaling was negative
        e = max(len(a) - len(b) + 1, 0)
        if b[-1] < 0 and e % 2 == 1:
            r = [-c for c in r]
        chain_z.append(posprim([-c for c in r]))
    return [from_int(c) for c in chain_z if c]


def _variations(vals: list[Fraction]) -> int:
    signs = [v for v in vals if v != 0]
    out = 0
    for a, b in zip(signs, signs[1:]):
        if (a > 0) != (b > 0):
            out += 1
    return out


def sturm_count(chain: list[UPoly], a: Fraction, b: Fraction) -> int:
    """Number of distinct real roots in the half-open interval (a, b]."""
    va = _variations([ueval(c, a) for c in chain])
    vb = _variations([ueval(c, b) for c in chain])
    return va - vb


def root_bound(p: UPoly) -> Fraction:
    """Cauchy bound: all real roots lie in [-B, B]."""
    p = trim(list(p))
    lead = abs(p[-1])
    m = max((abs(c) for c in p[:-1]), default=Fraction(0))
    return Fraction(1) + m / lead


class RealRoot:
    """One distinct real root: exact rational, or an open isolating bracket."""

    __slots__ = ("exact", "lo", "hi")

    def __init__(self, exact: Fraction | None, lo: Fraction, hi: Fraction):
        self.exact = exact
        self.lo = lo
        self.hi = hi

    def approx(self) -> float:
        if self.exact is not None:
            return float(self.exact)
        return (float(self.lo) + float(self.hi)) / 2

    def width(self) -> Fraction:
        if self.exact is not None:
            return Fraction(0)
        return self.hi - self.lo

    def __repr__(self):
        if self.exact is not None:
            return f"RealRoot({self.exact})"
        return f"RealRoot(({self.lo}, {self.hi}))"


def isolate_real_roots(p: UPoly) -> list[RealRoot]:
    """Isolating data for every distinct real root, sorted increasing."""
    p = trim(list(p))
    if is_zero(p):
        raise PolynomialError("cannot isolate roots of the zero polynomial")
    if deg(p) == 0:
        return []
    p = squarefree_part(p)
    if deg(p) == 0:
        return []
    chain = sturm_chain(p)
    B = root_bound(p)
    roots: list[RealRoot] = []

    def nonroot_right_of(t: Fraction, limit: Fraction) -> Fraction:
        """A point u in (t, limit] with p(u) != 0 and no root in (t, u]."""
        stepd = limit - t
        while True:
            u = t + stepd
            if ueval(p, u) != 0 and sturm_count(chain, t, u) == 0:
                return u
            stepd /= 2

    def nonroot_left_of(t: Fraction, limit: Fraction) -> Fraction:
        """A point u in [limit, t) with p(u) != 0 and no root in (u, t)."""
        stepd = t - limit
        while True:
            u = t - stepd
            # roots in (u, t] should be exactly the root at t
            if ueval(p, u) != 0 and sturm_count(chain, u, t) == 1:
                return u
            stepd /= 2

    lo = -B - 1
    if ueval(p, lo) == 0:
        lo = lo - 1  # Cauchy bound makes this impossible, but stay safe
    stack = [(lo, B + 1)]
    while stack:
        a, b = stack.pop()
        n = sturm_count(chain, a, b)
        if n == 0:
            continue
        if n == 1:
            vb = ueval(p, b)
            if vb == 0:
                roots.append(RealRoot(b, b, b))
            else:
                roots.append(RealRoot(None, a, b))
            continue
        m = (a + b) / 2
        if ueval(p, m) == 0:
            roots.append(RealRoot(m, m, m))
            left_edge = nonroot_left_of(m, a)
            right_edge = nonroot_right_of(m, b)
            stack.append((a, left_edge))
            stack.append((right_edge, b))
        else:
            stack.append((a, m))
            stack.append((m, b))
    roots.sort(key=lambda r: (r.exact if r.exact is not None else (r.lo + r.hi) / 2))
    return roots


def refine_root(p: UPoly, root: RealRoot, width: Fraction) -> RealRoot:
    """Shrink a bracket below `width` by sign bisection (squarefree p)."""
    if root.exact is not None or root.hi - root.lo <= width:
        return root
    lo, hi = root.lo, root.hi
    flo = ueval(p, lo)
    fhi = ueval(p, hi)
    assert flo != 0 and fhi != 0 and (flo > 0) != (fhi > 0), "bracket must straddle a simple root"
    while hi - lo > width:
        m = (lo + hi) / 2
        fm = ueval(p, m)
        if fm == 0:
            return RealRoot(m, m, m)
        if (fm > 0) == (flo > 0):
            lo, flo = m, fm
        else:
            hi, fhi = m, fm
    return RealRoot(None, lo, hi)


def simplest_in_interval(lo: Fraction, hi: Fraction) -> Fraction:
    """A rational with smallest denominator in the closed interval [lo, hi]."""
    if lo > hi:
        lo, hi = hi, lo
    if lo <= 0 <= hi:
        return Fraction(0)
    if hi < 0:
        return -simplest_in_interval(-hi, -lo)
    ceil_lo = -((-lo.numerator) // lo.denominator)
    if ceil_lo <= hi:
        return Fraction(ceil_lo)
    fl = lo.numerator // lo.denominator  # floor(lo) == floor(hi) here
    return fl + 1 / simplest_in_interval(1 / (hi - fl), 1 / (lo - fl))


def pin_rational_root(p: UPoly, root: RealRoot, max_halvings: int = 240) -> RealRoot:
    """Detect whether an isolated root is rational.

    Repeatedly refines the bracket and tests the simplest rational inside
    it by exact evaluation.  Rational roots of moderate height are found
    quickly; past the refinement budget the root is treated as irrational
    (callers then stay on the numeric path, never the exact one).
    """
    if root.exact is not None:
        return root
    r = root
    budget = max_halvings
    while budget > 0:
        cand = simplest_in_interval(r.lo, r.hi)
        if ueval(p, cand) == 0:
            return RealRoot(cand, cand, cand)
        r = refine_root(p, r, (r.hi - r.lo) / 2 ** 24)
        if r.exact is not None:
            return r
        budget -= 24
    return r
