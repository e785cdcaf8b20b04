"""Exact real points of zero-dimensional polynomial systems on the plane.

A point is stored in rational-univariate form: a shear x' = x + s*y chosen
so distinct solutions get distinct x' coordinates, a squarefree minimal
polynomial u(x') isolating the x' value, and a polynomial w with y = w(x')
on the solution set.  Rational points are pinned exactly and carry a
degenerate box; irrational ones carry a shrinking bracket refinable on
demand.

`common_real_zeros` reduces a system g_1, ..., g_r with trivial gcd to two
random combinations, eliminates y by resultant, splits the squarefree part
into blocks by gcd degree (principal subresultant coefficients), reads y
off each block, and then keeps exactly the x' roots at which *every* g_i
vanishes, certified by exact gcd arithmetic modulo the block polynomial.
A second run under an independent shear guards against the finitely many
degenerate shears that can merge or drop solutions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import univar as uv
from .bipoly import BiPoly, PolynomialError, multi_gcd, resultant, subresultant

DEFAULT_BOX_WIDTH = Fraction(1, 2 ** 64)


class ZeroSetError(ValueError):
    pass


@dataclass(frozen=True)
class IntervalBox:
    x_lo: Fraction
    x_hi: Fraction
    y_lo: Fraction
    y_hi: Fraction

    def __post_init__(self):
        if self.x_lo > self.x_hi or self.y_lo > self.y_hi:
            raise ValueError("interval box with inverted bounds")

    def width(self) -> Fraction:
        return max(self.x_hi - self.x_lo, self.y_hi - self.y_lo)

    def mid(self) -> tuple[Fraction, Fraction]:
        return ((self.x_lo + self.x_hi) / 2, (self.y_lo + self.y_hi) / 2)

    def overlaps(self, o: "IntervalBox") -> bool:
        return not (
            self.x_hi < o.x_lo or o.x_hi < self.x_lo or self.y_hi < o.y_lo or o.y_hi < self.y_lo
        )


def _frac_iv_eval(p: uv.UPoly, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Exact interval Horner evaluation of a univariate polynomial."""
    alo = ahi = Fraction(0)
    for c in reversed(p):
        c1 = alo * lo
        c2 = alo * hi
        c3 = ahi * lo
        c4 = ahi * hi
        alo = min(c1, c2, c3, c4) + c
        ahi = max(c1, c2, c3, c4) + c
    return alo, ahi


class AlgebraicPoint:
    """An exact real common zero, parametrized along the shear line."""

    __slots__ = ("shear", "minpoly_u", "y_expr_w", "_root", "_wlist", "box", "approx")

    def __init__(self, shear: Fraction, minpoly_u: BiPoly, y_expr_w: BiPoly, root: uv.RealRoot):
        self.shear = Fraction(shear)
        self.minpoly_u = minpoly_u
        self.y_expr_w = y_expr_w
        self._root = root
        self._wlist = uv.from_bipoly(y_expr_w, "x")
        self.box = self._derive_box()
        self.approx = (0.0, 0.0)
        self.refine(Fraction(1, 2 ** 48))

    def _derive_box(self) -> IntervalBox:
        r = self._root
        if r.exact is not None:
            yv = uv.ueval(self._wlist, r.exact)
            xv = r.exact - self.shear * yv
            return IntervalBox(xv, xv, yv, yv)
        y_lo, y_hi = _frac_iv_eval(self._wlist, r.lo, r.hi)
        # x = x' - s*y over the bracket
        cands = [r.lo - self.shear * y_lo, r.lo - self.shear * y_hi,
                 r.hi - self.shear * y_lo, r.hi - self.shear * y_hi]
        return IntervalBox(min(cands), max(cands), y_lo, y_hi)

    def is_rational(self) -> bool:
        return self._root.exact is not None

    def exact_coords(self) -> tuple[Fraction, Fraction]:
        if not self.is_rational():
            raise ZeroSetError("point has irrational coordinates")
        b = self.box
        return b.x_lo, b.y_lo

    def refine(self, width: Fraction) -> None:
        """Shrink the box below `width` (no-op for rational points)."""
        mp = uv.from_bipoly(self.minpoly_u, "x")
        while self.box.width() > width:
            if self._root.exact is not None:
                break
            target = (self._root.hi - self._root.lo) / 16
            self._root = uv.refine_root(mp, self._root, target)
            self.box = self._derive_box()
        m = self.box.mid()
        self.approx = (float(m[0]), float(m[1]))

    def same_point(self, other: "AlgebraicPoint", width: Fraction = Fraction(1, 2 ** 60)) -> bool:
        if self.is_rational() and other.is_rational():
            return self.exact_coords() == other.exact_coords()
        self.refine(width)
        other.refine(width)
        return self.box.overlaps(other.box)

    def sort_key(self) -> tuple[float, float]:
        return self.approx

    def cluster_key(self):
        """Points sharing this key live on one chart (shared minimal data)."""
        return (self.shear, self.minpoly_u)

    def __repr__(self):
        return f"AlgebraicPoint(~({self.approx[0]:.6g}, {self.approx[1]:.6g}))"


def rational_point(xv, yv) -> AlgebraicPoint:
    """Convenience constructor for an exactly known rational point."""
    xv, yv = Fraction(xv), Fraction(yv)
    minpoly = (BiPoly.x() - BiPoly.const(xv)).normalize()
    w = BiPoly.const(yv)
    return AlgebraicPoint(Fraction(0), minpoly, w, uv.RealRoot(xv, xv, xv))


@dataclass
class UnivariateRoot:
    """Isolated real root of a univariate polynomial, refinable on demand."""

    poly: BiPoly
    root: uv.RealRoot

    @property
    def interval(self) -> tuple[Fraction, Fraction]:
        return (self.root.lo, self.root.hi)

    @property
    def approx(self) -> float:
        return self.root.approx()

    def refine(self, width: Fraction) -> None:
        self.root = uv.refine_root(uv.from_bipoly(self.poly, _only_var(self.poly)), self.root, width)


def _only_var(p: BiPoly) -> str:
    return "y" if p.depends_on("y") and not p.depends_on("x") else "x"


def univ_real_roots(p: BiPoly) -> list[UnivariateRoot]:
    """All distinct real roots of a univariate polynomial, isolated and sorted."""
    if p.is_zero():
        raise PolynomialError("zero polynomial has ill-defined root set")
    var = _only_var(p)
    if p.depends_on("x") and p.depends_on("y"):
        raise PolynomialError("polynomial is not univariate")
    up = uv.from_bipoly(p, var)
    sf = uv.squarefree_part(up)
    roots = [uv.pin_rational_root(sf, r) for r in uv.isolate_real_roots(sf)]
    roots = [uv.refine_root(sf, r, Fraction(1, 2 ** 40)) for r in roots]
    return [UnivariateRoot(p, r) for r in roots]


# -- the zero-dimensional solver ----------------------------------------------------


def _shear_candidates(rng: random.Random):
    fixed = [Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-1, 2)]
    for s in fixed:
        yield s
    while True:
        yield Fraction(rng.randint(1, 12), rng.randint(1, 4)) * rng.choice([1, -1])


def _combine(polys: list[BiPoly], coeffs: list[int]) -> BiPoly:
    acc = BiPoly.zero()
    for c, p in zip(coeffs, polys):
        if c:
            acc = acc + p * c
    return acc


def _pick_combinations(polys: list[BiPoly], rng: random.Random) -> tuple[BiPoly, BiPoly]:
    from .bipoly import poly_gcd

    r = len(polys)
    tries = []
    if r == 2:
        tries.append(([1, 0], [0, 1]))
    for _ in range(8):
        lam = [rng.randint(1, 9) for _ in range(r)]
        mu = [rng.randint(1, 9) for _ in range(r)]
        tries.append((lam, mu))
    for lam, mu in tries:
        h1 = _combine(polys, lam)
        h2 = _combine(polys, mu)
        if h1.is_zero() or h2.is_zero() or h1.is_constant() or h2.is_constant():
            continue
        if poly_gcd(h1, h2).is_constant():
            return h1, h2
    raise ZeroSetError("could not find coprime combinations of the system")


def _shear_poly(p: BiPoly, s: Fraction) -> BiPoly:
    """Express p in coordinates (x', y) with x' = x + s*y."""
    if s == 0:
        return p
    return p.substitute(BiPoly.x() - BiPoly.const(s) * BiPoly.y(), BiPoly.y())


def _ratio_to_int(num: uv.UPoly, den: uv.UPoly) -> tuple[list[int], list[int]]:
    """Clear denominators of num/den by one common factor, preserving the ratio."""
    from math import gcd as _g

    L = 1
    for c in list(num) + list(den):
        L = L * c.denominator // _g(L, c.denominator)
    return (uv.trim([int(c * L) for c in num]) if not uv.is_zero(num) else [],
            uv.trim([int(c * L) for c in den]))


def _compose_fracfree(G: BiPoly, wn: list[int], wd: list[int], block: list[int]) -> list[int]:
    """Integer polynomial vanishing exactly where G(t, wn/wd) does on the block.

    Fraction-free Horner in y with pseudo-reduction against the block
    polynomial; pseudo-remainders only rescale values at the block's roots,
    which is harmless for the vanishing filter.
    """
    from .bipoly import _zx_mul, _zx_prem, _zx_trim

    ycoeffs = G.coeffs_in("y")
    dy = len(ycoeffs) - 1
    czs = [uv.to_int(uv.from_bipoly(c, "x")) for c in ycoeffs]
    dpow = [[1]]
    for _ in range(dy):
        dpow.append(_zx_mul(dpow[-1], wd))
    acc: list[int] = []
    for j in range(dy, -1, -1):
        acc = _zx_mul(acc, wn) if acc else []
        term = _zx_mul(czs[j], dpow[dy - j])
        n = max(len(acc), len(term))
        acc = acc + [0] * (n - len(acc))
        for i, v in enumerate(term):
            acc[i] += v
        acc = _zx_trim(acc)
        if len(acc) - 1 >= len(block) - 1:
            acc = _zx_prem(acc, block)
    return acc


def _solve_under_shear(polys, h1, h2, s) -> list[AlgebraicPoint] | None:
    """One elimination pass; returns None if this shear is unusable."""
    from .bipoly import _zx_divexact, _zx_gcd, _zx_primitive

    H1 = _shear_poly(h1, s)
    H2 = _shear_poly(h2, s)
    d1, d2 = H1.degree_in("y"), H2.degree_in("y")
    if d1 < 1 or d2 < 1:
        return None
    lc1 = H1.coeffs_in("y")[-1]
    lc2 = H2.coeffs_in("y")[-1]
    if not (lc1.is_constant() and lc2.is_constant()):
        return None
    if d1 < d2:
        H1, H2 = H2, H1
        d1, d2 = d2, d1
    R = resultant(H1, H2, "y")
    if R.is_zero():
        raise ZeroSetError("vanishing resultant for a coprime system")
    rz = uv.to_int(uv.from_bipoly(R, "x"))
    rz = _zx_primitive(rz)
    drz = [c * i for i, c in enumerate(rz)][1:]
    shared0 = _zx_gcd(rz, drz)
    rsf = _zx_divexact(rz, shared0) if len(shared0) > 1 else rz
    if len(rsf) <= 1:
        return []
    # split by gcd degree using principal subresultant coefficients
    blocks: list[tuple[list[int], list[int], list[int]]] = []  # (block, w_num, w_den)
    remaining = rsf
    for k in range(1, d2):
        if len(remaining) <= 1:
            break
        sk = subresultant(H1, H2, "y", k)
        skk_f = uv.from_bipoly(sk[k], "x")
        if uv.is_zero(skk_f):
            continue
        skk = uv.to_int(skk_f)
        shared = _zx_gcd(remaining, skk)
        fk = _zx_divexact(remaining, shared) if len(shared) > 1 else remaining
        if len(fk) > 1:
            wn, wd = _ratio_to_int(
                uv.uscale(uv.from_bipoly(sk[k - 1], "x"), Fraction(-1)),
                uv.uscale(skk_f, Fraction(k)),
            )
            blocks.append((fk, wn, wd))
        remaining = shared
    if len(remaining) > 1:
        # gcd degree equals deg_y(H2): the common factor is H2(alpha, .) itself
        bcs = H2.coeffs_in("y")
        wn, wd = _ratio_to_int(
            uv.uscale(uv.from_bipoly(bcs[d2 - 1], "x"), Fraction(-1)),
            uv.uscale(uv.from_bipoly(bcs[d2], "x"), Fraction(d2)),
        )
        blocks.append((remaining, wn, wd))

    points: list[AlgebraicPoint] = []
    for fk, wn, wd in blocks:
        d = fk
        dead = False
        for g in polys:
            G = _shear_poly(g, s)
            q = _compose_fracfree(G, wn, wd, d)
            if not q:
                continue
            d = _zx_gcd(d, q)
            if len(d) <= 1:
                dead = True
                break
        if dead:
            continue
        d_frac = uv.from_int(d)
        try:
            inv = uv.uinvert_mod(uv.umod(uv.from_int(wd), d_frac), d_frac)
        except PolynomialError:
            return None
        w_red = uv.umod(uv.umul(uv.umod(uv.from_int(wn), d_frac), inv), d_frac)
        roots = [uv.pin_rational_root(d_frac, r) for r in uv.isolate_real_roots(d_frac)]
        rational = [r for r in roots if r.exact is not None]
        irrational = [r for r in roots if r.exact is None]
        for r in rational:
            alpha = r.exact
            yv = uv.ueval(w_red, alpha)
            # re-anchor rational points at shear 0: exact coordinates are known
            points.append(rational_point(alpha - s * yv, yv))
        if irrational:
            block = d_frac
            for r in rational:
                block, rem = uv.udivmod(block, [-r.exact, Fraction(1)])
                assert uv.is_zero(rem)
            block = uv.primitive_positive(block)
            mp = uv.to_bipoly(block, "x").normalize()
            wb = uv.umod(w_red, block)
            for r in irrational:
                points.append(AlgebraicPoint(s, mp, uv.to_bipoly(wb, "x"), uv.RealRoot(None, r.lo, r.hi)))
    points.sort(key=lambda p: p.sort_key())
    return points


def _points_match(a: list[AlgebraicPoint], b: list[AlgebraicPoint]) -> bool:
    if len(a) != len(b):
        return False
    tol = 1e-9
    for p, q in zip(a, b):
        if abs(p.approx[0] - q.approx[0]) > tol or abs(p.approx[1] - q.approx[1]) > tol:
            return False
    return True


def common_real_zeros(polys: list[BiPoly], seed: int = 0) -> list[AlgebraicPoint]:
    """The complete finite list of real common zeros, deterministically ordered.

    Requires the inputs' gcd to be constant (finite complex zero set).  Each
    returned point has been confirmed by exact substitution of its univariate
    parametrization into every input polynomial, and the whole set has been
    reproduced under a second independent shear.
    """
    nonzero = [p for p in polys if not p.is_zero()]
    if not nonzero:
        raise ZeroSetError("all polynomials are zero")
    if not multi_gcd(nonzero).is_constant():
        raise ZeroSetError("positive-dimensional zero set")
    if any(p.is_constant() for p in nonzero):
        return []
    rng = random.Random(seed ^ 0x5EEDED)
    h1, h2 = _pick_combinations(nonzero, rng)
    results: list[list[AlgebraicPoint]] = []
    tried = 0
    for s in _shear_candidates(rng):
        if tried >= 8:
            break
        tried += 1
        try:
            pts = _solve_under_shear(nonzero, h1, h2, s)
        except ZeroSetError:
            raise
        if pts is None:
            continue
        results.append(pts)
        if len(results) >= 2:
            if _points_match(results[-1], results[-2]):
                return results[-1]
    raise ZeroSetError(
        "shear exhaustion: no pair of independent shears produced a consistent zero set"
    )
