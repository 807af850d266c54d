"""Meromorphic expression trees.

Nodes: complex constants, the variable w, exp, the elliptic pair wp / wp'
(each applied to an arbitrary argument subtree), the four arithmetic
operations and integer powers.  The trees support vectorized numeric
evaluation, symbolic differentiation (wp -> wp', wp' -> 6 wp^2 - g2/2,
exp -> exp, chain rule throughout) and the denominator bookkeeping the
pole-aware scanners rely on.
"""

from __future__ import annotations

import numpy as np

from .scalars import RationalComplex


def _const_value(v) -> complex:
    if isinstance(v, RationalComplex):
        return v.to_complex()
    return complex(v)


class Expr:
    """Base node; build trees with ordinary operators."""

    def __add__(self, other):
        return Add(self, as_expr(other))

    def __radd__(self, other):
        return Add(as_expr(other), self)

    def __sub__(self, other):
        return Sub(self, as_expr(other))

    def __rsub__(self, other):
        return Sub(as_expr(other), self)

    def __mul__(self, other):
        return Mul(self, as_expr(other))

    def __rmul__(self, other):
        return Mul(as_expr(other), self)

    def __truediv__(self, other):
        return Div(self, as_expr(other))

    def __rtruediv__(self, other):
        return Div(as_expr(other), self)

    def __neg__(self):
        return Mul(Const(-1), self)

    def __pow__(self, k: int):
        return make_pow(self, k)


def as_expr(x) -> Expr:
    if isinstance(x, Expr):
        return x
    return Const(x)


class Const(Expr):
    __slots__ = ("value",)

    def __init__(self, value):
        self.value = _const_value(value)

    def __repr__(self):
        return f"Const({self.value})"


class Var(Expr):
    __slots__ = ()

    def __repr__(self):
        return "w"


#: the shared variable node
W = Var()


class Exp(Expr):
    __slots__ = ("arg",)

    def __init__(self, arg):
        self.arg = as_expr(arg)

    def __repr__(self):
        return f"exp({self.arg!r})"


class Wp(Expr):
    __slots__ = ("engine", "arg")

    def __init__(self, engine, arg):
        self.engine = engine
        self.arg = as_expr(arg)

    def __repr__(self):
        return f"wp({self.arg!r})"


class WpPrime(Expr):
    __slots__ = ("engine", "arg")

    def __init__(self, engine, arg):
        self.engine = engine
        self.arg = as_expr(arg)

    def __repr__(self):
        return f"wp'({self.arg!r})"


class Add(Expr):
    __slots__ = ("lhs", "rhs")

    def __init__(self, lhs, rhs):
        self.lhs, self.rhs = lhs, rhs

    def __repr__(self):
        return f"({self.lhs!r} + {self.rhs!r})"


class Sub(Expr):
    __slots__ = ("lhs", "rhs")

    def __init__(self, lhs, rhs):
        self.lhs, self.rhs = lhs, rhs

    def __repr__(self):
        return f"({self.lhs!r} - {self.rhs!r})"


class Mul(Expr):
    __slots__ = ("lhs", "rhs")

    def __init__(self, lhs, rhs):
        self.lhs, self.rhs = lhs, rhs

    def __repr__(self):
        return f"({self.lhs!r} * {self.rhs!r})"


class Div(Expr):
    __slots__ = ("lhs", "rhs")

    def __init__(self, lhs, rhs):
        self.lhs, self.rhs = lhs, rhs

    def __repr__(self):
        return f"({self.lhs!r} / {self.rhs!r})"


class Pow(Expr):
    """base ** k with k a positive integer >= 2 (other k are normalized away)."""

    __slots__ = ("base", "k")

    def __init__(self, base, k: int):
        self.base = base
        self.k = k

    def __repr__(self):
        return f"({self.base!r} ** {self.k})"


ONE = Const(1)


def make_pow(base: Expr, k) -> Expr:
    if not isinstance(k, int):
        raise TypeError("expression exponent must be an int")
    if k == 0:
        return ONE
    if k == 1:
        return base
    if k < 0:
        return Div(ONE, make_pow(base, -k))
    return Pow(base, k)


# ---------------------------------------------------------------------------
# Evaluation.
# ---------------------------------------------------------------------------


def _eval(e: Expr, z, cache: dict):
    key = id(e)
    hit = cache.get(key)
    if hit is not None:
        return hit
    if isinstance(e, Const):
        out = e.value
    elif isinstance(e, Var):
        out = z
    elif isinstance(e, Exp):
        out = np.exp(_eval(e.arg, z, cache))
    elif isinstance(e, (Wp, WpPrime)):
        trip = _wp_triple(e.engine, e.arg, z, cache)
        out = trip[0] if isinstance(e, Wp) else trip[1]
    elif isinstance(e, Add):
        out = _eval(e.lhs, z, cache) + _eval(e.rhs, z, cache)
    elif isinstance(e, Sub):
        out = _eval(e.lhs, z, cache) - _eval(e.rhs, z, cache)
    elif isinstance(e, Mul):
        out = _eval(e.lhs, z, cache) * _eval(e.rhs, z, cache)
    elif isinstance(e, Div):
        den = _eval(e.rhs, z, cache)
        out = _eval(e.lhs, z, cache) / den
    elif isinstance(e, Pow):
        out = _eval(e.base, z, cache) ** e.k
    else:
        raise TypeError(f"unknown node {e!r}")
    cache[key] = out
    return out


def _wp_triple(engine, arg: Expr, z, cache: dict):
    """wp and wp' of the same argument share one engine call."""
    key = ("wp", id(engine), id(arg))
    hit = cache.get(key)
    if hit is not None:
        return hit
    a = _eval(arg, z, cache)
    p, pp, ppp, pole = engine.eval(np.asarray(a, dtype=complex))
    trip = (p, pp, ppp)
    cache[key] = trip
    return trip


def evaluate(e: Expr, z):
    """Evaluate at a complex scalar or ndarray; division by zero and pole
    proximity surface as non-finite entries (callers treat them as excluded
    sample points)."""
    z = np.asarray(z, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        out = _eval(e, z, {})
    if np.isscalar(out) or np.asarray(out).shape == ():
        return np.full(z.shape, out, dtype=complex) if z.shape else complex(out)
    return out


def evaluate_many(exprs: list, z) -> list:
    """Evaluate several trees on the same points with one shared cache, so
    common subtrees (and wp ladder calls) are computed once.  Results are
    broadcast to z's shape."""
    z = np.asarray(z, dtype=complex)
    cache: dict = {}
    outs = []
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        for e in exprs:
            out = _eval(e, z, cache)
            arr = np.asarray(out, dtype=complex)
            if arr.shape != z.shape:
                arr = np.broadcast_to(arr, z.shape).copy()
            outs.append(arr)
    return outs


# ---------------------------------------------------------------------------
# Differentiation.
# ---------------------------------------------------------------------------


def differentiate(e: Expr) -> Expr:
    if isinstance(e, Const):
        return Const(0)
    if isinstance(e, Var):
        return ONE
    if isinstance(e, Exp):
        return Mul(e, differentiate(e.arg))
    if isinstance(e, Wp):
        return Mul(WpPrime(e.engine, e.arg), differentiate(e.arg))
    if isinstance(e, WpPrime):
        # second derivative of wp: 6 wp^2 - g2/2
        g2 = e.engine.invariants.g2c
        second = Sub(Mul(Const(6), Pow(Wp(e.engine, e.arg), 2)), Const(g2 / 2.0))
        return Mul(second, differentiate(e.arg))
    if isinstance(e, Add):
        return Add(differentiate(e.lhs), differentiate(e.rhs))
    if isinstance(e, Sub):
        return Sub(differentiate(e.lhs), differentiate(e.rhs))
    if isinstance(e, Mul):
        return Add(
            Mul(differentiate(e.lhs), e.rhs), Mul(e.lhs, differentiate(e.rhs))
        )
    if isinstance(e, Div):
        num = Sub(
            Mul(differentiate(e.lhs), e.rhs), Mul(e.lhs, differentiate(e.rhs))
        )
        return Div(num, Pow(e.rhs, 2))
    if isinstance(e, Pow):
        inner = Mul(Const(e.k), make_pow(e.base, e.k - 1))
        return Mul(inner, differentiate(e.base))
    raise TypeError(f"unknown node {e!r}")


# ---------------------------------------------------------------------------
# Pole bookkeeping.
# ---------------------------------------------------------------------------


def denominators(e: Expr) -> list[Expr]:
    """Every denominator subtree, in deterministic (preorder) order."""
    out: list[Expr] = []

    def walk(node: Expr):
        if isinstance(node, (Const, Var)):
            return
        if isinstance(node, (Exp, Wp, WpPrime)):
            walk(node.arg)
            return
        if isinstance(node, Div):
            out.append(node.rhs)
            walk(node.lhs)
            walk(node.rhs)
            return
        if isinstance(node, Pow):
            walk(node.base)
            return
        walk(node.lhs)
        walk(node.rhs)

    walk(e)
    return out


def wp_nodes(e: Expr) -> list[Expr]:
    """Every wp / wp' node (for pole-magnitude exclusion in scans)."""
    out: list[Expr] = []

    def walk(node: Expr):
        if isinstance(node, (Wp, WpPrime)):
            out.append(node)
            walk(node.arg)
            return
        if isinstance(node, Exp):
            walk(node.arg)
            return
        if isinstance(node, Pow):
            walk(node.base)
            return
        if isinstance(node, (Add, Sub, Mul, Div)):
            walk(node.lhs)
            walk(node.rhs)

    walk(e)
    return out


def as_fraction(e: Expr) -> tuple[Expr, Expr]:
    """Rewrite as (numerator, denominator) with division nodes cleared.

    exp / wp / wp' nodes are treated as atoms: the result is exact as an
    identity of meromorphic functions away from the atoms' own poles.
    """
    if isinstance(e, (Const, Var, Exp, Wp, WpPrime)):
        return e, ONE
    if isinstance(e, Add) or isinstance(e, Sub):
        an, ad = as_fraction(e.lhs)
        bn, bd = as_fraction(e.rhs)
        left = _mul(an, bd)
        right = _mul(bn, ad)
        num = Add(left, right) if isinstance(e, Add) else Sub(left, right)
        return num, _mul(ad, bd)
    if isinstance(e, Mul):
        an, ad = as_fraction(e.lhs)
        bn, bd = as_fraction(e.rhs)
        return _mul(an, bn), _mul(ad, bd)
    if isinstance(e, Div):
        an, ad = as_fraction(e.lhs)
        bn, bd = as_fraction(e.rhs)
        return _mul(an, bd), _mul(ad, bn)
    if isinstance(e, Pow):
        bn, bd = as_fraction(e.base)
        num = bn if bn is ONE else Pow(bn, e.k)
        den = bd if bd is ONE else Pow(bd, e.k)
        return num, den
    raise TypeError(f"unknown node {e!r}")


def _mul(a: Expr, b: Expr) -> Expr:
    if a is ONE:
        return b
    if b is ONE:
        return a
    return Mul(a, b)
