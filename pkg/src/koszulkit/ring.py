"""Monomials, monomial orders, sparse polynomials, and linear changes of coordinates.

Monomials are exponent tuples.  A Polynomial is an immutable sparse map
monomial -> raw field coefficient inside a fixed RingContext.  Degrees are
tuples throughout (length 1 for the standard grading, length 2 for bigraded
rings) so that graded bookkeeping is uniform; variables always have total
degree one.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .field import Field, FieldError, QQ

Mon = tuple  # exponent tuple, one entry per variable
Deg = tuple  # grading-value tuple


class RingError(ValueError):
    pass


def add_deg(a: Deg, b: Deg) -> Deg:
    return tuple(x + y for x, y in zip(a, b))


def sub_deg(a: Deg, b: Deg) -> Deg:
    return tuple(x - y for x, y in zip(a, b))


def total(d: Deg) -> int:
    return sum(d)


class RingContext:
    """A polynomial ring: named variables over a field, standard or bigraded."""

    def __init__(self, field: Field, names: list[str], weights: list[Deg] | None = None):
        if len(set(names)) != len(names):
            raise RingError(f"duplicate variable names in {names}")
        self.field = field
        self.names = list(names)
        self.n = len(names)
        if weights is None:
            weights = [(1,) for _ in names]
        weights = [tuple(w) for w in weights]
        if len(weights) != self.n:
            raise RingError("one weight per variable required")
        self.gdim = len(weights[0]) if weights else 1
        for w in weights:
            if len(w) != self.gdim or any(x < 0 for x in w) or sum(w) != 1:
                raise RingError(f"variable weight {w} must be non-negative with total degree 1")
        self.weights = weights
        self.zero_deg: Deg = (0,) * self.gdim
        self._index = {nm: i for i, nm in enumerate(names)}
        self._one_mon: Mon = (0,) * self.n

    @property
    def bigraded(self) -> bool:
        return self.gdim > 1

    def mon_degree(self, m: Mon) -> Deg:
        if self.gdim == 1:
            return (sum(m),)
        d = [0] * self.gdim
        for e, w in zip(m, self.weights):
            if e:
                for i, wi in enumerate(w):
                    d[i] += e * wi
        return tuple(d)

    def var_index(self, name: str) -> int:
        if name not in self._index:
            raise RingError(f"unknown variable {name!r} in ring {self.names}")
        return self._index[name]

    def var(self, i) -> "Polynomial":
        if isinstance(i, str):
            i = self.var_index(i)
        m = [0] * self.n
        m[i] = 1
        return Polynomial(self, {tuple(m): self.field.one()})

    def gens(self) -> list["Polynomial"]:
        return [self.var(i) for i in range(self.n)]

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {self._one_mon: self.field.one()})

    def const(self, c) -> "Polynomial":
        c = self.field.coerce(c)
        return Polynomial(self, {self._one_mon: c} if not self.field.is_zero(c) else {})

    def linear_form(self, coeffs) -> "Polynomial":
        """Build sum(c_i * x_i) from a raw coefficient vector."""
        terms = {}
        for i, c in enumerate(coeffs):
            c = self.field.coerce(c)
            if not self.field.is_zero(c):
                m = [0] * self.n
                m[i] = 1
                terms[tuple(m)] = c
        return Polynomial(self, terms)

    def same(self, other: "RingContext") -> bool:
        return (
            self is other
            or (self.field == other.field and self.names == other.names and self.weights == other.weights)
        )

    def extend(self, new_names: list[str], new_weights: list[Deg] | None = None) -> "RingContext":
        """Ring with extra variables appended (used by elimination constructions)."""
        if new_weights is None:
            new_weights = [(1,) * 1 if self.gdim == 1 else None for _ in new_names]
            if self.gdim != 1:
                raise RingError("extension of a bigraded ring needs explicit weights")
        return RingContext(self.field, self.names + list(new_names), self.weights + list(new_weights))

    def decl(self) -> str:
        if not self.bigraded:
            return f"ring {self.field.name} [{','.join(self.names)}]"
        vs = ",".join(f"{nm}:({','.join(map(str, w))})" for nm, w in zip(self.names, self.weights))
        return f"ring {self.field.name} [{vs}]"

    def __repr__(self):
        return self.decl()


def mon_mul(a: Mon, b: Mon) -> Mon:
    return tuple(x + y for x, y in zip(a, b))


def mon_div(a: Mon, b: Mon) -> Mon | None:
    """a / b, or None when b does not divide a."""
    out = []
    for x, y in zip(a, b):
        if x < y:
            return None
        out.append(x - y)
    return tuple(out)


def mon_divides(b: Mon, a: Mon) -> bool:
    return all(x >= y for x, y in zip(a, b))


def mon_lcm(a: Mon, b: Mon) -> Mon:
    return tuple(max(x, y) for x, y in zip(a, b))


def mon_gcd(a: Mon, b: Mon) -> Mon:
    return tuple(min(x, y) for x, y in zip(a, b))


def mon_coprime(a: Mon, b: Mon) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


class MonomialOrder:
    """Total degree-compatible monomial order with an optional variable permutation.

    kind 'degrevlex' or 'deglex' compare after permuting exponents so the
    permutation's first variable is largest.  kind 'block' is an elimination
    order: the first `front` permuted variables dominate (degrevlex within
    each block), so it eliminates those variables.
    """

    def __init__(self, kind: str = "degrevlex", perm: list[int] | None = None, front: int = 0, n: int | None = None):
        if kind not in ("degrevlex", "deglex", "block"):
            raise RingError(f"unknown order kind {kind!r}")
        if kind == "block" and front <= 0:
            raise RingError("block order needs a positive front-block size")
        self.kind = kind
        self.perm = list(perm) if perm is not None else None
        self.front = front
        self.n = n if n is not None else (len(self.perm) if self.perm else None)
        self._key_cache: dict[Mon, tuple] = {}
        self._nkey_cache: dict[Mon, tuple] = {}

    def for_ring(self, ring: RingContext) -> "MonomialOrder":
        if self.perm is not None and len(self.perm) != ring.n:
            raise RingError("order permutation length does not match ring")
        if self.n == ring.n:
            return self
        o = MonomialOrder(self.kind, self.perm, self.front, ring.n)
        return o

    def _permuted(self, m: Mon) -> Mon:
        return m if self.perm is None else tuple(m[i] for i in self.perm)

    def key(self, m: Mon):
        k = self._key_cache.get(m)
        if k is None:
            e = self._permuted(m)
            if self.kind == "degrevlex":
                k = (sum(e), tuple(-x for x in reversed(e)))
            elif self.kind == "deglex":
                k = (sum(e), e)
            else:
                f, b = e[: self.front], e[self.front:]
                k = (
                    (sum(f), tuple(-x for x in reversed(f))),
                    (sum(b), tuple(-x for x in reversed(b))),
                )
            self._key_cache[m] = k
        return k

    def nkey(self, m: Mon):
        """Order-reversing key: min-heap on nkey pops the largest monomial."""
        k = self._nkey_cache.get(m)
        if k is None:
            e = self._permuted(m)
            if self.kind == "degrevlex":
                k = (-sum(e), tuple(reversed(e)))
            elif self.kind == "deglex":
                k = (-sum(e), tuple(-x for x in e))
            else:
                f, b = e[: self.front], e[self.front:]
                k = ((-sum(f), tuple(reversed(f))), (-sum(b), tuple(reversed(b))))
            self._nkey_cache[m] = k
        return k

    def compare(self, m: Mon, n: Mon) -> int:
        a, b = self.key(m), self.key(n)
        return 0 if a == b else (1 if a > b else -1)

    def sorted_desc(self, mons) -> list[Mon]:
        return sorted(mons, key=self.key, reverse=True)

    def spec(self) -> dict:
        return {"kind": self.kind, "perm": self.perm, "front": self.front}

    def __repr__(self):
        s = self.kind
        if self.perm is not None:
            s += f"(perm={self.perm})"
        if self.kind == "block":
            s += f"[front={self.front}]"
        return s


DEGREVLEX = MonomialOrder("degrevlex")
DEGLEX = MonomialOrder("deglex")


def elimination_order(ring: RingContext, front_vars) -> MonomialOrder:
    """Block order eliminating the given variables (names or indices)."""
    idx = [ring.var_index(v) if isinstance(v, str) else v for v in front_vars]
    rest = [i for i in range(ring.n) if i not in set(idx)]
    return MonomialOrder("block", perm=idx + rest, front=len(idx), n=ring.n)


class Polynomial:
    """Sparse multivariate polynomial with exact coefficients."""

    __slots__ = ("ring", "terms", "_deg")

    def __init__(self, ring: RingContext, terms: dict):
        self.ring = ring
        self.terms = terms
        self._deg = None

    # -- basic queries ---------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def num_terms(self) -> int:
        return len(self.terms)

    def total_degree(self) -> int:
        """Max total degree of a term; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def degree(self) -> Deg | None:
        """Common degree of all terms, or None if inhomogeneous or zero."""
        if self._deg is None:
            if not self.terms:
                return None
            it = iter(self.terms)
            d = self.ring.mon_degree(next(it))
            for m in it:
                if self.ring.mon_degree(m) != d:
                    return None
            self._deg = d
        return self._deg

    def is_homogeneous(self) -> bool:
        return self.is_zero() or self.degree() is not None

    def bidegree(self) -> Deg | None:
        if not self.ring.bigraded:
            raise RingError("bidegree requires a bigraded ring")
        return self.degree()

    def constant_term(self):
        return self.terms.get(self.ring._one_mon, self.ring.field.zero())

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self.terms)

    def coeff(self, m: Mon):
        return self.terms.get(m, self.ring.field.zero())

    def lt(self, order: MonomialOrder):
        """(monomial, coefficient) of the leading term under order."""
        if not self.terms:
            raise RingError("leading term of zero")
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def lm(self, order: MonomialOrder) -> Mon:
        return max(self.terms, key=order.key)

    def sorted_terms(self, order: MonomialOrder):
        return [(m, self.terms[m]) for m in order.sorted_desc(self.terms)]

    # -- arithmetic ------------------------------------------------------
    def _coerce_other(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if not self.ring.same(other.ring):
                raise RingError("mixed ring contexts")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce_other(other)
        K = self.ring.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = K.add(out.get(m, K.zero()), c)
            if K.is_zero(s):
                out.pop(m, None)
            else:
                out[m] = s
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        K = self.ring.field
        return Polynomial(self.ring, {m: K.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce_other(other))

    def __rsub__(self, other):
        return self._coerce_other(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        if not self.ring.same(other.ring):
            raise RingError("mixed ring contexts")
        K = self.ring.field
        out: dict = {}
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = mon_mul(m1, m2)
                s = K.add(out.get(m, K.zero()), K.mul(c1, c2))
                if K.is_zero(s):
                    out.pop(m, None)
                else:
                    out[m] = s
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        K = self.ring.field
        c = K.coerce(c)
        if K.is_zero(c):
            return self.ring.zero()
        return Polynomial(self.ring, {m: K.mul(v, c) for m, v in self.terms.items()})

    def mul_term(self, m: Mon, c) -> "Polynomial":
        K = self.ring.field
        if K.is_zero(c):
            return self.ring.zero()
        return Polynomial(self.ring, {mon_mul(m, t): K.mul(v, c) for t, v in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise RingError("negative power")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring.same(other.ring) and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- normalization ---------------------------------------------------
    def monic(self, order: MonomialOrder) -> "Polynomial":
        if not self.terms:
            return self
        _, c = self.lt(order)
        K = self.ring.field
        if c == K.one():
            return self
        return self.scale(K.inv(c))

    def primitive(self, order: MonomialOrder) -> "Polynomial":
        """Content-normalized form: over QQ, integer coefficients with content 1
        and positive leading coefficient; over F_p, monic."""
        if not self.terms:
            return self
        K = self.ring.field
        if K != QQ:
            return self.monic(order)
        den = 1
        for c in self.terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        num = 0
        for c in self.terms.values():
            num = gcd(num, c.numerator * den // c.denominator)
        scale = Fraction(den, num)
        if self.lt(order)[1] < 0:
            scale = -scale
        return self.scale(scale)

    # -- substitution ----------------------------------------------------
    def map_coeffs(self, target_ring: RingContext, fn=None) -> "Polynomial":
        """Reinterpret in another ring with the same variables (e.g. other field)."""
        K = target_ring.field
        out = {}
        for m, c in self.terms.items():
            v = K.coerce(fn(c) if fn else c)
            if not K.is_zero(v):
                out[m] = v
        return Polynomial(target_ring, out)

    def substitute(self, images: list["Polynomial"]) -> "Polynomial":
        """Replace variable i by images[i] (all in a common ring)."""
        tgt = images[0].ring
        out = tgt.zero()
        for m, c in self.terms.items():
            t = tgt.const(c)
            for i, e in enumerate(m):
                if e:
                    t = t * images[i] ** e
            out = out + t
        return out

    def __repr__(self):
        return poly_str(self)


def poly_str(f: Polynomial, order: MonomialOrder = DEGREVLEX) -> str:
    if not f.terms:
        return "0"
    K = f.ring.field
    parts = []
    for m, c in f.sorted_terms(order.for_ring(f.ring)):
        factors = [
            f"{f.ring.names[i]}^{e}" if e > 1 else f.ring.names[i]
            for i, e in enumerate(m)
            if e
        ]
        cs = K.fmt(c)
        if factors:
            body = "*".join(factors)
            if cs == "1":
                term = body
            elif cs == "-1":
                term = f"-{body}"
            else:
                term = f"{cs}*{body}"
        else:
            term = cs
        parts.append(term)
    s = parts[0]
    for t in parts[1:]:
        s += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return s


class LinearChange:
    """Invertible linear change of coordinates x_i -> sum_j M[i][j] x_j."""

    def __init__(self, ring: RingContext, matrix):
        self.ring = ring
        K = ring.field
        n = ring.n
        self.matrix = [[K.coerce(matrix[i][j]) for j in range(n)] for i in range(n)]
        self._images = None
        if self._det_is_zero():
            raise RingError("singular matrix for a linear change of coordinates")

    def _det_is_zero(self) -> bool:
        K = self.ring.field
        n = self.ring.n
        a = [row[:] for row in self.matrix]
        for col in range(n):
            piv = next((r for r in range(col, n) if not K.is_zero(a[r][col])), None)
            if piv is None:
                return True
            a[col], a[piv] = a[piv], a[col]
            inv = K.inv(a[col][col])
            for r in range(col + 1, n):
                if not K.is_zero(a[r][col]):
                    f = K.mul(a[r][col], inv)
                    a[r] = [K.sub(x, K.mul(f, y)) for x, y in zip(a[r], a[col])]
        return False

    def images(self) -> list[Polynomial]:
        if self._images is None:
            self._images = [self.ring.linear_form(row) for row in self.matrix]
        return self._images

    def apply(self, f: Polynomial) -> Polynomial:
        if not f.ring.same(self.ring):
            raise RingError("linear change applied in the wrong ring")
        return f.substitute(self.images())

    def inverse(self) -> "LinearChange":
        K = self.ring.field
        n = self.ring.n
        a = [row[:] + [K.one() if i == j else K.zero() for j in range(n)] for i, row in enumerate(self.matrix)]
        for col in range(n):
            piv = next(r for r in range(col, n) if not K.is_zero(a[r][col]))
            a[col], a[piv] = a[piv], a[col]
            inv = K.inv(a[col][col])
            a[col] = [K.mul(x, inv) for x in a[col]]
            for r in range(n):
                if r != col and not K.is_zero(a[r][col]):
                    f = a[r][col]
                    a[r] = [K.sub(x, K.mul(f, y)) for x, y in zip(a[r], a[col])]
        return LinearChange(self.ring, [row[n:] for row in a])

    @staticmethod
    def identity(ring: RingContext) -> "LinearChange":
        K = ring.field
        return LinearChange(ring, [[K.one() if i == j else K.zero() for j in range(ring.n)] for i in range(ring.n)])

    @staticmethod
    def random(ring: RingContext, rng) -> "LinearChange":
        K = ring.field
        while True:
            m = [[K.random(rng) for _ in range(ring.n)] for _ in range(ring.n)]
            try:
                return LinearChange(ring, m)
            except RingError:
                continue

    def to_lists(self):
        K = self.ring.field
        return [[K.fmt(c) for c in row] for row in self.matrix]
