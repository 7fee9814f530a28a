"""Arithmetic in k[x_1..x_n]/I where I is generated by quadratic monomials.

Variables are indexed from 1, matching the ring-file format.  Monomials are
exponent tuples; a monomial is *admissible* when no generator of I divides
it, and admissible monomials form a k-basis of the quotient.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from .fields import QQ, Field, FieldMismatchError


class InvalidSpecError(ValueError):
    """A ring description is malformed (bad index, bad shape)."""


@dataclass(frozen=True)
class RingSpec:
    """Number of variables plus the normalized quadratic generators of I.

    ``generators`` holds pairs ``(i, j)`` with ``1 <= i <= j <= num_vars``;
    ``(i, i)`` stands for ``x_i**2``.  Use :func:`normalize_spec` to build one
    from unnormalized input.
    """

    num_vars: int
    generators: tuple[tuple[int, int], ...] = ()
    # annihilator bitmasks: bit j of _ann[i] set iff x_i * x_j lies in I
    _ann: tuple[int, ...] = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        if self.num_vars < 1:
            raise InvalidSpecError("a ring needs at least one variable")
        gens = tuple(self.generators)
        for pair in gens:
            i, j = pair
            if not (1 <= i <= j <= self.num_vars):
                raise InvalidSpecError(f"generator {pair} is not normalized for n={self.num_vars}")
        if list(gens) != sorted(set(gens)):
            raise InvalidSpecError("generators must be sorted and distinct")
        ann = [0] * (self.num_vars + 1)
        for i, j in gens:
            ann[i] |= 1 << j
            ann[j] |= 1 << i
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "_ann", tuple(ann))

    def in_ideal(self, i: int, j: int) -> bool:
        """True iff ``x_i * x_j`` is one of the generators."""
        return bool(self._ann[i] >> j & 1)

    def annihilating_mask(self, i: int) -> int:
        return self._ann[i]

    def variables_in_generators(self) -> list[int]:
        return sorted({v for pair in self.generators for v in pair})

    def to_json(self) -> dict:
        return {"variables": self.num_vars, "generators": [list(g) for g in self.generators]}

    @classmethod
    def from_json(cls, data: dict) -> "RingSpec":
        try:
            n = data["variables"]
            raw = data["generators"]
        except (KeyError, TypeError):
            raise InvalidSpecError("ring file needs 'variables' and 'generators'") from None
        if not isinstance(n, int) or isinstance(n, bool):
            raise InvalidSpecError("'variables' must be an integer")
        pairs = []
        for g in raw:
            if not isinstance(g, (list, tuple)) or len(g) != 2:
                raise InvalidSpecError(f"generator {g!r} is not an index pair")
            pairs.append((g[0], g[1]))
        return normalize_spec(pairs, n)

    def __str__(self):
        gens = ", ".join(
            f"x{i}^2" if i == j else f"x{i}x{j}" for i, j in self.generators
        )
        return f"k[x1..x{self.num_vars}]/({gens})"


def normalize_spec(raw_pairs, n: int) -> RingSpec:
    """Sort each pair, drop duplicates and validate indices against ``n``."""
    if not isinstance(n, int) or n < 1:
        raise InvalidSpecError(f"number of variables must be a positive integer, got {n!r}")
    pairs = set()
    for pair in raw_pairs:
        i, j = pair
        for idx in (i, j):
            if not isinstance(idx, int) or isinstance(idx, bool) or not 1 <= idx <= n:
                raise InvalidSpecError(f"index {idx!r} out of range 1..{n}")
        pairs.add((min(i, j), max(i, j)))
    return RingSpec(n, tuple(sorted(pairs)))


def load_spec(path) -> RingSpec:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InvalidSpecError(f"{path}: not valid JSON ({exc})") from None
    return RingSpec.from_json(data)


class Monomial(tuple):
    """Exponent vector ``(e_1, ..., e_n)``; position ``k`` is variable ``k + 1``."""

    __slots__ = ()

    def __new__(cls, exponents):
        exps = tuple(int(e) for e in exponents)
        if any(e < 0 for e in exps):
            raise ValueError("exponents must be non-negative")
        return super().__new__(cls, exps)

    @classmethod
    def one(cls, n: int) -> "Monomial":
        return cls((0,) * n)

    @classmethod
    def var(cls, n: int, i: int) -> "Monomial":
        e = [0] * n
        e[i - 1] = 1
        return cls(e)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(self)

    @property
    def degree(self) -> int:
        return sum(self)

    def support_mask(self) -> int:
        mask = 0
        for k, e in enumerate(self):
            if e:
                mask |= 1 << (k + 1)
        return mask

    def times(self, other: "Monomial") -> "Monomial":
        return Monomial(a + b for a, b in zip(self, other))

    def __repr__(self):
        parts = []
        for k, e in enumerate(self):
            if e == 1:
                parts.append(f"x{k + 1}")
            elif e > 1:
                parts.append(f"x{k + 1}^{e}")
        return "*".join(parts) or "1"


def is_admissible(spec: RingSpec, m: Monomial) -> bool:
    support = m.support_mask()
    for k, e in enumerate(m):
        if not e:
            continue
        i = k + 1
        others = support & ~(1 << i)
        if spec.annihilating_mask(i) & others:
            return False
        if e >= 2 and spec.in_ideal(i, i):
            return False
    return True


def reduce_monomial(spec: RingSpec, m: Monomial):
    """Return ``m`` if it survives in R, else ``None`` (the zero marker)."""
    if len(m) != spec.num_vars:
        raise ValueError(f"monomial has {len(m)} exponents, ring has {spec.num_vars} variables")
    return m if is_admissible(spec, m) else None


def times_variable(spec: RingSpec, l: int, m: Monomial):
    """``x_l * m`` for an admissible ``m``; ``None`` when the product is in I.

    Cheaper than a full :func:`reduce_monomial` because only the new factor
    can create a generator.
    """
    if spec.annihilating_mask(l) & m.support_mask():
        return None
    e = list(m)
    e[l - 1] += 1
    return Monomial(e)


@lru_cache(maxsize=4096)
def enumerate_basis(spec: RingSpec, d: int) -> tuple[Monomial, ...]:
    """Admissible monomials of degree exactly ``d``, lexicographically descending.

    Exponent vectors are produced with ``e_1`` largest first, so for
    ``k[x1,x2,x3]/(x1x2, x1x3)`` in degree 2 the order is x1^2, x2^2, x2x3, x3^2.
    """
    if d < 0:
        return ()
    n = spec.num_vars
    out: list[Monomial] = []
    exps = [0] * n

    def rec(k: int, remaining: int, support: int):
        if k == n - 1:
            choices = [remaining]
        else:
            choices = range(remaining, -1, -1)
        i = k + 1
        for e in choices:
            if e:
                if spec.annihilating_mask(i) & support:
                    continue
                if e >= 2 and spec.in_ideal(i, i):
                    continue
                new_support = support | (1 << i)
            else:
                new_support = support
            exps[k] = e
            if k == n - 1:
                out.append(Monomial(exps))
            else:
                rec(k + 1, remaining - e, new_support)
        exps[k] = 0

    rec(0, d, 0)
    return tuple(out)


def hilbert_function(spec: RingSpec, d_max: int) -> list[int]:
    return [len(enumerate_basis(spec, d)) for d in range(d_max + 1)]


class RingElement:
    """Sparse k-linear combination of admissible monomials.

    The zero element is the empty term map.  Instances are treated as
    immutable values.
    """

    __slots__ = ("spec", "field", "terms")

    def __init__(self, spec: RingSpec, terms=None, field: Field = QQ):
        self.spec = spec
        self.field = field
        clean = {}
        for mono, coeff in (terms or {}).items():
            mono = mono if isinstance(mono, Monomial) else Monomial(mono)
            if reduce_monomial(spec, mono) is None:
                continue
            c = field.add(clean.get(mono, field.zero()), field(coeff))
            if c:
                clean[mono] = c
            else:
                clean.pop(mono, None)
        self.terms = clean

    @classmethod
    def zero(cls, spec, field=QQ):
        return cls(spec, {}, field)

    @classmethod
    def one(cls, spec, field=QQ):
        return cls(spec, {Monomial.one(spec.num_vars): 1}, field)

    @classmethod
    def var(cls, spec, i, field=QQ):
        return cls(spec, {Monomial.var(spec.num_vars, i): 1}, field)

    def _check(self, other: "RingElement"):
        self.field.check_same(other.field)
        if self.spec != other.spec:
            raise FieldMismatchError("operands live in different rings")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.spec == other.spec and self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash((self.spec, self.field, frozenset(self.terms.items())))

    def __add__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        terms = dict(self.terms)
        f = self.field
        for m, c in other.terms.items():
            terms[m] = f.add(terms.get(m, f.zero()), c)
        return RingElement(self.spec, terms, f)

    def __neg__(self):
        f = self.field
        return RingElement(self.spec, {m: f.neg(c) for m, c in self.terms.items()}, f)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "RingElement") -> "RingElement":
        return multiply(self.spec, self, other)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            parts.append(f"{c}*{m!r}" if c != 1 else repr(m))
        return " + ".join(parts)


def multiply(spec: RingSpec, a: RingElement, b: RingElement) -> RingElement:
    """Distribute, then drop every product monomial that lands in I."""
    a._check(b)
    if a.spec != spec:
        raise FieldMismatchError("operands do not belong to the given ring")
    f = a.field
    terms: dict[Monomial, object] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            prod = reduce_monomial(spec, ma.times(mb))
            if prod is None:
                continue
            terms[prod] = f.add(terms.get(prod, f.zero()), f.mul(ca, cb))
    return RingElement(spec, terms, f)
