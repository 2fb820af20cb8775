"""Exact linear forms over the lattice of nonempty variable subsets.

A :class:`LinForm` with coefficients ``c_J`` stands for the inequality
``sum_J c_J H(X_J) >= 0``.  Subsets are bitmasks: variable ``i`` of the
context sits at bit ``i``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

MAX_VARS = 16

IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")

Rat = Fraction
RatLike = Union[Fraction, int, str]


class ContextMismatchError(ValueError):
    pass


class UnknownVariableError(KeyError):
    def __str__(self):
        return f"unknown variable {self.args[0]!r}"


def rat(x: RatLike) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floats are not accepted in exact forms")
    return Fraction(x)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def iter_bits(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


class VarContext:
    """Ordered ground set of variable names."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(names) > MAX_VARS:
            raise ValueError(f"at most {MAX_VARS} variables supported, got {len(names)}")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for name in names:
            if not IDENT_RE.match(name):
                raise ValueError(f"invalid variable name {name!r}")
        self.names = names
        self._index = {name: i for i, name in enumerate(names)}

    @classmethod
    def sorted(cls, names: Iterable[str]) -> "VarContext":
        return cls(sorted(set(names)))

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def full(self) -> int:
        return (1 << len(self.names)) - 1

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name) -> bool:
        return name in self._index

    def __eq__(self, other):
        return isinstance(other, VarContext) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"VarContext({list(self.names)!r})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariableError(name) from None

    def bit(self, name: str) -> int:
        return 1 << self.index(name)

    def mask(self, names: Iterable[str]) -> int:
        m = 0
        for name in names:
            m |= self.bit(name)
        return m

    def subset_names(self, mask: int) -> tuple[str, ...]:
        return tuple(self.names[i] for i in iter_bits(mask))

    def subsets(self) -> range:
        """All nonempty subset masks."""
        return range(1, self.full + 1)

    def without(self, name: str) -> "VarContext":
        self.index(name)
        return VarContext(x for x in self.names if x != name)

    def renamed(self, old: str, new: str) -> "VarContext":
        self.index(old)
        return VarContext(new if x == old else x for x in self.names)


class LinForm:
    """Sparse exact form ``{subset mask: coefficient}``; immutable.

    Equality is by variable names, so two forms over contexts holding the
    same variables in different orders compare equal when they denote the
    same inequality.
    """

    __slots__ = ("ctx", "_coeffs", "_key")

    def __init__(self, ctx: VarContext, coeffs: Mapping[int, RatLike] | None = None):
        self.ctx = ctx
        clean: dict[int, Fraction] = {}
        if coeffs:
            full = ctx.full
            for mask, c in coeffs.items():
                if not (0 < mask <= full):
                    raise ValueError(f"subset mask {mask} outside ground set of {ctx.n} variables")
                c = rat(c)
                if c:
                    clean[mask] = c
        self._coeffs = clean
        self._key = None

    @classmethod
    def _raw(cls, ctx: VarContext, coeffs: dict[int, Fraction]) -> "LinForm":
        # trusted constructor: coeffs already pruned and in range
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj._coeffs = coeffs
        obj._key = None
        return obj

    @classmethod
    def from_names(cls, ctx: VarContext, coeffs: Mapping[Iterable[str] | str, RatLike]) -> "LinForm":
        """Build from ``{"AC": 1, ("A", "B"): -1}``; a plain string is a run of
        single-character names or a single full name present in ``ctx``."""
        out: dict[int, Fraction] = {}
        for key, c in coeffs.items():
            if isinstance(key, str):
                key = (key,) if key in ctx else tuple(key)
            m = ctx.mask(key)
            out[m] = out.get(m, Fraction(0)) + rat(c)
        return cls(ctx, out)

    @classmethod
    def entropy(cls, ctx: VarContext, mask: int, coeff: RatLike = 1) -> "LinForm":
        return cls(ctx, {mask: coeff})

    # mapping-like access
    def __getitem__(self, mask: int) -> Fraction:
        return self._coeffs.get(mask, Fraction(0))

    def items(self):
        return self._coeffs.items()

    def support(self):
        return self._coeffs.keys()

    def __len__(self):
        return len(self._coeffs)

    def __bool__(self):
        return bool(self._coeffs)

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self._coeffs)

    def named(self) -> dict[frozenset, Fraction]:
        names = self.ctx.subset_names
        return {frozenset(names(m)): c for m, c in self._coeffs.items()}

    # equality
    def _canon_key(self):
        if self._key is None:
            self._key = (frozenset(self.ctx.names), frozenset(self.named().items()))
        return self._key

    def __eq__(self, other):
        if not isinstance(other, LinForm):
            return NotImplemented
        if self.ctx == other.ctx:
            return self._coeffs == other._coeffs
        return self._canon_key() == other._canon_key()

    def __hash__(self):
        return hash(self._canon_key())

    def __repr__(self):
        sep = "" if all(len(x) == 1 for x in self.ctx.names) else ","
        body = ", ".join(
            f"{sep.join(self.ctx.subset_names(m))}: {c}"
            for m, c in sorted(self._coeffs.items(), key=lambda kv: sort_key(kv[0]))
        )
        return f"LinForm({{{body}}})"

    # arithmetic
    def _check_ctx(self, other: "LinForm") -> "LinForm":
        if self.ctx == other.ctx:
            return other
        if set(self.ctx.names) == set(other.ctx.names):
            return other.reindex(self.ctx)
        raise ContextMismatchError(f"{self.ctx!r} vs {other.ctx!r}")

    def __add__(self, other: "LinForm") -> "LinForm":
        if not isinstance(other, LinForm):
            return NotImplemented
        other = self._check_ctx(other)
        out = dict(self._coeffs)
        for m, c in other._coeffs.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return LinForm._raw(self.ctx, out)

    def __neg__(self) -> "LinForm":
        return LinForm._raw(self.ctx, {m: -c for m, c in self._coeffs.items()})

    def __sub__(self, other: "LinForm") -> "LinForm":
        if not isinstance(other, LinForm):
            return NotImplemented
        return self + (-other)

    def __mul__(self, k: RatLike) -> "LinForm":
        if isinstance(k, LinForm):
            return NotImplemented
        k = rat(k)
        if not k:
            return LinForm._raw(self.ctx, {})
        return LinForm._raw(self.ctx, {m: c * k for m, c in self._coeffs.items()})

    __rmul__ = __mul__

    def coefficient_sum_over(self, var: str) -> Fraction:
        bit = self.ctx.bit(var)
        return sum((c for m, c in self._coeffs.items() if m & bit), Fraction(0))

    def reindex(self, ctx: VarContext) -> "LinForm":
        """Express this form over ``ctx``, which must contain every variable of
        ``self.ctx`` (extra variables are allowed and simply unused)."""
        if ctx == self.ctx:
            return self
        pos = [ctx.bit(name) for name in self.ctx.names]
        out = {}
        for m, c in self._coeffs.items():
            nm = 0
            for i in iter_bits(m):
                nm |= pos[i]
            out[nm] = c
        return LinForm._raw(ctx, out)

    def variables_used(self) -> int:
        m = 0
        for k in self._coeffs:
            m |= k
        return m


def _lex_key(mask: int) -> tuple[int, ...]:
    return tuple(iter_bits(mask))


def sort_key(mask: int) -> tuple:
    """Size first, then lexicographic in context order."""
    return (popcount(mask), _lex_key(mask))


def zero(ctx: VarContext) -> LinForm:
    return LinForm._raw(ctx, {})


def add(a: LinForm, b: LinForm) -> LinForm:
    if a.ctx != b.ctx:
        raise ContextMismatchError(f"{a.ctx!r} vs {b.ctx!r}")
    return a + b


def scale(a: LinForm, k: RatLike) -> LinForm:
    return a * k


def coefficient_sum_over(a: LinForm, var: str) -> Fraction:
    return a.coefficient_sum_over(var)


# Canonical basic quantities, as forms; H(empty) is 0 and never stored.

def H(ctx: VarContext, joint: int, given: int = 0) -> LinForm:
    """H(X_joint | X_given)."""
    out: dict[int, Fraction] = {}
    _acc(out, joint | given, 1)
    _acc(out, given, -1)
    return LinForm._raw(ctx, out)


def I(ctx: VarContext, a: int, b: int, given: int = 0) -> LinForm:
    """I(X_a ; X_b | X_given); ``a`` and ``b`` may overlap."""
    out: dict[int, Fraction] = {}
    _acc(out, a | given, 1)
    _acc(out, b | given, 1)
    _acc(out, a | b | given, -1)
    _acc(out, given, -1)
    return LinForm._raw(ctx, out)


def _acc(out: dict[int, Fraction], mask: int, c) -> None:
    if not mask:
        return
    v = out.get(mask, 0) + c
    if v:
        out[mask] = Fraction(v)
    else:
        out.pop(mask, None)
