"""Exhaustive and random term corpora, generated directly in nameless form."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from bangcalc.syntax import (
    Abs,
    App,
    Bang,
    BVar,
    Calculus,
    CalculusProfile,
    Op,
    Term,
    Var,
    binder_hint,
    get_operator,
)

POOL_NAMES = "xyzwuvpqrs"


def pool_names(pool: int) -> list[str]:
    return [POOL_NAMES[i] if i < len(POOL_NAMES) else f"x{i}" for i in range(pool)]


@dataclass(frozen=True)
class GenSpec:
    profile: CalculusProfile
    max_size: int
    pool: int = 2
    include_ops: bool | None = None  # default: whatever the profile activates
    count: int | None = None  # set for random mode
    seed: int = 0

    @property
    def random(self) -> bool:
        return self.count is not None

    @property
    def operators(self) -> tuple[str, ...]:
        include = bool(self.profile.operators) if self.include_ops is None else self.include_ops
        if not include:
            return ()
        return self.profile.operators or ("oplus",)

    def describe(self) -> str:
        ops = ",".join(self.operators) or "none"
        mode = f"random(count={self.count}, seed={self.seed})" if self.random else "exhaustive"
        return f"{mode} size<={self.max_size} pool={self.pool} calculus={self.profile.calculus.value} ops={ops}"


class _Grammar:
    """Counting and construction of terms of an exact size at a binder depth."""

    def __init__(self, bang: bool, pool: int, ops: tuple[str, ...]) -> None:
        self.bang = bang
        self.free = [Var(n) for n in pool_names(pool)]
        self.ops = [(o, get_operator(o).arity) for o in ops]
        self.count = lru_cache(maxsize=None)(self._count)
        self.terms = lru_cache(maxsize=None)(self._terms)

    def _splits(self, total: int, parts: int) -> Iterator[tuple[int, ...]]:
        if parts == 0:
            if total == 0:
                yield ()
            return
        for first in range(1, total - parts + 2):
            for rest in self._splits(total - first, parts - 1):
                yield (first, *rest)

    def _count(self, size: int, depth: int) -> int:
        if size <= 0:
            return 0
        n = 0
        if size == 1:
            n += len(self.free) + depth
        n += self.count(size - 1, depth + 1)
        if self.bang:
            n += self.count(size - 1, depth)
        for k in range(1, size - 1):
            n += self.count(k, depth) * self.count(size - 1 - k, depth)
        for _, arity in self.ops:
            for split in self._splits(size - 1, arity):
                prod = 1
                for s in split:
                    prod *= self.count(s, depth)
                n += prod
        return n

    def _terms(self, size: int, depth: int) -> tuple[Term, ...]:
        if size <= 0:
            return ()
        out: list[Term] = []
        if size == 1:
            out.extend(self.free)
            out.extend(BVar(i) for i in range(depth))
        hint = binder_hint(depth)
        out.extend(Abs(hint, b) for b in self.terms(size - 1, depth + 1))
        if self.bang:
            out.extend(Bang(b) for b in self.terms(size - 1, depth))
        for k in range(1, size - 1):
            for f in self.terms(k, depth):
                for a in self.terms(size - 1 - k, depth):
                    out.append(App(f, a))
        for name, arity in self.ops:
            for split in self._splits(size - 1, arity):
                combos: list[tuple[Term, ...]] = [()]
                for s in split:
                    combos = [c + (a,) for c in combos for a in self.terms(s, depth)]
                out.extend(Op(name, c) for c in combos)
        return tuple(out)

    def sample(self, size: int, depth: int, rng: random.Random) -> Term:
        """A uniformly random term of exactly ``size`` constructors."""
        pick = rng.randrange(self.count(size, depth))
        if size == 1:
            leaves = len(self.free) + depth
            if pick < leaves:
                return self.free[pick] if pick < len(self.free) else BVar(pick - len(self.free))
            pick -= leaves
        n = self.count(size - 1, depth + 1)
        if pick < n:
            return Abs(binder_hint(depth), self.sample(size - 1, depth + 1, rng))
        pick -= n
        if self.bang:
            n = self.count(size - 1, depth)
            if pick < n:
                return Bang(self.sample(size - 1, depth, rng))
            pick -= n
        for k in range(1, size - 1):
            n = self.count(k, depth) * self.count(size - 1 - k, depth)
            if pick < n:
                return App(self.sample(k, depth, rng), self.sample(size - 1 - k, depth, rng))
            pick -= n
        for name, arity in self.ops:
            for split in self._splits(size - 1, arity):
                n = 1
                for s in split:
                    n *= self.count(s, depth)
                if pick < n:
                    return Op(name, [self.sample(s, depth, rng) for s in split])
                pick -= n
        raise AssertionError("sampling index out of range")


def _grammar(spec: GenSpec) -> _Grammar:
    return _Grammar(spec.profile.calculus is Calculus.BANG, spec.pool, spec.operators)


def count_terms(spec: GenSpec) -> int:
    g = _grammar(spec)
    return sum(g.count(n, 0) for n in range(1, spec.max_size + 1))


def gen_terms(spec: GenSpec) -> Iterator[Term]:
    """Closed-over-the-pool terms of size at most ``spec.max_size``.

    Exhaustive mode yields every alpha-class once, smallest first.  Random
    mode draws ``spec.count`` terms uniformly from the same set, reproducibly
    from ``spec.seed``.
    """
    g = _grammar(spec)
    if not spec.random:
        for n in range(1, spec.max_size + 1):
            yield from g.terms(n, 0)
        return
    rng = random.Random(spec.seed)
    weights = [g.count(n, 0) for n in range(1, spec.max_size + 1)]
    total = sum(weights)
    assert spec.count is not None
    for _ in range(spec.count):
        pick = rng.randrange(total)
        size = 1
        while pick >= weights[size - 1]:
            pick -= weights[size - 1]
            size += 1
        yield g.sample(size, 0, rng)
