"""Terms shared by the call-by-name, call-by-value and bang calculi.

Terms are stored in a nameless form: free variables keep their names, bound
variables are de Bruijn indices, and each abstraction remembers the name it
was written with purely as a printing hint.  Two terms compare equal exactly
when they are alpha-equivalent, and hashing follows the same rule, so terms
can be used directly as graph nodes and set members.
"""

from __future__ import annotations

import enum
import operator
from dataclasses import dataclass, field
from typing import Callable, Iterator, NamedTuple, Sequence


class Term:
    """Base class of all term constructors."""

    __slots__ = ("_hash",)

    def __init_subclass__(cls) -> None:
        # defining __eq__ in a subclass would otherwise drop the cached hash
        cls.__hash__ = Term.__hash__  # type: ignore[method-assign]

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        from bangcalc.surface import show

        return f"<{show(self)}>"


class Var(Term):
    """A free variable."""

    __slots__ = ("name",)

    def __init__(self, name: str) -> None:
        self.name = name
        self._hash = hash(("var", name))

    def __eq__(self, other: object) -> bool:
        return self is other or (type(other) is Var and other.name == self.name)


class BVar(Term):
    """A bound variable, as a de Bruijn index (0 = innermost binder)."""

    __slots__ = ("index",)

    def __init__(self, index: int) -> None:
        self.index = index
        self._hash = hash(("bvar", index))

    def __eq__(self, other: object) -> bool:
        return self is other or (type(other) is BVar and other.index == self.index)


class Abs(Term):
    """Abstraction.  ``name`` is only a printing hint and takes no part in equality."""

    __slots__ = ("name", "body")

    def __init__(self, name: str, body: Term) -> None:
        self.name = name
        self.body = body
        self._hash = hash(("abs", body._hash))

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        return (
            type(other) is Abs
            and other._hash == self._hash
            and other.body == self.body
        )


class App(Term):
    __slots__ = ("fun", "arg")

    def __init__(self, fun: Term, arg: Term) -> None:
        self.fun = fun
        self.arg = arg
        self._hash = hash(("app", fun._hash, arg._hash))

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        return (
            type(other) is App
            and other._hash == self._hash
            and other.fun == self.fun
            and other.arg == self.arg
        )


class Bang(Term):
    """A box ``!T``."""

    __slots__ = ("body",)

    def __init__(self, body: Term) -> None:
        self.body = body
        self._hash = hash(("bang", body._hash))

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        return type(other) is Bang and other._hash == self._hash and other.body == self.body


class Op(Term):
    __slots__ = ("op", "args")

    def __init__(self, op: str, args: Sequence[Term]) -> None:
        self.op = op
        self.args = tuple(args)
        self._hash = hash(("op", op, tuple(a._hash for a in self.args)))

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        return (
            type(other) is Op
            and other._hash == self._hash
            and other.op == self.op
            and other.args == self.args
        )


class Hole(Term):
    """The hole of a context."""

    __slots__ = ()

    def __init__(self) -> None:
        self._hash = hash("hole")

    def __eq__(self, other: object) -> bool:
        return type(other) is Hole


HOLE = Hole()
# der: opens a box, (\x.x) !T -> T
DER = Abs("x", BVar(0))


# -- operators -------------------------------------------------------------

RESERVED_RULES = frozenset({"beta", "betav", "!beta", "d"})


@dataclass(frozen=True)
class OperatorSig:
    name: str
    arity: int
    contractions: tuple[Callable[[tuple[Term, ...]], Term], ...] = ()

    def __post_init__(self) -> None:
        if self.arity < 0:
            raise ValueError("operator arity must be >= 0")
        if not self.name.isidentifier():
            raise ValueError(f"invalid operator name {self.name!r}")
        if self.name in RESERVED_RULES:
            raise ValueError(f"operator name {self.name!r} clashes with a built-in rule")


OPLUS = OperatorSig("oplus", 2, (operator.itemgetter(0), operator.itemgetter(1)))

_REGISTRY: dict[str, OperatorSig] = {OPLUS.name: OPLUS}


def register_operator(sig: OperatorSig) -> OperatorSig:
    _REGISTRY[sig.name] = sig
    return sig


def get_operator(name: str) -> OperatorSig:
    try:
        return _REGISTRY[name]
    except KeyError:
        known = ", ".join(sorted(_REGISTRY))
        raise KeyError(f"unknown operator {name!r} (registered: {known})") from None


def registered_operators() -> tuple[str, ...]:
    return tuple(sorted(_REGISTRY))


# -- calculus profiles -----------------------------------------------------


class Calculus(str, enum.Enum):
    CBN = "cbn"
    CBV = "cbv"
    BANG = "bang"


_BASE_RULE = {Calculus.CBN: "beta", Calculus.CBV: "betav", Calculus.BANG: "!beta"}


@dataclass(frozen=True)
class CalculusProfile:
    """A calculus together with the operators whose rules are active.

    The level function is selected by ``calculus``; the redex set used for
    least levels is the full rule set (base rule plus every active operator).
    """

    calculus: Calculus
    operators: tuple[str, ...] = ()
    rules: frozenset[str] = field(init=False)

    def __post_init__(self) -> None:
        for name in self.operators:
            get_operator(name)
        object.__setattr__(self, "operators", tuple(sorted(set(self.operators))))
        object.__setattr__(
            self, "rules", frozenset({_BASE_RULE[self.calculus], *self.operators})
        )

    @property
    def base_rule(self) -> str:
        return _BASE_RULE[self.calculus]

    @property
    def name(self) -> str:
        return "+".join([self.calculus.value, *self.operators])

    def accepts(self, t: Term) -> bool:
        return not validate(t, self)

    def with_operators(self, *ops: str) -> CalculusProfile:
        return CalculusProfile(self.calculus, ops)


def make_profile(calculus: str | Calculus, ops: Sequence[str] = ()) -> CalculusProfile:
    return CalculusProfile(Calculus(calculus), tuple(ops))


BANG = CalculusProfile(Calculus.BANG)
CBN = CalculusProfile(Calculus.CBN)
CBV = CalculusProfile(Calculus.CBV)
BANG_OPLUS = CalculusProfile(Calculus.BANG, ("oplus",))
CBN_OPLUS = CalculusProfile(Calculus.CBN, ("oplus",))
CBV_OPLUS = CalculusProfile(Calculus.CBV, ("oplus",))


# -- paths -----------------------------------------------------------------


class Step(NamedTuple):
    """One move from a node to a child; ``index`` orders siblings."""

    kind: str  # "abs" | "fun" | "arg" | "bang" | "op"
    index: int = 0


ABS_BODY = Step("abs")
APP_LEFT = Step("fun", 0)
APP_RIGHT = Step("arg", 1)
BANG_BODY = Step("bang")

Path = tuple[Step, ...]


def op_arg(i: int) -> Step:
    return Step("op", i)


def path_key(path: Path) -> tuple[int, ...]:
    """Sort key giving document (leftmost-outermost) order."""
    return tuple(s.index for s in path)


def children(t: Term) -> Iterator[tuple[Step, Term]]:
    match t:
        case Abs(body=b):
            yield ABS_BODY, b
        case App(fun=f, arg=a):
            yield APP_LEFT, f
            yield APP_RIGHT, a
        case Bang(body=b):
            yield BANG_BODY, b
        case Op(args=args):
            for i, a in enumerate(args):
                yield op_arg(i), a


def subterm_at(t: Term, path: Path) -> Term:
    for step in path:
        match step.kind, t:
            case "abs", Abs(body=b):
                t = b
            case "fun", App(fun=f):
                t = f
            case "arg", App(arg=a):
                t = a
            case "bang", Bang(body=b):
                t = b
            case "op", Op(args=args) if step.index < len(args):
                t = args[step.index]
            case _:
                raise ValueError(f"invalid path step {step} at {t!r}")
    return t


def replace_at(t: Term, path: Path, new: Term) -> Term:
    if not path:
        return new
    step, rest = path[0], path[1:]
    match step.kind, t:
        case "abs", Abs(name=n, body=b):
            return Abs(n, replace_at(b, rest, new))
        case "fun", App(fun=f, arg=a):
            return App(replace_at(f, rest, new), a)
        case "arg", App(fun=f, arg=a):
            return App(f, replace_at(a, rest, new))
        case "bang", Bang(body=b):
            return Bang(replace_at(b, rest, new))
        case "op", Op(op=o, args=args) if step.index < len(args):
            new_args = list(args)
            new_args[step.index] = replace_at(args[step.index], rest, new)
            return Op(o, new_args)
    raise ValueError(f"invalid path step {step} at {t!r}")


def positions(t: Term, prefix: Path = ()) -> Iterator[tuple[Path, Term]]:
    """All (path, subterm) pairs in document order."""
    yield prefix, t
    for step, c in children(t):
        yield from positions(c, prefix + (step,))


# -- basic measures --------------------------------------------------------


def size(t: Term) -> int:
    """Number of constructors."""
    match t:
        case Abs(body=b) | Bang(body=b):
            return 1 + size(b)
        case App(fun=f, arg=a):
            return 1 + size(f) + size(a)
        case Op(args=args):
            return 1 + sum(size(a) for a in args)
    return 1


def free_vars(t: Term) -> frozenset[str]:
    match t:
        case Var(name=n):
            return frozenset((n,))
        case Abs(body=b) | Bang(body=b):
            return free_vars(b)
        case App(fun=f, arg=a):
            return free_vars(f) | free_vars(a)
        case Op(args=args):
            return frozenset().union(*(free_vars(a) for a in args))
    return frozenset()


def dangling(t: Term, depth: int = 0) -> frozenset[int]:
    """Indices (relative to ``t``'s root) that point outside ``t``."""
    match t:
        case BVar(index=i):
            return frozenset((i - depth,)) if i >= depth else frozenset()
        case Abs(body=b):
            return dangling(b, depth + 1)
        case Bang(body=b):
            return dangling(b, depth)
        case App(fun=f, arg=a):
            return dangling(f, depth) | dangling(a, depth)
        case Op(args=args):
            return frozenset().union(*(dangling(a, depth) for a in args))
    return frozenset()


def hole_count(t: Term) -> int:
    match t:
        case Hole():
            return 1
        case Abs(body=b) | Bang(body=b):
            return hole_count(b)
        case App(fun=f, arg=a):
            return hole_count(f) + hole_count(a)
        case Op(args=args):
            return sum(hole_count(a) for a in args)
    return 0


def occurrences(t: Term, index: int = 0) -> int:
    """Number of occurrences of bound index ``index`` (as seen from the root of ``t``)."""
    match t:
        case BVar(index=i):
            return int(i == index)
        case Abs(body=b):
            return occurrences(b, index + 1)
        case Bang(body=b):
            return occurrences(b, index)
        case App(fun=f, arg=a):
            return occurrences(f, index) + occurrences(a, index)
        case Op(args=args):
            return sum(occurrences(a, index) for a in args)
    return 0


# -- substitution ----------------------------------------------------------


def shift(t: Term, by: int, cutoff: int = 0) -> Term:
    """Add ``by`` to every index >= ``cutoff``."""
    if by == 0:
        return t
    match t:
        case BVar(index=i):
            return BVar(i + by) if i >= cutoff else t
        case Abs(name=n, body=b):
            return Abs(n, shift(b, by, cutoff + 1))
        case App(fun=f, arg=a):
            return App(shift(f, by, cutoff), shift(a, by, cutoff))
        case Bang(body=b):
            return Bang(shift(b, by, cutoff))
        case Op(op=o, args=args):
            return Op(o, [shift(a, by, cutoff) for a in args])
    return t


def instantiate(body: Term, arg: Term) -> Term:
    """``body`` with index 0 replaced by ``arg``; the binder is consumed.

    ``arg`` lives at the depth of the abstraction, ``body`` one level deeper.
    """
    cache: dict[int, Term] = {}

    def go(t: Term, k: int) -> Term:
        match t:
            case BVar(index=i):
                if i == k:
                    if k not in cache:
                        cache[k] = shift(arg, k)
                    return cache[k]
                return BVar(i - 1) if i > k else t
            case Abs(name=n, body=b):
                return Abs(n, go(b, k + 1))
            case App(fun=f, arg=a):
                return App(go(f, k), go(a, k))
            case Bang(body=b):
                return Bang(go(b, k))
            case Op(op=o, args=args):
                return Op(o, [go(a, k) for a in args])
        return t

    return go(body, 0)


def substitute(t: Term, x: str, s: Term) -> Term:
    """Capture-avoiding ``t{s/x}`` for a free variable ``x``.

    Binders carry no names, so capture is impossible; ``s`` is shifted when
    it is pushed under binders in case it has dangling indices of its own.
    """

    def go(u: Term, depth: int) -> Term:
        match u:
            case Var(name=n) if n == x:
                return shift(s, depth)
            case Abs(name=n, body=b):
                return Abs(n, go(b, depth + 1))
            case App(fun=f, arg=a):
                return App(go(f, depth), go(a, depth))
            case Bang(body=b):
                return Bang(go(b, depth))
            case Op(op=o, args=args):
                return Op(o, [go(a, depth) for a in args])
        return u

    return go(t, 0)


def abstract(name: str, t: Term) -> Term:
    """Close ``t`` over the free variable ``name``: builds ``\\name.t``."""

    def go(u: Term, depth: int) -> Term:
        match u:
            case Var(name=n) if n == name:
                return BVar(depth)
            case Abs(name=n, body=b):
                return Abs(n, go(b, depth + 1))
            case App(fun=f, arg=a):
                return App(go(f, depth), go(a, depth))
            case Bang(body=b):
                return Bang(go(b, depth))
            case Op(op=o, args=args):
                return Op(o, [go(a, depth) for a in args])
        return u

    return Abs(name, go(shift(t, 1), 0))


def lam(name: str, body: Term) -> Abs:
    return abstract(name, body)  # type: ignore[return-value]


def alpha_eq(t: Term, s: Term) -> bool:
    return to_canonical(t) == to_canonical(s)


# -- canonical (nameless) form ---------------------------------------------

CanonicalTerm = tuple


def to_canonical(t: Term) -> CanonicalTerm:
    """Nested tuples with binder names erased, e.g. ``("abs", ("idx", 0))``."""
    match t:
        case Var(name=n):
            return ("free", n)
        case BVar(index=i):
            return ("idx", i)
        case Abs(body=b):
            return ("abs", to_canonical(b))
        case App(fun=f, arg=a):
            return ("app", to_canonical(f), to_canonical(a))
        case Bang(body=b):
            return ("bang", to_canonical(b))
        case Op(op=o, args=args):
            return ("op", o, *(to_canonical(a) for a in args))
        case Hole():
            return ("hole",)
    raise TypeError(f"not a term: {t!r}")


def from_canonical(c: CanonicalTerm, depth: int = 0) -> Term:
    tag = c[0]
    if tag == "free":
        return Var(c[1])
    if tag == "idx":
        return BVar(c[1])
    if tag == "abs":
        return Abs(binder_hint(depth), from_canonical(c[1], depth + 1))
    if tag == "app":
        return App(from_canonical(c[1], depth), from_canonical(c[2], depth))
    if tag == "bang":
        return Bang(from_canonical(c[1], depth))
    if tag == "op":
        return Op(c[1], [from_canonical(a, depth) for a in c[2:]])
    if tag == "hole":
        return HOLE
    raise ValueError(f"bad canonical tag {tag!r}")


def binder_hint(depth: int) -> str:
    return "abcdefghijklmnopqrstuvw"[depth % 23] + ("" if depth < 23 else str(depth // 23))


# -- validation ------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    path: Path
    message: str

    def __str__(self) -> str:
        where = "/".join(f"{s.kind}{s.index if s.kind == 'op' else ''}" for s in self.path)
        return f"{self.message} at /{where}"


def validate(t: Term, profile: CalculusProfile, *, allow_hole: bool = False) -> list[Violation]:
    """Grammar check for ``profile``; an empty list means the term is valid."""
    out: list[Violation] = []
    holes = 0

    def go(u: Term, path: Path, depth: int) -> None:
        nonlocal holes
        match u:
            case BVar(index=i) if i >= depth:
                out.append(Violation(path, "unbound index"))
            case Bang(body=b):
                if profile.calculus is not Calculus.BANG:
                    out.append(Violation(path, "Bang in λ-calculus term"))
                go(b, path + (BANG_BODY,), depth)
            case Abs(body=b):
                go(b, path + (ABS_BODY,), depth + 1)
            case App(fun=f, arg=a):
                go(f, path + (APP_LEFT,), depth)
                go(a, path + (APP_RIGHT,), depth)
            case Op(op=o, args=args):
                sig = _REGISTRY.get(o)
                if sig is None:
                    known = ", ".join(sorted(_REGISTRY))
                    out.append(Violation(path, f"unknown operator {o!r} (registered: {known})"))
                elif sig.arity != len(args):
                    out.append(
                        Violation(path, f"arity mismatch: {o} expects {sig.arity}, got {len(args)}")
                    )
                for i, a in enumerate(args):
                    go(a, path + (op_arg(i),), depth)
            case Hole():
                holes += 1
                if not allow_hole:
                    out.append(Violation(path, "hole in plain term"))
                elif holes > 1:
                    out.append(Violation(path, "more than one hole"))

    go(t, (), 0)
    return out
