"""Call-by-name and call-by-value embeddings into the bang calculus."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from bangcalc.surface import show
from bangcalc.syntax import DER, Abs, App, Bang, BVar, Hole, Op, Term, Var, hole_count


class TranslationError(ValueError):
    pass


def cbn_translate(t: Term) -> Term:
    """Arguments get boxed; everything else is kept as is."""
    match t:
        case Var() | BVar() | Hole():
            return t
        case Abs(name=n, body=b):
            return Abs(n, cbn_translate(b))
        case App(fun=f, arg=a):
            return App(cbn_translate(f), Bang(cbn_translate(a)))
        case Op(op=o, args=args):
            return Op(o, [cbn_translate(a) for a in args])
    raise TranslationError(f"not a λ-term: {show(t)}")


def cbv_translate(t: Term) -> Term:
    """Values get boxed; a non-value in function position is opened with der."""
    match t:
        case Var() | BVar():
            return Bang(t)
        case Hole():
            return t
        case Abs(name=n, body=b):
            return Bang(Abs(n, cbv_translate(b)))
        case App(fun=f, arg=a):
            fun = cbv_translate(f)
            arg = cbv_translate(a)
            if isinstance(fun, Bang):
                return App(fun.body, arg)
            return App(App(DER, fun), arg)
        case Op(op=o, args=args):
            return Op(o, [cbv_translate(a) for a in args])
    raise TranslationError(f"not a λ-term: {show(t)}")


def translate(t: Term, mode: str) -> Term:
    match mode:
        case "cbn":
            return cbn_translate(t)
        case "cbv":
            return cbv_translate(t)
    raise ValueError(f"unknown translation mode {mode!r}")


def translate_context(c: Term, mode: str) -> Term:
    holes = hole_count(c)
    if holes != 1:
        raise TranslationError(f"a context needs exactly one hole, found {holes}")
    return translate(c, mode)


# -- image grammars --------------------------------------------------------


def is_cbn_image(t: Term) -> bool:
    match t:
        case Var() | BVar() | Hole():
            return True
        case Abs(body=b):
            return is_cbn_image(b)
        case App(fun=f, arg=Bang(body=s)):
            return is_cbn_image(f) and is_cbn_image(s)
        case Op(args=args):
            return all(is_cbn_image(a) for a in args)
    return False


def is_cbv_value_image(t: Term) -> bool:
    match t:
        case Var() | BVar():
            return True
        case Abs(body=b):
            return is_cbv_image(b)
    return False


def is_cbv_image(t: Term) -> bool:
    match t:
        case Hole():
            return True
        case Bang(body=u):
            return is_cbv_value_image(u)
        case App(fun=App(fun=d, arg=m), arg=n) if d == DER:
            return is_cbv_image(m) and is_cbv_image(n)
        case App(fun=u, arg=m):
            return is_cbv_value_image(u) and is_cbv_image(m)
        case Op(args=args):
            return all(is_cbv_image(a) for a in args)
    return False


class ImageTag(str, Enum):
    CBN = "CbnImage"
    CBV = "CbvImage"
    CBV_VALUE = "CbvValueImage"
    OUTSIDE = "Outside"


@dataclass(frozen=True)
class ImageMembership:
    cbn: bool
    cbv: bool
    cbv_value: bool

    @property
    def tag(self) -> ImageTag:
        if self.cbn:
            return ImageTag.CBN
        if self.cbv:
            return ImageTag.CBV
        if self.cbv_value:
            return ImageTag.CBV_VALUE
        return ImageTag.OUTSIDE


def in_image(t: Term) -> ImageMembership:
    return ImageMembership(is_cbn_image(t), is_cbv_image(t), is_cbv_value_image(t))


# -- inverses --------------------------------------------------------------


def cbn_inverse(t: Term) -> Term:
    """The unique λ-term whose call-by-name translation is ``t``."""
    match t:
        case Var() | BVar() | Hole():
            return t
        case Abs(name=n, body=b):
            return Abs(n, cbn_inverse(b))
        case App(fun=f, arg=Bang(body=s)):
            return App(cbn_inverse(f), cbn_inverse(s))
        case Op(op=o, args=args):
            return Op(o, [cbn_inverse(a) for a in args])
    raise TranslationError(f"outside the call-by-name image: {show(t)}")


def _forget_value(u: Term) -> Term:
    match u:
        case Var() | BVar():
            return u
        case Abs(name=n, body=b):
            return Abs(n, _forget_term(b))
    raise TranslationError(f"outside the call-by-value image: {show(u)}")


def _forget_term(t: Term) -> Term:
    match t:
        case Hole():
            return t
        case Bang(body=u):
            return _forget_value(u)
        case App(fun=App(fun=d, arg=m), arg=n) if d == DER:
            return App(_forget_term(m), _forget_term(n))
        case App(fun=u, arg=m):
            return App(_forget_value(u), _forget_term(m))
        case Op(op=o, args=args):
            return Op(o, [_forget_term(a) for a in args])
    raise TranslationError(f"outside the call-by-value image: {show(t)}")


def forgetful(t: Term) -> Term:
    """Erase boxes and der wrappers; a left inverse of :func:`cbv_translate`.

    Defined exactly on the call-by-value image grammar, terms and values
    alike.  Anything else is rejected, a bare der included.
    """
    if is_cbv_value_image(t):
        return _forget_value(t)
    return _forget_term(t)
